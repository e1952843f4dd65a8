//! File formats, result records, and the random corpus behind the `ibg`
//! command-line tool.

pub mod corpus;
pub mod format;
pub mod harness;
pub mod record;
