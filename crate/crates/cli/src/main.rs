use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use ibg::format::{parse_game, parse_profile, render_game, render_profile};
use ibg::harness::{self, Check};
use ibg::record::{self, ResultRecord};
use ibg_core::automata::afa_to_nfa;
use ibg_core::ltlf;
use ibg_core::oracle::{
    enumerate_profiles, oracle_realizable_onesided, oracle_table, oracle_verify, profile_count, OneSided, OracleConfig,
};
use ibg_core::realizability::Realizer;
use ibg_core::verification::verify;
use ibg_core::{AgentSet, Error as CoreError, Goal, Ibg, StrategyProfile};
use serde_json::json;

/// Realizability and verification of equilibria in iterated Boolean games
/// with finite-trace goals.
#[derive(Parser)]
#[command(name = "ibg", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether some Nash equilibrium has exactly the given winners.
    Realizable {
        game: PathBuf,
        #[command(flatten)]
        winners: Winners,
        /// Write a witness profile here when realizable.
        #[arg(long)]
        witness: Option<PathBuf>,
        /// Include automaton and arena sizes in the record.
        #[arg(long)]
        stats: bool,
        /// Write each losing agent's deviation game to DIR/agent-<j>.txt.
        #[arg(long, value_name = "DIR")]
        dump_arenas: Option<PathBuf>,
    },
    /// Decide whether a profile is a Nash equilibrium with the given winners.
    Verify {
        game: PathBuf,
        profile: PathBuf,
        #[command(flatten)]
        winners: Winners,
        /// Include accepting paths and violations in the record.
        #[arg(long)]
        explain: bool,
    },
    /// Rewrite goals of a game file.
    Convert {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        how: Conversion,
        /// Only convert this agent's goal (required with --ltlf2afa).
        #[arg(long)]
        agent: Option<String>,
    },
    /// Brute-force reference procedures.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Cross-check the engines against the oracles on a seeded corpus.
    Harness {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Corpus size multiplier.
        #[arg(long, default_value_t = 1)]
        scale: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Conversion {
    /// Turn NFA and AFA goals into DFAs.
    #[arg(long)]
    determinize: bool,
    /// Turn AFA goals into NFAs.
    #[arg(long)]
    afa2nfa: bool,
    /// Replace the goal with the AFA of this LTLf formula.
    #[arg(long, value_name = "FORMULA")]
    ltlf2afa: Option<String>,
}

#[derive(Args)]
struct Winners {
    /// Comma-separated agent names or indices; empty for no winners.
    #[arg(long, short = 'w', default_value = "")]
    winners: String,
}

#[derive(Args)]
struct Bounds {
    /// Search-state budget per deviation search.
    #[arg(long, default_value_t = OracleConfig::default().budget)]
    budget: usize,
    /// Strategy memory for enumeration, 0 or 1.
    #[arg(long, default_value_t = OracleConfig::default().memory)]
    memory: usize,
    /// Maximum number of profiles to enumerate.
    #[arg(long, default_value_t = OracleConfig::default().max_profiles)]
    max_profiles: usize,
}

impl Bounds {
    fn config(&self) -> Result<OracleConfig> {
        if self.memory > 1 {
            bail!("--memory must be 0 or 1");
        }
        Ok(OracleConfig {
            budget: self.budget,
            memory: self.memory,
            max_profiles: self.max_profiles,
        })
    }
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Check a profile by simulation and deviation search.
    Verify {
        game: PathBuf,
        profile: PathBuf,
        #[command(flatten)]
        winners: Winners,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Search small profiles for a Nash equilibrium with the given winners.
    RealizableOnesided {
        game: PathBuf,
        #[command(flatten)]
        winners: Winners,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Count the profiles of the given memory and optionally write some.
    Enumerate {
        game: PathBuf,
        #[arg(long, default_value_t = 0)]
        memory: usize,
        /// Write the first N profiles as DIR/profile-<i>.json.
        #[arg(long, value_name = "DIR", requires = "limit")]
        out: Option<PathBuf>,
        #[arg(long, value_name = "N")]
        limit: Option<usize>,
    },
    /// For every winner set, the first small profile that is an equilibrium.
    Table {
        game: PathBuf,
        #[command(flatten)]
        bounds: Bounds,
    },
}

/// A command's record and exit status.
struct Outcome {
    record: ResultRecord,
    code: u8,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn load_game(path: &Path) -> Result<Ibg> {
    parse_game(&read(path)?).with_context(|| format!("{}", path.display()))
}

fn load_profile(path: &Path, game: &Ibg) -> Result<StrategyProfile> {
    let p = parse_profile(&read(path)?, game.alphabet()).with_context(|| format!("{}", path.display()))?;
    p.check_game(game).with_context(|| format!("{}", path.display()))?;
    Ok(p)
}

fn agent(game: &Ibg, token: &str) -> Result<usize> {
    let token = token.trim();
    if let Some(i) = game.agent_names().iter().position(|n| n == token) {
        return Ok(i);
    }
    match token.parse::<usize>() {
        Ok(i) if i < game.num_agents() => Ok(i),
        _ => bail!("--winners/--agent: unknown agent `{token}`"),
    }
}

fn winners(game: &Ibg, w: &Winners) -> Result<AgentSet> {
    let mut set = AgentSet::empty();
    for t in w.winners.split(',').filter(|t| !t.trim().is_empty()) {
        set.insert(agent(game, t)?);
    }
    Ok(set)
}

fn realizable_cmd(
    command: Vec<String>,
    game: &Path,
    w: &Winners,
    witness: Option<&Path>,
    stats: bool,
    dump: Option<&Path>,
) -> Result<Outcome> {
    let game = load_game(game)?;
    let w = winners(&game, w)?;
    let mut realizer = Realizer::new(&game);
    let verdict = realizer.solve(w)?;
    if let Some(dir) = dump {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for j in (0..game.num_agents()).filter(|&j| !w.contains(j)) {
            let text = realizer.deviation_game(j)?.dump();
            write(&dir.join(format!("agent-{j}.txt")), &text)?;
        }
    }
    if let (Some(path), Some(wit)) = (witness, &verdict.witness) {
        write(path, &render_profile(&wit.profile))?;
    }
    let code = if verdict.realizable { 0 } else { 1 };
    Ok(Outcome {
        record: record::realizability_record(&game, command, &verdict, false, stats),
        code,
    })
}

fn verify_cmd(command: Vec<String>, game: &Path, profile: &Path, w: &Winners, explain: bool) -> Result<Outcome> {
    let game = load_game(game)?;
    let profile = load_profile(profile, &game)?;
    let w = winners(&game, w)?;
    let report = verify(&game, w, &profile)?;
    Ok(Outcome {
        code: if report.is_equilibrium { 0 } else { 1 },
        record: record::verification_record(&game, command, &report, explain),
    })
}

fn convert_cmd(command: Vec<String>, input: &Path, output: &Path, how: &Conversion, only: Option<&str>) -> Result<Outcome> {
    let game = load_game(input)?;
    let only = only.map(|a| agent(&game, a)).transpose()?;
    let selected = |i: usize| only.is_none_or(|o| o == i);
    let goals: Vec<Goal> = if let Some(text) = &how.ltlf2afa {
        let Some(target) = only else {
            bail!("--ltlf2afa needs --agent");
        };
        let f = ltlf::parse(text, game.alphabet()).context("--ltlf2afa")?;
        let afa = ltlf::compile_to_afa(&f, game.alphabet()).context("--ltlf2afa")?;
        let mut goals = game.goals().to_vec();
        goals[target] = Goal::Afa(afa);
        goals
    } else {
        game.goals()
            .iter()
            .enumerate()
            .map(|(i, g)| match g {
                _ if !selected(i) => g.clone(),
                Goal::Afa(a) if how.afa2nfa => Goal::Nfa(afa_to_nfa(a)),
                Goal::Nfa(_) | Goal::Afa(_) if how.determinize => Goal::Dfa(g.to_dfa()),
                _ => g.clone(),
            })
            .collect()
    };
    let out = Ibg::new(game.alphabet().clone(), game.agent_names().to_vec(), goals)?;
    write(output, &render_game(&out))?;
    let mut r = ResultRecord::new(command, "CONVERTED");
    r.detail = Some(json!(out
        .goals()
        .iter()
        .enumerate()
        .map(|(i, g)| json!({"agent": out.agent_names()[i], "kind": g.kind(), "states": g.num_states()}))
        .collect::<Vec<_>>()));
    Ok(Outcome { record: r, code: 0 })
}

fn oracle_cmd(command: Vec<String>, cmd: &OracleCommand) -> Result<Outcome> {
    match cmd {
        OracleCommand::Verify {
            game,
            profile,
            winners: w,
            bounds,
        } => {
            let game = load_game(game)?;
            let profile = load_profile(profile, &game)?;
            let w = winners(&game, w)?;
            let (verdict, code) = match oracle_verify(&game, w, &profile, &bounds.config()?) {
                Ok(true) => ("EQUILIBRIUM", 0),
                Ok(false) => ("NOT-EQUILIBRIUM", 1),
                Err(CoreError::OracleOverflow { .. }) => ("OVERFLOW", 3),
                Err(e) => return Err(e.into()),
            };
            let mut r = ResultRecord::new(command, verdict);
            r.winners = Some(record::agent_names(&game, w));
            Ok(Outcome { record: r, code })
        }
        OracleCommand::RealizableOnesided {
            game,
            winners: w,
            bounds,
        } => {
            let game = load_game(game)?;
            let w = winners(&game, w)?;
            let outcome = oracle_realizable_onesided(&game, w, &bounds.config()?)?;
            let mut r = ResultRecord::new(command, "");
            r.winners = Some(record::agent_names(&game, w));
            let code = match outcome {
                OneSided::Found(p) => {
                    r.verdict = "FOUND".into();
                    r.witness = Some(ibg::format::profile_to_file(&p));
                    0
                }
                OneSided::Unknown { truncated } => {
                    r.verdict = "UNKNOWN".into();
                    r.detail = Some(json!({ "truncated": truncated }));
                    1
                }
            };
            Ok(Outcome { record: r, code })
        }
        OracleCommand::Enumerate {
            game,
            memory,
            out,
            limit,
        } => {
            if *memory > 1 {
                bail!("--memory must be 0 or 1");
            }
            let game = load_game(game)?;
            let total = profile_count(&game, *memory).map(|c| c.to_string());
            let mut written = 0;
            if let (Some(dir), Some(limit)) = (out, limit) {
                std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
                for (i, p) in enumerate_profiles(&game, *memory, *limit)?.enumerate() {
                    write(&dir.join(format!("profile-{i}.json")), &render_profile(&p))?;
                    written += 1;
                }
            }
            let mut r = ResultRecord::new(command, "ENUMERATED");
            r.detail = Some(json!({ "memory": memory, "total": total, "written": written }));
            Ok(Outcome { record: r, code: 0 })
        }
        OracleCommand::Table { game, bounds } => {
            let game = load_game(game)?;
            let table = oracle_table(&game, &bounds.config()?)?;
            let rows: Vec<_> = AgentSet::subsets(game.num_agents())
                .map(|w| json!({ "winners": record::agent_names(&game, w), "found": table.found.contains_key(&w) }))
                .collect();
            let mut r = ResultRecord::new(command, "TABLE");
            r.detail = Some(json!({
                "rows": rows,
                "profiles_checked": table.profiles_checked,
                "truncated": table.truncated,
            }));
            Ok(Outcome { record: r, code: 0 })
        }
    }
}

fn harness_cmd(command: Vec<String>, seed: u64, scale: usize) -> Outcome {
    let s = |i| harness::subseed(seed, i);
    let checks: Vec<(&str, Check)> = {
        let corpus = harness::dfa_corpus(s(2), 300 * scale);
        let (same, wit) = harness::realizability_corpus(&corpus);
        vec![
            ("verify-vs-oracle", harness::verify_vs_oracle(s(1), 400 * scale)),
            ("kind-invariance", same),
            ("witnesses", wit),
            ("onesided", harness::onesided_vs_realizable(&corpus, 2000)),
            ("conversions", harness::conversions(s(4), 1000 * scale, 10)),
            ("safety-solver", harness::safety_solver(s(5), 200 * scale, 50)),
        ]
    };
    let mut ok = true;
    let mut rows = Vec::new();
    for (name, c) in &checks {
        ok &= c.passed();
        eprintln!("{} {name}: {c}", if c.passed() { "PASS" } else { "FAIL" });
        rows.push(json!({ "check": name, "cases": c.cases, "failed": c.failed, "note": c.note }));
    }
    let mut r = ResultRecord::new(command, if ok { "PASS" } else { "FAIL" });
    r.detail = Some(json!(rows));
    Outcome {
        record: r,
        code: if ok { 0 } else { 1 },
    }
}

fn run(cli: &Cli, command: Vec<String>) -> Result<Outcome> {
    match &cli.command {
        Command::Realizable {
            game,
            winners,
            witness,
            stats,
            dump_arenas,
        } => realizable_cmd(command, game, winners, witness.as_deref(), *stats, dump_arenas.as_deref()),
        Command::Verify {
            game,
            profile,
            winners,
            explain,
        } => verify_cmd(command, game, profile, winners, *explain),
        Command::Convert {
            input,
            output,
            how,
            agent,
        } => convert_cmd(command, input, output, how, agent.as_deref()),
        Command::Oracle(cmd) => oracle_cmd(command, cmd),
        Command::Harness { seed, scale } => Ok(harness_cmd(command, *seed, *scale)),
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli, command) {
        Ok(Outcome { mut record, code }) => {
            record.wall_time_ms = start.elapsed().as_millis() as u64;
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{}\n{}", record.verdict, record.to_json());
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
