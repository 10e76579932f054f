use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use hlie::arrangement::Matroid;
use hlie::bits;
use hlie::flags::{g_presentation, FlagError};
use hlie::homotopy::{hilbert_u, homotopy_module_dims, m_support, RankMode};
use hlie::hypersolvable::{find_solvable_chain, hypothesis_verdict, singular_range, SingularOutcome, Verdict};
use hlie::io::{
    analyze, format_m_rows, input_seed, parse_input, pi_report, u_depth_for, u_report, AnalyzeOptions, REGISTRY,
};
use hlie::os::OsAlgebra;
use hlie::quadratic::{enveloping_of_holonomy, holonomy_presentation};

#[derive(Parser)]
#[command(name = "hlie", version, about = "Homotopy Lie algebras of hypersolvable arrangements")]
struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Homological truncation degree.
    #[arg(long, global = true, default_value_t = 4)]
    pmax: usize,
    /// Exact rational elimination instead of modular ranks.
    #[arg(long, global = true)]
    exact: bool,
    /// Seed for the random primes; derived from the input when absent.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker thread cap.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Flats of the intersection lattice by rank.
    Lattice { input: String },
    /// Poincare polynomial of the Orlik-Solomon algebra.
    Poincare {
        input: String,
        /// Divide by (1 + t).
        #[arg(long)]
        decone: bool,
    },
    /// Holonomy presentation and dimensions of its enveloping algebra.
    Holonomy { input: String },
    /// Solvable chain, exponents, singular range and verdict.
    Hypersolvable { input: String },
    /// Table of the homotopy module M.
    HomotopyModule { input: String },
    /// Bigraded Hilbert series of U(g).
    Useries { input: String },
    /// Presentation of g for a generic slice of a supersolvable arrangement.
    Presentation {
        input: String,
        /// The supersolvable deformation, central.
        #[arg(long)]
        deformation: Option<String>,
        #[arg(long)]
        ell: usize,
        /// 1-based hyperplane of the deformation removed by deconing (default: last).
        #[arg(long)]
        infinity: Option<usize>,
    },
    /// Rescaled Hilbert series and rational homotopy ranks.
    PiRanks {
        input: String,
        #[arg(long, default_value_t = 1)]
        rescale: usize,
        #[arg(long)]
        degree: usize,
    },
    /// Everything, gated by the hypotheses.
    Analyze {
        input: String,
        #[arg(long)]
        rescale: Option<usize>,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        deformation: Option<String>,
        #[arg(long)]
        infinity: Option<usize>,
    },
    /// Registered examples.
    Examples,
}

/// A hypothesis gate refused the request.
struct Refused(String);

enum Outcome {
    Done,
    Refused(Refused),
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Refused(Refused(reason))) => {
            if cli.json {
                println!("{}", json!({ "refused": reason }));
            } else {
                println!("refused: {reason}");
            }
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn load(input: &str) -> Result<Matroid> {
    Ok(parse_input(input).with_context(|| format!("reading {input}"))?.matroid())
}

fn mode(cli: &Cli, m: &Matroid) -> RankMode {
    if cli.exact {
        RankMode::Exact
    } else {
        RankMode::Modular { seed: cli.seed.unwrap_or_else(|| input_seed(m)) }
    }
}

fn emit(cli: &Cli, value: Value, text: String) {
    let out = if cli.json { serde_json::to_string_pretty(&value).expect("serializable") + "\n" } else { text };
    // a closed pipe (`| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn sets(v: &[u64]) -> Vec<Vec<usize>> {
    v.iter().map(|&s| bits::iter(s).map(|i| i + 1).collect()).collect()
}

fn verdict_of(m: &Matroid, os: &OsAlgebra) -> Result<(Option<SingularOutcome>, Verdict)> {
    let outcome = find_solvable_chain(m).map(|c| singular_range(&c, &os.dims())).transpose()?;
    Ok((outcome, hypothesis_verdict(outcome)))
}

fn deformation(input: &Option<String>, infinity: Option<usize>) -> Result<Option<(Matroid, usize)>> {
    let Some(input) = input else { return Ok(None) };
    let b = load(input)?;
    let n = b.ground_size();
    let inf = match infinity {
        Some(k) if (1..=n).contains(&k) => k - 1,
        Some(k) => bail!("--infinity {k} is not a hyperplane of the deformation (1..={n})"),
        None => n - 1,
    };
    Ok(Some((b, inf)))
}

fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Examples => {
            let mut text = String::new();
            let mut list = Vec::new();
            for e in REGISTRY {
                text += &format!("{:<12} {:<12} {}\n", e.key, e.kind, e.description);
                list.push(json!({ "key": e.key, "kind": e.kind, "description": e.description }));
            }
            text += "boolean:<n>  arrangement  coordinate hyperplanes in dimension n\n";
            emit(cli, json!({ "examples": list }), text);
        }
        Command::Lattice { input } => {
            let m = load(input)?;
            let lat = m.flats(m.rank());
            let mut text = String::new();
            let mut by_rank = BTreeMap::new();
            for k in 1..=lat.max_rank() {
                let fl = sets(lat.flats(k));
                let shown: Vec<String> = lat.flats(k).iter().map(|&s| bits::display(s)).collect();
                text += &format!("rank {k} ({}): {}\n", fl.len(), shown.join(" "));
                by_rank.insert(k.to_string(), fl);
            }
            emit(cli, json!({ "flats": by_rank }), text);
        }
        Command::Poincare { input, decone } => {
            let m = load(input)?;
            let mut p = OsAlgebra::new(&m).poincare();
            if *decone {
                p = p.div_one_plus_t().context("Poincare polynomial is not divisible by 1 + t")?;
            }
            emit(cli, json!({ "poincare": p.0 }), format!("{p}\n"));
        }
        Command::Holonomy { input } => {
            let m = load(input)?;
            let hol = holonomy_presentation(&m.flats(2));
            let os = OsAlgebra::new(&m);
            let r = enveloping_of_holonomy(&os, cli.pmax, hlie::kernel::ModArith { p: hlie::kernel::random_primes(mode_seed(cli, &m), 1)[0] })?;
            let names: Vec<String> = (1..=m.ground_size()).map(|i| format!("x{i}")).collect();
            let rels: Vec<String> = hol.relations.iter().map(|r| hol.relation_text(r, &names)).collect();
            let text = format!("{hol}R dims: {}\n", r.dims().iter().map(|d| d.to_string()).collect::<Vec<_>>().join(" "));
            emit(cli, json!({ "generators": names, "relations": rels, "r_dims": r.dims() }), text);
        }
        Command::Hypersolvable { input } => {
            let m = load(input)?;
            let os = OsAlgebra::new(&m);
            let chain = find_solvable_chain(&m);
            let (outcome, verdict) = verdict_of(&m, &os)?;
            let mut text = String::new();
            let value = match &chain {
                None => {
                    text += "not hypersolvable\n";
                    json!({ "hypersolvable": false, "verdict": verdict })
                }
                Some(c) => {
                    let stages = sets(&c.stages);
                    let shown: Vec<String> = c.stages.iter().map(|&s| bits::display(s)).collect();
                    text += &format!("chain: {}\nexponents: {:?}\n", shown.join(" < "), c.exponents());
                    let range = match outcome {
                        Some(SingularOutcome::Range(r)) => {
                            text += &format!("singular range: ({},{})\n", r.c, r.d);
                            Some(r)
                        }
                        _ => {
                            text += "supersolvable\n";
                            None
                        }
                    };
                    json!({
                        "hypersolvable": true,
                        "chain": stages,
                        "step_kinds": c.step_kinds,
                        "exponents": c.exponents(),
                        "singular_range": range,
                        "supersolvable": range.is_none(),
                        "verdict": verdict,
                    })
                }
            };
            text += &format!("verdict: {verdict:?}\n");
            emit(cli, value, text);
        }
        Command::HomotopyModule { input } => {
            let m = load(input)?;
            let os = OsAlgebra::new(&m);
            let certified = find_solvable_chain(&m).is_some();
            let t = homotopy_module_dims(&os, cli.pmax, certified, mode(cli, &m))?;
            let rows: BTreeMap<String, Vec<usize>> = t.support().into_iter().map(|q| (q.to_string(), t.row(q))).collect();
            let s = m_support(&t);
            let mut text = String::new();
            if !certified {
                text += "# formal linear-strand homology (no hypersolvability certificate)\n";
            }
            text += &format_m_rows(&t);
            emit(
                cli,
                json!({ "M": rows, "p_max": t.p_max, "certified": certified, "support": s.degrees, "support_verdict": s.verdict }),
                text,
            );
        }
        Command::Useries { input } => {
            let m = load(input)?;
            let os = OsAlgebra::new(&m);
            let (_, verdict) = verdict_of(&m, &os)?;
            if !verdict.applicable() {
                return Ok(Outcome::Refused(Refused(format!("hypothesis not satisfied: verdict {verdict:?}"))));
            }
            let t = homotopy_module_dims(&os, cli.pmax, true, mode(cli, &m))?;
            let u = u_report(&hilbert_u(&t.r_dims, &t, verdict, cli.pmax)?)?;
            let mut text = String::new();
            for (p, row) in &u.rows {
                let cells: Vec<String> = row.iter().map(|(q, v)| format!("{q}:{v}")).collect();
                text += &format!("p={p}  {}\n", cells.join(" "));
            }
            emit(cli, serde_json::to_value(&u)?, text);
        }
        Command::Presentation { input, deformation: def, ell, infinity } => {
            let m = load(input)?;
            let def = deformation(def, *infinity)?;
            match g_presentation(&m, def.as_ref().map(|(b, i)| (b, *i)), *ell) {
                Ok(g) => emit(cli, serde_json::to_value(&g)?, g.to_string()),
                Err(e @ (FlagError::NotGenericSlice { .. } | FlagError::DeformationRequired)) => {
                    return Ok(Outcome::Refused(Refused(e.to_string())))
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::PiRanks { input, rescale, degree } => {
            if *rescale == 0 {
                bail!("--rescale must be positive");
            }
            let m = load(input)?;
            let os = OsAlgebra::new(&m);
            let (_, verdict) = verdict_of(&m, &os)?;
            if !verdict.applicable() {
                return Ok(Outcome::Refused(Refused(format!("hypothesis not satisfied: verdict {verdict:?}"))));
            }
            let depth = u_depth_for(*rescale, *degree);
            let t = homotopy_module_dims(&os, depth.saturating_sub(2).max(1), true, mode(cli, &m))?;
            let u = hilbert_u(&t.r_dims, &t, verdict, depth)?;
            let pi = pi_report(&u, *rescale, *degree)?;
            let mut text = format!(
                "series: {}\n",
                pi.u_series.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
            );
            for (k, v) in &pi.pi_ranks {
                text += &format!("pi_{k}(Y) ⊗ Q rank {v}\n");
            }
            emit(cli, json!({ "u_series": pi.u_series, "loop_ranks": pi.loop_ranks, "pi_ranks": pi.pi_ranks }), text);
        }
        Command::Analyze { input, rescale, degree, deformation: def, infinity } => {
            let m = load(input)?;
            let rescale = match (rescale, degree) {
                (Some(0), _) => bail!("--rescale must be positive"),
                (Some(q), Some(d)) => Some((*q, *d)),
                (None, Some(d)) => Some((1, *d)),
                (Some(_), None) => bail!("--rescale needs --degree"),
                (None, None) => None,
            };
            let opts = AnalyzeOptions {
                source: input.clone(),
                p_max: cli.pmax,
                mode: mode(cli, &m),
                rescale,
                deformation: deformation(def, *infinity)?,
            };
            let report = analyze(&m, &opts)?;
            emit(cli, serde_json::to_value(&report)?, report.to_string());
        }
    }
    Ok(Outcome::Done)
}

fn mode_seed(cli: &Cli, m: &Matroid) -> u64 {
    cli.seed.unwrap_or_else(|| input_seed(m))
}
