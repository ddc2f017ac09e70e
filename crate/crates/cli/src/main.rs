//! `smt-lab`: batch driver for the smt-core checks.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 invariant violation or
//! failed check, 4 resource cap exceeded.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use smt_core::generators::{enumerate_d, enumerate_h, enumerate_standard, DegreeSpec, Mode};
use smt_core::hibi::{FiniteLattice, LatticeJson};
use smt_core::polyring::format_rational;
use smt_core::straighten::{relations_to_json, straighten, RelationTable, Strategy};
use smt_core::verify::{run_suite, Suite, VerifyConfig};
use smt_core::{Error, GenMonomial, Params, Relation};

#[derive(Parser, Debug)]
#[command(name = "smt-lab", version, about = "Standard monomial checks for SL_n and GL_n invariants")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    #[arg(long, global = true, default_value_t = 3)]
    m: usize,
    #[arg(long, global = true, default_value_t = 3)]
    q: usize,
    /// Bound on a + b in bidegree sweeps.
    #[arg(long, global = true, default_value_t = 4)]
    maxdeg: usize,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = smt_core::oracle::DEFAULT_MONOMIAL_CAP)]
    cap_monomials: usize,
    #[arg(long, global = true, default_value_t = smt_core::poset::DEFAULT_POSET_CAP)]
    cap_lattice: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PosetArg {
    #[value(name = "H", alias = "h")]
    H,
    #[value(name = "D", alias = "d")]
    D,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    S,
    Rd,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::S => Mode::S,
            ModeArg::Rd => Mode::RD,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    First,
    Last,
    Random,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List poset elements or standard monomials.
    Enumerate {
        #[arg(long, value_enum, conflicts_with = "standard")]
        poset: Option<PosetArg>,
        /// List standard monomials instead of poset elements.
        #[arg(long)]
        standard: bool,
        /// Bidegree `a,b` of standard monomials in the invariant ring.
        #[arg(long, value_parser = parse_bidegree, conflicts_with = "degree")]
        bidegree: Option<(usize, usize)>,
        /// Total degree of standard monomials in the extended ring.
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Rewrite a monomial as a combination of standard monomials.
    Straighten {
        monomial: String,
        #[arg(long, value_enum, default_value_t = ModeArg::S)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = StrategyArg::First)]
        strategy: StrategyArg,
    },
    /// Run one verification suite, or all of them.
    Verify {
        #[arg(long, value_parser = parse_suite)]
        suite: Option<Suite>,
    },
    /// Export the straightening relations of every incomparable pair as JSON.
    Relations {
        #[arg(long, value_enum, default_value_t = ModeArg::S)]
        mode: ModeArg,
    },
    /// Inspect a finite lattice: the extended poset, or one read from JSON.
    Lattice {
        /// Lattice JSON file to import.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Print the lattice JSON instead of its summary.
        #[arg(long)]
        export: bool,
        /// Largest degree for the multichain counts.
        #[arg(long, default_value_t = 3)]
        hilbert: usize,
    },
}

fn parse_bidegree(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    let a = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b = b.trim().parse().map_err(|e| format!("{e}"))?;
    Ok((a, b))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Core(Error),
    Usage(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parameter(_) | Error::Parse(_) => 2,
        Error::Resource { .. } => 4,
        _ => 3,
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn print_list(items: &[String], format: Format, key: &str) {
    match format {
        Format::Text => items.iter().for_each(|s| println!("{s}")),
        Format::Csv => {
            println!("{key}");
            items.iter().for_each(|s| println!("{}", csv_field(s)));
        }
        Format::Json => println!("{}", json!({"schema": 1, key: items})),
    }
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn run(cli: Cli) -> Result<(), Failure> {
    let g = &cli.global;
    let params = Params::new(g.n, g.m, g.q)?;
    match cli.command {
        Command::Enumerate { poset, standard, bidegree, degree } => {
            let items: Vec<String> = if standard {
                let (spec, mode) = match (bidegree, degree) {
                    (Some((a, b)), None) => (DegreeSpec::Bidegree(a, b), Mode::S),
                    (None, Some(k)) => (DegreeSpec::Degree(k), Mode::RD),
                    _ => return Err(Failure::Usage("--standard needs --bidegree a,b or --degree k".into())),
                };
                enumerate_standard(&params, spec, mode)?.iter().map(|m| m.to_string()).collect()
            } else {
                match poset {
                    Some(PosetArg::H) => enumerate_h(&params)?.iter().map(|x| x.to_string()).collect(),
                    Some(PosetArg::D) => enumerate_d(&params)?.iter().map(|x| x.to_string()).collect(),
                    None => return Err(Failure::Usage("give --poset H|D or --standard".into())),
                }
            };
            print_list(&items, g.format, if standard { "monomials" } else { "elements" });
        }
        Command::Straighten { monomial, mode, strategy } => {
            let mode = Mode::from(mode);
            let m = GenMonomial::parse(&monomial, mode, &params)?;
            let strategy = match strategy {
                StrategyArg::First => Strategy::First,
                StrategyArg::Last => Strategy::Last,
                StrategyArg::Random => Strategy::Random(g.seed),
            };
            let table = RelationTable::new(&params)?;
            let terms = straighten(&m, strategy, &table)?;
            match g.format {
                Format::Text => {
                    for (c, t) in &terms {
                        println!("{c} {t}");
                    }
                }
                Format::Csv => {
                    println!("coeff,monomial");
                    for (c, t) in &terms {
                        println!("{},{}", csv_field(&c.to_string()), csv_field(&t.to_string()));
                    }
                }
                Format::Json => {
                    let rows: Vec<Value> = terms
                        .iter()
                        .map(|(c, t)| json!({"coeff": format_rational(c), "monomial": t.to_string()}))
                        .collect();
                    print_json(&json!({"schema": 1, "input": m.to_string(), "terms": rows}));
                }
            }
        }
        Command::Verify { suite } => {
            let cfg = VerifyConfig {
                maxdeg: g.maxdeg,
                seed: g.seed,
                cap_monomials: g.cap_monomials,
                cap_lattice: g.cap_lattice,
                ..VerifyConfig::new(params)
            };
            let suites = match suite {
                Some(s) => vec![s],
                None => Suite::ALL.to_vec(),
            };
            let mut all_passed = true;
            let mut reports = Vec::new();
            for s in suites {
                let start = Instant::now();
                let report = run_suite(s, &cfg)?;
                eprintln!("suite {s}: {:.3}s", start.elapsed().as_secs_f64());
                all_passed &= report.passed();
                reports.push(report);
            }
            match g.format {
                Format::Text => reports.iter().for_each(|r| print!("{}", r.to_text())),
                Format::Csv => {
                    for (i, r) in reports.iter().enumerate() {
                        let csv = r.to_csv();
                        // one header for the whole table
                        let body = if i == 0 { &csv[..] } else { csv.split_once('\n').map_or("", |x| x.1) };
                        print!("{body}");
                    }
                }
                Format::Json => {
                    let v = if reports.len() == 1 {
                        reports[0].to_json()
                    } else {
                        json!({"schema": 1, "passed": all_passed,
                               "suites": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>()})
                    };
                    print_json(&v);
                }
            }
            if !all_passed {
                return Err(Failure::Checks);
            }
        }
        Command::Relations { mode } => {
            let mode = Mode::from(mode);
            let table = RelationTable::new(&params)?;
            let start = Instant::now();
            let rels: Vec<Relation> = table
                .all_relations()?
                .iter()
                .map(|r| if mode == Mode::S { r.to_s() } else { (**r).clone() })
                .collect();
            eprintln!("{} relations in {:.3}s", rels.len(), start.elapsed().as_secs_f64());
            if g.format != Format::Json {
                eprintln!("relations are exported as JSON only");
            }
            print_json(&relations_to_json(&params, mode, &rels));
        }
        Command::Lattice { input, export, hilbert } => {
            let lattice = match &input {
                Some(path) => {
                    let text = fs::read_to_string(path)
                        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                    let j: LatticeJson = serde_json::from_str(&text)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    if j.elements.len() > g.cap_lattice {
                        return Err(Error::Resource {
                            what: "lattice elements".into(),
                            needed: j.elements.len(),
                            cap: g.cap_lattice,
                        }
                        .into());
                    }
                    FiniteLattice::from_json(&j)?
                }
                None => FiniteLattice::of_d(&params)?,
            };
            if export {
                print_json(&serde_json::to_value(lattice.to_json()).expect("serializable"));
                return Ok(());
            }
            lattice_summary(&lattice, hilbert, g)?;
        }
    }
    Ok(())
}

fn lattice_summary(lattice: &FiniteLattice, hilbert: usize, g: &Global) -> Result<(), Failure> {
    let distributive = lattice.is_distributive(smt_core::hibi::DEFAULT_FULL_CHECK_CAP, 20_000, g.seed);
    let labels = lattice.labels();
    let binomials: Vec<String> = if distributive {
        lattice
            .binomial_generators()?
            .iter()
            .map(|b| {
                format!(
                    "{}*{} - {}*{}",
                    labels[b.x], labels[b.y], labels[b.join], labels[b.meet]
                )
            })
            .collect()
    } else {
        Vec::new()
    };
    let series: Vec<u128> = (0..=hilbert).map(|k| lattice.hilbert_a(k)).collect();
    match g.format {
        Format::Json => print_json(&json!({
            "schema": 1,
            "elements": lattice.len(),
            "distributive": distributive,
            "binomials": binomials,
            "hilbert": series.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            println!("key,value");
            println!("elements,{}", lattice.len());
            println!("distributive,{distributive}");
            println!("binomials,{}", binomials.len());
            for (k, v) in series.iter().enumerate() {
                println!("hilbert_{k},{v}");
            }
        }
        Format::Text => {
            println!("elements: {}", lattice.len());
            println!("distributive: {distributive}");
            println!("binomial generators: {}", binomials.len());
            for b in &binomials {
                println!("  {b}");
            }
            let s: Vec<String> = series.iter().map(|v| v.to_string()).collect();
            println!("multichain counts k=0..{hilbert}: {}", s.join(" "));
        }
    }
    if !distributive {
        return Err(Failure::Checks);
    }
    Ok(())
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("SMT_LAB_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().map_err(|_| format!("SMT_LAB_THREADS: not a number: {v:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Checks) => ExitCode::from(3),
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
