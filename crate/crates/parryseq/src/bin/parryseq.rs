//! Command-line surface for the parryseq library: representation queries,
//! beta-expansions, automaton export, complexity tables, kernel reports, and
//! the `reproduce` experiment registry.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;

use parryseq::automata::langdfa::language_dfa;
use parryseq::beta::{beta_expand, PeriodicWord};
use parryseq::experiments;
use parryseq::sequences::kernel::{kernel, kernel2d, kernel2d_to_forward_dfao};
use parryseq::sequences::{
    char_sequence_from_regular_set, grid_from_machine, pair_product_dfao, AutomaticSequence,
};
use parryseq::{
    isolate_real_roots, right_quotients, AlgebraicReal, Dfa, DigitWord, FieldElement, IntPoly,
    NumerationSystem,
};

#[derive(Parser)]
#[command(name = "parryseq", version, about = "Positional numeration systems, beta-expansions and automatic sequences")]
struct Cli {
    /// Builtin system name or path to a JSON recurrence spec.
    #[arg(long, global = true, default_value = "eq-4.1")]
    system: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
    Dot,
}

#[derive(Subcommand)]
enum Cmd {
    /// Greedy representations of the given integers.
    Rep { values: Vec<String> },
    /// Numerical values of the given digit words.
    Val { words: Vec<String> },
    /// The first representations in genealogical order.
    Enumerate {
        #[arg(long, default_value_t = 20)]
        count: usize,
    },
    /// Beta-expansion digits with cycle detection.
    Beta {
        /// Builtin beta: eq-4.1, fibonacci, or base-<k>.
        #[arg(long)]
        builtin: Option<String>,
        /// Minimal polynomial, constant coefficient first, comma separated.
        #[arg(long)]
        poly: Option<String>,
        /// Root index among the real roots in increasing order (default: largest).
        #[arg(long)]
        root_index: Option<usize>,
        /// The number to expand, as an integer or p/q rational in [0, 1].
        #[arg(long, default_value = "1")]
        x: String,
        #[arg(long, default_value_t = 20)]
        digits: usize,
    },
    /// Export the numeration-language automaton.
    Automaton,
    /// The substitution generating the numeration automaton's state sequence.
    Substitution,
    /// Factor complexity of the characteristic sequence of the terms {U_n}.
    Complexity {
        #[arg(long, default_value_t = 40)]
        max_len: usize,
        #[arg(long, default_value_t = 40000)]
        prefix: usize,
    },
    /// U-kernel of the characteristic sequence of {U_n}.
    Kernel {
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long, default_value_t = 8)]
        window: usize,
    },
    /// 2D kernel of the pairwise-XOR grid of the {U_n} characteristic sequence.
    Kernel2d {
        #[arg(long, default_value_t = 2)]
        max_len: usize,
        #[arg(long, default_value_t = 4)]
        window: usize,
    },
    /// Regenerate a registered experiment and diff it against golden values.
    Reproduce {
        name: Option<String>,
        #[arg(long)]
        all: bool,
        /// Run independent experiments concurrently (output order unchanged).
        #[arg(long)]
        parallel: bool,
    },
    /// List the builtin numeration systems.
    ListBuiltins,
}

const BUILTINS: &[(&str, &str)] = &[
    ("fibonacci", "U_{n+1} = U_n + U_{n-1}; U = 1, 2, 3, 5, ..."),
    ("modified-fibonacci", "U_{n+1} = U_n + U_{n-1}; U = 1, 3, 4, 7, ..."),
    ("base-<k>", "U_{n+1} = k U_n; integer base k >= 2"),
    ("example-2.3", "U_{n+1} = 3 U_n + 1; U = 1, 4, 13, 40, ..."),
    ("eq-4.1", "U_n = 3U_{n-1} + 2U_{n-2} + 3U_{n-4}; U = 1, 4, 15, 54, ..."),
];

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

#[derive(serde::Deserialize)]
struct SystemSpec {
    coefficients: Vec<i64>,
    #[serde(default)]
    affine_constant: i64,
    initial_terms: Vec<i64>,
}

fn resolve_system(spec: &str) -> Result<NumerationSystem, String> {
    let big = |v: &[i64]| v.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>();
    let sys = match spec {
        "fibonacci" => NumerationSystem::from_recurrence(big(&[1, 1]), big(&[1, 2])),
        "modified-fibonacci" => NumerationSystem::from_recurrence(big(&[1, 1]), big(&[1, 3])),
        "example-2.3" => {
            NumerationSystem::from_recurrence_affine(big(&[3]), BigInt::from(1), big(&[1]))
        }
        "eq-4.1" => NumerationSystem::from_recurrence(big(&[3, 2, 0, 3]), big(&[1, 4, 15, 54])),
        other => {
            if let Some(k) = other.strip_prefix("base-").and_then(|k| k.parse::<i64>().ok()) {
                if k < 2 {
                    return Err("base must be at least 2".into());
                }
                NumerationSystem::from_recurrence(big(&[k]), big(&[1]))
            } else {
                let text = fs::read_to_string(other)
                    .map_err(|e| format!("cannot read system spec {other}: {e}"))?;
                let spec: SystemSpec =
                    serde_json::from_str(&text).map_err(|e| format!("bad system spec: {e}"))?;
                NumerationSystem::from_recurrence_affine(
                    big(&spec.coefficients),
                    BigInt::from(spec.affine_constant),
                    big(&spec.initial_terms),
                )
            }
        }
    };
    let sys = sys.map_err(|e| e.to_string())?;
    maintain_term_cache(spec, &sys);
    Ok(sys)
}

/// With PARRYSEQ_CACHE_DIR set, persist the first terms of each resolved
/// system and cross-check an existing cache against the recurrence.
fn maintain_term_cache(name: &str, sys: &NumerationSystem) {
    let Ok(dir) = std::env::var("PARRYSEQ_CACHE_DIR") else {
        return;
    };
    let safe: String = name
        .chars()
        .map(|c| if c.is_alphanumeric() || c == '-' || c == '.' { c } else { '_' })
        .collect();
    let path = PathBuf::from(dir).join(format!("{safe}.terms.json"));
    let terms: Vec<String> = (0..64).map(|n| sys.term(n).to_string()).collect();
    match fs::read_to_string(&path) {
        Ok(text) => {
            if let Ok(cached) = serde_json::from_str::<Vec<String>>(&text) {
                if cached != terms {
                    eprintln!("warning: stale term cache at {}", path.display());
                    let _ = fs::write(&path, serde_json::to_string(&terms).unwrap());
                }
            }
        }
        Err(_) => {
            if let Some(parent) = path.parent() {
                let _ = fs::create_dir_all(parent);
            }
            let _ = fs::write(&path, serde_json::to_string(&terms).unwrap());
        }
    }
}

fn resolve_beta(
    builtin: Option<&str>,
    poly: Option<&str>,
    root_index: Option<usize>,
) -> Result<Arc<AlgebraicReal>, String> {
    let coeffs: Vec<i64> = match (builtin, poly) {
        (Some("eq-4.1"), None) => vec![-3, 0, -2, -3, 1],
        (Some("fibonacci"), None) => vec![-1, -1, 1],
        (Some(other), None) => {
            if let Some(k) = other.strip_prefix("base-").and_then(|k| k.parse::<i64>().ok()) {
                vec![-k, 1]
            } else {
                return Err(format!("unknown beta builtin: {other}"));
            }
        }
        (None, Some(poly)) => poly
            .split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?,
        _ => return Err("give exactly one of --builtin or --poly".into()),
    };
    let roots = isolate_real_roots(&IntPoly::from_i64(&coeffs)).map_err(|e| e.to_string())?;
    if roots.is_empty() {
        return Err("polynomial has no real roots".into());
    }
    let idx = root_index.unwrap_or(roots.len() - 1);
    let root = roots
        .into_iter()
        .nth(idx)
        .ok_or_else(|| format!("root index {idx} out of range"))?;
    Ok(Arc::new(root))
}

fn parse_rational(s: &str) -> Result<BigRational, String> {
    let parse = |t: &str| BigInt::from_str(t).map_err(|e| format!("bad number {t}: {e}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let q = parse(q)?;
            if q.is_zero() {
                return Err("zero denominator".into());
            }
            Ok(BigRational::new(parse(p)?, q))
        }
        None => Ok(BigRational::from_integer(parse(s)?)),
    }
}

/// The characteristic automatic sequence of the term set {U_n}: words 1 0^*.
fn terms_sequence(system: &NumerationSystem) -> Result<AutomaticSequence, String> {
    let language = language_dfa(system, 12).map_err(|e| e.to_string())?;
    let set = Dfa::new(
        system.alphabet(),
        0,
        vec![false, true],
        vec![vec![(1, 1)], vec![(0, 1)]],
    )
    .map_err(|e| e.to_string())?;
    char_sequence_from_regular_set(system.clone(), language, &set).map_err(|e| e.to_string())
}

fn emit(out: &Option<PathBuf>, text: &str) -> ExitCode {
    match out {
        Some(path) => {
            if let Err(e) = fs::write(path, text) {
                return usage_error(&format!("cannot write {}: {e}", path.display()));
            }
            ExitCode::SUCCESS
        }
        None => {
            print!("{text}");
            ExitCode::SUCCESS
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(msg) => usage_error(&msg),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, String> {
    let out = &cli.out;
    match &cli.cmd {
        Cmd::Rep { values } => {
            let sys = resolve_system(&cli.system)?;
            let mut text = String::new();
            for v in values {
                let n = BigInt::from_str(v).map_err(|e| format!("bad integer {v}: {e}"))?;
                if n.sign() == num::bigint::Sign::Minus {
                    return Err(format!("{v} is negative"));
                }
                text.push_str(&format!("{}\n", sys.rep(&n)));
            }
            Ok(emit(out, &text))
        }
        Cmd::Val { words } => {
            let sys = resolve_system(&cli.system)?;
            let mut text = String::new();
            for w in words {
                let word = DigitWord::from_str(w).map_err(|e| format!("bad word {w}: {e}"))?;
                text.push_str(&format!("{}\n", sys.val(&word)));
            }
            Ok(emit(out, &text))
        }
        Cmd::Enumerate { count } => {
            let sys = resolve_system(&cli.system)?;
            let mut text = String::new();
            for n in 0..*count {
                text.push_str(&format!("{}\n", sys.rep(&BigInt::from(n))));
            }
            Ok(emit(out, &text))
        }
        Cmd::Beta {
            builtin,
            poly,
            root_index,
            x,
            digits,
        } => {
            let beta = resolve_beta(builtin.as_deref(), poly.as_deref(), *root_index)?;
            let q = parse_rational(x)?;
            let elem = FieldElement::from_rational(beta.clone(), q);
            let mut exp = beta_expand(&beta, elem).map_err(|e| e.to_string())?;
            let (ds, cycle) = exp.detect_cycle(*digits);
            let text = match cycle {
                Some((pre, _)) if exp.remainder().is_zero() => {
                    format!("{}\n", PeriodicWord::new(ds[..pre].to_vec(), vec![0]))
                }
                Some((pre, per)) => {
                    format!(
                        "{}\n",
                        PeriodicWord::new(ds[..pre].to_vec(), ds[pre..pre + per].to_vec())
                    )
                }
                None => {
                    let s: String = ds.iter().take(*digits).map(|d| d.to_string()).collect();
                    format!("{s}\n")
                }
            };
            Ok(emit(out, &text))
        }
        Cmd::Automaton => {
            let sys = resolve_system(&cli.system)?;
            let dfa = language_dfa(&sys, 12).map_err(|e| e.to_string())?;
            let text = match cli.format {
                Format::Dot => dfa.to_dot(),
                Format::Json => dfa.to_json().map_err(|e| e.to_string())?,
                _ => {
                    let mut t = format!(
                        "numeration language automaton: {} states over {:?}\n",
                        dfa.num_states(),
                        dfa.alphabet()
                    );
                    for q in 0..dfa.num_states() {
                        for &a in dfa.alphabet() {
                            if let Some(r) = dfa.step(q, a) {
                                t.push_str(&format!("  q{q} --{a}--> q{r}\n"));
                            }
                        }
                    }
                    t
                }
            };
            Ok(emit(out, &text))
        }
        Cmd::Substitution => {
            let sys = resolve_system(&cli.system)?;
            let seq = terms_sequence(&sys)?;
            let (sub, coding) = seq.substitution().map_err(|e| e.to_string())?;
            let mut text = String::new();
            for q in 0..sub.alphabet_len() {
                let image: Vec<String> = sub.image(q).iter().map(|l| format!("q{l}")).collect();
                text.push_str(&format!("q{q} -> {}\n", image.join(" ")));
            }
            text.push_str(&format!(
                "coding: {}\n",
                coding
                    .iter()
                    .enumerate()
                    .map(|(q, c)| format!("q{q}:{c}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
            Ok(emit(out, &text))
        }
        Cmd::Complexity { max_len, prefix } => {
            let sys = resolve_system(&cli.system)?;
            let seq = terms_sequence(&sys)?;
            let word = seq.prefix(*prefix);
            let table = parryseq::sequences::complexity::factor_complexity(&word, *max_len)
                .map_err(|e| e.to_string())?;
            let mut text = String::from("n,p(n),p(n)/n\n");
            for (i, &p) in table.iter().enumerate() {
                let n = i + 1;
                text.push_str(&format!("{n},{p},{:.4}\n", p as f64 / n as f64));
            }
            Ok(emit(out, &text))
        }
        Cmd::Kernel { max_len, window } => {
            let sys = resolve_system(&cli.system)?;
            let seq = terms_sequence(&sys)?;
            let table = kernel(&seq, *max_len, *window).map_err(|e| e.to_string())?;
            Ok(emit(out, &format!("{}\n", table.to_json())))
        }
        Cmd::Kernel2d { max_len, window } => {
            let sys = resolve_system(&cli.system)?;
            let seq = terms_sequence(&sys)?;
            let machine2d = pair_product_dfao(seq.machine(), seq.machine(), |a, b| a ^ b)
                .map_err(|e| e.to_string())?;
            let table = kernel2d(&machine2d, &sys, seq.language(), *max_len, *window)
                .map_err(|e| e.to_string())?;
            let quotients = right_quotients(seq.language());
            let forward =
                kernel2d_to_forward_dfao(&table, &quotients).map_err(|e| e.to_string())?;
            let original = grid_from_machine(&machine2d, &sys, 30, 30);
            let rebuilt = grid_from_machine(&forward, &sys, 30, 30);
            let mut text = table.to_json();
            text.push_str(&format!(
                "\nround trip on [0,30)^2: {}\n",
                if original == rebuilt { "ok" } else { "MISMATCH" }
            ));
            Ok(emit(out, &text))
        }
        Cmd::Reproduce { name, all, parallel } => {
            let names: Vec<&str> = match (name, all) {
                (Some(n), false) => {
                    if !experiments::REGISTRY.contains(&n.as_str()) {
                        return Err(format!(
                            "unknown experiment {n}; known: {}",
                            experiments::REGISTRY.join(", ")
                        ));
                    }
                    vec![n.as_str()]
                }
                (None, _) => experiments::REGISTRY.to_vec(),
                (Some(_), true) => return Err("give a name or --all, not both".into()),
            };
            let reports: Vec<_> = if *parallel {
                std::thread::scope(|scope| {
                    let handles: Vec<_> = names
                        .iter()
                        .map(|n| scope.spawn(move || experiments::run(n)))
                        .collect();
                    handles.into_iter().map(|h| h.join().unwrap()).collect()
                })
            } else {
                names.iter().map(|n| experiments::run(n)).collect()
            };
            let mut text = String::new();
            let mut ok = true;
            for r in reports {
                let r = r.map_err(|e| e.to_string())?;
                ok &= r.passed;
                if cli.format == Format::Csv {
                    if let Some(data) = &r.data {
                        text.push_str(data);
                        continue;
                    }
                }
                text.push_str(&format!("{r}\n"));
            }
            let code = emit(out, &text);
            Ok(if ok { code } else { ExitCode::from(1) })
        }
        Cmd::ListBuiltins => {
            let mut text = String::new();
            for (name, desc) in BUILTINS {
                text.push_str(&format!("{name}: {desc}\n"));
            }
            Ok(emit(out, &text))
        }
    }
}
