mod cache;

use std::io::{IsTerminal, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use peakalg::combinatorics::{Composition, IntVector};
use peakalg::json::{AnyElement, ElementWire, TableauWire};
use peakalg::nsqf::{expand_in_nsqf, nsqf, pieri, pieri_peak, s_to_q, MatrixPair};
use peakalg::nsym::{h_to_e, h_to_r, to_h, BasisTag, NSymElement};
use peakalg::peak::{odd_q_coordinates, to_pi};
use peakalg::qsym::{to_f, to_k, to_m, QBasis, QSymElement};
use peakalg::rational;
use peakalg::tableaux::{pct, poset_covers};
use peakalg::verify::{assemble_scan, check_scan_bound, run_suite, scan_degree, Suite, SuiteReport, VerifyOptions};
use peakalg::Error;

#[derive(Parser, Debug)]
#[command(name = "peakalg", version, about = "Exact computations in the peak algebra and its dual")]
struct Cli {
    /// Output format; defaults to pretty on a terminal and json otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for parallel commands.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Report elapsed wall time.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rewrite a basis element or a JSON element in another basis.
    Expand(ExpandArgs),
    /// Print a transition matrix over the peak compositions of n.
    Matrix {
        #[arg(long)]
        n: u32,
        /// One of Q,S  Q,Pi  Sbar,Pi  Pi,Sbar  SbarStar,K.
        #[arg(long)]
        pair: String,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        /// Top degree for the Euler relations.
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Check nonnegativity, integrality and unitriangularity of M_n(Pi,Sbar).
    ScanConjecture {
        #[arg(long)]
        max_n: u32,
    },
    /// Enumerate peak composition tableaux.
    Pct {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        content: String,
    },
    /// Right Pieri product with Q_s in the S basis.
    Pieri {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        s: u32,
        /// Restrict to peak compositions.
        #[arg(long)]
        peak: bool,
    },
    /// Cover relations above a peak composition.
    Covers {
        #[arg(long)]
        alpha: String,
    },
}

#[derive(Args, Debug)]
struct ExpandArgs {
    /// Source basis: H, E, R, Q, Pi, S, M, F, K, SStar, SBarStar.
    #[arg(long, requires = "index", conflicts_with = "element")]
    basis: Option<String>,
    /// Index of the basis element; S also accepts integer vectors.
    #[arg(long, allow_hyphen_values = true)]
    index: Option<String>,
    /// Element as JSON: {"basis": "Q", "terms": [{"index": [2,1], "coeff": "1"}]}.
    #[arg(long)]
    element: Option<String>,
    /// Target basis.
    #[arg(long)]
    to: String,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Ok,
    Verified,
    Violation,
}

impl Status {
    fn exit_code(self) -> u8 {
        match self {
            Status::Ok | Status::Verified => 0,
            Status::Violation => 2,
        }
    }
}

struct Output {
    status: Status,
    payload: Value,
    csv: String,
    pretty: String,
}

type CmdResult = Result<Output, String>;

fn err(e: Error) -> String {
    e.to_string()
}

fn parse_comp(what: &str, s: &str) -> Result<Composition, String> {
    s.parse::<Composition>().map_err(|e| format!("--{what}: {e}"))
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable payload")
}

fn csv_quote(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn join(parts: &[u32]) -> String {
    parts.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn element_output(wire: ElementWire, pretty: String) -> Output {
    let mut csv = String::from("index,coeff\n");
    for t in &wire.terms {
        csv.push_str(&format!("{},{}\n", csv_quote(&join(&t.index)), t.coeff));
    }
    Output { status: Status::Ok, payload: to_value(&wire), csv, pretty: pretty + "\n" }
}

fn nsym_output(a: &NSymElement) -> Output {
    element_output(ElementWire::from(a), a.to_string())
}

fn qsym_output(a: &QSymElement) -> Output {
    element_output(ElementWire::from(a), a.to_string())
}

fn source_element(args: &ExpandArgs) -> Result<AnyElement, String> {
    if let Some(json) = &args.element {
        let wire: ElementWire = serde_json::from_str(json).map_err(|e| format!("--element: {e}"))?;
        return wire.decode().map_err(|e| format!("--element: {e}"));
    }
    let (Some(basis), Some(index)) = (&args.basis, &args.index) else {
        return Err("expand needs --basis with --index, or --element".into());
    };
    if let Ok(b) = basis.parse::<BasisTag>() {
        if b == BasisTag::S {
            if let Ok(c) = index.parse::<Composition>() {
                return Ok(AnyElement::NSym(NSymElement::basis_element(b, c)));
            }
            // Integer vectors are evaluated directly to Q words.
            let v = index.parse::<IntVector>().map_err(|e| format!("--index: {e}"))?;
            return Ok(AnyElement::NSym(nsqf(&v)));
        }
        return Ok(AnyElement::NSym(NSymElement::basis_element(b, parse_comp("index", index)?)));
    }
    if let Ok(b) = basis.parse::<QBasis>() {
        let element = QSymElement::basis_element(b, parse_comp("index", index)?).map_err(err)?;
        return Ok(AnyElement::QSym(element));
    }
    Err(format!("--basis: unknown basis {basis:?}"))
}

fn expand_nsym(a: &NSymElement, to: BasisTag) -> peakalg::Result<NSymElement> {
    let a = if a.basis() == BasisTag::S { s_to_q(a)? } else { a.clone() };
    match to {
        BasisTag::H => to_h(&a),
        BasisTag::E => h_to_e(&to_h(&a)?),
        BasisTag::R => h_to_r(&to_h(&a)?),
        BasisTag::Q if a.basis() == BasisTag::Q => Ok(a),
        BasisTag::Q => odd_q_coordinates(&a),
        BasisTag::Pi => to_pi(&a),
        BasisTag::S => match a.homogeneous_degree() {
            Some(n) => expand_in_nsqf(&a, n),
            None if a.is_zero() => Ok(NSymElement::zero(BasisTag::S)),
            None => Err(Error::InvalidInput("expansion in S needs a homogeneous element".into())),
        },
    }
}

fn cmd_expand(args: &ExpandArgs) -> CmdResult {
    match source_element(args)? {
        AnyElement::NSym(a) => {
            let to = args.to.parse::<BasisTag>().map_err(|_| format!("--to: {} is not an NSym basis", args.to))?;
            Ok(nsym_output(&expand_nsym(&a, to).map_err(err)?))
        }
        AnyElement::QSym(a) => {
            let to = args.to.parse::<QBasis>().map_err(|_| format!("--to: {} is not a QSym basis", args.to))?;
            let out = match to {
                QBasis::M => to_m(&a),
                QBasis::F => to_f(&a),
                QBasis::K => {
                    let degrees: std::collections::BTreeSet<u32> = a.terms().keys().map(Composition::size).collect();
                    if degrees.len() > 1 {
                        return Err("expansion in K needs a homogeneous element".into());
                    }
                    to_k(&a, degrees.into_iter().next().unwrap_or(0))
                }
                QBasis::SStar | QBasis::SBarStar => return Err(format!("--to: expansion into {} is not supported", to.name())),
            };
            Ok(qsym_output(&out.map_err(err)?))
        }
    }
}

fn cmd_matrix(n: u32, pair: &str) -> CmdResult {
    let pair = pair.parse::<MatrixPair>().map_err(err)?;
    let m = cache::matrix(n, pair, cache::dir_from_env()).map_err(err)?;
    Ok(Output { status: Status::Ok, payload: to_value(&*m), csv: m.to_csv(), pretty: m.to_pretty() })
}

fn cmd_verify(suite: &str, max_n: Option<u32>) -> CmdResult {
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse::<Suite>().map_err(err)?] };
    let mut opts = VerifyOptions::default();
    if let Some(m) = max_n {
        opts.euler_max_n = m;
    }
    let reports: Vec<SuiteReport> = suites.par_iter().map(|&s| run_suite(s, &opts)).collect();
    let passed = reports.iter().all(SuiteReport::passed);
    let (mut csv, mut pretty) = (String::from("suite,check,passed,detail\n"), String::new());
    let total: usize = reports.iter().map(|r| r.checks.len()).sum();
    let failed: usize = reports.iter().map(|r| r.failures().count()).sum();
    for r in &reports {
        for c in &r.checks {
            let detail = c.detail.clone().unwrap_or_default();
            csv.push_str(&format!("{},{},{},{}\n", r.suite, csv_quote(&c.name), c.passed, csv_quote(&detail)));
            let mark = if c.passed { "PASS" } else { "FAIL" };
            pretty.push_str(&format!("{mark} [{}] {}", r.suite, c.name));
            if !c.passed {
                pretty.push_str(&format!(": {detail}"));
            }
            pretty.push('\n');
        }
    }
    pretty.push_str(&format!("{} of {total} checks passed\n", total - failed));
    Ok(Output {
        status: if passed { Status::Verified } else { Status::Violation },
        payload: json!({ "passed": passed, "total": total, "failed": failed, "suites": reports }),
        csv,
        pretty,
    })
}

fn cmd_scan(max_n: u32) -> CmdResult {
    check_scan_bound(max_n).map_err(err)?;
    let degrees = (1..=max_n).into_par_iter().map(scan_degree).collect::<peakalg::Result<Vec<_>>>().map_err(err)?;
    let report = assemble_scan(max_n, degrees);
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut csv = String::from("n,size,nonnegative,integral,unitriangular,matches_reference,witnesses\n");
    let mut pretty = String::new();
    for d in &report.degrees {
        let reference = d.matches_reference.map(|b| b.to_string()).unwrap_or_default();
        csv.push_str(&format!(
            "{},{},{},{},{},{reference},{}\n",
            d.n,
            d.size,
            d.nonnegative,
            d.integral,
            d.unitriangular,
            d.witnesses.len()
        ));
        pretty.push_str(&format!(
            "n={:<3} size={:<4} nonnegative={:<3} integral={:<3} unitriangular={:<3}",
            d.n,
            d.size,
            yes(d.nonnegative),
            yes(d.integral),
            yes(d.unitriangular)
        ));
        if let Some(m) = d.matches_reference {
            pretty.push_str(if m { " reference=match" } else { " reference=MISMATCH" });
        }
        pretty.push('\n');
        for w in &d.witnesses {
            pretty.push_str(&format!("    {} fails at ({}; {}) = {}\n", w.property, join(&w.row), join(&w.col), w.value));
        }
    }
    pretty.push_str(if report.verified { "verified for every scanned degree\n" } else { "violation found\n" });
    Ok(Output {
        status: if report.verified { Status::Verified } else { Status::Violation },
        payload: to_value(&report),
        csv,
        pretty,
    })
}

fn cmd_pct(shape: &str, content: &str) -> CmdResult {
    let shape = parse_comp("shape", shape)?;
    let content = parse_comp("content", content)?;
    if shape.size() != content.size() {
        return Err(format!("shape {shape} has size {} but content {content} has size {}", shape.size(), content.size()));
    }
    let tableaux = pct(&shape, &content).map_err(err)?;
    let weight_sum: rational::Rational = tableaux.iter().map(|t| t.weight()).sum();
    let wires: Vec<TableauWire> = tableaux.iter().map(|t| TableauWire::from(&**t)).collect();
    let mut csv = String::from("rows,p,m,weight\n");
    let mut pretty = String::new();
    for (t, w) in tableaux.iter().zip(&wires) {
        let rows: Vec<String> = w.rows.iter().map(|r| join(r)).collect();
        csv.push_str(&format!("{},{},{},{}\n", csv_quote(&rows.join("|")), w.p, w.m, w.weight));
        pretty.push_str(&format!("{t}p={} m={} weight={}\n\n", w.p, w.m, w.weight));
    }
    let noun = if wires.len() == 1 { "tableau" } else { "tableaux" };
    pretty.push_str(&format!("{} {noun}, weight sum {}\n", wires.len(), rational::format(&weight_sum)));
    Ok(Output {
        status: Status::Ok,
        payload: json!({
            "shape": shape,
            "content": content,
            "count": wires.len(),
            "weight_sum": rational::format(&weight_sum),
            "tableaux": wires,
        }),
        csv,
        pretty,
    })
}

fn cmd_pieri(alpha: &str, s: u32, peak: bool) -> CmdResult {
    let alpha = parse_comp("alpha", alpha)?;
    let out = if peak { pieri_peak(&alpha, s) } else { pieri(&alpha, s) };
    Ok(nsym_output(&out.map_err(err)?))
}

fn cmd_covers(alpha: &str) -> CmdResult {
    let alpha = parse_comp("alpha", alpha)?;
    let edges = poset_covers(&alpha).map_err(err)?;
    let payload: Vec<Value> = edges.iter().map(|e| json!({ "lower": e.lower, "upper": e.upper, "row": e.row })).collect();
    let mut csv = String::from("lower,upper,row\n");
    let mut pretty = String::new();
    for e in &edges {
        csv.push_str(&format!("{},{},{}\n", csv_quote(&e.lower.to_string()), csv_quote(&e.upper.to_string()), e.row));
        pretty.push_str(&format!("{} -> {} (row {})\n", e.lower, e.upper, e.row));
    }
    Ok(Output { status: Status::Ok, payload: Value::Array(payload), csv, pretty })
}

fn dispatch(command: &Command) -> CmdResult {
    match command {
        Command::Expand(args) => cmd_expand(args),
        Command::Matrix { n, pair } => cmd_matrix(*n, pair),
        Command::Verify { suite, max_n } => cmd_verify(suite, *max_n),
        Command::ScanConjecture { max_n } => cmd_scan(*max_n),
        Command::Pct { shape, content } => cmd_pct(shape, content),
        Command::Pieri { alpha, s, peak } => cmd_pieri(alpha, *s, *peak),
        Command::Covers { alpha } => cmd_covers(alpha),
    }
}

fn emit(text: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(text.as_bytes());
    let _ = stdout.flush();
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let format = cli.format.unwrap_or(if std::io::stdout().is_terminal() { Format::Pretty } else { Format::Json });

    let start = Instant::now();
    let result = match cli.jobs {
        Some(j) => match rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build() {
            Ok(pool) => pool.install(|| dispatch(&cli.command)),
            Err(e) => Err(format!("cannot start worker pool: {e}")),
        },
        None => dispatch(&cli.command),
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;

    match result {
        Ok(out) => {
            match format {
                Format::Json => {
                    let mut envelope = json!({ "status": out.status, "payload": out.payload });
                    if cli.timing {
                        envelope["elapsed_ms"] = json!(elapsed_ms);
                    }
                    emit(&format!("{envelope}\n"));
                }
                Format::Csv => emit(&out.csv),
                Format::Pretty => emit(&out.pretty),
            }
            if cli.timing && format != Format::Json {
                eprintln!("elapsed: {elapsed_ms} ms");
            }
            ExitCode::from(out.status.exit_code())
        }
        Err(message) => {
            if format == Format::Json {
                let mut envelope = json!({ "status": "error", "error": message });
                if cli.timing {
                    envelope["elapsed_ms"] = json!(elapsed_ms);
                }
                emit(&format!("{envelope}\n"));
            }
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}
