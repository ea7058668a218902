//! Command-line front end: analyze a code file, construct the named code
//! families, run the exhaustive bound search, and replay the built-in
//! verification battery.
//!
//! Exit codes: 0 success, 1 parse or usage errors (and failed verification
//! claims), 2 internal cross-check mismatch, 3 enumeration cap exceeded,
//! 4 bound violation discovered by `search`.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use covdim::algebra::Field;
use covdim::code::Gamma;
use covdim::construct::{self, BlockSpec};
use covdim::files;
use covdim::matroid::MatroidView;
use covdim::search::{self, SearchParams};
use covdim::verify::{self, ClaimContext};
use covdim::{Caps, Error};

#[derive(Parser)]
#[command(
    name = "covdim",
    version,
    about = "Covering dimensions, critical exponents and support weights of linear codes over small finite fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze a code file: distances, covering dimension, bound class.
    Analyze(AnalyzeArgs),
    /// Construct a named code family and write it as a code file.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Exhaustively classify all small codes against the covering bound.
    Search(SearchArgs),
    /// Re-derive and check every built-in reference result.
    #[command(name = "verify-paper")]
    VerifyPaper(VerifyArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Code file (header `q k n`, then k rows of n entries; `#` comments).
    file: PathBuf,
    /// Emit a single JSON object instead of text lines.
    #[arg(long)]
    json: bool,
    /// Also print the characteristic polynomial of the induced matroid.
    #[arg(long)]
    charpoly: bool,
    /// Also print the support weight distribution at this subcode dimension
    /// (repeatable).
    #[arg(long = "swd", value_name = "R")]
    swd: Vec<usize>,
    /// Also print a basis of a full-support subcode of dimension gamma.
    #[arg(long)]
    witness: bool,
}

#[derive(Subcommand)]
enum Family {
    /// All projective points of PG(k-1, q) as columns.
    DualHamming {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Evaluation-point Reed-Solomon code (extended when n = q + 1).
    Rs {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Binary [n, n-1] even-weight code, generator [I | all-ones column].
    ParityDual {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Point-set block construction in PG(k-1, q).
    Block {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        m: usize,
        /// Coordinates of T, 1-based, comma separated (default: the last m).
        #[arg(long)]
        t: Option<String>,
        /// Point encodings of the family V, comma separated (default: the
        /// first m-1 canonical points supported off T).
        #[arg(long)]
        v: Option<String>,
        #[arg(short, long)]
        out: Option<PathBuf>,
        /// Verify the block property and minimality, printing the verdicts
        /// and the point listing.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    q: u32,
    #[arg(long = "n-max")]
    n_max: usize,
    #[arg(long = "k-max")]
    k_max: usize,
    /// Only distinct projective points as columns (guarantees d_perp >= 3).
    #[arg(long)]
    simple: bool,
    /// Worker threads (default: all cores). Reports do not depend on this.
    #[arg(long)]
    workers: Option<usize>,
    /// Write the canonical JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
    /// Also write the verdict rows as CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Resume from the cursor of an interrupted run.
    #[arg(long)]
    resume: Option<u64>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Run only claims whose id contains this substring.
    #[arg(long)]
    only: Option<String>,
    /// List claim ids without running anything.
    #[arg(long)]
    list: bool,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 0xC0D1)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    workers: Option<usize>,
}

fn exit_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } => 1,
        Error::InternalCheck(_) => 2,
        Error::CapExceeded { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let caps = match Caps::from_env() {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let outcome = match cli.cmd {
        Cmd::Analyze(args) => cmd_analyze(args, &caps),
        Cmd::Construct { family } => cmd_construct(family, &caps),
        Cmd::Search(args) => cmd_search(args, &caps),
        Cmd::VerifyPaper(args) => cmd_verify(args, &caps),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_for(&e))
        }
    }
}

#[derive(Serialize)]
struct AnalyzeReport {
    n: usize,
    k: usize,
    q: u32,
    d: usize,
    d_perp: Option<usize>,
    gamma: Gamma,
    critical_exponent: Gamma,
    kung_slack: Option<i64>,
    class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    charpoly: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    swd: Vec<SwdReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<Vec<Vec<u32>>>,
}

#[derive(Serialize)]
struct SwdReport {
    r: usize,
    counts: Vec<(usize, u64)>,
}

fn cmd_analyze(args: AnalyzeArgs, caps: &Caps) -> covdim::Result<u8> {
    let text = std::fs::read_to_string(&args.file).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("{}: {e}", args.file.display()),
    })?;
    let code = files::parse_code_file(&text)?;

    let d = code.min_weight(caps)?;
    let d_perp = if code.k() == code.n() {
        None
    } else {
        Some(code.dual_min_weight(caps)?)
    };
    let sub = code.covering_dimension_subcode(caps)?;
    let avoid = code.covering_dimension_avoidance(caps)?;
    if sub.value != avoid.value {
        return Err(Error::InternalCheck(format!(
            "covering-dimension routes disagree: subcode {} vs avoidance {}",
            sub.value, avoid.value
        )));
    }
    let mv = MatroidView::new(&code);
    let ce = mv.critical_exponent(caps)?;
    if ce != sub.value {
        return Err(Error::InternalCheck(format!(
            "critical exponent {ce} differs from covering dimension {}",
            sub.value
        )));
    }
    let verdict = search::classify(&code, caps)?;

    let charpoly = if args.charpoly {
        Some(mv.characteristic_polynomial(caps)?)
    } else {
        None
    };
    let mut swd = Vec::new();
    for &r in &args.swd {
        let table = code.support_weight_distribution(r, caps)?;
        let counts: Vec<(usize, u64)> = table
            .counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(i, &c)| (i, c))
            .collect();
        swd.push(SwdReport { r, counts });
    }
    let witness = if args.witness {
        sub.witness.as_ref().map(|w| {
            (0..w.rows())
                .map(|i| w.row(i).iter().map(|e| e.value()).collect())
                .collect()
        })
    } else {
        None
    };

    let report = AnalyzeReport {
        n: code.n(),
        k: code.k(),
        q: code.field().order(),
        d,
        d_perp,
        gamma: sub.value,
        critical_exponent: ce,
        kung_slack: verdict.kung_slack,
        class: verdict.class.to_string(),
        charpoly: charpoly.as_ref().map(|p| p.coefficients().to_vec()),
        swd,
        witness,
    };

    if args.json {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
        return Ok(0);
    }

    println!("n: {}", report.n);
    println!("k: {}", report.k);
    println!("q: {}", report.q);
    println!("d: {}", report.d);
    match report.d_perp {
        Some(d) => println!("d_perp: {d}"),
        None => println!("d_perp: inf (dual is the zero code)"),
    }
    println!(
        "gamma: {} (subcode search and subspace avoidance agree)",
        report.gamma
    );
    println!("critical_exponent: {}", report.critical_exponent);
    match report.kung_slack {
        Some(s) => println!("kung_slack: {s}"),
        None => println!("kung_slack: n/a"),
    }
    println!("class: {}", report.class);
    if let Some(p) = &charpoly {
        println!("charpoly: {p}");
        println!("charpoly_coefficients: {:?}", p.coefficients());
    }
    for table in &report.swd {
        let entries: Vec<String> = table
            .counts
            .iter()
            .map(|(i, c)| format!("A_{i}={c}"))
            .collect();
        println!("swd r={}: {}", table.r, entries.join(" "));
    }
    if let Some(w) = &report.witness {
        println!("witness (rows span a full-support subcode):");
        for row in w {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            println!("  {}", cells.join(" "));
        }
    }
    Ok(0)
}

fn write_or_print(path: &Option<PathBuf>, content: &str) -> covdim::Result<()> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn parse_csv_list(s: &str) -> covdim::Result<Vec<u64>> {
    s.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u64>()
                .map_err(|_| Error::InvalidParameter(format!("bad list entry `{tok}`")))
        })
        .collect()
}

fn decode_point(
    field: &Field,
    enc: u64,
    k: usize,
) -> covdim::Result<Vec<covdim::algebra::FieldElem>> {
    let q = field.order() as u64;
    let mut rest = enc;
    let mut v = Vec::with_capacity(k);
    for _ in 0..k {
        v.push(field.elem((rest % q) as u32));
        rest /= q;
    }
    if rest != 0 {
        return Err(Error::InvalidParameter(format!(
            "encoding {enc} does not fit a length-{k} vector over GF({q})"
        )));
    }
    Ok(v)
}

fn cmd_construct(family: Family, caps: &Caps) -> covdim::Result<u8> {
    match family {
        Family::DualHamming { q, k, out } => {
            let code = construct::dual_hamming(Field::from_order(q)?, k, caps)?;
            write_or_print(&out, &files::write_code_file(&code))?;
        }
        Family::Rs { q, n, k, out } => {
            let code = construct::reed_solomon(Field::from_order(q)?, n, k, caps)?;
            write_or_print(&out, &files::write_code_file(&code))?;
        }
        Family::ParityDual { n, out } => {
            let code = construct::binary_parity_dual(n)?;
            write_or_print(&out, &files::write_code_file(&code))?;
        }
        Family::Block {
            q,
            k,
            m,
            t,
            v,
            out,
            verify,
        } => {
            let field = Field::from_order(q)?;
            let t = match t {
                Some(s) => Some(
                    parse_csv_list(&s)?
                        .into_iter()
                        .map(|c| {
                            if c == 0 {
                                Err(Error::InvalidParameter("T coordinates are 1-based".into()))
                            } else {
                                Ok(c as usize - 1)
                            }
                        })
                        .collect::<covdim::Result<Vec<usize>>>()?,
                ),
                None => None,
            };
            let v = match v {
                Some(s) => {
                    let mut pts = Vec::new();
                    for enc in parse_csv_list(&s)? {
                        pts.push(decode_point(&field, enc, k)?);
                    }
                    Some(pts)
                }
                None => None,
            };
            let spec = BlockSpec::new(field, k, m, t, v)?;
            let points = construct::block_points(&spec)?;
            let code = construct::code_from_points(&points)?;
            write_or_print(&out, &files::write_code_file(&code))?;
            if verify {
                let r = k - m;
                let block = construct::is_r_block(&points, r, caps)?;
                let minimal = construct::is_minimal_block(&points, r, caps)?;
                println!("points ({}):", points.len());
                print!("{}", files::point_listing(&points));
                println!("is {r}-block: {}", block.holds);
                println!("minimal: {}", minimal.minimal);
                if let Some(i) = minimal.missing_tangent {
                    println!("point without tangent: index {i}");
                }
                if let Some(p) = out.as_deref() {
                    let listing_path = listing_path(p);
                    std::fs::write(&listing_path, files::point_listing(&points)).map_err(|e| {
                        Error::InvalidParameter(format!(
                            "cannot write {}: {e}",
                            listing_path.display()
                        ))
                    })?;
                }
            }
        }
    }
    Ok(0)
}

fn listing_path(code_path: &Path) -> PathBuf {
    let mut p = code_path.as_os_str().to_owned();
    p.push(".points");
    PathBuf::from(p)
}

fn cmd_search(args: SearchArgs, caps: &Caps) -> covdim::Result<u8> {
    let params = SearchParams {
        q: args.q,
        n_max: args.n_max,
        k_max: args.k_max,
        simple_only: args.simple,
        start_cursor: args.resume.unwrap_or(0),
    };
    let workers = args
        .workers
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()));
    let start = std::time::Instant::now();
    let report = search::run_search(&params, caps, workers)?;
    eprintln!(
        "examined {} codes in {} ms with {workers} workers",
        report.summary.examined,
        start.elapsed().as_millis()
    );

    let json = files::report_json(&report);
    match &args.report {
        Some(p) => std::fs::write(p, &json)
            .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", p.display())))?,
        None => print!("{json}"),
    }
    if let Some(p) = &args.csv {
        std::fs::write(p, files::verdicts_csv(&report))
            .map_err(|e| Error::InvalidParameter(format!("cannot write {}: {e}", p.display())))?;
    }
    println!(
        "summary: examined={} holds_strict={} dual_hamming={} binary_parity={} violations={} not_applicable={} open_regime={}",
        report.summary.examined,
        report.summary.holds_strict,
        report.summary.exception_dual_hamming,
        report.summary.exception_binary_parity,
        report.summary.violation,
        report.summary.not_applicable,
        report.summary.open_regime_unresolved,
    );
    if !report.violations.is_empty() {
        eprintln!("bound violations found: {}", report.violations.len());
        return Ok(4);
    }
    if let Some(cursor) = report.cursor {
        eprintln!("interrupted by a cap; resume with --resume {cursor}");
        return Ok(3);
    }
    Ok(0)
}

fn cmd_verify(args: VerifyArgs, caps: &Caps) -> covdim::Result<u8> {
    if args.list {
        for (id, desc) in verify::claim_ids() {
            println!("{id}: {desc}");
        }
        return Ok(0);
    }
    let ctx = ClaimContext {
        caps: caps.clone(),
        seed: args.seed,
        workers: args
            .workers
            .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get())),
    };
    let outcomes = verify::run_matching(args.only.as_deref(), &ctx);
    if outcomes.is_empty() {
        eprintln!("no claim matches the filter");
        return Ok(1);
    }
    let mut all_pass = true;
    for o in &outcomes {
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status}  {:<24} {:>6} ms  {}", o.id, o.millis, o.detail);
        all_pass &= o.pass;
    }
    Ok(if all_pass { 0 } else { 1 })
}
