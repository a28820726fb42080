//! Command-line front end: decisions, regions, tables, figure data and
//! Frobenius bases. JSON goes to stdout; timing goes to stderr only.

mod golden;

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use euler_esa::esa::{self, Certification, EsaRegion, Verdict};
use euler_esa::exact::rational::{int, parse_rational, rat, to_exact_string, Rational};
use euler_esa::frobenius::{locus_plot_data, select_fundamental_system, BasisSelection, SolutionKind};
use euler_esa::indicial::IndicialSpec;
use euler_esa::roots::trajectory::{euler_trajectories, root_trajectories, write_csv, Labeling};
use euler_esa::stability::signs_q5_20;
use euler_esa::Config;
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

const EXIT_NOT_ESA: u8 = 10;
const EXIT_MISMATCH: u8 = 20;
const EXIT_USAGE: u8 = 2;
const EXIT_FAILURE: u8 = 1;

#[derive(Parser)]
#[command(name = "euler-esa", version, about = "Certified essential self-adjointness decisions for Euler-type operators")]
struct Cli {
    /// TOML file with precision_ladder, max_precision_bits, l_max, series_term_cap.
    #[arg(long, global = true, env = "EULER_ESA_CONFIG")]
    config: Option<PathBuf>,
    /// Emit the JSON envelope instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide ESA of one radial operator at a rational coupling.
    Decide(DecideArgs),
    /// ESA region in c of one radial operator, or of all ℓ ≤ lmax.
    Region(RegionArgs),
    /// Regenerate a reference table and compare it with the embedded copy.
    Table(TableArgs),
    /// Write plotting data as CSV.
    Figure(FigureArgs),
    /// Resonance classification and fundamental system of τ₂(c₁, c₂)y = λy.
    Basis(BasisArgs),
    /// Exploratory table of γ_{m,3,0} against (2m²/π)^{2m}.
    Conjecture(ConjectureArgs),
}

#[derive(Args)]
struct DecideArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
    /// Integer, p/q, or decimal (converted exactly).
    #[arg(long, allow_hyphen_values = true)]
    c: String,
}

#[derive(Args)]
struct RegionArgs {
    #[arg(long)]
    m: u32,
    #[arg(long)]
    n: u32,
    #[arg(long, conflicts_with = "all_l")]
    l: Option<u32>,
    /// Intersect over 0 ≤ ℓ ≤ lmax.
    #[arg(long)]
    all_l: bool,
    #[arg(long, requires = "all_l")]
    lmax: Option<u32>,
    /// Significant digits in the rendering.
    #[arg(long, default_value_t = 5)]
    digits: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Table {
    Gamma2,
    Signs520,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    which: Table,
    /// Replace the embedded reference data.
    #[arg(long, hide = true)]
    golden: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Figure {
    Fig1,
    Fig2,
    Fig3,
}

#[derive(Args)]
struct FigureArgs {
    #[arg(long, value_enum)]
    which: Figure,
    /// Fixed c₁ for fig1.
    #[arg(long, allow_hyphen_values = true)]
    c1: Option<String>,
    /// Output directory.
    #[arg(long)]
    out: PathBuf,
    /// Grid points per axis.
    #[arg(long, default_value_t = 200)]
    samples: u32,
    /// Sweep start (c₂ for fig1, c for fig3).
    #[arg(long, allow_hyphen_values = true)]
    from: Option<String>,
    /// Sweep end.
    #[arg(long, allow_hyphen_values = true)]
    to: Option<String>,
}

#[derive(Args)]
struct BasisArgs {
    #[arg(long, allow_hyphen_values = true)]
    c1: String,
    #[arg(long, allow_hyphen_values = true)]
    c2: String,
    /// Spectral parameter, e.g. `1`, `-2.5`, `1+2i`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    lambda: String,
}

#[derive(Args)]
struct ConjectureArgs {
    #[arg(long, default_value_t = 12)]
    m_max: u32,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: EXIT_USAGE, message: message.into() }
    }
}

impl From<euler_esa::Error> for Failure {
    fn from(e: euler_esa::Error) -> Self {
        let code = match e {
            euler_esa::Error::ParseRational(_) | euler_esa::Error::InvalidSpec(_) => EXIT_USAGE,
            _ => EXIT_FAILURE,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self { code: EXIT_FAILURE, message: e.to_string() }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Self { code: EXIT_FAILURE, message: e.to_string() }
    }
}

/// Payload plus exit code of a successful run.
struct Outcome {
    result: Value,
    text: String,
    certification: Value,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let outcome = load_config(cli.config.as_deref()).and_then(|config| run(&cli.command, &config));
    eprintln!("elapsed_ms={}", start.elapsed().as_millis());
    match outcome {
        Ok(o) => {
            if cli.json {
                let envelope = json!({
                    "command": command_name(&cli.command),
                    "input": input_echo(&cli.command),
                    "result": o.result,
                    "certification": o.certification,
                });
                emit(&serde_json::to_string_pretty(&envelope).expect("JSON values serialize"));
            } else {
                emit(&o.text);
            }
            ExitCode::from(o.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn load_config(path: Option<&Path>) -> Result<Config, Failure> {
    let Some(path) = path else { return Ok(Config::default()) };
    let text = fs::read_to_string(path).map_err(|e| Failure::usage(format!("config {}: {e}", path.display())))?;
    toml::from_str(&text).map_err(|e| Failure::usage(format!("config {}: {e}", path.display())))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Decide(_) => "decide",
        Command::Region(_) => "region",
        Command::Table(_) => "table",
        Command::Figure(_) => "figure",
        Command::Basis(_) => "basis",
        Command::Conjecture(_) => "conjecture",
    }
}

fn input_echo(c: &Command) -> Value {
    match c {
        Command::Decide(a) => json!({"m": a.m, "n": a.n, "l": a.l, "c": a.c}),
        Command::Region(a) => json!({"m": a.m, "n": a.n, "l": a.l, "all_l": a.all_l, "lmax": a.lmax, "digits": a.digits}),
        Command::Table(a) => json!({"which": table_name(a.which)}),
        Command::Figure(a) => json!({"which": figure_name(a.which), "c1": a.c1, "out": a.out, "samples": a.samples}),
        Command::Basis(a) => json!({"c1": a.c1, "c2": a.c2, "lambda": a.lambda}),
        Command::Conjecture(a) => json!({"m_max": a.m_max}),
    }
}

fn table_name(t: Table) -> &'static str {
    match t {
        Table::Gamma2 => "gamma2",
        Table::Signs520 => "signs520",
    }
}

fn figure_name(f: Figure) -> &'static str {
    match f {
        Figure::Fig1 => "fig1",
        Figure::Fig2 => "fig2",
        Figure::Fig3 => "fig3",
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("payload serializes")
}

fn run(command: &Command, config: &Config) -> Result<Outcome, Failure> {
    match command {
        Command::Decide(a) => decide(a, config),
        Command::Region(a) => region(a, config),
        Command::Table(a) => table(a),
        Command::Figure(a) => figure(a, config),
        Command::Basis(a) => basis(a),
        Command::Conjecture(a) => conjecture(a, config),
    }
}

fn decide(a: &DecideArgs, config: &Config) -> Result<Outcome, Failure> {
    let spec = IndicialSpec::new(a.m, a.n, a.l, parse_rational(&a.c)?)?;
    let v = esa::esa_decide_radial_with(&spec, config)?;
    let count = v.count;
    let text = format!(
        "{} for (m, n, l, c) = ({}, {}, {}, {})\nroots with Re < -1/2: {}, on Re = -1/2: {}, Re > -1/2: {}\nHurwitz determinant: {}\nprecision: {} bits",
        v.verdict,
        a.m,
        a.n,
        a.l,
        to_exact_string(&spec.c),
        count.left,
        count.axis,
        count.right,
        v.certificate.hurwitz_det,
        v.certificate.precision_bits,
    );
    let certification = json!({"precision_bits": v.certificate.precision_bits, "exact": count.exact});
    let code = if v.verdict == Verdict::Esa { 0 } else { EXIT_NOT_ESA };
    Ok(Outcome { result: to_value(&v), text, certification, code })
}

fn region(a: &RegionArgs, config: &Config) -> Result<Outcome, Failure> {
    let r: EsaRegion = if a.all_l {
        esa::esa_region_full_with(a.m, a.n, a.lmax.unwrap_or(config.l_max), config)?
    } else {
        esa::esa_region_radial_with(a.m, a.n, a.l.unwrap_or(0), config)?
    };
    let display = r.render(a.digits);
    let mut text = display.clone();
    for x in &r.isolated_candidates {
        text.push_str(&format!("\nwarning: boundary candidate {} has non-ESA on both sides; not classified", x.to_decimal(a.digits)));
    }
    let certification = match &r.certification {
        Certification::Radial { l } => json!({"mode": "radial", "l": l}),
        Certification::UpToL { l_max, closed_form } => {
            json!({"mode": "up_to_l", "l_max": l_max, "closed_form_agrees": closed_form})
        }
        Certification::ClosedForm => json!({"mode": "closed_form"}),
    };
    let mut result = to_value(&r);
    result["display"] = Value::String(display);
    Ok(Outcome { result, text, certification, code: 0 })
}

fn table(a: &TableArgs) -> Result<Outcome, Failure> {
    let (labels, computed, expected): (Vec<String>, Vec<String>, Vec<String>) = match a.which {
        Table::Gamma2 => {
            let computed = (2..=12)
                .map(|n| {
                    let t = esa::gamma_threshold(2, n, 0)?;
                    Ok(t.value.exact_string().unwrap_or_else(|| t.value.to_decimal(20)))
                })
                .collect::<Result<Vec<_>, euler_esa::Error>>()?;
            let labels = (2..=12).map(|n| format!("n={n}")).collect();
            (labels, computed, golden::GAMMA2.iter().map(|s| s.to_string()).collect())
        }
        Table::Signs520 => {
            let computed = (0..=30).map(signs_q5_20).collect();
            let labels = (0..=30).map(|l| format!("l={l}")).collect();
            (labels, computed, golden::signs520().iter().map(|s| s.to_string()).collect())
        }
    };
    let expected = match &a.golden {
        Some(p) => golden::load(p)?,
        None => expected,
    };
    let mismatches = golden::diff(&labels, &computed, &expected);
    let rows: Vec<Value> = labels.iter().zip(&computed).map(|(l, c)| json!({"row": l, "value": c})).collect();
    let mut text: String =
        labels.iter().zip(&computed).map(|(l, c)| format!("{l}\t{c}")).collect::<Vec<_>>().join("\n");
    for (label, c, e) in &mismatches {
        eprintln!("mismatch {label}: computed {c}, reference {e}");
    }
    text.push_str(if mismatches.is_empty() { "\nmatches reference" } else { "\nDIFFERS from reference" });
    let result = json!({
        "rows": rows,
        "matches_reference": mismatches.is_empty(),
        "mismatches": mismatches.iter().map(|(l, c, e)| json!({"row": l, "computed": c, "reference": e})).collect::<Vec<_>>(),
    });
    let code = if mismatches.is_empty() { 0 } else { EXIT_MISMATCH };
    Ok(Outcome { result, text, certification: json!({"mode": "exact"}), code })
}

fn grid(from: &Rational, to: &Rational, samples: u32) -> Vec<Rational> {
    let n = samples.max(1);
    (0..=n).map(|i| from + (to - from) * rat(i as i64, n as i64)).collect()
}

fn parse_or(text: &Option<String>, default: Rational) -> Result<Rational, Failure> {
    text.as_deref().map_or(Ok(default), |s| parse_rational(s).map_err(Failure::from))
}

fn figure(a: &FigureArgs, config: &Config) -> Result<Outcome, Failure> {
    fs::create_dir_all(&a.out)?;
    let (file, rows) = match a.which {
        Figure::Fig1 => {
            let c1 = parse_rational(a.c1.as_deref().ok_or_else(|| Failure::usage("fig1 requires --c1"))?)?;
            let ts = grid(&parse_or(&a.from, int(-50))?, &parse_or(&a.to, int(150))?, a.samples);
            let rows = euler_trajectories(&c1, &ts, config)?;
            let path = a.out.join("fig1.csv");
            let highlight: Vec<String> = rows.iter().map(|r| u8::from(r.j == 2).to_string()).collect();
            write_csv(&rows, &[("highlight", highlight)], BufWriter::new(File::create(&path)?))?;
            (path, rows.len())
        }
        Figure::Fig3 => {
            let cs = grid(&parse_or(&a.from, int(0))?, &parse_or(&a.to, parse_rational("3e10")?)?, a.samples);
            let mut rows = Vec::new();
            let mut ls = Vec::new();
            for l in 0..=4u32 {
                let part = root_trajectories(5, 20, l, &cs, Labeling::SortedByRealPart, config)?;
                ls.extend(std::iter::repeat_n(l, part.len()));
                rows.extend(part);
            }
            let highlight: Vec<String> =
                rows.iter().zip(&ls).map(|(r, &l)| u8::from(l == 0 && r.j == 5).to_string()).collect();
            let path = a.out.join("fig3.csv");
            let l_col = ls.iter().map(u32::to_string).collect();
            write_csv(&rows, &[("l", l_col), ("highlight", highlight)], BufWriter::new(File::create(&path)?))?;
            (path, rows.len())
        }
        Figure::Fig2 => {
            let data = locus_plot_data(5, 3, (int(-12), int(6)), (int(-60), int(120)), a.samples);
            let path = a.out.join("fig2.csv");
            let mut w = csv::Writer::from_path(&path)?;
            for p in &data {
                w.serialize(p)?;
            }
            w.flush()?;
            (path, data.len())
        }
    };
    let text = format!("wrote {rows} rows to {}", file.display());
    let result = json!({"file": file, "rows": rows});
    Ok(Outcome { result, text, certification: json!({"mode": "data"}), code: 0 })
}

fn basis(a: &BasisArgs) -> Result<Outcome, Failure> {
    let c1 = parse_rational(&a.c1)?;
    let c2 = parse_rational(&a.c2)?;
    let lambda: Complex64 = a.lambda.parse().map_err(|_| Failure::usage(format!("malformed lambda `{}`", a.lambda)))?;
    let sel = select_fundamental_system(&c1, &c2, lambda);
    Ok(Outcome { text: basis_text(&sel), result: to_value(&sel), certification: json!({"mode": "exact_membership"}), code: 0 })
}

fn basis_text(sel: &BasisSelection) -> String {
    let mut lines = vec![format!("case: {:?}", sel.case_tag)];
    let c = &sel.classification;
    lines.push(format!("lines L_k: {:?}, parabolas P_k: {:?}", c.line_memberships, c.parabola_memberships));
    for b in &c.branches {
        lines.push(format!("  {:?} k={}: {}", b.locus, b.k, b.branch));
    }
    for (j, a) in sel.exponents.iter().enumerate() {
        lines.push(format!("alpha{} = {:.12} {:+.12}i", j + 1, a.re, a.im));
    }
    for (i, d) in sel.solutions.iter().enumerate() {
        let arg = if d.argument_sign < 0 { "-lambda r^4/256" } else { "lambda r^4/256" };
        let desc = match d.kind {
            SolutionKind::SeriesF03 => {
                let ps: Vec<String> = d.order.iter().map(|i| format!("1+(a{}-a{i})/4", d.exponent_index)).collect();
                format!("r^a{} 0F3({} | {arg})", d.exponent_index, ps.join(", "))
            }
            k => {
                let ps: Vec<String> = d.order.iter().map(|i| format!("a{i}/4")).collect();
                let name = match k {
                    SolutionKind::MeijerG20 => "G^{2,0}_{0,4}",
                    SolutionKind::MeijerG30 => "G^{3,0}_{0,4}",
                    _ => "G^{4,0}_{0,4}",
                };
                format!("{name}({} | {arg})", ps.join(", "))
            }
        };
        lines.push(format!("y{} = {desc}", i + 1));
    }
    if sel.solutions.is_empty() {
        lines.push("membership pattern not covered by the displayed bases".into());
    }
    lines.join("\n")
}

fn conjecture(a: &ConjectureArgs, config: &Config) -> Result<Outcome, Failure> {
    if a.m_max == 0 || a.m_max > 12 {
        return Err(Failure::usage("--m-max must lie in 1..=12"));
    }
    let rows = esa::conjecture_explore(a.m_max, config)?;
    let mut text = vec!["exploratory, nothing asserted".to_string(), "m\tgamma_{m,3,0}\t(2m^2/pi)^(2m)\tlog ratio".into()];
    for r in &rows {
        let ratio = r.log_ratio.map_or("-".into(), |x| format!("{x:.6}"));
        text.push(format!("{}\t{}\t{:.6e}\t{ratio}", r.m, r.gamma.to_decimal(8), r.asymptotic));
    }
    let result = json!({"exploratory": true, "rows": to_value(&rows)});
    Ok(Outcome { result, text: text.join("\n"), certification: json!({"mode": "radial", "l": 0}), code: 0 })
}
