//! The `secohom` command-line front end.

pub mod report;
pub mod spec_file;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::complex::{phi_induced, Cochain, Complex, Flavor, DEFAULT_MAX_BASIS};
use crate::error::Error;
use crate::extensions::{classes_equivalent, cocycle_from_section, extension_from_cocycle, first_obstruction};
use crate::gerstenhaber::{bracket, cup};
use crate::hodge::hodge_decomposition;
use crate::linalg::{Field, FieldDescriptor, PrimeField, Rationals};
use crate::poly::{
    deformed_epsilon_check, in_derivative_ideal, jacobian_cokernel_probe, ker_phi2_dim_1var, parse_poly,
    sigma_is_bounded_coboundary, verify_sigma_cocycle, Poly,
};
use crate::selftest;

pub use report::{Report, Status, TextTable};
pub use spec_file::{AnyLoaded, Loaded, SpecError};

pub const MAX_BASIS_ENV: &str = "SECOHOM_MAX_BASIS";

#[derive(Parser, Debug)]
#[command(name = "secohom", version, about = "Secondary Hochschild cohomology of finite-dimensional triples")]
pub struct Cli {
    /// Triple spec file (JSON, format secohom-triple/1)
    #[arg(long, global = true)]
    pub spec: Option<PathBuf>,

    /// Coefficient module by name (default: the first one in the spec)
    #[arg(long, global = true)]
    pub module: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Human)]
    pub output: OutputFormat,

    /// Largest number of basis elements of any C^n to materialize
    #[arg(long, global = true)]
    pub max_basis: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Human,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Ordinary,
    Secondary,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Ordinary => Flavor::Ordinary,
            FlavorArg::Secondary => Flavor::Secondary,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the spec file against the algebra, triple and bimodule axioms
    Validate,
    /// Dimensions of cohomology in a range of degrees
    Cohomology {
        /// `a..b` (inclusive) or a single degree
        #[arg(long, default_value = "0..2")]
        degrees: String,
        #[arg(long, value_enum, default_value_t = FlavorArg::Secondary)]
        flavor: FlavorArg,
    },
    /// The comparison map to ordinary Hochschild cohomology in one degree
    Phi {
        #[arg(long)]
        degree: usize,
    },
    /// Hodge decomposition of secondary cohomology in one degree
    Hodge {
        #[arg(long)]
        degree: usize,
    },
    /// Cup product of two cochains
    Cup(Pair),
    /// Gerstenhaber bracket of two cochains
    Bracket(Pair),
    /// Build the extension of a 2-cocycle
    Extension {
        #[arg(long)]
        cocycle: PathBuf,
        /// Recover the cocycle from the canonical section and compare classes
        #[arg(long)]
        roundtrip: bool,
    },
    /// The first obstruction c∘c of a 2-cocycle
    Obstruction {
        #[arg(long)]
        cocycle: PathBuf,
    },
    /// Computations on polynomial triples k[X] ⊇ k[f]
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Run the built-in invariant suites
    Selftest,
}

#[derive(Args, Debug)]
pub struct Pair {
    /// Cochain file, given twice
    #[arg(long = "cochain", num_args = 1, required = true)]
    pub cochains: Vec<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum PolyCommand {
    /// dim ker Φ2 = dim k[X]/<f'> for (k[X], k[T], T ↦ f)
    Kerphi {
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Cokernel of the Jacobian of (f, g) on a degree slice of k[X,Y]^2
    Jacobian {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// The 2-cocycle σ_r on monomials up to a degree bound
    Sigma {
        #[arg(long)]
        f: String,
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long, default_value = "Q")]
        field: String,
    },
}

/// Parses `a..b`, `a..=b` or `n` into an inclusive range.
pub fn parse_degrees(s: &str) -> Result<(usize, usize), Error> {
    let bad = || Error::Parse(format!("invalid degree range {s:?} (expected a..b)"));
    let t = s.trim();
    let (a, b) = match t.split_once("..") {
        Some((a, b)) => (a.trim(), b.trim().trim_start_matches('=').trim()),
        None => (t, t),
    };
    let a: usize = a.parse().map_err(|_| bad())?;
    let b: usize = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

/// `--max-basis`, else `SECOHOM_MAX_BASIS`, else the default.
pub fn max_basis(flag: Option<usize>) -> Result<usize, Error> {
    if let Some(n) = flag {
        return Ok(n);
    }
    match std::env::var(MAX_BASIS_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Parse(format!("{MAX_BASIS_ENV}={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_MAX_BASIS),
    }
}

fn complex<F: Field>(l: &Loaded<F>, module: Option<&str>, flavor: Flavor, cap: usize) -> Result<Arc<Complex<F>>, SpecError> {
    Ok(Complex::with_max_basis(l.module(module)?.clone(), flavor, cap))
}

fn s<T: ToString>(x: &T) -> String {
    x.to_string()
}

pub fn validate_report<F: Field>(l: &Loaded<F>) -> Report {
    let mut r = Report::new("validate");
    let t = &l.triple;
    r.set("field", t.field().descriptor().to_string())
        .set("dim_a", t.a().dim())
        .set("dim_b", t.b().dim())
        .set("a_commutative", t.a().is_commutative())
        .set("valid", true);
    let mut table = TextTable::new("valid triple", &[]);
    table
        .row(vec!["field".into(), t.field().descriptor().to_string()])
        .row(vec!["dim A".into(), s(&t.a().dim())])
        .row(vec!["dim B".into(), s(&t.b().dim())])
        .row(vec!["A commutative".into(), s(&t.a().is_commutative())]);
    r.table(table);
    let mut mods = TextTable::new("modules", &["name", "dim", "symmetric", "regular"]);
    let mut list = Vec::new();
    for m in &l.modules {
        mods.row(vec![m.name().into(), s(&m.dim()), s(&m.is_symmetric()), s(&m.is_regular())]);
        list.push(serde_json::json!({
            "name": m.name(),
            "dim": m.dim(),
            "symmetric": m.is_symmetric(),
            "regular": m.is_regular(),
        }));
    }
    r.set("modules", list).table(mods);
    r
}

/// Cohomology dimensions in degrees `lo..=hi`; for the secondary flavor also
/// rank and kernel of `Φ_n`.
pub fn cohomology_report<F: Field>(c: &Arc<Complex<F>>, lo: usize, hi: usize) -> Result<Report, Error> {
    let mut r = Report::new("cohomology");
    let secondary = c.flavor() == Flavor::Secondary;
    r.set("field", c.field().descriptor().to_string()).set("flavor", c.flavor()).set("module", c.module().name());
    let header: &[&str] = if secondary {
        &["n", "dim C^n", "cocycles", "coboundaries", "dim H^n", "rank Φ", "dim ker Φ"]
    } else {
        &["n", "dim C^n", "cocycles", "coboundaries", "dim H^n"]
    };
    let mut table = TextTable::new(format!("{} cohomology, M = {}", c.flavor(), c.module().name()), header);
    let mut rows = Vec::new();
    for n in lo..=hi {
        let h = c.cohomology(n)?;
        let mut row = serde_json::Map::new();
        row.insert("degree".into(), n.into());
        row.insert("dim_cochains".into(), c.dim(n)?.into());
        row.insert("dim_cocycles".into(), h.cocycles().dim().into());
        row.insert("dim_coboundaries".into(), h.coboundaries().dim().into());
        row.insert("dim".into(), h.dim().into());
        let mut cells = vec![s(&n), s(&c.dim(n)?), s(&h.cocycles().dim()), s(&h.coboundaries().dim()), s(&h.dim())];
        if secondary {
            let p = phi_induced(c, n)?;
            row.insert("rank_phi".into(), p.rank.into());
            row.insert("dim_ker_phi".into(), p.kernel_dim.into());
            cells.push(s(&p.rank));
            cells.push(s(&p.kernel_dim));
        }
        rows.push(serde_json::Value::Object(row));
        table.row(cells);
    }
    r.set("degrees", rows).table(table);
    Ok(r)
}

pub fn phi_report<F: Field>(c: &Arc<Complex<F>>, n: usize) -> Result<Report, Error> {
    let p = phi_induced(c, n)?;
    let mut r = Report::new("phi");
    let matrix: Vec<Vec<String>> = p.matrix.iter().map(|row| row.iter().map(s).collect()).collect();
    r.set("degree", n)
        .set("module", c.module().name())
        .set("source_dim", p.source_dim)
        .set("target_dim", p.target_dim)
        .set("rank", p.rank)
        .set("kernel_dim", p.kernel_dim)
        .set("matrix", &matrix);
    let mut t = TextTable::new(format!("Φ_{n}: H^{n}((A,B,ε);M) → HH^{n}(A,M)"), &[]);
    t.row(vec!["dim source".into(), s(&p.source_dim)])
        .row(vec!["dim target".into(), s(&p.target_dim)])
        .row(vec!["rank".into(), s(&p.rank)])
        .row(vec!["dim ker".into(), s(&p.kernel_dim)]);
    r.table(t);
    if !matrix.is_empty() && p.target_dim > 0 {
        let mut m = TextTable::new("matrix (row i: image of class i)", &[]);
        for row in matrix {
            m.row(row);
        }
        r.table(m);
    }
    Ok(r)
}

pub fn hodge_report<F: Field>(c: &Arc<Complex<F>>, n: usize) -> Result<Report, Error> {
    let parts = hodge_decomposition(c, n)?;
    let total = c.cohomology_dim(n)?;
    let sum: usize = parts.iter().map(|p| p.dim).sum();
    let mut r = Report::new("hodge");
    r.set("degree", n).set("module", c.module().name()).set("components", &parts).set("dim", total).set("sum", sum);
    let mut t = TextTable::new(format!("Hodge decomposition of H^{n}"), &["k", "dim H^(k,n-k)"]);
    for p in &parts {
        t.row(vec![s(&p.k), s(&p.dim)]);
    }
    t.row(vec!["sum".into(), s(&sum)]).row(vec![format!("dim H^{n}"), s(&total)]);
    r.table(t);
    if sum != total {
        r.fail();
    }
    Ok(r)
}

fn cochain_table<F: Field>(title: &str, f: &Cochain<F>) -> TextTable {
    let file = spec_file::cochain_file(f);
    let mut t = TextTable::new(format!("{title} (degree {}, {} nonzero entries)", f.degree(), file.entries.len()), &["diag", "pairs", "value"]);
    for e in &file.entries {
        let value: Vec<String> = e
            .value
            .iter()
            .map(|v| match v {
                spec_file::Num::Int(n) => n.to_string(),
                spec_file::Num::Str(s) => s.clone(),
            })
            .collect();
        t.row(vec![format!("{:?}", e.diag), format!("{:?}", e.pairs), format!("[{}]", value.join(", "))]);
    }
    t
}

pub fn product_report<F: Field>(op: &str, f: &Cochain<F>, g: &Cochain<F>) -> Result<Report, Error> {
    let h = match op {
        "cup" => cup(f, g)?,
        _ => bracket(f, g)?,
    };
    let c = h.complex().clone();
    let inputs_closed = c.is_cocycle(f)? && c.is_cocycle(g)?;
    let result_closed = c.is_cocycle(&h)?;
    let mut r = Report::new(op);
    r.set("degrees", [f.degree(), g.degree()])
        .set("inputs_are_cocycles", inputs_closed)
        .set("result_is_cocycle", result_closed)
        .set("result", spec_file::cochain_file(&h));
    let mut t = TextTable::new(op, &[]);
    t.row(vec!["input degrees".into(), format!("{}, {}", f.degree(), g.degree())])
        .row(vec!["inputs are cocycles".into(), s(&inputs_closed)])
        .row(vec!["result is a cocycle".into(), s(&result_closed)]);
    r.table(t).table(cochain_table("result", &h));
    if inputs_closed && !result_closed {
        r.fail();
    }
    Ok(r)
}

pub fn extension_report<F: Field>(c: &Cochain<F>, roundtrip: bool) -> Result<Report, Error> {
    let ext = extension_from_cocycle(c)?;
    ext.validate()?;
    let mut r = Report::new("extension");
    r.set("dim_a", ext.dim_a())
        .set("dim_m", ext.dim_m())
        .set("dim_x", ext.algebra().dim())
        .set("extension", spec_file::triple_file(ext.triple(), &[]));
    let mut t = TextTable::new("extension X = A ⊕ M", &[]);
    t.row(vec!["dim A".into(), s(&ext.dim_a())])
        .row(vec!["dim M".into(), s(&ext.dim_m())])
        .row(vec!["dim X".into(), s(&ext.algebra().dim())])
        .row(vec!["axioms".into(), "ok".into()]);
    if roundtrip {
        let back = cocycle_from_section(&ext, &ext.canonical_section())?;
        let exact = &back == c;
        let same_class = classes_equivalent(&back, c)?.equivalent;
        r.set("roundtrip", serde_json::json!({ "exact": exact, "same_class": same_class }));
        t.row(vec!["round trip exact".into(), s(&exact)]).row(vec!["round trip same class".into(), s(&same_class)]);
        if !(exact && same_class) {
            r.fail();
        }
    }
    r.table(t);
    Ok(r)
}

pub fn obstruction_report<F: Field>(c: &Cochain<F>) -> Result<Report, Error> {
    let o = first_obstruction(c)?;
    let mut r = Report::new("obstruction");
    r.set("is_cocycle", o.is_cocycle)
        .set("vanishes", o.vanishes)
        .set("obstruction", spec_file::cochain_file(&o.cochain))
        .set("witness", o.witness.as_ref().map(spec_file::cochain_file));
    let mut t = TextTable::new("first obstruction c∘c", &[]);
    t.row(vec!["δ(c∘c) = 0".into(), s(&o.is_cocycle)]).row(vec!["class vanishes".into(), s(&o.vanishes)]);
    r.table(t);
    if !o.is_cocycle {
        r.fail();
    }
    Ok(r)
}

pub fn selftest_report() -> Report {
    let st = selftest::run();
    let mut r = Report::new("selftest");
    r.set("checks", &st.checks).set("passed", st.all_passed());
    let mut t = TextTable::new("selftest", &["check", "result", "detail"]);
    for c in &st.checks {
        t.row(vec![c.name.clone(), if c.passed { "pass" } else { "FAIL" }.into(), c.detail.clone()]);
    }
    r.table(t);
    if !st.all_passed() {
        r.fail();
    }
    r
}

fn poly_kerphi<F: Field>(field: F, f: &str) -> Result<Report, Error> {
    let p: Poly<F, 1> = parse_poly(&field, f)?;
    let d = ker_phi2_dim_1var(&p)?;
    let mut r = Report::new("poly kerphi");
    r.set("field", field.descriptor().to_string()).set("f", p.to_string()).set("derivative", p.derivative(0).to_string()).set("dim_ker_phi2", d);
    let mut t = TextTable::new(format!("dim ker Φ2 for f = {p} over {}", field.descriptor()), &[]);
    t.row(vec![d.to_string()]);
    r.table(t);
    Ok(r)
}

fn poly_jacobian<F: Field>(field: F, f: &str, g: &str, degree: usize) -> Result<Report, Error> {
    let pf: Poly<F, 2> = parse_poly(&field, f)?;
    let pg: Poly<F, 2> = parse_poly(&field, g)?;
    let dim = jacobian_cokernel_probe(&pf, &pg, degree)?;
    let mut r = Report::new("poly jacobian");
    r.set("field", field.descriptor().to_string())
        .set("f", pf.to_string())
        .set("g", pg.to_string())
        .set("degree", degree)
        .set("cokernel_dim", dim);
    let mut t = TextTable::new(format!("Jacobian cokernel of ({pf}, {pg}) in degrees ≤ {degree}"), &[]);
    t.row(vec![dim.to_string()]);
    r.table(t);
    Ok(r)
}

fn poly_sigma<F: Field>(field: F, f: &str, rr: &str, bound: usize) -> Result<Report, Error> {
    let pf: Poly<F, 1> = parse_poly(&field, f)?;
    let pr: Poly<F, 1> = parse_poly(&field, rr)?;
    let cocycle = verify_sigma_cocycle(&pf, &pr, bound)?;
    let ideal = in_derivative_ideal(&pf, &pr);
    let coboundary = sigma_is_bounded_coboundary(&pf, &pr, bound)?;
    let deformation = deformed_epsilon_check(&pf, &pr, bound)?;
    let mut r = Report::new("poly sigma");
    r.set("field", field.descriptor().to_string())
        .set("f", pf.to_string())
        .set("r", pr.to_string())
        .set("bound", bound)
        .set("is_cocycle", cocycle)
        .set("in_derivative_ideal", ideal)
        .set("bounded_coboundary", coboundary)
        .set("matches_deformation", deformation);
    let mut t = TextTable::new(format!("σ_r for f = {pf}, r = {pr}, degrees ≤ {bound}"), &[]);
    t.row(vec!["δσ = 0".into(), s(&cocycle)])
        .row(vec!["r ∈ <f'>".into(), s(&ideal)])
        .row(vec!["σ = δw (bounded)".into(), s(&coboundary)])
        .row(vec!["t-term of ε_t = f + t·r".into(), s(&deformation)]);
    r.table(t);
    if !cocycle || !deformation {
        r.fail();
    }
    Ok(r)
}

macro_rules! with_field {
    ($desc:expr, |$field:ident| $body:expr) => {
        match FieldDescriptor::parse($desc)? {
            FieldDescriptor::Rational => {
                let $field = Rationals;
                $body
            }
            FieldDescriptor::Prime(p) => {
                let $field = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn run_poly(cmd: &PolyCommand) -> Result<Report, Error> {
    match cmd {
        PolyCommand::Kerphi { f, field } => with_field!(field, |k| poly_kerphi(k, f)),
        PolyCommand::Jacobian { f, g, degree, field } => with_field!(field, |k| poly_jacobian(k, f, g, *degree)),
        PolyCommand::Sigma { f, r, bound, field } => with_field!(field, |k| poly_sigma(k, f, r, *bound)),
    }
}

fn run_loaded<F: Field>(l: &Loaded<F>, cli: &Cli, cap: usize) -> Result<Report, SpecError> {
    let module = cli.module.as_deref();
    let secondary = || complex(l, module, Flavor::Secondary, cap);
    let read = |c: &Arc<Complex<F>>, p: &PathBuf| spec_file::read_cochain(c, p);
    Ok(match &cli.command {
        Command::Validate => {
            l.module(module)?;
            validate_report(l)
        }
        Command::Cohomology { degrees, flavor } => {
            let (lo, hi) = parse_degrees(degrees).map_err(|e| SpecError::new("--degrees", e))?;
            cohomology_report(&complex(l, module, (*flavor).into(), cap)?, lo, hi)?
        }
        Command::Phi { degree } => phi_report(&secondary()?, *degree)?,
        Command::Hodge { degree } => hodge_report(&secondary()?, *degree)?,
        Command::Cup(pair) | Command::Bracket(pair) => {
            let op = if matches!(cli.command, Command::Cup(_)) { "cup" } else { "bracket" };
            if pair.cochains.len() != 2 {
                return Err(SpecError::new("--cochain", Error::Parse(format!("expected two cochains, got {}", pair.cochains.len()))));
            }
            let c = secondary()?;
            let f = read(&c, &pair.cochains[0])?;
            let g = read(&c, &pair.cochains[1])?;
            product_report(op, &f, &g)?
        }
        Command::Extension { cocycle, roundtrip } => extension_report(&read(&secondary()?, cocycle)?, *roundtrip)?,
        Command::Obstruction { cocycle } => obstruction_report(&read(&secondary()?, cocycle)?)?,
        Command::Poly(_) | Command::Selftest => unreachable!("handled without a spec"),
    })
}

fn dispatch(cli: &Cli) -> Result<Report, SpecError> {
    match &cli.command {
        Command::Selftest => return Ok(selftest_report()),
        Command::Poly(p) => return Ok(run_poly(p)?),
        _ => {}
    }
    let cap = max_basis(cli.max_basis).map_err(|e| SpecError::new("--max-basis", e))?;
    let path = cli.spec.as_ref().ok_or_else(|| SpecError::new("--spec", Error::Parse("a spec file is required".into())))?;
    match spec_file::read_triple(path)? {
        AnyLoaded::Rational(l) => run_loaded(&l, cli, cap),
        AnyLoaded::Prime(l) => run_loaded(&l, cli, cap),
    }
}

/// Runs the command line `args` (program name first), writing the report to
/// `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(report) => {
            let text = match cli.output {
                OutputFormat::Json => report.to_json(),
                OutputFormat::Human => report.to_text(),
            };
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            report.exit_code()
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("0..2").unwrap(), (0, 2));
        assert_eq!(parse_degrees("1..=3").unwrap(), (1, 3));
        assert_eq!(parse_degrees("4").unwrap(), (4, 4));
        assert!(parse_degrees("3..1").is_err());
        assert!(parse_degrees("a..b").is_err());
    }

    #[test]
    fn kerphi_x4() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(["secohom", "poly", "kerphi", "--f", "X^4"], &mut out, &mut err);
        assert_eq!(code, 0);
        assert!(String::from_utf8(out).unwrap().lines().any(|l| l.trim() == "3"));
    }

    #[test]
    fn missing_spec_is_a_usage_error() {
        let mut out = Vec::new();
        let mut err = Vec::new();
        assert_eq!(run(["secohom", "validate"], &mut out, &mut err), 2);
    }
}
