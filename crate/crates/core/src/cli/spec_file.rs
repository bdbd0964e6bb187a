//! JSON spec files for triples, modules and cochains.
//!
//! ```json
//! {
//!   "format": "secohom-triple/1",
//!   "field": "Q",
//!   "A": { "dim": 3, "labels": ["1", "x", "x^2"], "mult": [[[..]]], "unit": ["1", "0", "0"] },
//!   "B": { "dim": 2, "mult": { "entries": [[0, 0, 0, "1"], ..] }, "unit": [1, 0] },
//!   "eps": [["1", "0"], ["0", "0"], ["0", "1"]],
//!   "modules": [{ "name": "A", "regular": true }]
//! }
//! ```
//!
//! `mult[i][j]` holds the coordinates of `e_i e_j`; the sparse form lists
//! `[i, j, k, c]` for `e_i e_j ∋ c e_k`. `eps` has `dim A` rows and `dim B`
//! columns; column `j` is `ε(b_j)`. Module tables `left[i][s]` hold the
//! coordinates of `a_i · m_s` (and `right[i][s]` of `m_s · a_i`), with the same
//! sparse alternative. Scalars are integers or strings `"p/q"`. `B` defaults to
//! the ground field and `modules` to the regular bimodule.

use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Bimodule, FiniteAlgebra, Triple};
use crate::complex::{Cochain, Complex};
use crate::error::Error;
use crate::linalg::{DenseMatrix, Field, FieldDescriptor, Scalar};

pub const TRIPLE_FORMAT: &str = "secohom-triple/1";
pub const COCHAIN_FORMAT: &str = "secohom-cochain/1";

/// An error together with where in which file it arose.
#[derive(Debug)]
pub struct SpecError {
    pub context: String,
    pub source: Error,
}

impl SpecError {
    pub fn new(context: impl Into<String>, source: Error) -> Self {
        SpecError { context: context.into(), source }
    }

    pub fn exit_code(&self) -> i32 {
        self.source.exit_code()
    }
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.context.is_empty() {
            write!(f, "{}", self.source)
        } else {
            write!(f, "{}: {}", self.context, self.source)
        }
    }
}

impl From<Error> for SpecError {
    fn from(e: Error) -> Self {
        SpecError::new("", e)
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Str(String),
}

impl Num {
    fn parse<F: Field>(&self, field: &F) -> Result<F::Elem, Error> {
        match self {
            Num::Int(n) => Ok(field.from_i64(*n)),
            Num::Str(s) => field.parse(s),
        }
    }
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Table {
    Dense(Vec<Vec<Vec<Num>>>),
    Sparse { entries: Vec<(usize, usize, usize, Num)> },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub mult: Table,
    pub unit: Vec<Num>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub regular: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Table>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Table>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TripleSpecFile {
    pub format: String,
    pub field: String,
    #[serde(rename = "A")]
    pub a: AlgebraSpec,
    #[serde(rename = "B", default, skip_serializing_if = "Option::is_none")]
    pub b: Option<AlgebraSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eps: Option<Vec<Vec<Num>>>,
    #[serde(default)]
    pub modules: Vec<ModuleSpec>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CochainEntry {
    pub diag: Vec<usize>,
    #[serde(default)]
    pub pairs: Vec<usize>,
    pub value: Vec<Num>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct CochainFile {
    pub format: String,
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    pub entries: Vec<CochainEntry>,
}

/// A validated triple and its modules over a concrete field.
#[derive(Clone, Debug)]
pub struct Loaded<F: Field> {
    pub field: F,
    pub triple: Arc<Triple<F>>,
    pub modules: Vec<Arc<Bimodule<F>>>,
}

impl<F: Field> Loaded<F> {
    /// The named module, or the first one.
    pub fn module(&self, name: Option<&str>) -> Result<&Arc<Bimodule<F>>, SpecError> {
        match name {
            None => Ok(&self.modules[0]),
            Some(n) => self.modules.iter().find(|m| m.name() == n).ok_or_else(|| {
                let known: Vec<&str> = self.modules.iter().map(|m| m.name()).collect();
                SpecError::new("--module", Error::Mismatch(format!("no module named {n:?} (have {known:?})")))
            }),
        }
    }
}

fn parse_table<F: Field>(field: &F, t: &Table, outer: usize, inner: usize, target: usize, ctx: &str) -> Result<Vec<Vec<Vec<F::Elem>>>, SpecError> {
    let mut out = vec![vec![vec![field.zero(); target]; inner]; outer];
    match t {
        Table::Dense(rows) => {
            if rows.len() != outer {
                return Err(SpecError::new(ctx, Error::Shape(format!("{} rows (expected {outer})", rows.len()))));
            }
            for (i, row) in rows.iter().enumerate() {
                if row.len() != inner {
                    return Err(SpecError::new(format!("{ctx}[{i}]"), Error::Shape(format!("{} entries (expected {inner})", row.len()))));
                }
                for (j, v) in row.iter().enumerate() {
                    let c = format!("{ctx}[{i}][{j}]");
                    if v.len() != target {
                        return Err(SpecError::new(c, Error::Shape(format!("{} coordinates (expected {target})", v.len()))));
                    }
                    for (k, x) in v.iter().enumerate() {
                        out[i][j][k] = x.parse(field).map_err(|e| SpecError::new(format!("{c}[{k}]"), e))?;
                    }
                }
            }
        }
        Table::Sparse { entries } => {
            for (n, (i, j, k, x)) in entries.iter().enumerate() {
                let c = format!("{ctx}.entries[{n}]");
                if *i >= outer || *j >= inner || *k >= target {
                    return Err(SpecError::new(c, Error::Shape(format!("index ({i},{j},{k}) out of range"))));
                }
                out[*i][*j][*k] += x.parse(field).map_err(|e| SpecError::new(c, e))?;
            }
        }
    }
    Ok(out)
}

fn parse_vec<F: Field>(field: &F, v: &[Num], len: usize, ctx: &str) -> Result<Vec<F::Elem>, SpecError> {
    if v.len() != len {
        return Err(SpecError::new(ctx, Error::Shape(format!("{} coordinates (expected {len})", v.len()))));
    }
    v.iter().enumerate().map(|(k, x)| x.parse(field).map_err(|e| SpecError::new(format!("{ctx}[{k}]"), e))).collect()
}

fn build_algebra<F: Field>(field: &F, spec: &AlgebraSpec, name: &str) -> Result<FiniteAlgebra<F>, SpecError> {
    let d = spec.dim;
    let labels = match &spec.labels {
        Some(l) => l.clone(),
        None => (0..d).map(|i| format!("{}{i}", name.to_ascii_lowercase())).collect(),
    };
    let table = parse_table(field, &spec.mult, d, d, d, &format!("{name}.mult"))?;
    let unit = parse_vec(field, &spec.unit, d, &format!("{name}.unit"))?;
    FiniteAlgebra::new(field.clone(), labels, table, unit).map_err(|e| SpecError::new(name, e))
}

fn action_matrices<F: Field>(field: &F, tables: Vec<Vec<Vec<F::Elem>>>, dm: usize) -> Vec<DenseMatrix<F::Elem>> {
    tables
        .into_iter()
        .map(|cols| {
            let mut m = DenseMatrix::zeros(dm, &field.zero());
            for (s, col) in cols.into_iter().enumerate() {
                for (r, v) in col.into_iter().enumerate() {
                    *m.at_mut(r, s) = v;
                }
            }
            m
        })
        .collect()
}

pub fn build<F: Field>(field: F, spec: &TripleSpecFile) -> Result<Loaded<F>, SpecError> {
    let a = build_algebra(&field, &spec.a, "A")?;
    let triple = match &spec.b {
        None => {
            if spec.eps.is_some() {
                return Err(SpecError::new("eps", Error::Shape("eps given without B".into())));
            }
            Triple::over_ground(a)
        }
        Some(bs) => {
            let b = build_algebra(&field, bs, "B")?;
            let rows = spec.eps.as_ref().ok_or_else(|| SpecError::new("eps", Error::Shape("missing (B is given)".into())))?;
            let (da, db) = (a.dim(), b.dim());
            if rows.len() != da {
                return Err(SpecError::new("eps", Error::Shape(format!("{} rows (expected dim A = {da})", rows.len()))));
            }
            let mut cols = vec![vec![field.zero(); da]; db];
            for (i, row) in rows.iter().enumerate() {
                let parsed = parse_vec(&field, row, db, &format!("eps[{i}]"))?;
                for (j, v) in parsed.into_iter().enumerate() {
                    cols[j][i] = v;
                }
            }
            Triple::new(a, b, cols).map_err(|e| SpecError::new("eps", e))?
        }
    };
    let triple = Arc::new(triple);
    let mut modules = Vec::new();
    let specs = if spec.modules.is_empty() {
        vec![ModuleSpec { name: "A".into(), regular: true, dim: None, left: None, right: None }]
    } else {
        spec.modules.clone()
    };
    for (k, ms) in specs.iter().enumerate() {
        let ctx = format!("modules[{k}] ({})", ms.name);
        if modules.iter().any(|m: &Arc<Bimodule<F>>| m.name() == ms.name) {
            return Err(SpecError::new(ctx, Error::Shape("duplicate module name".into())));
        }
        if ms.regular {
            if ms.dim.is_some() || ms.left.is_some() || ms.right.is_some() {
                return Err(SpecError::new(ctx, Error::Shape("a regular module takes no dim or tables".into())));
            }
            let a = triple.a();
            let renamed = Bimodule::new(
                triple.clone(),
                ms.name.clone(),
                a.dim(),
                (0..a.dim()).map(|i| a.left_regular(i)).collect(),
                (0..a.dim()).map(|i| a.right_regular(i)).collect(),
            )
            .map_err(|e| SpecError::new(ctx.clone(), e))?;
            modules.push(Arc::new(renamed));
            continue;
        }
        let dm = ms.dim.ok_or_else(|| SpecError::new(ctx.clone(), Error::Shape("missing dim".into())))?;
        let da = triple.a().dim();
        let side = |t: &Option<Table>, s: &str| -> Result<Vec<DenseMatrix<F::Elem>>, SpecError> {
            let t = t.as_ref().ok_or_else(|| SpecError::new(ctx.clone(), Error::Shape(format!("missing {s} action"))))?;
            Ok(action_matrices(&field, parse_table(&field, t, da, dm, dm, &format!("{ctx}.{s}"))?, dm))
        };
        let left = side(&ms.left, "left")?;
        let right = side(&ms.right, "right")?;
        let m = Bimodule::new(triple.clone(), ms.name.clone(), dm, left, right).map_err(|e| SpecError::new(ctx, e))?;
        modules.push(Arc::new(m));
    }
    Ok(Loaded { field, triple, modules })
}

/// A loaded spec over whichever field it names.
#[derive(Clone, Debug)]
pub enum AnyLoaded {
    Rational(Loaded<crate::linalg::Rationals>),
    Prime(Loaded<crate::linalg::PrimeField>),
}

pub fn parse_triple_str(text: &str, origin: &str) -> Result<AnyLoaded, SpecError> {
    let spec: TripleSpecFile = serde_json::from_str(text).map_err(|e| {
        SpecError::new(origin, Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    })?;
    if spec.format != TRIPLE_FORMAT {
        return Err(SpecError::new(
            format!("{origin}: format"),
            Error::Parse(format!("unsupported format {:?} (expected {TRIPLE_FORMAT:?})", spec.format)),
        ));
    }
    let desc = FieldDescriptor::parse(&spec.field).map_err(|e| SpecError::new(format!("{origin}: field"), e))?;
    let wrap = |e: SpecError| SpecError::new(format!("{origin}: {}", e.context), e.source);
    Ok(match desc {
        FieldDescriptor::Rational => AnyLoaded::Rational(build(crate::linalg::Rationals, &spec).map_err(wrap)?),
        FieldDescriptor::Prime(p) => AnyLoaded::Prime(build(crate::linalg::PrimeField::new(p)?, &spec).map_err(wrap)?),
    })
}

pub fn read_triple(path: &Path) -> Result<AnyLoaded, SpecError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SpecError::new(path.display().to_string(), Error::Parse(format!("cannot read: {e}"))))?;
    parse_triple_str(&text, &path.display().to_string())
}

pub fn parse_cochain_str<F: Field>(complex: &Arc<Complex<F>>, text: &str, origin: &str) -> Result<Cochain<F>, SpecError> {
    let file: CochainFile = serde_json::from_str(text).map_err(|e| {
        SpecError::new(origin, Error::Parse(format!("line {}, column {}: {e}", e.line(), e.column())))
    })?;
    if file.format != COCHAIN_FORMAT {
        return Err(SpecError::new(
            format!("{origin}: format"),
            Error::Parse(format!("unsupported format {:?} (expected {COCHAIN_FORMAT:?})", file.format)),
        ));
    }
    if let Some(m) = &file.module {
        if m != complex.module().name() {
            return Err(SpecError::new(
                format!("{origin}: module"),
                Error::Mismatch(format!("cochain is for module {m:?}, selected module is {:?}", complex.module().name())),
            ));
        }
    }
    let mut f = complex.zero(file.degree).map_err(|e| SpecError::new(origin, e))?;
    let shape = complex.shape(file.degree);
    let dm = complex.module().dim();
    let field = complex.field();
    for (k, entry) in file.entries.iter().enumerate() {
        let ctx = format!("{origin}: entries[{k}]");
        let offset = shape
            .encode(&crate::complex::TensorIndex { diag: entry.diag.clone(), pairs: entry.pairs.clone() })
            .map_err(|e| SpecError::new(ctx.clone(), e))?;
        let value = parse_vec(field, &entry.value, dm, &format!("{ctx}.value"))?;
        for (r, v) in value.into_iter().enumerate() {
            f.values_mut()[offset * dm + r] += v;
        }
    }
    Ok(f)
}

pub fn read_cochain<F: Field>(complex: &Arc<Complex<F>>, path: &Path) -> Result<Cochain<F>, SpecError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SpecError::new(path.display().to_string(), Error::Parse(format!("cannot read: {e}"))))?;
    parse_cochain_str(complex, &text, &path.display().to_string())
}

/// The cochain file describing `f` (nonzero entries in tensor order).
pub fn cochain_file<F: Field>(f: &Cochain<F>) -> CochainFile {
    let shape = f.shape();
    let dm = f.module().dim();
    let mut entries = Vec::new();
    if dm > 0 {
        for (o, chunk) in f.values().chunks(dm).enumerate() {
            if chunk.iter().all(|x| x.is_zero()) {
                continue;
            }
            let t = shape.decode(o).expect("offset in range");
            entries.push(CochainEntry { diag: t.diag, pairs: t.pairs, value: chunk.iter().map(|x| Num::Str(x.to_string())).collect() });
        }
    }
    CochainFile { format: COCHAIN_FORMAT.into(), degree: f.degree(), module: Some(f.module().name().to_string()), entries }
}

/// Spec file of a triple with the given modules (inverse of [`build`]).
pub fn triple_file<F: Field>(triple: &Triple<F>, modules: &[Arc<Bimodule<F>>]) -> TripleSpecFile {
    let num = |x: &F::Elem| Num::Str(x.to_string());
    let alg = |a: &FiniteAlgebra<F>| AlgebraSpec {
        dim: a.dim(),
        labels: Some(a.labels().to_vec()),
        mult: Table::Dense(a.table().iter().map(|row| row.iter().map(|v| v.iter().map(num).collect()).collect()).collect()),
        unit: a.to_dense(a.unit()).iter().map(num).collect(),
    };
    let transpose = |tables: Vec<Vec<Vec<F::Elem>>>| -> Table {
        Table::Dense(
            tables
                .into_iter()
                .map(|rows| {
                    let n = rows.len();
                    (0..n).map(|s| (0..n).map(|r| num(&rows[r][s])).collect()).collect()
                })
                .collect(),
        )
    };
    TripleSpecFile {
        format: TRIPLE_FORMAT.into(),
        field: triple.field().descriptor().to_string(),
        a: alg(triple.a()),
        b: if triple.has_ground_b() { None } else { Some(alg(triple.b())) },
        eps: if triple.has_ground_b() { None } else { Some(triple.eps_rows().iter().map(|r| r.iter().map(num).collect()).collect()) },
        modules: modules
            .iter()
            .map(|m| {
                if m.is_regular() {
                    ModuleSpec { name: m.name().into(), regular: true, dim: None, left: None, right: None }
                } else {
                    let (l, r) = m.tables();
                    ModuleSpec { name: m.name().into(), regular: false, dim: Some(m.dim()), left: Some(transpose(l)), right: Some(transpose(r)) }
                }
            })
            .collect(),
    }
}
