//! On-disk formats: pencils, invariant vectors and completion results, all
//! JSON with exact scalars encoded as strings.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use subpencil_core::{
    CompletionResult, Field, FieldSpec, Invariants, Matrix, ModuleKind, Pencil, PreinjInvariants, PreprojInvariants,
    PrimeField, Rationals, SubfactorWitness,
};

/// Version tag written into every completion file.
pub const COMPLETION_VERSION: &str = "v1";

/// A pencil `A + λB` as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PencilFile {
    pub field: String,
    pub rows: usize,
    pub cols: usize,
    #[serde(rename = "A")]
    pub a: Vec<Vec<String>>,
    #[serde(rename = "B")]
    pub b: Vec<Vec<String>>,
}

/// A matrix with explicit shape, so that empty blocks keep their dimensions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Vec<String>>,
}

/// Which family a multiplicity vector describes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModuleFamily {
    #[default]
    Preinjective,
    Preprojective,
}

/// Either `{"kind": …, "mult": [a0, a1, …]}` or `{"eps": [ε, …]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum InvariantsFile {
    Mult {
        #[serde(default)]
        kind: ModuleFamily,
        mult: Vec<usize>,
    },
    Eps {
        #[serde(default)]
        kind: ModuleFamily,
        eps: Vec<usize>,
    },
}

impl InvariantsFile {
    pub fn kind(&self) -> ModuleFamily {
        match self {
            InvariantsFile::Mult { kind, .. } | InvariantsFile::Eps { kind, .. } => *kind,
        }
    }

    /// The trimmed multiplicity vector.
    pub fn mult(&self) -> Vec<usize> {
        match self {
            InvariantsFile::Mult { mult, .. } => PreinjInvariants::new(mult.clone()).mult().to_vec(),
            InvariantsFile::Eps { eps, .. } => PreinjInvariants::from_epsilon_list(eps).mult().to_vec(),
        }
    }

    pub fn preinjective(&self) -> Result<PreinjInvariants> {
        match self.kind() {
            ModuleFamily::Preinjective => Ok(PreinjInvariants::new(self.mult())),
            ModuleFamily::Preprojective => bail!("expected preinjective invariants, found preprojective"),
        }
    }

    pub fn preprojective(&self) -> PreprojInvariants {
        PreprojInvariants::new(self.mult())
    }
}

/// The subfactor certificate as stored in a completion file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub linking: Vec<usize>,
    pub b_seq: Vec<i64>,
    pub alpha: usize,
    pub beta: usize,
}

/// Whether a completion was built for column-minimal or row-minimal pencils.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompletionMode {
    ColumnMinimal,
    RowMinimal,
}

/// A serialized [`CompletionResult`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompletionFile {
    pub version: String,
    pub field: String,
    pub mode: CompletionMode,
    #[serde(rename = "A12")]
    pub a12: MatrixFile,
    #[serde(rename = "B12")]
    pub b12: MatrixFile,
    #[serde(rename = "A21")]
    pub a21: MatrixFile,
    #[serde(rename = "B21")]
    pub b21: MatrixFile,
    #[serde(rename = "A22")]
    pub a22: MatrixFile,
    #[serde(rename = "B22")]
    pub b22: MatrixFile,
    pub left: MatrixFile,
    pub right: MatrixFile,
    pub witness: WitnessFile,
}

/// A pencil over a field chosen at run time.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyPencil {
    Q(Pencil<Rationals>),
    Gf(Pencil<PrimeField>),
}

impl AnyPencil {
    pub fn spec(&self) -> FieldSpec {
        match self {
            AnyPencil::Q(p) => p.field().spec(),
            AnyPencil::Gf(p) => p.field().spec(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        match self {
            AnyPencil::Q(p) => p.shape(),
            AnyPencil::Gf(p) => p.shape(),
        }
    }

    pub fn to_file(&self) -> PencilFile {
        match self {
            AnyPencil::Q(p) => pencil_to_file(p),
            AnyPencil::Gf(p) => pencil_to_file(p),
        }
    }
}

fn rows_to_strings<F: Field>(m: &Matrix<F>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| m.row(i).iter().map(|x| m.field().format_elem(x)).collect())
        .collect()
}

fn strings_to_matrix<F: Field>(field: &F, rows: usize, cols: usize, data: &[Vec<String>], what: &str) -> Result<Matrix<F>> {
    if data.len() != rows {
        bail!("{what}: expected {rows} rows, found {}", data.len());
    }
    let mut out = Vec::with_capacity(rows * cols);
    for (i, row) in data.iter().enumerate() {
        if row.len() != cols {
            bail!("{what}: row {i} has {} entries, expected {cols}", row.len());
        }
        for s in row {
            out.push(field.parse_elem(s).with_context(|| format!("{what}: bad entry `{s}`"))?);
        }
    }
    Ok(Matrix::from_vec(field, rows, cols, out)?)
}

pub fn matrix_to_file<F: Field>(m: &Matrix<F>) -> MatrixFile {
    MatrixFile { rows: m.rows(), cols: m.cols(), data: rows_to_strings(m) }
}

pub fn matrix_from_file<F: Field>(field: &F, m: &MatrixFile, what: &str) -> Result<Matrix<F>> {
    strings_to_matrix(field, m.rows, m.cols, &m.data, what)
}

pub fn pencil_to_file<F: Field>(p: &Pencil<F>) -> PencilFile {
    PencilFile {
        field: p.field().spec().to_string(),
        rows: p.rows(),
        cols: p.cols(),
        a: rows_to_strings(p.a()),
        b: rows_to_strings(p.b()),
    }
}

pub fn pencil_from_file<F: Field>(field: &F, f: &PencilFile) -> Result<Pencil<F>> {
    let a = strings_to_matrix(field, f.rows, f.cols, &f.a, "A")?;
    let b = strings_to_matrix(field, f.rows, f.cols, &f.b, "B")?;
    Ok(Pencil::new(a, b)?)
}

pub fn field_of(spec: &str) -> Result<FieldSpec> {
    spec.parse::<FieldSpec>().map_err(|e| anyhow!("{e}"))
}

impl PencilFile {
    pub fn to_pencil(&self) -> Result<AnyPencil> {
        Ok(match field_of(&self.field)? {
            FieldSpec::Rationals => AnyPencil::Q(pencil_from_file(&Rationals, self)?),
            FieldSpec::PrimeField(p) => AnyPencil::Gf(pencil_from_file(&PrimeField::new(p)?, self)?),
        })
    }
}

pub fn witness_to_file<K: ModuleKind>(w: &SubfactorWitness<K>) -> WitnessFile {
    WitnessFile { linking: w.linking.mult().to_vec(), b_seq: w.b_seq.clone(), alpha: w.alpha, beta: w.beta }
}

pub fn witness_from_file<K: ModuleKind>(w: &WitnessFile) -> SubfactorWitness<K> {
    SubfactorWitness { linking: Invariants::new(w.linking.clone()), b_seq: w.b_seq.clone(), alpha: w.alpha, beta: w.beta }
}

pub fn completion_to_file<F: Field>(r: &CompletionResult<F>, mode: CompletionMode) -> CompletionFile {
    CompletionFile {
        version: COMPLETION_VERSION.to_string(),
        field: r.left.field().spec().to_string(),
        mode,
        a12: matrix_to_file(&r.a12),
        b12: matrix_to_file(&r.b12),
        a21: matrix_to_file(&r.a21),
        b21: matrix_to_file(&r.b21),
        a22: matrix_to_file(&r.a22),
        b22: matrix_to_file(&r.b22),
        left: matrix_to_file(&r.left),
        right: matrix_to_file(&r.right),
        witness: witness_to_file(&r.witness),
    }
}

pub fn completion_from_file<F: Field>(field: &F, c: &CompletionFile) -> Result<CompletionResult<F>> {
    if c.version != COMPLETION_VERSION {
        bail!("unsupported completion file version `{}`", c.version);
    }
    if field_of(&c.field)? != field.spec() {
        bail!("completion is over {}, pencils are over {}", c.field, field.spec());
    }
    Ok(CompletionResult {
        a12: matrix_from_file(field, &c.a12, "A12")?,
        b12: matrix_from_file(field, &c.b12, "B12")?,
        a21: matrix_from_file(field, &c.a21, "A21")?,
        b21: matrix_from_file(field, &c.b21, "B21")?,
        a22: matrix_from_file(field, &c.a22, "A22")?,
        b22: matrix_from_file(field, &c.b22, "B22")?,
        left: matrix_from_file(field, &c.left, "left")?,
        right: matrix_from_file(field, &c.right, "right")?,
        witness: witness_from_file(&c.witness),
    })
}

/// Serializes with objects one key per line and arrays of scalars on a single
/// line, so matrix rows read as rows. The output ends with a newline and is a
/// pure function of the value.
pub fn to_json_text<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value)?;
    let mut out = String::new();
    write_value(&mut out, &v, 0);
    out.push('\n');
    Ok(out)
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, val)) in map.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(indent + 1), Value::String(k.clone()));
                write_value(out, val, indent + 1);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", pad(indent));
        }
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, item, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", pad(indent));
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
            let _ = write!(out, "[{}]", parts.join(", "));
        }
        other => out.push_str(&other.to_string()),
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    std::fs::write(path, to_json_text(value)?).with_context(|| format!("cannot write {}", path.display()))
}
