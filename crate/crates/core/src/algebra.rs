//! Concrete finite-dimensional algebras for a signature: one structure
//! matrix per generator over an exact field, plus a braiding backend.
//!
//! Basis convention: the n-fold tensor power of the d-dimensional space is
//! indexed row-major by tuples over the basis, first factor most
//! significant. A generator with arity s and coarity t has a structure
//! matrix of shape `d^t x d^s`. Arity 0 means the 1-dimensional ground
//! field, so scalars are 1x1 matrices.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{parse_rational, FieldKind, Scalar};
use crate::signature::{Generator, Signature};

/// How the braiding on the underlying object is realized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Braiding {
    /// The plain tensor swap; symmetric.
    Swap,
    /// An arbitrary invertible d^2 x d^2 solution of the Yang-Baxter
    /// equation, with its inverse.
    Custom { c: Matrix, c_inv: Matrix },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAlgebra {
    sig: Signature,
    dim: u32,
    field: FieldKind,
    braiding: Braiding,
    structure: BTreeMap<String, Matrix>,
}

impl FiniteAlgebra {
    /// Builds and fully validates an algebra: every generator must have a
    /// structure matrix of the exact hom shape, and a custom braiding must
    /// be invertible and satisfy the Yang-Baxter equation.
    pub fn new(
        sig: Signature,
        dim: u32,
        field: FieldKind,
        braiding: Braiding,
        structure: BTreeMap<String, Matrix>,
    ) -> Result<FiniteAlgebra> {
        if dim == 0 {
            return Err(Error::Algebra("dimension must be positive".into()));
        }
        field.validate()?;
        let d = dim as usize;
        for gen in sig.generators() {
            let m = structure.get(&gen.name).ok_or_else(|| {
                Error::Algebra(format!("missing structure matrix for `{}`", gen.name))
            })?;
            let want_rows = d.pow(gen.coarity);
            let want_cols = d.pow(gen.arity);
            if m.rows() != want_rows || m.cols() != want_cols {
                return Err(Error::Algebra(format!(
                    "structure matrix for `{}` is {}x{}, expected {}x{}",
                    gen.name,
                    m.rows(),
                    m.cols(),
                    want_rows,
                    want_cols
                )));
            }
            if m.field() != field {
                return Err(Error::Algebra(format!(
                    "structure matrix for `{}` is over the wrong field",
                    gen.name
                )));
            }
        }
        for name in structure.keys() {
            if sig.lookup(name).is_none() {
                return Err(Error::Algebra(format!(
                    "structure matrix for unknown generator `{name}`"
                )));
            }
        }
        if let Braiding::Custom { c, c_inv } = &braiding {
            if c.rows() != d * d || c.cols() != d * d {
                return Err(Error::Algebra(format!(
                    "braiding matrix must be {0}x{0}",
                    d * d
                )));
            }
            let eye = Matrix::identity(d * d, field);
            if c.mul(c_inv)? != eye || c_inv.mul(c)? != eye {
                return Err(Error::Algebra("braiding is not invertible".into()));
            }
            // The Yang-Baxter equation is deliberately not enforced here:
            // `validate_braiding` reports it, so a broken braiding can be
            // loaded and diagnosed rather than refused.
        }
        Ok(FiniteAlgebra {
            sig,
            dim,
            field,
            braiding,
            structure,
        })
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn braiding(&self) -> &Braiding {
        &self.braiding
    }

    pub fn structure(&self, name: &str) -> Option<&Matrix> {
        self.structure.get(name)
    }

    /// d^n, the dimension of the n-th tensor power.
    pub fn power_dim(&self, n: u32) -> usize {
        (self.dim as usize).pow(n)
    }

    /// The braiding matrix on 1 x 1, materialized.
    pub fn braid_unit(&self) -> Matrix {
        match &self.braiding {
            Braiding::Swap => swap_matrix(self.dim as usize, self.field),
            Braiding::Custom { c, .. } => c.clone(),
        }
    }

    pub fn braid_unit_inv(&self) -> Matrix {
        match &self.braiding {
            Braiding::Swap => swap_matrix(self.dim as usize, self.field),
            Braiding::Custom { c_inv, .. } => c_inv.clone(),
        }
    }

    /// The dual algebra: starred signature, transposed structure matrices.
    /// The dual braiding is chosen so that evaluating a dualized term in the
    /// dual is the transpose of evaluating the term here.
    pub fn dualize(&self) -> FiniteAlgebra {
        let braiding = match &self.braiding {
            Braiding::Swap => Braiding::Swap,
            Braiding::Custom { c, c_inv } => Braiding::Custom {
                c: c_inv.transpose(),
                c_inv: c.transpose(),
            },
        };
        let structure = self
            .structure
            .iter()
            .map(|(name, m)| (crate::signature::dual_name(name), m.transpose()))
            .collect();
        FiniteAlgebra {
            sig: self.sig.dual(),
            dim: self.dim,
            field: self.field,
            braiding,
            structure,
        }
    }

    /// Appends fresh unary operators with the given d x d matrices.
    pub fn extend_with_operators(&self, ops: &[(String, Matrix)]) -> Result<FiniteAlgebra> {
        let mut sig = self.sig.clone();
        let mut structure = self.structure.clone();
        let d = self.dim as usize;
        for (name, m) in ops {
            if m.rows() != d || m.cols() != d {
                return Err(Error::Algebra(format!(
                    "operator `{name}` is {}x{}, expected {d}x{d}",
                    m.rows(),
                    m.cols()
                )));
            }
            sig.add(Generator {
                name: name.clone(),
                arity: 1,
                coarity: 1,
            })?;
            structure.insert(name.clone(), m.map_field(self.field)?);
        }
        FiniteAlgebra::new(sig, self.dim, self.field, self.braiding.clone(), structure)
    }

    /// The same algebra with all structure constants mapped into another
    /// field (only rational sources can be mapped).
    pub fn with_field(&self, field: FieldKind) -> Result<FiniteAlgebra> {
        if field == self.field {
            return Ok(self.clone());
        }
        let structure = self
            .structure
            .iter()
            .map(|(k, m)| Ok((k.clone(), m.map_field(field)?)))
            .collect::<Result<BTreeMap<_, _>>>()?;
        let braiding = match &self.braiding {
            Braiding::Swap => Braiding::Swap,
            Braiding::Custom { c, c_inv } => Braiding::Custom {
                c: c.map_field(field)?,
                c_inv: c_inv.map_field(field)?,
            },
        };
        FiniteAlgebra::new(self.sig.clone(), self.dim, field, braiding, structure)
    }
}

/// The d^2 x d^2 swap matrix.
pub fn swap_matrix(d: usize, field: FieldKind) -> Matrix {
    let mut m = Matrix::zero(d * d, d * d, field);
    for i in 0..d {
        for j in 0..d {
            m.set(j * d + i, i * d + j, field.one());
        }
    }
    m
}

/// Exact inverse by Gauss-Jordan elimination; fails on singular input.
pub fn invert_matrix(m: &Matrix) -> Result<Matrix> {
    if m.rows() != m.cols() {
        return Err(Error::Dimension("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    let field = m.field();
    let mut a = m.dense();
    let mut inv = Matrix::identity(n, field).dense();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Dimension("singular matrix".into()))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].inv();
        for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *x = x.mul(&scale);
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let v = a[col][c].mul(&factor);
                a[r][c] = a[r][c].sub(&v);
                let v = inv[col][c].mul(&factor);
                inv[r][c] = inv[r][c].sub(&v);
            }
        }
    }
    Ok(Matrix::from_entries(
        n,
        n,
        field,
        inv.into_iter().enumerate().flat_map(|(r, row)| {
            row.into_iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(move |(c, v)| (r, c, v))
        }),
    ))
}

/// Outcome of checking a candidate braiding matrix.
#[derive(Debug, Clone)]
pub struct BraidingReport {
    /// d, with the matrix of side d^2.
    pub dim: u32,
    pub invertible: bool,
    pub yang_baxter: bool,
    /// (c x I)(I x c)(c x I) - (I x c)(c x I)(I x c) when nonzero.
    pub residual: Option<Matrix>,
    /// Least k <= 8 with c^k = I, when one exists.
    pub order: Option<u32>,
}

impl BraidingReport {
    pub fn passed(&self) -> bool {
        self.invertible && self.yang_baxter
    }
}

/// Checks invertibility and the Yang-Baxter equation
/// `(c x I)(I x c)(c x I) = (I x c)(c x I)(I x c)` for a d^2 x d^2 matrix.
pub fn validate_braiding(c: &Matrix) -> Result<BraidingReport> {
    let side = c.rows();
    if c.cols() != side {
        return Err(Error::Dimension("braiding matrix must be square".into()));
    }
    let d = (side as f64).sqrt().round() as usize;
    if d * d != side {
        return Err(Error::Dimension(
            "braiding matrix side must be a perfect square".into(),
        ));
    }
    validate_braiding_pair(c, None, d as u32)
}

fn validate_braiding_pair(c: &Matrix, c_inv: Option<&Matrix>, dim: u32) -> Result<BraidingReport> {
    let d = dim as usize;
    let field = c.field();
    let eye = Matrix::identity(d, field);
    let invertible = match c_inv {
        Some(ci) => {
            c.mul(ci)? == Matrix::identity(d * d, field)
                && ci.mul(c)? == Matrix::identity(d * d, field)
        }
        None => invert_matrix(c).is_ok(),
    };
    let left = c.kron(&eye);
    let right = eye.kron(c);
    let lhs = left.mul(&right)?.mul(&left)?;
    let rhs = right.mul(&left)?.mul(&right)?;
    let residual = lhs.sub(&rhs)?;
    let yang_baxter = residual.is_zero();
    let mut order = None;
    let mut acc = c.clone();
    for k in 1..=8u32 {
        if acc == Matrix::identity(d * d, field) {
            order = Some(k);
            break;
        }
        acc = acc.mul(c)?;
    }
    Ok(BraidingReport {
        dim,
        invertible,
        yang_baxter,
        residual: if yang_baxter { None } else { Some(residual) },
        order,
    })
}

// ---------------------------------------------------------------------------
// Algebra definition files.
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct AlgebraFile {
    dim: u32,
    field: FieldFile,
    braiding: BraidingFile,
    generators: Vec<GeneratorFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "type")]
enum FieldFile {
    Q,
    GFp { p: u64 },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum BraidingFile {
    Named(String),
    Matrix { matrix: Vec<Vec<EntryFile>> },
}

#[derive(Serialize, Deserialize)]
struct GeneratorFile {
    name: String,
    arity: u32,
    coarity: u32,
    matrix: Vec<Vec<EntryFile>>,
}

/// Rational entries are written as integers or strings like `"-1/2"`.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryFile {
    Int(i64),
    Str(String),
}

impl EntryFile {
    fn to_scalar(&self, field: FieldKind) -> Result<Scalar> {
        match self {
            EntryFile::Int(n) => Ok(field.from_i64(*n)),
            EntryFile::Str(s) => field.from_rational(&parse_rational(s)?),
        }
    }

    fn from_scalar(s: &Scalar) -> EntryFile {
        match s {
            Scalar::Q(q) if q.denom() == &num_bigint::BigInt::from(1) => {
                match i64::try_from(q.numer().clone()) {
                    Ok(n) => EntryFile::Int(n),
                    Err(_) => EntryFile::Str(s.to_string()),
                }
            }
            Scalar::Fp { v, .. } => EntryFile::Int(*v as i64),
            _ => EntryFile::Str(s.to_string()),
        }
    }
}

fn matrix_from_file(rows: &[Vec<EntryFile>], field: FieldKind) -> Result<Matrix> {
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    if rows.iter().any(|r| r.len() != ncols) {
        return Err(Error::Algebra("ragged matrix rows".into()));
    }
    let mut m = Matrix::zero(nrows, ncols, field);
    for (r, row) in rows.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            let v = e.to_scalar(field)?;
            if !v.is_zero() {
                m.set(r, c, v);
            }
        }
    }
    Ok(m)
}

fn matrix_to_file(m: &Matrix) -> Vec<Vec<EntryFile>> {
    m.dense()
        .into_iter()
        .map(|row| row.iter().map(EntryFile::from_scalar).collect())
        .collect()
}

impl FiniteAlgebra {
    /// Parses the UTF-8 JSON algebra definition format.
    pub fn from_json(text: &str) -> Result<FiniteAlgebra> {
        let file: AlgebraFile = serde_json::from_str(text)?;
        let field = match file.field {
            FieldFile::Q => FieldKind::Rational,
            FieldFile::GFp { p } => FieldKind::Prime(p),
        };
        let mut sig = Signature::empty();
        let mut structure = BTreeMap::new();
        for g in &file.generators {
            sig.add(Generator {
                name: g.name.clone(),
                arity: g.arity,
                coarity: g.coarity,
            })?;
            structure.insert(g.name.clone(), matrix_from_file(&g.matrix, field)?);
        }
        let braiding = match file.braiding {
            BraidingFile::Named(name) if name == "swap" => Braiding::Swap,
            BraidingFile::Named(name) => {
                return Err(Error::Algebra(format!("unknown braiding `{name}`")))
            }
            BraidingFile::Matrix { matrix } => {
                let c = matrix_from_file(&matrix, field)?;
                let c_inv = invert_matrix(&c)?;
                Braiding::Custom { c, c_inv }
            }
        };
        FiniteAlgebra::new(sig, file.dim, field, braiding, structure)
    }

    pub fn to_json(&self) -> String {
        let file = AlgebraFile {
            dim: self.dim,
            field: match self.field {
                FieldKind::Rational => FieldFile::Q,
                FieldKind::Prime(p) => FieldFile::GFp { p },
            },
            braiding: match &self.braiding {
                Braiding::Swap => BraidingFile::Named("swap".into()),
                Braiding::Custom { c, .. } => BraidingFile::Matrix {
                    matrix: matrix_to_file(c),
                },
            },
            generators: self
                .sig
                .generators()
                .iter()
                .map(|g| GeneratorFile {
                    name: g.name.clone(),
                    arity: g.arity,
                    coarity: g.coarity,
                    matrix: matrix_to_file(&self.structure[&g.name]),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("algebra serializes")
    }
}
