//! The evaluation functor: terms and polynomials to exact matrices.
//!
//! Composition goes to matrix product, tensor to Kronecker product, and
//! `tau(m,n)` is expanded from the backend braiding c by the two hexagon
//! recursions
//!
//! ```text
//! tau(m,n) = (tau(m-1,n) # id(1)) . (id(m-1) # tau(1,n))
//! tau(1,n) = (id(n-1) # tau(1,1)) . (tau(1,n-1) # id(1))
//! ```
//!
//! with `tau(m,0) = tau(0,n) = id`. Any coherent expansion yields the same
//! matrix; a test checks an independent expansion agrees.

use std::collections::BTreeMap;

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::term::{Term, TermNode};

/// Evaluates terms in one algebra, caching expanded braiding matrices.
pub struct Evaluator<'a> {
    alg: &'a FiniteAlgebra,
    braids: BTreeMap<(u32, u32, bool), Matrix>,
}

impl<'a> Evaluator<'a> {
    pub fn new(alg: &'a FiniteAlgebra) -> Self {
        Evaluator {
            alg,
            braids: BTreeMap::new(),
        }
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        self.alg
    }

    pub fn eval(&mut self, t: &Term) -> Result<Matrix> {
        match t.node() {
            TermNode::Gen {
                name,
                arity,
                coarity,
            } => {
                let m = self
                    .alg
                    .structure(name)
                    .ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
                let gen = self
                    .alg
                    .sig()
                    .lookup(name)
                    .expect("structure implies generator");
                if gen.arity != *arity || gen.coarity != *coarity {
                    return Err(Error::Arity(format!(
                        "generator `{name}` has arity {}→{} here, term expects {}→{}",
                        gen.arity, gen.coarity, arity, coarity
                    )));
                }
                Ok(m.clone())
            }
            TermNode::Id(n) => Ok(Matrix::identity(self.alg.power_dim(*n), self.alg.field())),
            TermNode::Braid(m, n) => Ok(self.braid(*m, *n, false)),
            TermNode::BraidInv(m, n) => Ok(self.braid(*m, *n, true)),
            TermNode::Compose(f, g) => {
                let mf = self.eval(f)?;
                let mg = self.eval(g)?;
                mf.mul(&mg)
            }
            TermNode::Tensor(f, g) => {
                let mf = self.eval(f)?;
                let mg = self.eval(g)?;
                Ok(mf.kron(&mg))
            }
        }
    }

    /// tau(m,n) (or its inverse) as a matrix, by the hexagon recursions.
    pub fn braid(&mut self, m: u32, n: u32, inverse: bool) -> Matrix {
        if let Some(cached) = self.braids.get(&(m, n, inverse)) {
            return cached.clone();
        }
        let field = self.alg.field();
        let result = if m == 0 || n == 0 {
            Matrix::identity(self.alg.power_dim(m + n), field)
        } else if m == 1 && n == 1 {
            if inverse {
                self.alg.braid_unit_inv()
            } else {
                self.alg.braid_unit()
            }
        } else if !inverse {
            if m > 1 {
                let outer = self
                    .braid(m - 1, n, false)
                    .kron(&Matrix::identity(self.alg.power_dim(1), field));
                let inner = Matrix::identity(self.alg.power_dim(m - 1), field)
                    .kron(&self.braid(1, n, false));
                outer.mul(&inner).expect("hexagon shapes agree")
            } else {
                let outer = Matrix::identity(self.alg.power_dim(n - 1), field)
                    .kron(&self.braid(1, 1, false));
                let inner = self
                    .braid(1, n - 1, false)
                    .kron(&Matrix::identity(self.alg.power_dim(1), field));
                outer.mul(&inner).expect("hexagon shapes agree")
            }
        } else {
            // Inverse of the forward expansion, factors reversed.
            if m > 1 {
                let inner = Matrix::identity(self.alg.power_dim(m - 1), field)
                    .kron(&self.braid(1, n, true));
                let outer = self
                    .braid(m - 1, n, true)
                    .kron(&Matrix::identity(self.alg.power_dim(1), field));
                inner.mul(&outer).expect("hexagon shapes agree")
            } else {
                let inner = self
                    .braid(1, n - 1, true)
                    .kron(&Matrix::identity(self.alg.power_dim(1), field));
                let outer = Matrix::identity(self.alg.power_dim(n - 1), field)
                    .kron(&self.braid(1, 1, true));
                inner.mul(&outer).expect("hexagon shapes agree")
            }
        };
        self.braids.insert((m, n, inverse), result.clone());
        result
    }

    pub fn eval_poly(&mut self, p: &Polynomial) -> Result<Matrix> {
        let field = self.alg.field();
        let mut acc = Matrix::zero(
            self.alg.power_dim(p.cod()),
            self.alg.power_dim(p.dom()),
            field,
        );
        for (t, c) in p.terms() {
            let m = self.eval(t.term())?;
            acc = acc.add(&m.scale(&field.from_rational(c)?))?;
        }
        Ok(acc)
    }
}

/// Evaluates one term.
pub fn evaluate(alg: &FiniteAlgebra, t: &Term) -> Result<Matrix> {
    Evaluator::new(alg).eval(t)
}

/// Evaluates a polynomial by linear extension.
pub fn evaluate_poly(alg: &FiniteAlgebra, p: &Polynomial) -> Result<Matrix> {
    Evaluator::new(alg).eval_poly(p)
}

/// True iff the polynomial evaluates to the exact zero matrix.
pub fn check_identity(alg: &FiniteAlgebra, p: &Polynomial) -> Result<bool> {
    Ok(evaluate_poly(alg, p)?.is_zero())
}

/// A named list of relator polynomials over one signature.
#[derive(Debug, Clone)]
pub struct RelationSet {
    pub name: String,
    pub relators: Vec<(String, Polynomial)>,
}

/// Result of evaluating one relator.
#[derive(Debug, Clone)]
pub struct RelationReport {
    pub name: String,
    pub passed: bool,
    /// For a failing relator: an input basis tuple on which it is nonzero,
    /// with the nonzero image column.
    pub witness: Option<RelationWitness>,
}

#[derive(Debug, Clone)]
pub struct RelationWitness {
    pub input: String,
    pub column: Vec<String>,
}

/// Evaluates every relator; failing ones get a witness input, not an error.
pub fn validate_relations(alg: &FiniteAlgebra, rels: &RelationSet) -> Result<Vec<RelationReport>> {
    let mut ev = Evaluator::new(alg);
    let mut out = Vec::new();
    for (name, poly) in &rels.relators {
        let m = ev.eval_poly(poly)?;
        if m.is_zero() {
            out.push(RelationReport {
                name: name.clone(),
                passed: true,
                witness: None,
            });
        } else {
            let col = m.iter().map(|(_, c, _)| c).min().expect("nonzero matrix");
            let column: Vec<String> = (0..m.rows()).map(|r| m.get(r, col).to_string()).collect();
            out.push(RelationReport {
                name: name.clone(),
                passed: false,
                witness: Some(RelationWitness {
                    input: basis_tuple(col, alg.dim(), poly.dom()),
                    column,
                }),
            });
        }
    }
    Ok(out)
}

/// Renders a row-major basis index as a tuple like `e1⊗e0`.
pub fn basis_tuple(index: usize, dim: u32, arity: u32) -> String {
    if arity == 0 {
        return "1".to_string();
    }
    let d = dim as usize;
    let mut digits = vec![0usize; arity as usize];
    let mut rest = index;
    for k in (0..arity as usize).rev() {
        digits[k] = rest % d;
        rest /= d;
    }
    digits
        .iter()
        .map(|i| format!("e{i}"))
        .collect::<Vec<_>>()
        .join("*")
}
