//! Formal linear combinations of terms sharing one (dom, cod) pair.
//!
//! Coefficients are exact rationals regardless of the evaluation field; they
//! are mapped into the field at evaluation time. Terms are kept in flattened
//! form and structurally equal terms are merged, so a polynomial is a sorted
//! coefficient map.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::term::{CanonicalTerm, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    dom: u32,
    cod: u32,
    terms: BTreeMap<CanonicalTerm, BigRational>,
}

impl Polynomial {
    /// The zero polynomial at a given hom.
    pub fn zero(dom: u32, cod: u32) -> Polynomial {
        Polynomial {
            dom,
            cod,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_term(t: Term) -> Polynomial {
        Polynomial::from_term_scaled(&BigRational::one(), t)
    }

    pub fn from_term_scaled(c: &BigRational, t: Term) -> Polynomial {
        let mut p = Polynomial::zero(t.dom(), t.cod());
        if !c.is_zero() {
            p.terms.insert(t.flatten(), c.clone());
        }
        p
    }

    pub fn identity(n: u32) -> Polynomial {
        Polynomial::from_term(Term::id(n))
    }

    pub fn dom(&self) -> u32 {
        self.dom
    }

    pub fn cod(&self) -> u32 {
        self.cod
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<CanonicalTerm, BigRational> {
        &self.terms
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::Arity(format!(
                "cannot add polynomials at ({},{}) and ({},{})",
                self.dom, self.cod, other.dom, other.cod
            )));
        }
        let mut out = self.clone();
        for (t, c) in &other.terms {
            let v = out.terms.remove(t).unwrap_or_else(BigRational::zero) + c;
            if !v.is_zero() {
                out.terms.insert(t.clone(), v);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dom, self.cod);
        }
        Polynomial {
            dom: self.dom,
            cod: self.cod,
            terms: self.terms.iter().map(|(t, v)| (t.clone(), v * c)).collect(),
        }
    }

    /// Bilinear extension of term composition: self after other.
    pub fn compose(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.dom != other.cod {
            return Err(Error::Arity(format!(
                "cannot compose polynomials: left expects {}, right produces {}",
                self.dom, other.cod
            )));
        }
        let mut out = Polynomial::zero(other.dom, self.cod);
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                let t = Term::compose(t1.term().clone(), t2.term().clone())?;
                out = out.add(&Polynomial::from_term_scaled(&(c1 * c2), t))?;
            }
        }
        Ok(out)
    }

    /// Bilinear extension of the tensor product.
    pub fn tensor(&self, other: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero(self.dom + other.dom, self.cod + other.cod);
        for (t1, c1) in &self.terms {
            for (t2, c2) in &other.terms {
                let t = Term::tensor(t1.term().clone(), t2.term().clone());
                out = out
                    .add(&Polynomial::from_term_scaled(&(c1 * c2), t))
                    .expect("tensor arities agree");
            }
        }
        out
    }

    /// The contravariant dual, term by term.
    pub fn dualize(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.cod, self.dom);
        for (t, c) in &self.terms {
            out = out
                .add(&Polynomial::from_term_scaled(c, t.term().dualize()))
                .expect("dual arities agree");
        }
        out
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, c) in &self.terms {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if !mag.is_one() {
                if mag.denom().is_one() {
                    write!(f, "{} * ", mag.numer())?;
                } else {
                    write!(f, "{}/{} * ", mag.numer(), mag.denom())?;
                }
            }
            let needs_parens = t.to_string().contains(' ');
            if needs_parens {
                write!(f, "({t})")?;
            } else {
                write!(f, "{t}")?;
            }
        }
        Ok(())
    }
}
