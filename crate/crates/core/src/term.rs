//! The term language: formal morphisms built from generators, identities and
//! braidings under composition and tensor.
//!
//! Objects are plain non-negative integers (the monoidal product on objects
//! is addition), so a term only carries its domain and codomain arities.
//!
//! Composition convention: `compose(f, g)` and the surface syntax `f . g`
//! both mean *f after g* — `g` is applied first. This is the functional
//! order `f ∘ g`.
//!
//! Structural equality is decided on [`CanonicalTerm`] (flattened form)
//! only. Two terms that differ by interchange or braid relations are *not*
//! identified here; semantic questions go through evaluation.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::signature::dual_name;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TermNode {
    /// A signature generator, with its arities cached for self-containment.
    Gen {
        name: String,
        arity: u32,
        coarity: u32,
    },
    Id(u32),
    Braid(u32, u32),
    BraidInv(u32, u32),
    /// `Compose(f, g)` is f after g.
    Compose(Arc<Term>, Arc<Term>),
    Tensor(Arc<Term>, Arc<Term>),
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    node: TermNode,
    dom: u32,
    cod: u32,
}

impl Term {
    pub fn gen(name: &str, arity: u32, coarity: u32) -> Term {
        Term {
            node: TermNode::Gen {
                name: name.to_string(),
                arity,
                coarity,
            },
            dom: arity,
            cod: coarity,
        }
    }

    pub fn id(n: u32) -> Term {
        Term {
            node: TermNode::Id(n),
            dom: n,
            cod: n,
        }
    }

    pub fn braid(m: u32, n: u32) -> Term {
        Term {
            node: TermNode::Braid(m, n),
            dom: m + n,
            cod: m + n,
        }
    }

    pub fn braid_inv(m: u32, n: u32) -> Term {
        Term {
            node: TermNode::BraidInv(m, n),
            dom: m + n,
            cod: m + n,
        }
    }

    pub fn dom(&self) -> u32 {
        self.dom
    }

    pub fn cod(&self) -> u32 {
        self.cod
    }

    pub fn node(&self) -> &TermNode {
        &self.node
    }

    /// f after g; fails unless dom(f) = cod(g).
    pub fn compose(f: Term, g: Term) -> Result<Term> {
        if f.dom != g.cod {
            return Err(Error::Arity(format!(
                "cannot compose: left factor expects {} inputs, right factor produces {}",
                f.dom, g.cod
            )));
        }
        let (dom, cod) = (g.dom, f.cod);
        Ok(Term {
            node: TermNode::Compose(Arc::new(f), Arc::new(g)),
            dom,
            cod,
        })
    }

    /// Composes a chain `[f1, f2, ..., fk]` as f1 after f2 after ... after fk.
    pub fn compose_chain<I>(factors: I) -> Result<Term>
    where
        I: IntoIterator<Item = Term>,
    {
        let mut it = factors.into_iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Arity("empty composition chain".into()))?;
        it.try_fold(first, Term::compose)
    }

    pub fn tensor(f: Term, g: Term) -> Term {
        let (dom, cod) = (f.dom + g.dom, f.cod + g.cod);
        Term {
            node: TermNode::Tensor(Arc::new(f), Arc::new(g)),
            dom,
            cod,
        }
    }

    pub fn tensor_chain<I>(factors: I) -> Term
    where
        I: IntoIterator<Item = Term>,
    {
        let mut it = factors.into_iter();
        match it.next() {
            None => Term::id(0),
            Some(first) => it.fold(first, Term::tensor),
        }
    }

    /// `id(left) # self # id(right)`.
    pub fn padded(self, left: u32, right: u32) -> Term {
        let mut t = self;
        if left > 0 {
            t = Term::tensor(Term::id(left), t);
        }
        if right > 0 {
            t = Term::tensor(t, Term::id(right));
        }
        t
    }

    /// Recomputes dom/cod from the leaves and checks them against the cache.
    pub fn check_arities(&self) -> Result<(u32, u32)> {
        let (dom, cod) = match &self.node {
            TermNode::Gen { arity, coarity, .. } => (*arity, *coarity),
            TermNode::Id(n) => (*n, *n),
            TermNode::Braid(m, n) | TermNode::BraidInv(m, n) => (m + n, m + n),
            TermNode::Compose(f, g) => {
                let (fd, fc) = f.check_arities()?;
                let (gd, gc) = g.check_arities()?;
                if fd != gc {
                    return Err(Error::Arity(format!("composition joins {fd} to {gc}")));
                }
                (gd, fc)
            }
            TermNode::Tensor(f, g) => {
                let (fd, fc) = f.check_arities()?;
                let (gd, gc) = g.check_arities()?;
                (fd + gd, fc + gc)
            }
        };
        if dom != self.dom || cod != self.cod {
            return Err(Error::Arity("cached arities are stale".into()));
        }
        Ok((dom, cod))
    }

    /// The contravariant dual: compositions reversed, tensor factors swapped,
    /// braidings inverted, generators starred with arities swapped.
    pub fn dualize(&self) -> Term {
        match &self.node {
            TermNode::Gen {
                name,
                arity,
                coarity,
            } => Term::gen(&dual_name(name), *coarity, *arity),
            TermNode::Id(n) => Term::id(*n),
            TermNode::Braid(m, n) => Term::braid_inv(*m, *n),
            TermNode::BraidInv(m, n) => Term::braid(*m, *n),
            TermNode::Compose(f, g) => {
                Term::compose(g.dualize(), f.dualize()).expect("dual of well-formed term")
            }
            TermNode::Tensor(f, g) => Term::tensor(f.dualize(), g.dualize()),
        }
    }

    /// Canonical structural flattening; see [`CanonicalTerm`].
    pub fn flatten(&self) -> CanonicalTerm {
        CanonicalTerm(flatten_term(self))
    }
}

/// A term in flattened form: composition and tensor chains right-associated,
/// identity composition factors absorbed, `id(0)` tensor factors removed,
/// adjacent identity tensor factors merged, braidings with a zero side
/// rewritten to identities. Flattening is idempotent and preserves
/// evaluation in every algebra; it is a chosen representative, not a
/// decision procedure for equality of morphisms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalTerm(Term);

impl CanonicalTerm {
    pub fn term(&self) -> &Term {
        &self.0
    }

    pub fn into_term(self) -> Term {
        self.0
    }

    pub fn dom(&self) -> u32 {
        self.0.dom
    }

    pub fn cod(&self) -> u32 {
        self.0.cod
    }
}

fn flatten_term(t: &Term) -> Term {
    match &t.node {
        TermNode::Gen { .. } | TermNode::Id(_) => t.clone(),
        TermNode::Braid(m, n) => {
            if *m == 0 || *n == 0 {
                Term::id(m + n)
            } else {
                t.clone()
            }
        }
        TermNode::BraidInv(m, n) => {
            if *m == 0 || *n == 0 {
                Term::id(m + n)
            } else {
                t.clone()
            }
        }
        TermNode::Compose(..) => {
            let mut factors = Vec::new();
            collect_compose(t, &mut factors);
            factors.retain(|f| !matches!(f.node, TermNode::Id(_)));
            match factors.len() {
                0 => Term::id(t.dom),
                _ => {
                    // Right-associate: fold from the right.
                    let mut it = factors.into_iter().rev();
                    let last = it.next().unwrap();
                    it.fold(last, |acc, f| {
                        Term::compose(f, acc).expect("flatten preserves arities")
                    })
                }
            }
        }
        TermNode::Tensor(..) => {
            let mut factors = Vec::new();
            collect_tensor(t, &mut factors);
            let mut merged: Vec<Term> = Vec::new();
            for f in factors {
                match (&f.node, merged.last()) {
                    (TermNode::Id(0), _) => {}
                    (TermNode::Id(a), Some(prev)) => {
                        if let TermNode::Id(b) = prev.node {
                            let n = a + b;
                            merged.pop();
                            merged.push(Term::id(n));
                        } else {
                            merged.push(f);
                        }
                    }
                    _ => merged.push(f),
                }
            }
            match merged.len() {
                0 => Term::id(0),
                _ => {
                    let mut it = merged.into_iter().rev();
                    let last = it.next().unwrap();
                    it.fold(last, |acc, f| Term::tensor(f, acc))
                }
            }
        }
    }
}

fn collect_compose(t: &Term, out: &mut Vec<Term>) {
    if let TermNode::Compose(f, g) = &t.node {
        collect_compose(f, out);
        collect_compose(g, out);
    } else {
        // Flattening a factor may expose a nested composition (e.g. when a
        // tensor collapsed to its only non-identity factor).
        push_compose_factors(flatten_term(t), out);
    }
}

fn push_compose_factors(t: Term, out: &mut Vec<Term>) {
    if let TermNode::Compose(f, g) = &t.node {
        push_compose_factors((**f).clone(), out);
        push_compose_factors((**g).clone(), out);
    } else {
        out.push(t);
    }
}

fn collect_tensor(t: &Term, out: &mut Vec<Term>) {
    if let TermNode::Tensor(f, g) = &t.node {
        collect_tensor(f, out);
        collect_tensor(g, out);
    } else {
        let f = flatten_term(t);
        // Flattening a factor may expose nested tensors (e.g. when a
        // composition collapsed to its only non-identity factor).
        if let TermNode::Tensor(a, b) = &f.node {
            collect_tensor(a, out);
            collect_tensor(b, out);
        } else {
            out.push(f);
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_term(self, f, Prec::Compose)
    }
}

impl fmt::Display for CanonicalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(PartialEq, Eq, PartialOrd, Ord, Clone, Copy)]
enum Prec {
    Compose,
    Tensor,
    Atom,
}

fn write_term(t: &Term, f: &mut fmt::Formatter<'_>, ctx: Prec) -> fmt::Result {
    let prec = match &t.node {
        TermNode::Compose(..) => Prec::Compose,
        TermNode::Tensor(..) => Prec::Tensor,
        _ => Prec::Atom,
    };
    let parens = prec < ctx;
    if parens {
        write!(f, "(")?;
    }
    match &t.node {
        TermNode::Gen { name, .. } => write!(f, "{name}")?,
        TermNode::Id(n) => write!(f, "id({n})")?,
        TermNode::Braid(m, n) => write!(f, "tau({m},{n})")?,
        TermNode::BraidInv(m, n) => write!(f, "tau_inv({m},{n})")?,
        TermNode::Compose(a, b) => {
            write_term(a, f, Prec::Tensor)?;
            write!(f, " . ")?;
            write_term(b, f, Prec::Tensor)?;
        }
        TermNode::Tensor(a, b) => {
            write_term(a, f, Prec::Atom)?;
            write!(f, " # ")?;
            write_term(b, f, Prec::Atom)?;
        }
    }
    if parens {
        write!(f, ")")?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu() -> Term {
        Term::gen("mu", 2, 1)
    }

    #[test]
    fn arities_of_composition() {
        let t = Term::compose(mu(), Term::tensor(mu(), Term::id(1))).unwrap();
        assert_eq!((t.dom(), t.cod()), (3, 1));
        t.check_arities().unwrap();
    }

    #[test]
    fn compose_arity_mismatch() {
        assert!(Term::compose(mu(), mu()).is_err());
    }

    #[test]
    fn flatten_absorbs_identities() {
        let f = mu();
        let t = Term::compose(Term::id(1), Term::compose(f.clone(), Term::id(2)).unwrap()).unwrap();
        assert_eq!(t.flatten(), f.flatten());
    }

    #[test]
    fn tensor_arity_arithmetic() {
        let t = Term::tensor(Term::gen("Delta", 1, 2), Term::gen("eps", 1, 0));
        assert_eq!((t.dom(), t.cod()), (2, 2));
    }

    #[test]
    fn flatten_merges_adjacent_ids() {
        let t = Term::tensor(Term::id(1), Term::id(2));
        assert_eq!(t.flatten().term(), &Term::id(3));
        let t = Term::tensor(Term::id(0), mu());
        assert_eq!(t.flatten(), mu().flatten());
    }

    #[test]
    fn flatten_right_associates() {
        let a = Term::gen("a", 1, 1);
        let b = Term::gen("b", 1, 1);
        let c = Term::gen("c", 1, 1);
        let left = Term::compose(Term::compose(a.clone(), b.clone()).unwrap(), c.clone()).unwrap();
        let right = Term::compose(a, Term::compose(b, c).unwrap()).unwrap();
        assert_eq!(left.flatten(), right.flatten());
    }

    #[test]
    fn flatten_idempotent() {
        let t = Term::compose(
            Term::tensor(Term::tensor(Term::id(1), Term::id(1)), mu()),
            Term::braid(2, 2),
        )
        .unwrap();
        let once = t.flatten();
        let twice = once.term().flatten();
        assert_eq!(once, twice);
    }

    #[test]
    fn degenerate_braid_is_identity() {
        assert_eq!(Term::braid(3, 0).flatten().term(), &Term::id(3));
        assert_eq!(Term::braid_inv(0, 2).flatten().term(), &Term::id(2));
    }

    #[test]
    fn dualize_involutive_on_terms() {
        let t = Term::compose(mu(), Term::tensor(mu(), Term::id(1))).unwrap();
        assert_eq!(t.dualize().dualize().flatten(), t.flatten());
        assert_eq!(Term::id(4).dualize(), Term::id(4));
    }

    #[test]
    fn display_round_trips_structure() {
        // `#` binds tighter than `.`, so no parentheses are needed here.
        let t = Term::compose(mu(), Term::tensor(mu(), Term::id(1))).unwrap();
        assert_eq!(t.to_string(), "mu . mu # id(1)");
        let nested = Term::tensor(Term::compose(Term::id(1), Term::id(1)).unwrap(), mu());
        assert_eq!(nested.to_string(), "(id(1) . id(1)) # mu");
    }
}
