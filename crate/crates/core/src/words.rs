//! Lazy evaluation backend over group algebras of free and free-abelian
//! groups.
//!
//! Basis elements of the n-th tensor power are n-tuples of reduced group
//! words; a [`WordVector`] is a sparse rational combination of such tuples.
//! Terms over the Hopf signature `{mu, u, Delta, eps, S}` act on word
//! vectors by the group-algebra Hopf structure: the product concatenates
//! and reduces, the unit is the empty word, the comultiplication is
//! group-like (`g -> g (x) g`), the counit sends every basis word to 1 and
//! the antipode inverts. Braidings act as plain tuple swaps.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::SparseVec;
use crate::scalar::FieldKind;
use crate::span::SpanBasis;
use crate::term::{Term, TermNode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WordKind {
    Free,
    FreeAbelian,
}

/// A reduced word in a free group (letters with exponent ±1, no adjacent
/// cancellation) or a free abelian group (exponent vector, trailing zeros
/// trimmed).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupWord {
    /// Letters (generator index >= 1, exponent +-1).
    Free(Vec<(u32, i8)>),
    /// Exponent of generator i at position i-1.
    FreeAbelian(Vec<i64>),
}

impl GroupWord {
    pub fn empty(kind: WordKind) -> GroupWord {
        match kind {
            WordKind::Free => GroupWord::Free(Vec::new()),
            WordKind::FreeAbelian => GroupWord::FreeAbelian(Vec::new()),
        }
    }

    pub fn generator(kind: WordKind, index: u32) -> GroupWord {
        debug_assert!(index >= 1);
        match kind {
            WordKind::Free => GroupWord::Free(vec![(index, 1)]),
            WordKind::FreeAbelian => {
                let mut exps = vec![0; index as usize];
                exps[index as usize - 1] = 1;
                GroupWord::FreeAbelian(exps)
            }
        }
    }

    pub fn kind(&self) -> WordKind {
        match self {
            GroupWord::Free(_) => WordKind::Free,
            GroupWord::FreeAbelian(_) => WordKind::FreeAbelian,
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            GroupWord::Free(ls) => ls.is_empty(),
            GroupWord::FreeAbelian(es) => es.is_empty(),
        }
    }

    /// Largest generator index appearing.
    pub fn max_index(&self) -> u32 {
        match self {
            GroupWord::Free(ls) => ls.iter().map(|(g, _)| *g).max().unwrap_or(0),
            GroupWord::FreeAbelian(es) => es.len() as u32,
        }
    }

    pub fn mul(&self, other: &GroupWord) -> GroupWord {
        match (self, other) {
            (GroupWord::Free(a), GroupWord::Free(b)) => {
                GroupWord::Free(reduce_free(a.iter().chain(b.iter()).copied()))
            }
            (GroupWord::FreeAbelian(a), GroupWord::FreeAbelian(b)) => {
                let len = a.len().max(b.len());
                let mut exps = vec![0i64; len];
                for (i, e) in a.iter().enumerate() {
                    exps[i] += e;
                }
                for (i, e) in b.iter().enumerate() {
                    exps[i] += e;
                }
                trim_abelian(&mut exps);
                GroupWord::FreeAbelian(exps)
            }
            _ => panic!("mixed word kinds"),
        }
    }

    pub fn inv(&self) -> GroupWord {
        match self {
            GroupWord::Free(ls) => {
                GroupWord::Free(ls.iter().rev().map(|(g, e)| (*g, -e)).collect())
            }
            GroupWord::FreeAbelian(es) => GroupWord::FreeAbelian(es.iter().map(|e| -e).collect()),
        }
    }
}

/// Cancels adjacent inverse letters; the result is fully reduced.
fn reduce_free<I: IntoIterator<Item = (u32, i8)>>(letters: I) -> Vec<(u32, i8)> {
    let mut stack: Vec<(u32, i8)> = Vec::new();
    for (g, e) in letters {
        debug_assert!(e == 1 || e == -1);
        match stack.last() {
            Some(&(h, f)) if h == g && f == -e => {
                stack.pop();
            }
            _ => stack.push((g, e)),
        }
    }
    stack
}

fn trim_abelian(exps: &mut Vec<i64>) {
    while exps.last() == Some(&0) {
        exps.pop();
    }
}

impl fmt::Display for GroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupWord::Free(ls) => {
                if ls.is_empty() {
                    return write!(f, "1");
                }
                // Merge adjacent runs of the same generator for display.
                let mut runs: Vec<(u32, i64)> = Vec::new();
                for &(g, e) in ls {
                    match runs.last_mut() {
                        Some((h, acc)) if *h == g && (*acc > 0) == (e > 0) => *acc += e as i64,
                        _ => runs.push((g, e as i64)),
                    }
                }
                let parts: Vec<String> = runs
                    .iter()
                    .map(|(g, e)| {
                        if *e == 1 {
                            format!("x{g}")
                        } else {
                            format!("x{g}^{e}")
                        }
                    })
                    .collect();
                write!(f, "{}", parts.join("*"))
            }
            GroupWord::FreeAbelian(es) => {
                let parts: Vec<String> = es
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| **e != 0)
                    .map(|(i, e)| {
                        if *e == 1 {
                            format!("x{}", i + 1)
                        } else {
                            format!("x{}^{}", i + 1, e)
                        }
                    })
                    .collect();
                if parts.is_empty() {
                    write!(f, "1")
                } else {
                    write!(f, "{}", parts.join("*"))
                }
            }
        }
    }
}

/// Parses the word literal syntax: `x1*x2*x1^-1` (free) or `x1^-2*x2^3`
/// (free abelian); `1` is the empty word.
pub fn parse_word(text: &str, kind: WordKind) -> Result<GroupWord> {
    let text = text.trim();
    if text == "1" {
        return Ok(GroupWord::empty(kind));
    }
    let mut word = GroupWord::empty(kind);
    for factor in text.split('*') {
        let factor = factor.trim();
        let (base, exp) = match factor.split_once('^') {
            Some((b, e)) => {
                let exp: i64 = e
                    .trim()
                    .parse()
                    .map_err(|_| Error::Word(format!("bad exponent in `{factor}`")))?;
                (b.trim(), exp)
            }
            None => (factor, 1),
        };
        let index: u32 = base
            .strip_prefix('x')
            .and_then(|s| s.parse().ok())
            .filter(|&i| i >= 1)
            .ok_or_else(|| Error::Word(format!("bad factor `{factor}`, expected xN")))?;
        let powered = match kind {
            WordKind::Free => {
                let letter = if exp >= 0 {
                    (index, 1i8)
                } else {
                    (index, -1i8)
                };
                GroupWord::Free(vec![letter; exp.unsigned_abs() as usize])
            }
            WordKind::FreeAbelian => {
                let mut exps = vec![0; index as usize];
                exps[index as usize - 1] = exp;
                trim_abelian(&mut exps);
                GroupWord::FreeAbelian(exps)
            }
        };
        word = word.mul(&powered);
    }
    Ok(word)
}

/// A sparse rational combination of n-tuples of group words, all of one
/// kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordVector {
    arity: u32,
    kind: WordKind,
    terms: BTreeMap<Vec<GroupWord>, BigRational>,
}

impl WordVector {
    pub fn zero(kind: WordKind, arity: u32) -> WordVector {
        WordVector {
            arity,
            kind,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(kind: WordKind, tuple: Vec<GroupWord>) -> WordVector {
        debug_assert!(tuple.iter().all(|w| w.kind() == kind));
        let mut v = WordVector::zero(kind, tuple.len() as u32);
        v.terms.insert(tuple, BigRational::one());
        v
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn kind(&self) -> WordKind {
        self.kind
    }

    pub fn terms(&self) -> &BTreeMap<Vec<GroupWord>, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, tuple: Vec<GroupWord>, coeff: BigRational) {
        debug_assert_eq!(tuple.len() as u32, self.arity);
        let v = self.terms.remove(&tuple).unwrap_or_else(BigRational::zero) + coeff;
        if !v.is_zero() {
            self.terms.insert(tuple, v);
        }
    }

    /// The generator tuple (x1, ..., xm).
    pub fn generators(kind: WordKind, m: u32) -> WordVector {
        WordVector::basis(
            kind,
            (1..=m).map(|i| GroupWord::generator(kind, i)).collect(),
        )
    }
}

impl fmt::Display for WordVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (tuple, c) in &self.terms {
            let neg = c < &BigRational::zero();
            let mag = if neg { -c.clone() } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if !mag.is_one() {
                write!(f, "{mag} * ")?;
            }
            let parts: Vec<String> = tuple.iter().map(|w| w.to_string()).collect();
            write!(f, "({})", parts.join(" , "))?;
        }
        Ok(())
    }
}

/// Applies a term over the Hopf signature to a word vector; linear in the
/// input and functorial in the term.
pub fn apply(term: &Term, input: &WordVector) -> Result<WordVector> {
    if term.dom() != input.arity() {
        return Err(Error::Arity(format!(
            "term expects {} inputs, word vector has arity {}",
            term.dom(),
            input.arity()
        )));
    }
    let mut out = WordVector::zero(input.kind, term.cod());
    for (tuple, coeff) in &input.terms {
        let image = apply_basis(term, tuple, input.kind)?;
        for (t, c) in image.terms {
            out.add_term(t, c * coeff);
        }
    }
    Ok(out)
}

fn apply_basis(term: &Term, tuple: &[GroupWord], kind: WordKind) -> Result<WordVector> {
    match term.node() {
        TermNode::Id(_) => Ok(WordVector::basis(kind, tuple.to_vec())),
        TermNode::Braid(m, n) | TermNode::BraidInv(m, n) => {
            let (m, n) = (*m as usize, *n as usize);
            let mut out = Vec::with_capacity(m + n);
            out.extend_from_slice(&tuple[m..]);
            out.extend_from_slice(&tuple[..m]);
            Ok(WordVector::basis(kind, out))
        }
        TermNode::Gen { name, .. } => match name.as_str() {
            "mu" => Ok(WordVector::basis(kind, vec![tuple[0].mul(&tuple[1])])),
            "u" => Ok(WordVector::basis(kind, vec![GroupWord::empty(kind)])),
            "Delta" => Ok(WordVector::basis(
                kind,
                vec![tuple[0].clone(), tuple[0].clone()],
            )),
            "eps" => Ok(WordVector::basis(kind, Vec::new())),
            "S" => Ok(WordVector::basis(kind, vec![tuple[0].inv()])),
            other => Err(Error::Word(format!(
                "generator `{other}` has no group-word interpretation"
            ))),
        },
        TermNode::Compose(f, g) => {
            let mid = apply_basis(g, tuple, kind)?;
            apply(f, &mid)
        }
        TermNode::Tensor(f, g) => {
            let split = f.dom() as usize;
            let left = apply_basis(f, &tuple[..split], kind)?;
            let right = apply_basis(g, &tuple[split..], kind)?;
            let mut out = WordVector::zero(kind, term.cod());
            for (lt, lc) in &left.terms {
                for (rt, rc) in &right.terms {
                    let mut t = lt.clone();
                    t.extend_from_slice(rt);
                    out.add_term(t, lc * rc);
                }
            }
            Ok(out)
        }
    }
}

/// Exact linear independence over the union of support tuples.
pub fn independent(vs: &[WordVector]) -> Result<bool> {
    let Some(first) = vs.first() else {
        return Ok(true);
    };
    let arity = first.arity();
    if vs
        .iter()
        .any(|v| v.arity() != arity || v.kind() != first.kind())
    {
        return Err(Error::Arity("word vectors of mixed arity or kind".into()));
    }
    let mut index: BTreeMap<&Vec<GroupWord>, usize> = BTreeMap::new();
    for v in vs {
        for tuple in v.terms.keys() {
            let next = index.len();
            index.entry(tuple).or_insert(next);
        }
    }
    let ambient = index.len();
    let mut basis = SpanBasis::new(ambient, FieldKind::Rational);
    for v in vs {
        let mut entries: Vec<(usize, crate::scalar::Scalar)> = v
            .terms
            .iter()
            .map(|(t, c)| (index[t], crate::scalar::Scalar::Q(c.clone())))
            .collect();
        entries.sort_by_key(|(i, _)| *i);
        let grew = basis.insert(SparseVec {
            len: ambient,
            entries,
        })?;
        if !grew {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_term;
    use crate::signature::hopf_signature;

    fn x(i: u32) -> GroupWord {
        GroupWord::generator(WordKind::Free, i)
    }

    #[test]
    fn free_reduction_cancels() {
        let w = x(1).mul(&x(1).inv());
        assert!(w.is_empty());
        let w = parse_word("x1*x2^-1*x2*x1^-1", WordKind::Free).unwrap();
        assert!(w.is_empty());
    }

    #[test]
    fn reduction_idempotent() {
        let w = parse_word("x1*x2*x1^-1", WordKind::Free).unwrap();
        if let GroupWord::Free(ls) = &w {
            assert_eq!(reduce_free(ls.iter().copied()), *ls);
        }
    }

    #[test]
    fn abelian_exponents_add() {
        let a = parse_word("x1^-2*x2^3", WordKind::FreeAbelian).unwrap();
        let b = parse_word("x1^2*x2^-3", WordKind::FreeAbelian).unwrap();
        assert!(a.mul(&b).is_empty());
    }

    #[test]
    fn display_round_trip() {
        for text in ["x1*x2*x1^-1", "1", "x5*x2^-1*x1^2"] {
            let w = parse_word(text, WordKind::Free).unwrap();
            assert_eq!(
                parse_word(&w.to_string(), WordKind::Free).unwrap(),
                w,
                "{text}"
            );
        }
        let w = parse_word("x1^-2*x2^3", WordKind::FreeAbelian).unwrap();
        assert_eq!(w.to_string(), "x1^-2*x2^3");
    }

    #[test]
    fn delta_is_group_like() {
        let sig = hopf_signature();
        let t = parse_term("Delta", &sig).unwrap();
        let v = apply(&t, &WordVector::basis(WordKind::Free, vec![x(1)])).unwrap();
        assert_eq!(v, WordVector::basis(WordKind::Free, vec![x(1), x(1)]));
    }

    #[test]
    fn antipode_axiom_on_group_likes() {
        let sig = hopf_signature();
        let t = parse_term("mu . (S # id(1)) . Delta", &sig).unwrap();
        let v = apply(&t, &WordVector::basis(WordKind::Free, vec![x(1)])).unwrap();
        assert_eq!(
            v,
            WordVector::basis(WordKind::Free, vec![GroupWord::empty(WordKind::Free)])
        );
    }

    #[test]
    fn functorial_in_the_term() {
        let sig = hopf_signature();
        let f = parse_term("mu # eps", &sig).unwrap();
        let g = parse_term("S # Delta", &sig).unwrap();
        let v = WordVector::basis(WordKind::Free, vec![x(1), x(2)]);
        let composed = apply(&parse_term("(mu # eps) . (S # Delta)", &sig).unwrap(), &v).unwrap();
        let staged = apply(&f, &apply(&g, &v).unwrap()).unwrap();
        assert_eq!(composed, staged);
    }

    #[test]
    fn independence_checks() {
        let a = WordVector::basis(WordKind::Free, vec![x(1)]);
        let b = WordVector::basis(WordKind::Free, vec![x(2)]);
        assert!(independent(&[a.clone(), b.clone()]).unwrap());
        let mut two_a = WordVector::zero(WordKind::Free, 1);
        two_a.add_term(vec![x(1)], BigRational::from_integer(2.into()));
        assert!(!independent(&[a, two_a]).unwrap());
    }
}
