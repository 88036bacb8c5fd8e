//! Partitions, tableaux, permutations and braid words, their embeddings
//! into the term language, and closed-form dimension oracles.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::term::Term;

// ---------------------------------------------------------------------------
// Partitions and hook lengths.
// ---------------------------------------------------------------------------

/// A partition: weakly decreasing positive parts.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Partition> {
        if parts.contains(&0) {
            return Err(Error::Arity("partition parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Arity(
                "partition parts must be weakly decreasing".into(),
            ));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn weight(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn height(&self) -> u32 {
        self.parts.len() as u32
    }

    /// Column lengths (the conjugate partition).
    pub fn conjugate(&self) -> Vec<u32> {
        let width = self.parts.first().copied().unwrap_or(0) as usize;
        let mut cols = vec![0u32; width];
        for &p in &self.parts {
            for c in cols.iter_mut().take(p as usize) {
                *c += 1;
            }
        }
        cols
    }

    /// Hook length of the cell (r, c), 0-indexed.
    pub fn hook(&self, r: usize, c: usize) -> u32 {
        let arm = self.parts[r] - c as u32 - 1;
        let leg = self.conjugate()[c] - r as u32 - 1;
        arm + leg + 1
    }

    /// Dimension of the associated irreducible module, by the hook-length
    /// formula: n! / prod of hooks.
    pub fn dim(&self) -> BigUint {
        let n = self.weight();
        let mut num = BigUint::one();
        for k in 1..=n {
            num *= BigUint::from(k);
        }
        let mut den = BigUint::one();
        for (r, &p) in self.parts.iter().enumerate() {
            for c in 0..p as usize {
                den *= BigUint::from(self.hook(r, c));
            }
        }
        num / den
    }
}

/// All partitions of n, height at most `max_height` (no bound when None),
/// in lexicographically decreasing order of part lists.
pub fn partitions(n: u32, max_height: Option<u32>) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(
        remaining: u32,
        max_part: u32,
        max_height: Option<u32>,
        current: &mut Vec<u32>,
        out: &mut Vec<Partition>,
    ) {
        if remaining == 0 {
            out.push(Partition {
                parts: current.clone(),
            });
            return;
        }
        if let Some(h) = max_height {
            if current.len() as u32 == h {
                return;
            }
        }
        let mut p = max_part.min(remaining);
        while p >= 1 {
            current.push(p);
            rec(remaining - p, p, max_height, current, out);
            current.pop();
            p -= 1;
        }
    }
    rec(n, n.max(1), max_height, &mut current, &mut out);
    out
}

/// Sum over partitions of n with height at most d of the squared module
/// dimension: the dimension of the operator span on the n-th tensor power
/// of a d-dimensional space.
pub fn schur_weyl_codim(d: u32, n: u32) -> BigUint {
    partitions(n, Some(d))
        .iter()
        .map(|p| {
            let f = p.dim();
            &f * &f
        })
        .sum()
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

pub fn catalan(n: u64) -> u128 {
    binomial(2 * n, n) / (n as u128 + 1)
}

// ---------------------------------------------------------------------------
// Permutations.
// ---------------------------------------------------------------------------

/// A permutation of {0, .., n-1} in one-line notation: `images[i]` is the
/// image of i.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: u32) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Permutation> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i as usize >= n || seen[i as usize] {
                return Err(Error::Arity("not a permutation".into()));
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from disjoint cycles over 1-based points.
    pub fn from_cycles(n: u32, cycles: &[Vec<u32>]) -> Result<Permutation> {
        let mut images: Vec<u32> = (0..n).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from == 0 || from > n || to == 0 || to > n {
                    return Err(Error::Arity("cycle point out of range".into()));
                }
                images[(from - 1) as usize] = to - 1;
            }
        }
        Permutation::from_images(images)
    }

    pub fn n(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[i as usize]
    }

    /// self after other.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n());
        Permutation {
            images: other
                .images
                .iter()
                .map(|&i| self.images[i as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn sign(&self) -> i32 {
        let mut seen = vec![false; self.images.len()];
        let mut sign = 1;
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.images[i] as usize;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// A fixed reduced word: adjacent swap positions (0-indexed, s_i swaps
    /// i and i+1) recorded by bubble sort, ordered so that the permutation
    /// is the composition of the listed swaps applied right to left.
    pub fn reduced_word(&self) -> Vec<u32> {
        let mut a = self.images.clone();
        let mut record = Vec::new();
        loop {
            let mut swapped = false;
            for i in 0..a.len().saturating_sub(1) {
                if a[i] > a[i + 1] {
                    a.swap(i, i + 1);
                    record.push(i as u32);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        record.reverse();
        record
    }

    /// The tensor-position action matrix: sends the basis tuple u to the
    /// tuple whose k-th slot is u at the inverse image of k. Used as an
    /// independent oracle for the term embedding.
    pub fn action_matrix(
        &self,
        dim: u32,
        field: crate::scalar::FieldKind,
    ) -> crate::matrix::Matrix {
        let n = self.n();
        let size = (dim as usize).pow(n);
        let inv = self.inverse();
        let entries = (0..size).map(|col| {
            let digits = unrank(col, dim, n);
            let image: Vec<u32> = (0..n).map(|k| digits[inv.apply(k) as usize]).collect();
            (rank(&image, dim), col, field.one())
        });
        crate::matrix::Matrix::from_entries(size, size, field, entries)
    }
}

fn unrank(mut index: usize, dim: u32, n: u32) -> Vec<u32> {
    let mut digits = vec![0u32; n as usize];
    for k in (0..n as usize).rev() {
        digits[k] = (index % dim as usize) as u32;
        index /= dim as usize;
    }
    digits
}

fn rank(digits: &[u32], dim: u32) -> usize {
    digits
        .iter()
        .fold(0usize, |acc, &d| acc * dim as usize + d as usize)
}

/// All of S_n in a deterministic order.
pub fn all_permutations(n: u32) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut images: Vec<u32> = (0..n).collect();
    fn rec(k: usize, images: &mut Vec<u32>, out: &mut Vec<Permutation>) {
        if k == images.len() {
            out.push(Permutation {
                images: images.clone(),
            });
            return;
        }
        for i in k..images.len() {
            images.swap(k, i);
            rec(k + 1, images, out);
            images.swap(k, i);
        }
    }
    rec(0, &mut images, &mut out);
    out.sort();
    out
}

/// The term realizing a permutation on n tensor strands: the identity for
/// the identity, otherwise the composition of braidings along a fixed
/// reduced word. In a symmetric backend its evaluation is
/// [`Permutation::action_matrix`].
pub fn perm_to_term(p: &Permutation) -> Term {
    let n = p.n();
    let word = p.reduced_word();
    if word.is_empty() {
        return Term::id(n);
    }
    Term::compose_chain(word.iter().map(|&i| braid_generator_term(n, i + 1, false)))
        .expect("swap factors compose")
}

/// `id(i-1) # tau(1,1) # id(n-i-1)` for the 1-based strand position i.
fn braid_generator_term(n: u32, i: u32, inverse: bool) -> Term {
    let braid = if inverse {
        Term::braid_inv(1, 1)
    } else {
        Term::braid(1, 1)
    };
    braid.padded(i - 1, n - i - 1)
}

// ---------------------------------------------------------------------------
// Braid words.
// ---------------------------------------------------------------------------

/// A braid group element as a word: letter +i (1-based) is the i-th
/// positive generator crossing strands i and i+1, -i its inverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: u32,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: u32, letters: Vec<i32>) -> Result<BraidWord> {
        for &l in &letters {
            let i = l.unsigned_abs();
            if l == 0 || i + 1 > strands {
                return Err(Error::Arity(format!(
                    "letter {l} out of range for {strands} strands"
                )));
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: u32) -> BraidWord {
        BraidWord {
            strands,
            letters: Vec::new(),
        }
    }

    pub fn strands(&self) -> u32 {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Concatenation: self followed on the right by other (so self is
    /// applied last under the term embedding).
    pub fn mul(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands);
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord {
            strands: self.strands,
            letters,
        }
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| -l).collect(),
        }
    }

    /// The underlying permutation (generators to adjacent transpositions).
    pub fn underlying_permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for &l in &self.letters {
            let i = l.unsigned_abs() - 1;
            let mut swap = Permutation::identity(self.strands);
            swap.images.swap(i as usize, i as usize + 1);
            p = p.compose(&swap);
        }
        p
    }

    pub fn is_pure(&self) -> bool {
        self.underlying_permutation() == Permutation::identity(self.strands)
    }
}

/// The term realizing a braid word; the first letter is the outermost
/// (last applied) factor, matching the group product convention.
pub fn braid_to_term(b: &BraidWord) -> Term {
    if b.letters.is_empty() {
        return Term::id(b.strands);
    }
    Term::compose_chain(
        b.letters
            .iter()
            .map(|&l| braid_generator_term(b.strands, l.unsigned_abs(), l < 0)),
    )
    .expect("braid factors compose")
}

/// Deterministic pure-braid sample on n strands: squared generators and
/// their conjugates by short words, plus a few products of two of those.
pub fn sample_pure_braids(n: u32) -> Vec<BraidWord> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let gens: Vec<i32> = (1..n as i32).collect();
    let mut conjugators = vec![BraidWord::identity(n)];
    for &g in &gens {
        conjugators.push(BraidWord::new(n, vec![g]).unwrap());
        conjugators.push(BraidWord::new(n, vec![-g]).unwrap());
    }
    for &w in &gens {
        for c in &conjugators {
            let sq = BraidWord::new(n, vec![w, w]).unwrap();
            out.push(c.mul(&sq).mul(&c.inverse()));
        }
    }
    let firsts: Vec<BraidWord> = out.iter().take(3).cloned().collect();
    for (i, a) in firsts.iter().enumerate() {
        for b in firsts.iter().skip(i + 1) {
            out.push(a.mul(b));
        }
    }
    debug_assert!(out.iter().all(BraidWord::is_pure));
    out
}

// ---------------------------------------------------------------------------
// Young tableaux and symmetrizers.
// ---------------------------------------------------------------------------

/// A filling of a partition shape with 1..n, each exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YoungTableau {
    shape: Partition,
    rows: Vec<Vec<u32>>,
}

impl YoungTableau {
    pub fn new(shape: Partition, rows: Vec<Vec<u32>>) -> Result<YoungTableau> {
        let n = shape.weight();
        if rows.len() != shape.parts().len()
            || rows
                .iter()
                .zip(shape.parts())
                .any(|(row, &p)| row.len() != p as usize)
        {
            return Err(Error::Arity("filling does not match the shape".into()));
        }
        let mut seen = vec![false; n as usize + 1];
        for &v in rows.iter().flatten() {
            if v == 0 || v > n || seen[v as usize] {
                return Err(Error::Arity("filling must use 1..n exactly once".into()));
            }
            seen[v as usize] = true;
        }
        Ok(YoungTableau { shape, rows })
    }

    /// The row-reading filling: 1..n left to right, top to bottom.
    pub fn row_filling(shape: Partition) -> YoungTableau {
        let mut next = 1u32;
        let rows = shape
            .parts()
            .iter()
            .map(|&p| {
                let row: Vec<u32> = (next..next + p).collect();
                next += p;
                row
            })
            .collect();
        YoungTableau { shape, rows }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        let width = self.shape.parts().first().copied().unwrap_or(0) as usize;
        (0..width)
            .map(|c| {
                self.rows
                    .iter()
                    .filter_map(|row| row.get(c).copied())
                    .collect()
            })
            .collect()
    }

    /// Row of the tableau containing the value v, 0-indexed.
    pub fn row_of(&self, v: u32) -> usize {
        self.rows
            .iter()
            .position(|row| row.contains(&v))
            .expect("value present")
    }
}

/// All permutations preserving each of the given 1-based value groups.
fn group_permutations(n: u32, groups: &[Vec<u32>]) -> Vec<Permutation> {
    let mut out = vec![Permutation::identity(n)];
    for group in groups {
        let k = group.len() as u32;
        let locals = all_permutations(k);
        let mut next = Vec::with_capacity(out.len() * locals.len());
        for base in &out {
            for local in &locals {
                let mut images = base.images.clone();
                for (pos, &val) in group.iter().enumerate() {
                    let target = group[local.apply(pos as u32) as usize];
                    images[(val - 1) as usize] = target - 1;
                }
                next.push(Permutation { images });
            }
        }
        out = next;
    }
    out
}

/// The Young symmetrizer of a tableau as a polynomial on n strands: with
/// a = sum of row-group permutations and b = signed sum of column-group
/// permutations, returns a.b (star = false) or b.a (star = true).
pub fn young_symmetrizer(tableau: &YoungTableau, star: bool) -> Polynomial {
    let n = tableau.shape.weight();
    let row_group = group_permutations(n, tableau.rows());
    let col_group = group_permutations(n, &tableau.columns());
    let mut poly = Polynomial::zero(n, n);
    for rp in &row_group {
        for cp in &col_group {
            let sign = BigRational::from_integer(cp.sign().into());
            let product = if star { cp.compose(rp) } else { rp.compose(cp) };
            poly = poly
                .add(&Polynomial::from_term_scaled(&sign, perm_to_term(&product)))
                .expect("symmetrizer arities agree");
        }
    }
    poly
}

/// The signed sum over all permutations of d+1 strands, padded with the
/// identity to n strands: vanishes under evaluation exactly when the
/// underlying space has dimension at most d.
pub fn antisymmetrizer(d: u32, n: u32) -> Result<Polynomial> {
    if n < d + 1 {
        return Err(Error::Arity(format!(
            "antisymmetrizer on {} strands cannot be placed in arity {n}",
            d + 1
        )));
    }
    let mut poly = Polynomial::zero(n, n);
    for p in all_permutations(d + 1) {
        let sign = BigRational::from_integer(p.sign().into());
        let term = perm_to_term(&p).padded(0, n - d - 1);
        poly = poly
            .add(&Polynomial::from_term_scaled(&sign, term))
            .expect("padded arities agree");
    }
    Ok(poly)
}

/// Float value of a big unsigned integer, for sanity ratio checks only.
pub fn biguint_to_f64(x: &BigUint) -> f64 {
    x.to_f64().unwrap_or(f64::INFINITY)
}
