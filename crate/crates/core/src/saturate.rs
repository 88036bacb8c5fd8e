//! Span saturation: the dimensions of the hom-space subspaces generated by
//! all composites of the algebra's operations, identities and braidings.
//!
//! Every composite of generators, identities and braidings factors into
//! elementary slices `id(a) # g # id(b)` where g is a single generator or
//! `tau(1,1)`-crossing, so the span of evaluated composites from m inputs
//! is the closure of the identity on m under left application of slice
//! matrices, restricted to intermediate objects at most K. The engine runs
//! that closure as a semi-naive worklist over echelonized span bases: only
//! vectors new in the previous round are hit with slices, candidates are
//! generated against a frozen snapshot (in parallel when enabled) and
//! inserted serially in a fixed order, so ranks and bases are deterministic
//! regardless of thread count.
//!
//! The object bound K truncates: a composite only counts if it can be
//! sliced with every intermediate object at most K. Requested ranks are
//! therefore reported together with a stability flag comparing bounds K
//! and K+1; a stable rank is evidence, not proof, that the bound has
//! stopped mattering.

use std::collections::{BTreeMap, HashSet};

use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use crate::eval::Evaluator;
use crate::matrix::{Matrix, SparseVec};
use crate::poly::Polynomial;
use crate::scalar::Scalar;
use crate::span::SpanBasis;
use crate::term::Term;

#[derive(Debug, Clone)]
pub struct SaturationOptions {
    /// Intermediate object bound K.
    pub bound: u32,
    /// Hard cap on stored basis entries across all spans; exceeding it is
    /// an error, never a silent truncation.
    pub max_entries: usize,
}

impl SaturationOptions {
    pub fn with_bound(bound: u32) -> Self {
        SaturationOptions {
            bound,
            max_entries: 200_000_000,
        }
    }
}

/// Default object bound: max(m, n) plus twice the largest
/// generator coarity.
pub fn default_bound(alg: &FiniteAlgebra, m: u32, n: u32) -> u32 {
    m.max(n) + 2 * alg.sig().max_coarity()
}

/// Saturated spans for a fixed set of input arities.
#[derive(Debug)]
pub struct SaturationState {
    bound: u32,
    inputs: Vec<u32>,
    spans: BTreeMap<(u32, u32), SpanBasis>,
    rank_history: BTreeMap<(u32, u32), Vec<usize>>,
    rounds: usize,
}

impl SaturationState {
    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn inputs(&self) -> &[u32] {
        &self.inputs
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn rank(&self, m: u32, n: u32) -> Result<usize> {
        self.span(m, n).map(SpanBasis::rank)
    }

    pub fn span(&self, m: u32, n: u32) -> Result<&SpanBasis> {
        self.spans.get(&(m, n)).ok_or_else(|| {
            Error::Saturation(format!(
                "hom ({m},{n}) is outside the saturated window (inputs {:?}, bound {})",
                self.inputs, self.bound
            ))
        })
    }

    pub fn rank_history(&self, m: u32, n: u32) -> Option<&[usize]> {
        self.rank_history.get(&(m, n)).map(Vec::as_slice)
    }
}

/// One elementary slice `id(a) # g # id(b)`, with its matrix columns
/// pre-extracted for fast application.
struct Slice {
    source: u32,
    target: u32,
    cols: Vec<Vec<(usize, Scalar)>>,
}

impl Slice {
    fn from_matrix(source: u32, target: u32, m: &Matrix) -> Slice {
        let mut cols = vec![Vec::new(); m.cols()];
        for (r, c, v) in m.iter() {
            cols[c].push((r, v.clone()));
        }
        Slice {
            source,
            target,
            cols,
        }
    }

    /// Left-multiplies a flattened hom(m, source) vector, yielding a
    /// flattened hom(m, target) vector. `width` is d^m.
    fn apply(&self, v: &SparseVec, width: usize, target_rows: usize) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (idx, val) in &v.entries {
            let (row, col) = (idx / width, idx % width);
            for (r, s) in &self.cols[row] {
                let key = r * width + col;
                let term = s.mul(val);
                match acc.get_mut(&key) {
                    Some(x) => *x = x.add(&term),
                    None => {
                        acc.insert(key, term);
                    }
                }
            }
        }
        SparseVec {
            len: target_rows * width,
            entries: acc.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }
}

/// All elementary slices with source and target at most K, in a fixed
/// deterministic order.
fn build_slices(alg: &FiniteAlgebra, bound: u32) -> Vec<Slice> {
    let mut ev = Evaluator::new(alg);
    let mut out = Vec::new();
    let mut gens: Vec<(String, u32, u32, Matrix)> = alg
        .sig()
        .generators()
        .iter()
        .map(|g| {
            let m = alg.structure(&g.name).expect("validated structure").clone();
            (g.name.clone(), g.arity, g.coarity, m)
        })
        .collect();
    gens.push(("tau".into(), 2, 2, ev.braid(1, 1, false)));
    gens.push(("tau_inv".into(), 2, 2, ev.braid(1, 1, true)));
    gens.sort_by(|a, b| a.0.cmp(&b.0));

    for source in 0..=bound {
        for (_, arity, coarity, m) in &gens {
            if *arity > source {
                continue;
            }
            let target = source - arity + coarity;
            if target > bound {
                continue;
            }
            for a in 0..=(source - arity) {
                let b = source - arity - a;
                let left = Matrix::identity(alg.power_dim(a), alg.field());
                let right = Matrix::identity(alg.power_dim(b), alg.field());
                let slice = left.kron(m).kron(&right);
                out.push(Slice::from_matrix(source, target, &slice));
            }
        }
    }
    out
}

#[cfg(feature = "parallel")]
fn generate_candidates(
    jobs: &[(usize, usize)],
    slices: &[Slice],
    frontier: &BTreeMap<u32, Vec<SparseVec>>,
    width: usize,
    dims: &(dyn Fn(u32) -> usize + Sync),
) -> Vec<(u32, SparseVec)> {
    use rayon::prelude::*;
    jobs.par_iter()
        .map(|&(slice_idx, vec_idx)| {
            let slice = &slices[slice_idx];
            let v = &frontier[&slice.source][vec_idx];
            (slice.target, slice.apply(v, width, dims(slice.target)))
        })
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn generate_candidates(
    jobs: &[(usize, usize)],
    slices: &[Slice],
    frontier: &BTreeMap<u32, Vec<SparseVec>>,
    width: usize,
    dims: &(dyn Fn(u32) -> usize + Sync),
) -> Vec<(u32, SparseVec)> {
    generate_candidates_seq(jobs, slices, frontier, width, dims)
}

fn generate_candidates_seq(
    jobs: &[(usize, usize)],
    slices: &[Slice],
    frontier: &BTreeMap<u32, Vec<SparseVec>>,
    width: usize,
    dims: &(dyn Fn(u32) -> usize + Sync),
) -> Vec<(u32, SparseVec)> {
    jobs.iter()
        .map(|&(slice_idx, vec_idx)| {
            let slice = &slices[slice_idx];
            let v = &frontier[&slice.source][vec_idx];
            (slice.target, slice.apply(v, width, dims(slice.target)))
        })
        .collect()
}

/// Saturates the spans of hom(m, n) for every requested input arity m and
/// every 0 <= n <= K.
pub fn saturate(
    alg: &FiniteAlgebra,
    inputs: &[u32],
    opts: &SaturationOptions,
) -> Result<SaturationState> {
    saturate_impl(alg, inputs, opts, false)
}

/// Sequential saturation regardless of the parallel feature; same results.
pub fn saturate_sequential(
    alg: &FiniteAlgebra,
    inputs: &[u32],
    opts: &SaturationOptions,
) -> Result<SaturationState> {
    saturate_impl(alg, inputs, opts, true)
}

fn saturate_impl(
    alg: &FiniteAlgebra,
    inputs: &[u32],
    opts: &SaturationOptions,
    force_sequential: bool,
) -> Result<SaturationState> {
    let bound = opts.bound;
    for &m in inputs {
        if m > bound {
            return Err(Error::Saturation(format!(
                "input arity {m} exceeds the object bound {bound}"
            )));
        }
    }
    let slices = build_slices(alg, bound);
    let mut inputs_sorted: Vec<u32> = inputs.to_vec();
    inputs_sorted.sort_unstable();
    inputs_sorted.dedup();

    let mut state = SaturationState {
        bound,
        inputs: inputs_sorted.clone(),
        spans: BTreeMap::new(),
        rank_history: BTreeMap::new(),
        rounds: 0,
    };

    for &m in &inputs_sorted {
        let width = alg.power_dim(m);
        let dims = |n: u32| alg.power_dim(n);
        let mut spans: BTreeMap<u32, SpanBasis> = (0..=bound)
            .map(|n| (n, SpanBasis::new(dims(n) * width, alg.field())))
            .collect();

        // Seed: the identity on m inputs. Braidings and padded generators
        // arise from it under slice application.
        let seed = Matrix::identity(width, alg.field()).flatten();
        spans.get_mut(&m).unwrap().insert(seed.clone())?;
        let mut frontier: BTreeMap<u32, Vec<SparseVec>> = BTreeMap::new();
        frontier.insert(m, vec![seed]);
        let mut entries_stored = 0usize;

        while !frontier.is_empty() {
            state.rounds += 1;
            // Deterministic job list: slices in build order, then vectors
            // in insertion order.
            let jobs: Vec<(usize, usize)> = slices
                .iter()
                .enumerate()
                .flat_map(|(si, slice)| {
                    let count = frontier.get(&slice.source).map_or(0, Vec::len);
                    (0..count).map(move |vi| (si, vi))
                })
                .collect();
            let candidates = if force_sequential {
                generate_candidates_seq(&jobs, &slices, &frontier, width, &dims)
            } else {
                generate_candidates(&jobs, &slices, &frontier, width, &dims)
            };

            let mut next: BTreeMap<u32, Vec<SparseVec>> = BTreeMap::new();
            let mut seen: HashSet<(u32, Vec<(usize, Scalar)>)> = HashSet::new();
            for (target, w) in candidates {
                if w.is_zero() {
                    continue;
                }
                // Cheap exact-duplicate rejection before echelon reduction.
                if !seen.insert((target, w.entries.clone())) {
                    continue;
                }
                let span = spans.get_mut(&target).unwrap();
                if span.insert(w.clone())? {
                    entries_stored += w.entries.len();
                    if entries_stored > opts.max_entries {
                        return Err(Error::Saturation(format!(
                            "stored entries exceed the cap {} at bound {bound}; \
                             raise max_entries or lower the bound",
                            opts.max_entries
                        )));
                    }
                    next.entry(target).or_default().push(w);
                }
            }
            for (n, span) in &spans {
                state
                    .rank_history
                    .entry((m, *n))
                    .or_default()
                    .push(span.rank());
            }
            frontier = next;
        }

        for (n, span) in spans {
            state.spans.insert((m, n), span);
        }
    }
    Ok(state)
}

/// A rank with its stability evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Codim {
    pub value: usize,
    pub rank_at_next_bound: usize,
    pub stable: bool,
}

/// The dimension of the span of evaluated composites hom(m) -> hom(n),
/// computed at bounds K and K+1; stable means the two ranks agree.
///
/// ```
/// use omega_core::kits::builtin_algebra;
/// use omega_core::{codim, FieldKind};
///
/// let plane = builtin_algebra("vector-space", Some("2"), FieldKind::Rational).unwrap();
/// let c = codim(&plane, 3, 3, 4).unwrap();
/// assert_eq!((c.value, c.stable), (5, true));
/// ```
pub fn codim(alg: &FiniteAlgebra, m: u32, n: u32, bound: u32) -> Result<Codim> {
    codim_with(alg, m, n, &SaturationOptions::with_bound(bound))
}

pub fn codim_with(alg: &FiniteAlgebra, m: u32, n: u32, opts: &SaturationOptions) -> Result<Codim> {
    if m > opts.bound || n > opts.bound {
        return Err(Error::Saturation(format!(
            "target hom ({m},{n}) exceeds the bound {}",
            opts.bound
        )));
    }
    let at_bound = saturate(alg, &[m], opts)?;
    let mut next_opts = opts.clone();
    next_opts.bound = opts.bound + 1;
    let at_next = saturate(alg, &[m], &next_opts)?;
    let value = at_bound.rank(m, n)?;
    let rank_at_next_bound = at_next.rank(m, n)?;
    Ok(Codim {
        value,
        rank_at_next_bound,
        stable: value == rank_at_next_bound,
    })
}

/// Every entry of the (max_m+1) x (max_n+1) grid, saturating once per
/// input arity pair of bounds.
pub fn codim_table(
    alg: &FiniteAlgebra,
    max_m: u32,
    max_n: u32,
    bound: u32,
) -> Result<Vec<Vec<Codim>>> {
    let opts = SaturationOptions::with_bound(bound);
    let mut next_opts = opts.clone();
    next_opts.bound = bound + 1;
    if max_m > bound || max_n > bound {
        return Err(Error::Saturation(format!(
            "table window ({max_m},{max_n}) exceeds the bound {bound}"
        )));
    }
    let inputs: Vec<u32> = (0..=max_m).collect();
    let at_bound = saturate(alg, &inputs, &opts)?;
    let at_next = saturate(alg, &inputs, &next_opts)?;
    let mut grid = Vec::new();
    for m in 0..=max_m {
        let mut row = Vec::new();
        for n in 0..=max_n {
            let value = at_bound.rank(m, n)?;
            let rank_at_next_bound = at_next.rank(m, n)?;
            row.push(Codim {
                value,
                rank_at_next_bound,
                stable: value == rank_at_next_bound,
            });
        }
        grid.push(row);
    }
    Ok(grid)
}

/// An exact basis of the polynomials in the given terms vanishing on the
/// algebra: the kernel of evaluation on the terms' span. Every returned
/// polynomial is re-checked to evaluate to zero.
pub fn find_identities(alg: &FiniteAlgebra, terms: &[Term]) -> Result<Vec<Polynomial>> {
    let Some(first) = terms.first() else {
        return Ok(Vec::new());
    };
    let (dom, cod) = (first.dom(), first.cod());
    if terms.iter().any(|t| t.dom() != dom || t.cod() != cod) {
        return Err(Error::Arity("identity search needs a single hom".into()));
    }
    let mut ev = Evaluator::new(alg);
    let field = alg.field();
    let ambient = alg.power_dim(dom) * alg.power_dim(cod);

    // Echelonize evaluations while tracking the combination that produced
    // each row; combinations of rows that vanish are identities.
    let mut rows: Vec<(SparseVec, Vec<Scalar>)> = Vec::new();
    let mut kernel = Vec::new();
    for (i, t) in terms.iter().enumerate() {
        let mut v = ev.eval(t)?.flatten();
        let mut combo = vec![field.zero(); terms.len()];
        combo[i] = field.one();
        debug_assert_eq!(v.len, ambient);
        for (row, row_combo) in &rows {
            let Some(pivot) = row.leading() else { continue };
            if let Some(c) = v.coeff_at(pivot) {
                let factor = c.div(&row.entries[0].1);
                v.axpy_sub(&factor, row);
                for (x, y) in combo.iter_mut().zip(row_combo) {
                    *x = x.sub(&factor.mul(y));
                }
            }
        }
        if v.is_zero() {
            kernel.push(combo);
        } else {
            // Keep rows pivot-sorted so reduction stays one increasing sweep.
            let pos = rows
                .binary_search_by_key(&v.leading().unwrap(), |(r, _)| r.leading().unwrap())
                .unwrap_err();
            rows.insert(pos, (v, combo));
        }
    }

    let mut out = Vec::new();
    for combo in kernel {
        let mut poly = Polynomial::zero(dom, cod);
        for (c, t) in combo.iter().zip(terms) {
            if c.is_zero() {
                continue;
            }
            let coeff = match c {
                Scalar::Q(q) => q.clone(),
                Scalar::Fp { v, .. } => num_rational::BigRational::from_integer((*v).into()),
            };
            poly = poly.add(&Polynomial::from_term_scaled(&coeff, t.clone()))?;
        }
        // Self-verification: a kernel element must evaluate to zero.
        if !crate::eval::check_identity(alg, &poly)? {
            return Err(Error::Saturation(format!(
                "internal: kernel element is not an identity: {poly}"
            )));
        }
        out.push(poly);
    }
    Ok(out)
}
