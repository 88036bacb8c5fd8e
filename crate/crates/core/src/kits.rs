//! Built-in signatures, algebras and relation sets, the normal-form
//! compilers for (co)commutative Hopf monomials, and the projector families
//! used by the two-dimensional Yetter-Drinfeld examples.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;

use crate::algebra::{invert_matrix, Braiding, FiniteAlgebra};
use crate::combin::{all_permutations, braid_to_term, perm_to_term, BraidWord, Permutation};
use crate::error::{Error, Result};
use crate::eval::RelationSet;
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::scalar::FieldKind;
use crate::signature::{hopf_signature, Signature};
use crate::term::Term;
use crate::words::{GroupWord, WordKind};

// ---------------------------------------------------------------------------
// Built-in algebras.
// ---------------------------------------------------------------------------

/// Multiplication table of a finite group: `table[g][h]` is the index of
/// the product g.h. Checked for identity, inverses and associativity.
pub fn group_hopf_algebra(table: &[Vec<usize>], field: FieldKind) -> Result<FiniteAlgebra> {
    let n = table.len();
    if n == 0 || table.iter().any(|row| row.len() != n) {
        return Err(Error::Algebra("multiplication table must be square".into()));
    }
    if table.iter().any(|row| row.iter().any(|&v| v >= n)) {
        return Err(Error::Algebra("table entry out of range".into()));
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
        .ok_or_else(|| Error::Algebra("table has no identity element".into()))?;
    let mut inverse = vec![None; n];
    for g in 0..n {
        inverse[g] = (0..n).find(|&h| table[g][h] == identity && table[h][g] == identity);
        if inverse[g].is_none() {
            return Err(Error::Algebra(format!("element {g} has no inverse")));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::Algebra("table is not associative".into()));
                }
            }
        }
    }
    let sig = hopf_signature();
    let mut structure = BTreeMap::new();
    let one = field.one();
    structure.insert(
        "mu".to_string(),
        Matrix::from_entries(
            n,
            n * n,
            field,
            (0..n)
                .flat_map(|g| (0..n).map(move |h| (g, h)))
                .map(|(g, h)| (table[g][h], g * n + h, one.clone())),
        ),
    );
    structure.insert(
        "u".to_string(),
        Matrix::from_entries(n, 1, field, [(identity, 0, one.clone())]),
    );
    structure.insert(
        "Delta".to_string(),
        Matrix::from_entries(n * n, n, field, (0..n).map(|g| (g * n + g, g, one.clone()))),
    );
    structure.insert(
        "eps".to_string(),
        Matrix::from_entries(1, n, field, (0..n).map(|g| (0, g, one.clone()))),
    );
    structure.insert(
        "S".to_string(),
        Matrix::from_entries(
            n,
            n,
            field,
            (0..n).map(|g| (inverse[g].unwrap(), g, one.clone())),
        ),
    );
    FiniteAlgebra::new(sig, n as u32, field, Braiding::Swap, structure)
}

/// The table of the cyclic group of order two.
pub fn c2_table() -> Vec<Vec<usize>> {
    vec![vec![0, 1], vec![1, 0]]
}

/// The table of the symmetric group on three letters, elements enumerated
/// in the deterministic permutation order.
pub fn s3_table() -> Vec<Vec<usize>> {
    let perms = all_permutations(3);
    let index = |p: &Permutation| perms.iter().position(|q| q == p).unwrap();
    perms
        .iter()
        .map(|a| perms.iter().map(|b| index(&a.compose(b))).collect())
        .collect()
}

/// The signed swap-like matrix of the two-dimensional Yetter-Drinfeld
/// module over the order-two group algebra, on the basis {a, b}:
/// a(x)a -> a(x)a, a(x)b -> b(x)a, b(x)a -> -a(x)b, b(x)b -> b(x)b.
pub fn yd_kc2_matrix(field: FieldKind) -> Matrix {
    let one = field.one();
    Matrix::from_entries(
        4,
        4,
        field,
        [
            (0, 0, one.clone()),
            (2, 1, one.clone()),
            (1, 2, one.neg()),
            (3, 3, one),
        ],
    )
}

/// Names accepted by [`builtin_algebra`]; `vector-space` takes a dimension
/// and `group-hopf` a group parameter (`s3`, `c2` or `cN`).
pub const BUILTIN_NAMES: [&str; 5] = [
    "kc2-hopf",
    "vector-space",
    "group-hopf",
    "yd-kc2-sigma",
    "yd-kc2-braided",
];

pub fn builtin_algebra(name: &str, param: Option<&str>, field: FieldKind) -> Result<FiniteAlgebra> {
    match name {
        "kc2-hopf" => group_hopf_algebra(&c2_table(), field),
        "group-hopf" => {
            let table = match param {
                Some("s3") => s3_table(),
                Some("c2") | None => c2_table(),
                Some(p) => {
                    if let Some(k) = p.strip_prefix('c').and_then(|s| s.parse::<usize>().ok()) {
                        if k == 0 {
                            return Err(Error::Algebra("cyclic group of order 0".into()));
                        }
                        (0..k)
                            .map(|g| (0..k).map(|h| (g + h) % k).collect())
                            .collect()
                    } else {
                        return Err(Error::Algebra(format!("unknown group `{p}`")));
                    }
                }
            };
            group_hopf_algebra(&table, field)
        }
        "vector-space" => {
            let d: u32 = param
                .ok_or_else(|| Error::Algebra("vector-space needs a dimension".into()))?
                .parse()
                .map_err(|_| Error::Algebra("bad dimension".into()))?;
            FiniteAlgebra::new(
                Signature::empty(),
                d,
                field,
                Braiding::Swap,
                BTreeMap::new(),
            )
        }
        "yd-kc2-sigma" => {
            let sig = Signature::new([("sigma".into(), 2, 2)])?;
            let mut structure = BTreeMap::new();
            structure.insert("sigma".to_string(), yd_kc2_matrix(field));
            FiniteAlgebra::new(sig, 2, field, Braiding::Swap, structure)
        }
        "yd-kc2-braided" => {
            let c = yd_kc2_matrix(field);
            let c_inv = invert_matrix(&c)?;
            FiniteAlgebra::new(
                Signature::empty(),
                2,
                field,
                Braiding::Custom { c, c_inv },
                BTreeMap::new(),
            )
        }
        other => Err(Error::Algebra(format!("unknown builtin `{other}`"))),
    }
}

// ---------------------------------------------------------------------------
// Relation sets.
// ---------------------------------------------------------------------------

fn poly(t: Term) -> Polynomial {
    Polynomial::from_term(t)
}

fn braid2() -> Term {
    Term::braid(1, 1)
}

/// tau(1,1)^2 - id(2): forces the braiding to be symmetric.
pub fn v_symm() -> RelationSet {
    let tau2 = Term::compose(braid2(), braid2()).unwrap();
    RelationSet {
        name: "v-symm".into(),
        relators: vec![(
            "symmetry".into(),
            poly(tau2).sub(&poly(Term::id(2))).unwrap(),
        )],
    }
}

/// Associativity over the one-product signature, plus symmetry.
pub fn v_assoc() -> RelationSet {
    let mu = Term::gen("mu", 2, 1);
    let left = Term::compose(mu.clone(), Term::tensor(mu.clone(), Term::id(1))).unwrap();
    let right = Term::compose(mu.clone(), Term::tensor(Term::id(1), mu)).unwrap();
    let mut relators = v_symm().relators;
    relators.push((
        "associativity".into(),
        poly(left).sub(&poly(right)).unwrap(),
    ));
    RelationSet {
        name: "v-assoc".into(),
        relators,
    }
}

/// The Hopf axioms over `{mu, u, Delta, eps, S}`, plus symmetry.
pub fn v_hopf() -> RelationSet {
    let mu = Term::gen("mu", 2, 1);
    let u = Term::gen("u", 0, 1);
    let delta = Term::gen("Delta", 1, 2);
    let eps = Term::gen("eps", 1, 0);
    let s = Term::gen("S", 1, 1);
    let id1 = Term::id(1);

    let c = |f: Term, g: Term| Term::compose(f, g).unwrap();
    let t = Term::tensor;

    let mut relators = v_symm().relators;
    relators.push((
        "associativity".into(),
        poly(c(mu.clone(), t(mu.clone(), id1.clone())))
            .sub(&poly(c(mu.clone(), t(id1.clone(), mu.clone()))))
            .unwrap(),
    ));
    relators.push((
        "left-unit".into(),
        poly(c(mu.clone(), t(u.clone(), id1.clone())))
            .sub(&poly(id1.clone()))
            .unwrap(),
    ));
    relators.push((
        "right-unit".into(),
        poly(c(mu.clone(), t(id1.clone(), u.clone())))
            .sub(&poly(id1.clone()))
            .unwrap(),
    ));
    relators.push((
        "coassociativity".into(),
        poly(c(t(delta.clone(), id1.clone()), delta.clone()))
            .sub(&poly(c(t(id1.clone(), delta.clone()), delta.clone())))
            .unwrap(),
    ));
    relators.push((
        "left-counit".into(),
        poly(c(t(eps.clone(), id1.clone()), delta.clone()))
            .sub(&poly(id1.clone()))
            .unwrap(),
    ));
    relators.push((
        "right-counit".into(),
        poly(c(t(id1.clone(), eps.clone()), delta.clone()))
            .sub(&poly(id1.clone()))
            .unwrap(),
    ));
    relators.push((
        "counit-unit".into(),
        poly(c(eps.clone(), u.clone()))
            .sub(&poly(Term::id(0)))
            .unwrap(),
    ));
    relators.push((
        "counit-multiplicativity".into(),
        poly(c(eps.clone(), mu.clone()))
            .sub(&poly(t(eps.clone(), eps.clone())))
            .unwrap(),
    ));
    relators.push((
        "comultiplication-unit".into(),
        poly(c(delta.clone(), u.clone()))
            .sub(&poly(t(u.clone(), u.clone())))
            .unwrap(),
    ));
    let mid = t(t(id1.clone(), braid2()), id1.clone());
    relators.push((
        "comultiplication-multiplicativity".into(),
        poly(c(delta.clone(), mu.clone()))
            .sub(&poly(c(
                c(t(mu.clone(), mu.clone()), mid),
                t(delta.clone(), delta.clone()),
            )))
            .unwrap(),
    ));
    let u_eps = c(u.clone(), eps.clone());
    relators.push((
        "left-antipode".into(),
        poly(c(c(mu.clone(), t(s.clone(), id1.clone())), delta.clone()))
            .sub(&poly(u_eps.clone()))
            .unwrap(),
    ));
    relators.push((
        "right-antipode".into(),
        poly(c(c(mu.clone(), t(id1.clone(), s.clone())), delta.clone()))
            .sub(&poly(u_eps))
            .unwrap(),
    ));
    RelationSet {
        name: "v-hopf".into(),
        relators,
    }
}

/// Hopf axioms plus cocommutativity.
pub fn v_cochopf() -> RelationSet {
    let delta = Term::gen("Delta", 1, 2);
    let mut relators = v_hopf().relators;
    relators.push((
        "cocommutativity".into(),
        poly(delta.clone())
            .sub(&poly(Term::compose(braid2(), delta).unwrap()))
            .unwrap(),
    ));
    RelationSet {
        name: "v-cochopf".into(),
        relators,
    }
}

/// Hopf axioms plus commutativity and cocommutativity.
pub fn v_commcochopf() -> RelationSet {
    let mu = Term::gen("mu", 2, 1);
    let mut relators = v_cochopf().relators;
    relators.push((
        "commutativity".into(),
        poly(mu.clone())
            .sub(&poly(Term::compose(mu, braid2()).unwrap()))
            .unwrap(),
    ));
    RelationSet {
        name: "v-commcochopf".into(),
        relators,
    }
}

/// The identities of the order-two group algebra as a Hopf algebra: the
/// four generating relators, plus the two derived ones (the reduced square
/// and the triviality of the antipode).
pub fn c2_identities() -> RelationSet {
    let mu = Term::gen("mu", 2, 1);
    let u = Term::gen("u", 0, 1);
    let delta = Term::gen("Delta", 1, 2);
    let eps = Term::gen("eps", 1, 0);
    let s = Term::gen("S", 1, 1);
    let id1 = Term::id(1);

    let c = |f: Term, g: Term| Term::compose(f, g).unwrap();
    let t = Term::tensor;

    // pi = id - u.eps kills the counit component.
    let pi = poly(id1.clone())
        .sub(&poly(c(u.clone(), eps.clone())))
        .unwrap();

    let cocomm = poly(delta.clone())
        .sub(&poly(c(braid2(), delta.clone())))
        .unwrap();
    let comm = poly(mu.clone())
        .sub(&poly(c(mu.clone(), braid2())))
        .unwrap();
    let square_counit = poly(c(mu.clone(), delta.clone()))
        .sub(&poly(c(u.clone(), eps.clone())))
        .unwrap();

    // (pi x pi x pi) . (Delta # id - id # Delta) on two inputs.
    let ppp = pi.tensor(&pi).tensor(&pi);
    let lhs = Polynomial::from_term(t(delta.clone(), id1.clone()));
    let rhs = Polynomial::from_term(t(id1.clone(), delta.clone()));
    let split_balance = ppp.compose(&lhs.sub(&rhs).unwrap()).unwrap();

    // Derived: mu . (pi x pi) . Delta + 2 pi and S - id.
    let reduced_square = Polynomial::from_term(mu.clone())
        .compose(&pi.tensor(&pi))
        .unwrap()
        .compose(&Polynomial::from_term(delta.clone()))
        .unwrap()
        .add(&pi.scale(&BigRational::from_integer(2.into())))
        .unwrap();
    let antipode_trivial = poly(s).sub(&poly(id1)).unwrap();

    RelationSet {
        name: "c2-identities".into(),
        relators: vec![
            ("cocommutativity".into(), cocomm),
            ("commutativity".into(), comm),
            ("square-counit".into(), square_counit),
            ("split-balance".into(), split_balance),
            ("derived-reduced-square".into(), reduced_square),
            ("derived-antipode-trivial".into(), antipode_trivial),
        ],
    }
}

/// Symmetry plus the vanishing antisymmetrizer on d+1 of n strands.
pub fn v_symm_d(d: u32, n: u32) -> Result<RelationSet> {
    let mut relators = v_symm().relators;
    relators.push((
        format!("antisymmetrizer-{}", d + 1),
        crate::combin::antisymmetrizer(d, n)?,
    ));
    Ok(RelationSet {
        name: format!("v-symm-d({d},{n})"),
        relators,
    })
}

// ---------------------------------------------------------------------------
// Normal-form compilers.
// ---------------------------------------------------------------------------

/// Left-combed comultiplication tree producing `p` output legs.
fn delta_tree(p: u32) -> Term {
    let delta = Term::gen("Delta", 1, 2);
    match p {
        0 => Term::gen("eps", 1, 0),
        1 => Term::id(1),
        _ => Term::compose_chain((2..=p).rev().map(|k| delta.clone().padded(0, k - 2)))
            .expect("comb factors compose"),
    }
}

/// Left-combed product collapsing `l` legs into one.
fn mu_comb(l: u32) -> Term {
    let mu = Term::gen("mu", 2, 1);
    match l {
        0 => Term::gen("u", 0, 1),
        1 => Term::id(1),
        _ => Term::compose_chain((2..=l).rev().map(|k| mu.clone().padded(0, l - k)))
            .expect("comb factors compose"),
    }
}

/// One factor of an output product: an input occurrence with an optional
/// antipode.
#[derive(Debug, Clone, Copy)]
struct Occurrence {
    variable: u32,
    inverted: bool,
}

/// Compiles occurrence lists into the layered monomial
/// (output products) . (routing permutation) . (comultiplication trees),
/// shared by both normal-form maps.
fn layered_monomial(m: u32, legs: &[Vec<Occurrence>]) -> Result<Term> {
    let mut counts = vec![0u32; m as usize];
    for leg in legs {
        for occ in leg {
            if occ.variable == 0 || occ.variable > m {
                return Err(Error::Word(format!(
                    "variable x{} out of range 1..{m}",
                    occ.variable
                )));
            }
            counts[(occ.variable - 1) as usize] += 1;
        }
    }
    let total: u32 = counts.iter().sum();

    // Input layer: one comультiplication tree, identity or counit per
    // variable, in variable order.
    let input = Term::tensor_chain((0..m).map(|q| delta_tree(counts[q as usize])));

    // Routing: the copy slots sit in variable-major order after the input
    // layer; send the r-th copy of x_q to its r-th occurrence position in
    // the left-to-right output scan.
    let mut offsets = vec![0u32; m as usize];
    let mut acc = 0;
    for q in 0..m as usize {
        offsets[q] = acc;
        acc += counts[q];
    }
    let mut images = vec![0u32; total as usize];
    let mut seen = vec![0u32; m as usize];
    let mut out_pos = 0u32;
    for leg in legs {
        for occ in leg {
            let q = (occ.variable - 1) as usize;
            let src = offsets[q] + seen[q];
            seen[q] += 1;
            images[src as usize] = out_pos;
            out_pos += 1;
        }
    }
    let routing = if total == 0 {
        Term::id(0)
    } else {
        perm_to_term(&Permutation::from_images(images)?)
    };

    // Output layer: an optionally antipoded factor per occurrence, then a
    // product comb per leg.
    let output = Term::tensor_chain(legs.iter().map(|leg| {
        let factors = Term::tensor_chain(leg.iter().map(|occ| {
            if occ.inverted {
                Term::gen("S", 1, 1)
            } else {
                Term::id(1)
            }
        }));
        let comb = mu_comb(leg.len() as u32);
        if leg.is_empty() {
            comb
        } else {
            Term::compose(comb, factors).expect("comb after factors")
        }
    }));

    let term = Term::compose(output, Term::compose(routing, input)?)?;
    Ok(term.flatten().into_term())
}

/// Compiles an n-tuple of free-group words over x1..xm into the Hopf
/// monomial whose group-algebra evaluation on the generator tuple is
/// exactly that basis tuple: inverses become antipodes, repeated variables
/// are split by comultiplication trees, unused variables are killed by
/// counits.
pub fn phi(m: u32, n: u32, words: &[GroupWord]) -> Result<Term> {
    if words.len() as u32 != n {
        return Err(Error::Word(format!(
            "expected {n} words, got {}",
            words.len()
        )));
    }
    let mut legs = Vec::with_capacity(words.len());
    for w in words {
        let GroupWord::Free(letters) = w else {
            return Err(Error::Word("phi expects free words".into()));
        };
        legs.push(
            letters
                .iter()
                .map(|&(g, e)| Occurrence {
                    variable: g,
                    inverted: e < 0,
                })
                .collect::<Vec<_>>(),
        );
    }
    layered_monomial(m, &legs)
}

/// Compiles an n-tuple of exponent vectors over x1..xm (free abelian
/// words) into the corresponding commutative-cocommutative Hopf monomial:
/// exponent s contributes |s| copies, all antipoded when s < 0, grouped by
/// variable within each output leg.
pub fn psi(m: u32, n: u32, exponents: &[Vec<i64>]) -> Result<Term> {
    if exponents.len() as u32 != n {
        return Err(Error::Word(format!(
            "expected {n} exponent vectors, got {}",
            exponents.len()
        )));
    }
    let mut legs = Vec::with_capacity(exponents.len());
    for exps in exponents {
        if exps.len() as u32 > m {
            return Err(Error::Word(format!(
                "exponent vector of length {} exceeds {m} variables",
                exps.len()
            )));
        }
        let mut leg = Vec::new();
        for (idx, &s) in exps.iter().enumerate() {
            for _ in 0..s.unsigned_abs() {
                leg.push(Occurrence {
                    variable: idx as u32 + 1,
                    inverted: s < 0,
                });
            }
        }
        legs.push(leg);
    }
    layered_monomial(m, &legs)
}

/// Convenience: psi from free-abelian group words.
pub fn psi_words(m: u32, n: u32, words: &[GroupWord]) -> Result<Term> {
    let exps = words
        .iter()
        .map(|w| match w {
            GroupWord::FreeAbelian(es) => Ok(es.clone()),
            GroupWord::Free(_) => Err(Error::Word("psi expects free-abelian words".into())),
        })
        .collect::<Result<Vec<_>>>()?;
    psi(m, n, &exps)
}

/// The expected group-algebra image of the compiled monomial.
pub fn normal_form_target(kind: WordKind, words: &[GroupWord]) -> crate::words::WordVector {
    crate::words::WordVector::basis(kind, words.to_vec())
}

// ---------------------------------------------------------------------------
// Projector families.
// ---------------------------------------------------------------------------

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Routing permutation with prescribed images on the first few strands,
/// remaining strands in increasing order. `targets` are 1-based.
fn route_permutation(n: u32, targets: &[u32]) -> Result<Permutation> {
    let mut images = Vec::with_capacity(n as usize);
    let used: BTreeSet<u32> = targets.iter().copied().collect();
    if used.len() != targets.len() || targets.iter().any(|&t| t == 0 || t > n) {
        return Err(Error::Arity(
            "routing targets must be distinct and in range".into(),
        ));
    }
    for &t in targets {
        images.push(t - 1);
    }
    for v in 1..=n {
        if !used.contains(&v) {
            images.push(v - 1);
        }
    }
    Permutation::from_images(images)
}

/// A deterministic positive braid word realizing the routing permutation.
fn route_braid(n: u32, targets: &[u32]) -> Result<BraidWord> {
    let p = route_permutation(n, targets)?;
    let letters: Vec<i32> = p.reduced_word().iter().map(|&i| i as i32 + 1).collect();
    BraidWord::new(n, letters)
}

/// Projector onto the basis tensors with the first routed strand on the
/// "sign" basis vector and the second on the fixed one, over the sigma
/// signature: conjugate of (id(2) - tau(1,1) . sigma) / 2 by the
/// permutation sending 2 to i and 1 to j.
pub fn p_ij(n: u32, i: u32, j: u32) -> Result<Polynomial> {
    check_pair(n, i, j)?;
    let sigma = Term::gen("sigma", 2, 2);
    let base = Polynomial::from_term(Term::id(2))
        .sub(&Polynomial::from_term(
            Term::compose(Term::braid(1, 1), sigma).unwrap(),
        ))
        .unwrap()
        .scale(&half());
    let padded = base.tensor(&Polynomial::identity(n - 2));
    // rho(2) = i, rho(1) = j in 1-based position terms.
    let rho = route_permutation(n, &[j, i])?;
    conjugate_by_perm(&padded, &rho)
}

fn check_pair(n: u32, i: u32, j: u32) -> Result<()> {
    if n < 2 || i == 0 || j == 0 || i > n || j > n || i == j {
        return Err(Error::Arity(format!(
            "projector indices ({i},{j}) out of range for n = {n}"
        )));
    }
    Ok(())
}

fn conjugate_by_perm(p: &Polynomial, rho: &Permutation) -> Result<Polynomial> {
    let left = Polynomial::from_term(perm_to_term(rho));
    let right = Polynomial::from_term(perm_to_term(&rho.inverse()));
    left.compose(p)?.compose(&right)
}

fn conjugate_by_braid(p: &Polynomial, rho: &BraidWord) -> Result<Polynomial> {
    let left = Polynomial::from_term(braid_to_term(rho));
    let right = Polynomial::from_term(braid_to_term(&rho.inverse()));
    left.compose(p)?.compose(&right)
}

/// Product over all pairs in I x complement of the sign projectors,
/// conjugated as in [`p_ij`]; the empty set yields the central complement
/// projector. The full set is rejected: its pair set is empty and the
/// projector it would name is not defined.
pub fn p_set(n: u32, set: &BTreeSet<u32>) -> Result<Polynomial> {
    if set.iter().any(|&v| v == 0 || v > n) {
        return Err(Error::Arity("set element out of range".into()));
    }
    if set.len() as u32 == n {
        return Err(Error::Arity(
            "the full set does not name a sign projector".into(),
        ));
    }
    if set.is_empty() {
        // Central complement: id minus the sum over proper nonempty sets.
        let mut acc = Polynomial::identity(n);
        for subset in proper_subsets(n) {
            acc = acc.sub(&p_set(n, &subset)?)?;
        }
        return Ok(acc);
    }
    let complement: BTreeSet<u32> = (1..=n).filter(|v| !set.contains(v)).collect();
    let mut acc = Polynomial::identity(n);
    for &i in set {
        for &j in &complement {
            acc = acc.compose(&p_ij(n, i, j)?)?;
        }
    }
    Ok(acc)
}

/// All proper nonempty subsets of {1..n}.
fn proper_subsets(n: u32) -> Vec<BTreeSet<u32>> {
    let mut out = Vec::new();
    for mask in 1..(1u32 << n) - 1 {
        out.push((1..=n).filter(|&v| mask >> (v - 1) & 1 == 1).collect());
    }
    out
}

/// Projector onto basis tensors differing at strands i and j, over the
/// empty signature in a braided backend: conjugate of
/// (id(n) - tau(1,1)^2 # id(n-2)) / 2 by a routing braid.
pub fn q_ij(n: u32, i: u32, j: u32) -> Result<Polynomial> {
    q_ij_with(n, i, j, None)
}

/// Same, with an explicit routing braid (must send 1 to i and 2 to j);
/// the projector does not depend on the choice.
pub fn q_ij_with(n: u32, i: u32, j: u32, route: Option<BraidWord>) -> Result<Polynomial> {
    check_pair(n, i, j)?;
    let rho = match route {
        Some(b) => {
            let p = b.underlying_permutation();
            if p.apply(0) != i - 1 || p.apply(1) != j - 1 {
                return Err(Error::Arity(
                    "routing braid does not send 1, 2 to i, j".into(),
                ));
            }
            b
        }
        None => route_braid(n, &[i, j])?,
    };
    let base = half_projector(n, false)?;
    conjugate_by_braid(&base, &rho)
}

/// Complementary projector onto basis tensors equal at strands i and j.
pub fn r_ij(n: u32, i: u32, j: u32) -> Result<Polynomial> {
    check_pair(n, i, j)?;
    let rho = route_braid(n, &[i, j])?;
    let base = half_projector(n, true)?;
    conjugate_by_braid(&base, &rho)
}

/// (id(n) -+ tau(1,1)^2 # id(n-2)) / 2.
fn half_projector(n: u32, plus: bool) -> Result<Polynomial> {
    let tau_sq = Term::compose(Term::braid(1, 1), Term::braid(1, 1))
        .unwrap()
        .padded(0, n - 2);
    let tau_part = Polynomial::from_term(tau_sq);
    let base = if plus {
        Polynomial::identity(n).add(&tau_part)?
    } else {
        Polynomial::identity(n).sub(&tau_part)?
    };
    Ok(base.scale(&half()))
}

/// Projector for an unordered splitting {I, complement}: equal basis
/// letters within each part, different letters across; the empty or full
/// set denotes the complement of all the others (constant tensors).
pub fn q_partition(n: u32, set: &BTreeSet<u32>) -> Result<Polynomial> {
    if set.iter().any(|&v| v == 0 || v > n) {
        return Err(Error::Arity("set element out of range".into()));
    }
    if set.is_empty() || set.len() as u32 == n {
        let mut acc = Polynomial::identity(n);
        for pair in splittings(n) {
            acc = acc.sub(&q_partition(n, &pair)?)?;
        }
        return Ok(acc);
    }
    let complement: BTreeSet<u32> = (1..=n).filter(|v| !set.contains(v)).collect();
    let mut acc = Polynomial::identity(n);
    for &i in set {
        for &j in &complement {
            acc = acc.compose(&q_ij(n, i, j)?)?;
        }
    }
    for part in [set, &complement] {
        let elems: Vec<u32> = part.iter().copied().collect();
        for (a, &i) in elems.iter().enumerate() {
            for &j in elems.iter().skip(a + 1) {
                acc = acc.compose(&r_ij(n, i, j)?)?;
            }
        }
    }
    Ok(acc)
}

/// Unordered proper splittings {I, complement}, one representative each
/// (the one containing 1).
pub fn splittings(n: u32) -> Vec<BTreeSet<u32>> {
    proper_subsets(n)
        .into_iter()
        .filter(|s| s.contains(&1))
        .collect()
}

/// The projector relator families over the sigma signature for a given
/// strand count, together with the invariance of the central complement.
pub fn v2(n: u32) -> Result<RelationSet> {
    if n < 2 {
        return Err(Error::Arity("v2 needs at least two strands".into()));
    }
    let mut relators = v_symm().relators;
    let idx: Vec<u32> = (1..=n).collect();
    let theta = |p: &Permutation| Polynomial::from_term(perm_to_term(p));
    for &i1 in &idx {
        for &j1 in &idx {
            if i1 == j1 {
                continue;
            }
            let p1 = p_ij(n, i1, j1)?;
            relators.push((format!("idempotent-p{i1}{j1}"), p1.compose(&p1)?.sub(&p1)?));
            for &i2 in &idx {
                if i2 != i1 && i2 != j1 {
                    let p_back = p_ij(n, i2, i1)?;
                    relators.push((
                        format!("orthogonal-p{i1}{j1}-p{i2}{i1}"),
                        p1.compose(&p_back)?,
                    ));
                }
                for &j2 in &idx {
                    if i2 == j2 {
                        continue;
                    }
                    let p2 = p_ij(n, i2, j2)?;
                    let lhs = p1.compose(&p2)?;
                    relators.push((
                        format!("commute-p{i1}{j1}-p{i2}{j2}"),
                        lhs.sub(&p2.compose(&p1)?)?,
                    ));
                    if i1 != j2 && i2 != j1 {
                        relators.push((
                            format!("exchange-p{i1}{j1}-p{i2}{j2}"),
                            lhs.sub(&p_ij(n, i1, j2)?.compose(&p_ij(n, i2, j1)?)?)?,
                        ));
                    }
                    if i1 != j2 {
                        relators.push((
                            format!("absorb-p{i1}{j1}-p{i2}{j2}"),
                            lhs.compose(&p_ij(n, i1, j2)?)?.sub(&lhs)?,
                        ));
                    }
                    if i1 != i2 {
                        let swap = Permutation::from_cycles(n, &[vec![i1, i2]])?;
                        relators.push((
                            format!("swap-sources-p{i1}{j1}-p{i2}{j2}"),
                            lhs.compose(&theta(&swap))?.sub(&lhs)?,
                        ));
                    }
                    if j1 != j2 {
                        let swap = Permutation::from_cycles(n, &[vec![j1, j2]])?;
                        relators.push((
                            format!("swap-targets-p{i1}{j1}-p{i2}{j2}"),
                            lhs.compose(&theta(&swap))?.sub(&lhs)?,
                        ));
                    }
                }
            }
        }
    }
    let p_center = p_set(n, &BTreeSet::new())?;
    for rho in all_permutations(n) {
        if rho == Permutation::identity(n) {
            continue;
        }
        relators.push((
            format!(
                "central-invariance-{:?}",
                (0..n).map(|k| rho.apply(k) + 1).collect::<Vec<_>>()
            ),
            p_center.compose(&theta(&rho))?.sub(&p_center)?,
        ));
    }
    Ok(RelationSet {
        name: format!("v2({n})"),
        relators,
    })
}

/// The braided-backend relator families for a given strand count: the
/// braiding has order four, squared generators are central among pure
/// braids, the difference projectors commute with braids fixing their
/// strands, and boundary-respecting crossings fix the splitting
/// projectors.
pub fn v3(n: u32) -> Result<RelationSet> {
    if n < 2 {
        return Err(Error::Arity("v3 needs at least two strands".into()));
    }
    let tau = Term::braid(1, 1);
    let tau4 = Term::compose_chain([tau.clone(), tau.clone(), tau.clone(), tau]).unwrap();
    let mut relators = vec![(
        "braiding-order-four".into(),
        poly(tau4).sub(&poly(Term::id(2))).unwrap(),
    )];

    let pure = crate::combin::sample_pure_braids(n);
    for i in 1..n as i32 {
        let sq = BraidWord::new(n, vec![i, i]).unwrap();
        for (k, rho) in pure.iter().enumerate().take(6) {
            let ab = braid_to_term(&sq.mul(rho));
            let ba = braid_to_term(&rho.mul(&sq));
            relators.push((
                format!("pure-commute-s{i}-{k}"),
                poly(ab).sub(&poly(ba)).unwrap(),
            ));
        }
    }

    for i in 1..=n {
        for j in (i + 1)..=n {
            let q = q_ij(n, i, j)?;
            for rho in braids_fixing(n, i, j).into_iter().take(6) {
                let theta = Polynomial::from_term(braid_to_term(&rho));
                relators.push((
                    format!("q{i}{j}-commutes-{:?}", rho.letters()),
                    q.compose(&theta)?.sub(&theta.compose(&q)?)?,
                ));
            }
        }
    }

    for i in 0..n {
        let set: BTreeSet<u32> = (1..=i).collect();
        let q = q_partition(n, &set)?;
        for j in 0..=n.saturating_sub(2) {
            if j + 1 == i {
                continue;
            }
            let crossing = Term::braid(1, 1).padded(j, n - j - 2);
            let theta = Polynomial::from_term(crossing);
            relators.push((
                format!("splitting-{i}-fixed-by-crossing-{j}"),
                q.compose(&theta)?.sub(&q)?,
            ));
        }
    }
    Ok(RelationSet {
        name: format!("v3({n})"),
        relators,
    })
}

/// Braid words whose underlying permutation fixes the 1-based points i, j.
fn braids_fixing(n: u32, i: u32, j: u32) -> Vec<BraidWord> {
    let mut out = Vec::new();
    for k in 1..n {
        // Squared generators are pure, hence fix everything.
        out.push(BraidWord::new(n, vec![k as i32, k as i32]).unwrap());
        // Single crossings not touching i or j.
        if k != i && k + 1 != i && k != j && k + 1 != j {
            out.push(BraidWord::new(n, vec![k as i32]).unwrap());
        }
    }
    let composable: Vec<BraidWord> = out.iter().take(2).cloned().collect();
    if composable.len() == 2 {
        out.push(composable[0].mul(&composable[1]));
    }
    out
}

/// Addresses a relation set by CLI name: `v-symm`, `v-assoc`, `v-hopf`,
/// `v-cochopf`, `v-commcochopf`, `c2-identities`, `v2(n)`, `v3(n)`,
/// `v-symm-d(d,n)`.
pub fn relation_set_by_name(name: &str) -> Result<RelationSet> {
    match name {
        "v-symm" => Ok(v_symm()),
        "v-assoc" => Ok(v_assoc()),
        "v-hopf" => Ok(v_hopf()),
        "v-cochopf" => Ok(v_cochopf()),
        "v-commcochopf" => Ok(v_commcochopf()),
        "c2-identities" => Ok(c2_identities()),
        _ => {
            if let Some(args) = parse_call(name, "v2") {
                let [n] = args[..] else {
                    return Err(Error::Arity("v2 takes one argument".into()));
                };
                return v2(n);
            }
            if let Some(args) = parse_call(name, "v3") {
                let [n] = args[..] else {
                    return Err(Error::Arity("v3 takes one argument".into()));
                };
                return v3(n);
            }
            if let Some(args) = parse_call(name, "v-symm-d") {
                let [d, n] = args[..] else {
                    return Err(Error::Arity("v-symm-d takes two arguments".into()));
                };
                return v_symm_d(d, n);
            }
            Err(Error::Arity(format!("unknown relation set `{name}`")))
        }
    }
}

fn parse_call(text: &str, fname: &str) -> Option<Vec<u32>> {
    let rest = text.strip_prefix(fname)?;
    let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|s| s.trim().parse().ok()).collect()
}
