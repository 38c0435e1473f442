//! Brute-force set semantics for relations on small spaces.
//!
//! Everything here works element by element, independent of the
//! subspace-level algebra, so it can serve as a reference when checking
//! composition, images, and predicates. Guarded by `p^ambient <= 2^16`.

use crate::field::Prime;
use crate::matrix::Vector;
use crate::relation::LinearRelation;
use crate::subspace::Subspace;

const PAIR_GUARD: u128 = 1 << 16;

fn assert_guard(p: Prime, ambient: usize) {
    let size = u128::from(p.value()).checked_pow(ambient as u32);
    assert!(
        matches!(size, Some(s) if s <= PAIR_GUARD),
        "exhaustive semantics require p^ambient <= 2^16, got {p}^{ambient}"
    );
}

/// Every vector of GF(p)^n in odometer order.
pub fn all_vectors(p: Prime, n: usize) -> Vec<Vector> {
    assert_guard(p, n);
    let q = u64::from(p.value());
    let mut out = Vec::new();
    let mut digits = vec![0u64; n];
    loop {
        out.push(Vector::from_ints(p, &digits));
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            digits[i] += 1;
            if digits[i] < q {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// All related pairs `(x, y)` of a relation, by membership test.
pub fn relation_pairs(rel: &LinearRelation) -> Vec<(Vector, Vector)> {
    let p = rel.modulus();
    assert_guard(p, rel.dim_dom() + rel.dim_cod());
    let mut out = Vec::new();
    for x in all_vectors(p, rel.dim_dom()) {
        for y in all_vectors(p, rel.dim_cod()) {
            if rel.graph().contains(&x.concat(&y)) {
                out.push((x.clone(), y));
            }
        }
    }
    out
}

/// Rebuilds a relation from an explicit pair set by spanning.
pub fn relation_from_pairs(
    p: Prime,
    dim_dom: usize,
    dim_cod: usize,
    pairs: &[(Vector, Vector)],
) -> LinearRelation {
    let gens: Vec<Vector> = pairs.iter().map(|(x, y)| x.concat(y)).collect();
    LinearRelation::from_generators(p, dim_dom, dim_cod, &gens)
        .expect("pair vectors have graph length")
}

/// Composition computed directly from the defining formula: `(m, p)` is
/// related when some `n` satisfies `(m, n) in rhs` and `(n, p) in lhs`.
pub fn compose_by_pairs(lhs: &LinearRelation, rhs: &LinearRelation) -> LinearRelation {
    assert_eq!(
        rhs.dim_cod(),
        lhs.dim_dom(),
        "composition dimension mismatch"
    );
    let p = lhs.modulus();
    let rhs_pairs = relation_pairs(rhs);
    let lhs_pairs = relation_pairs(lhs);
    let mut pairs = Vec::new();
    for (m, n) in &rhs_pairs {
        for (n2, q) in &lhs_pairs {
            if n == n2 {
                pairs.push((m.clone(), q.clone()));
            }
        }
    }
    relation_from_pairs(p, rhs.dim_dom(), lhs.dim_cod(), &pairs)
}

/// Image of a subspace computed element by element.
pub fn image_by_pairs(rel: &LinearRelation, s: &Subspace) -> Subspace {
    let p = rel.modulus();
    let members: Vec<Vector> = relation_pairs(rel)
        .into_iter()
        .filter(|(x, _)| s.contains(x))
        .map(|(_, y)| y)
        .collect();
    Subspace::span(p, rel.dim_cod(), &members).expect("image vectors have codomain length")
}

/// Element-level predicate checks, straight from the definitions.
pub fn predicates_by_pairs(rel: &LinearRelation) -> ElementwisePredicates {
    let p = rel.modulus();
    let pairs = relation_pairs(rel);
    let domain = all_vectors(p, rel.dim_dom());
    let codomain = all_vectors(p, rel.dim_cod());
    let values = |x: &Vector| -> Vec<Vector> {
        pairs
            .iter()
            .filter(|(a, _)| a == x)
            .map(|(_, b)| b.clone())
            .collect()
    };
    let cofibers = |y: &Vector| -> Vec<Vector> {
        pairs
            .iter()
            .filter(|(_, b)| b == y)
            .map(|(a, _)| a.clone())
            .collect()
    };
    ElementwisePredicates {
        single_valued: domain.iter().all(|x| values(x).len() <= 1),
        total: domain.iter().all(|x| !values(x).is_empty()),
        injective: codomain.iter().all(|y| cofibers(y).len() <= 1),
        surjective: codomain.iter().all(|y| !cofibers(y).is_empty()),
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct ElementwisePredicates {
    pub single_valued: bool,
    pub total: bool,
    pub injective: bool,
    pub surjective: bool,
}
