//! Similarity invariants for square matrices over GF(p): the invariant
//! factors read off the Smith normal form of the polynomial matrix xI - M.

use crate::field::Prime;
use crate::matrix::Matrix;
use crate::poly::Poly;
use std::fmt;

/// The monic nonconstant diagonal of the Smith normal form of xI - M,
/// in divisibility order `f_1 | f_2 | ... | f_r`. A complete similarity
/// invariant; the product of the factor degrees equals the matrix
/// dimension, the last factor is the minimal polynomial, and the product
/// of all factors is the characteristic polynomial.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InvariantFactors {
    factors: Vec<Poly>,
}

impl InvariantFactors {
    pub fn factors(&self) -> &[Poly] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Sum of the factor degrees.
    pub fn total_degree(&self) -> usize {
        self.factors
            .iter()
            .map(|f| f.degree().expect("factors are nonconstant"))
            .sum()
    }

    /// Coefficient lists, lowest degree first, for serialization.
    pub fn to_coeff_lists(&self) -> Vec<Vec<u64>> {
        self.factors.iter().map(|f| f.coeffs()).collect()
    }

    pub fn from_coeff_lists(p: Prime, lists: &[Vec<u64>]) -> Self {
        Self {
            factors: lists.iter().map(|c| Poly::from_coeffs(p, c)).collect(),
        }
    }
}

impl fmt::Debug for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.factors).finish()
    }
}

/// Square polynomial matrix used internally by the Smith reduction.
struct PolyMat {
    n: usize,
    entries: Vec<Poly>,
}

impl PolyMat {
    fn characteristic(m: &Matrix) -> Self {
        assert!(m.is_square(), "invariant factors need a square matrix");
        let p = m.modulus();
        let n = m.nrows();
        let mut entries = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                let mut e = Poly::constant(-m.get(r, c));
                if r == c {
                    e = e.add(&Poly::x(p));
                }
                entries.push(e);
            }
        }
        Self { n, entries }
    }

    fn at(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.n + c]
    }

    fn set(&mut self, r: usize, c: usize, v: Poly) {
        self.entries[r * self.n + c] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.n {
                self.entries.swap(a * self.n + c, b * self.n + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.n {
                self.entries.swap(r * self.n + a, r * self.n + b);
            }
        }
    }

    /// row_dst -= q * row_src
    fn row_sub(&mut self, dst: usize, src: usize, q: &Poly) {
        for c in 0..self.n {
            let v = self.at(dst, c).sub(&q.mul(self.at(src, c)));
            self.set(dst, c, v);
        }
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &Poly) {
        for r in 0..self.n {
            let v = self.at(r, dst).sub(&q.mul(self.at(r, src)));
            self.set(r, dst, v);
        }
    }

    /// row_dst += row_src
    fn row_add(&mut self, dst: usize, src: usize) {
        for c in 0..self.n {
            let v = self.at(dst, c).add(self.at(src, c));
            self.set(dst, c, v);
        }
    }

    /// Minimal-degree nonzero entry in the trailing submatrix, ties
    /// broken by row then column order.
    fn pick_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for r in t..self.n {
            for c in t..self.n {
                if let Some(d) = self.at(r, c).degree() {
                    let better = match best {
                        None => true,
                        Some((bd, _, _)) => d < bd,
                    };
                    if better {
                        best = Some((d, r, c));
                    }
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    /// Diagonalizes in place so that the diagonal entries form a
    /// divisibility chain; returns the monic diagonal.
    fn smith_diagonal(mut self) -> Vec<Poly> {
        for t in 0..self.n {
            'pivot: while let Some((pr, pc)) = self.pick_pivot(t) {
                self.swap_rows(t, pr);
                self.swap_cols(t, pc);
                // Reduce the pivot row and column; remainders have lower
                // degree, so this terminates.
                let mut dirty = false;
                for r in t + 1..self.n {
                    if !self.at(r, t).is_zero() {
                        let (q, _) = self.at(r, t).divmod(self.at(t, t));
                        self.row_sub(r, t, &q);
                        if !self.at(r, t).is_zero() {
                            dirty = true;
                        }
                    }
                }
                for c in t + 1..self.n {
                    if !self.at(t, c).is_zero() {
                        let (q, _) = self.at(t, c).divmod(self.at(t, t));
                        self.col_sub(c, t, &q);
                        if !self.at(t, c).is_zero() {
                            dirty = true;
                        }
                    }
                }
                if dirty {
                    continue 'pivot;
                }
                // Pivot must divide every remaining entry; if not, pull
                // the offending row up and keep reducing.
                for r in t + 1..self.n {
                    for c in t + 1..self.n {
                        if !self.at(t, t).divides(self.at(r, c)) {
                            self.row_add(t, r);
                            continue 'pivot;
                        }
                    }
                }
                break;
            }
        }
        (0..self.n).map(|i| self.at(i, i).monic()).collect()
    }
}

/// Invariant factors of a square matrix: the Smith normal form diagonal
/// of xI - M with unit factors discarded.
pub fn invariant_factors(m: &Matrix) -> InvariantFactors {
    let diagonal = PolyMat::characteristic(m).smith_diagonal();
    let factors: Vec<Poly> = diagonal.into_iter().filter(|f| !f.is_constant()).collect();
    let result = InvariantFactors { factors };
    debug_assert_eq!(result.total_degree(), m.nrows());
    debug_assert!(result.factors.windows(2).all(|w| w[0].divides(&w[1])));
    result
}

/// Two square matrices over the same field are similar exactly when they
/// have the same dimension and identical invariant factors.
pub fn similar(a: &Matrix, b: &Matrix) -> bool {
    assert_eq!(
        a.modulus(),
        b.modulus(),
        "similarity across different fields"
    );
    assert!(
        a.is_square() && b.is_square(),
        "similarity needs square matrices"
    );
    a.nrows() == b.nrows() && invariant_factors(a) == invariant_factors(b)
}
