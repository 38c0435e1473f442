//! Canonical subspaces of GF(p)^n and their lattice operations.
//!
//! A subspace is stored as the reduced row-echelon basis of its row space.
//! That form is unique, so structural equality, hashing, and ordering all
//! agree with equality of the spanned sets.

use crate::field::Prime;
use crate::matrix::{Matrix, Vector};
use crate::{Error, Result};
use itertools::Itertools;
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
}

impl Subspace {
    /// Canonicalizes the row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        Self {
            ambient: m.ncols(),
            basis: m.rref(),
        }
    }

    /// The span of the given vectors inside GF(p)^ambient.
    pub fn span(p: Prime, ambient: usize, vectors: &[Vector]) -> Result<Self> {
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::LengthMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
        }
        Ok(Self::from_matrix(&Matrix::from_rows(p, ambient, vectors)))
    }

    pub fn zero(p: Prime, ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::zero(p, 0, ambient),
        }
    }

    pub fn full(p: Prime, ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::identity(p, ambient),
        }
    }

    pub fn modulus(&self) -> Prime {
        self.basis.modulus()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// The canonical (RREF) basis.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> impl Iterator<Item = Vector> + '_ {
        self.basis.rows_iter()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> Vec<usize> {
        (0..self.basis.nrows())
            .map(|r| {
                self.basis
                    .row_slice(r)
                    .iter()
                    .position(|&e| e != 0)
                    .expect("canonical basis has no zero rows")
            })
            .collect()
    }

    /// Membership test by reduction against the canonical basis.
    pub fn contains(&self, v: &Vector) -> bool {
        assert_eq!(v.len(), self.ambient, "ambient dimension mismatch");
        assert_eq!(v.modulus(), self.modulus(), "field mismatch");
        let mut rest = v.clone();
        for (row, pivot) in self.basis_rows().zip(self.pivots()) {
            let c = rest.get(pivot);
            if !c.is_zero() {
                rest = rest.add(&row.scale(-c));
            }
        }
        rest.is_zero()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis_rows().all(|r| self.contains(&r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        Subspace::from_matrix(&self.basis.vstack(&other.basis))
    }

    /// Intersection via the Zassenhaus block construction: row-reduce the
    /// stacked block matrix `[S|S; T|0]`; rows whose left half vanishes
    /// carry a basis of the intersection in their right half.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient dimension mismatch");
        let p = self.modulus();
        let n = self.ambient;
        let rows = self.dim() + other.dim();
        let mut block = Matrix::zero(p, rows, 2 * n);
        for (i, row) in self.basis_rows().enumerate() {
            for c in 0..n {
                block.set(i, c, row.get(c));
                block.set(i, n + c, row.get(c));
            }
        }
        for (i, row) in other.basis_rows().enumerate() {
            for c in 0..n {
                block.set(self.dim() + i, c, row.get(c));
            }
        }
        let reduced = block.rref();
        let meet_rows: Vec<Vector> = (0..reduced.nrows())
            .filter(|&r| reduced.row_slice(r)[..n].iter().all(|&e| e == 0))
            .map(|r| {
                let (_, right) = reduced.row(r).split_at(n);
                right
            })
            .collect();
        Subspace::span(p, n, &meet_rows).expect("rows have ambient length")
    }

    /// Standard basis vectors at the non-pivot coordinates. Together with
    /// the canonical basis they span the ambient space.
    pub fn complement_basis(&self) -> Vec<Vector> {
        let pivots = self.pivots();
        (0..self.ambient)
            .filter(|c| !pivots.contains(c))
            .map(|c| Vector::standard(self.modulus(), self.ambient, c))
            .collect()
    }

    /// All vectors of the subspace, in odometer order over the basis
    /// coefficients. Intended for small exhaustive checks.
    pub fn elements(&self) -> Vec<Vector> {
        let p = self.modulus();
        let mut out = Vec::new();
        let k = self.dim();
        let mut coeffs = vec![0u64; k];
        loop {
            let mut v = Vector::zero(p, self.ambient);
            for (i, &c) in coeffs.iter().enumerate() {
                v = v.add(&self.basis.row(i).scale(p.scalar(c)));
            }
            out.push(v);
            let mut i = 0;
            loop {
                if i == k {
                    return out;
                }
                coeffs[i] += 1;
                if coeffs[i] < u64::from(p.value()) {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} of GF({})^{}) {:?}",
            self.dim(),
            self.modulus(),
            self.ambient,
            self.basis.to_int_rows()
        )
    }
}

/// The Gaussian binomial `[n choose k]_p`: the number of k-dimensional
/// subspaces of GF(p)^n.
pub fn gaussian_binomial(p: Prime, n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let q = u128::from(p.value());
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Total number of subspaces of GF(p)^n, all dimensions together.
pub fn subspace_count(p: Prime, n: usize) -> u128 {
    (0..=n).map(|k| gaussian_binomial(p, n, k)).sum()
}

const ENUMERATION_GUARD: u128 = 1 << 20;

/// Deterministic stream of every subspace of GF(p)^n, ordered by
/// dimension and then lexicographically by canonical basis.
///
/// Bases are generated directly in reduced row-echelon form, one pivot
/// pattern at a time, so each subspace appears exactly once without any
/// deduplication. Guarded by `p^n <= 2^20`.
pub fn enumerate_subspaces(p: Prime, n: usize) -> Result<SubspaceEnumerator> {
    let size = u128::from(p.value()).checked_pow(n as u32);
    match size {
        Some(s) if s <= ENUMERATION_GUARD => Ok(SubspaceEnumerator {
            p,
            n,
            next_dim: 0,
            stratum: Vec::new().into_iter(),
        }),
        _ => Err(Error::GuardExceeded(format!(
            "subspace enumeration requires p^n <= 2^20, got {p}^{n}"
        ))),
    }
}

pub struct SubspaceEnumerator {
    p: Prime,
    n: usize,
    next_dim: usize,
    stratum: std::vec::IntoIter<Subspace>,
}

impl SubspaceEnumerator {
    /// All subspaces of one dimension, sorted by canonical basis.
    fn build_stratum(p: Prime, n: usize, k: usize) -> Vec<Subspace> {
        let q = u64::from(p.value());
        let mut out = Vec::new();
        for pattern in (0..n).combinations(k) {
            // Row i has its pivot at pattern[i]; the free entries sit at
            // the non-pivot columns to the right of that pivot.
            let mut free: Vec<(usize, usize)> = Vec::new();
            for (i, &pivot) in pattern.iter().enumerate() {
                for c in pivot + 1..n {
                    if !pattern.contains(&c) {
                        free.push((i, c));
                    }
                }
            }
            let mut values = vec![0u64; free.len()];
            'assignments: loop {
                let mut m = Matrix::zero(p, k, n);
                for (i, &pc) in pattern.iter().enumerate() {
                    m.set(i, pc, p.one());
                }
                for (&(r, c), &v) in free.iter().zip(&values) {
                    m.set(r, c, p.scalar(v));
                }
                debug_assert_eq!(m.rref(), m, "pattern generation must emit canonical bases");
                out.push(Subspace {
                    ambient: n,
                    basis: m,
                });
                let mut i = 0;
                loop {
                    if i == values.len() {
                        break 'assignments;
                    }
                    values[i] += 1;
                    if values[i] < q {
                        break;
                    }
                    values[i] = 0;
                    i += 1;
                }
            }
        }
        out.sort();
        out
    }
}

impl Iterator for SubspaceEnumerator {
    type Item = Subspace;

    fn next(&mut self) -> Option<Subspace> {
        loop {
            if let Some(s) = self.stratum.next() {
                return Some(s);
            }
            if self.next_dim > self.n {
                return None;
            }
            self.stratum = Self::build_stratum(self.p, self.n, self.next_dim).into_iter();
            self.next_dim += 1;
        }
    }
}
