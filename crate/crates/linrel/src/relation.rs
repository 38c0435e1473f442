//! Linear relations: subspaces of GF(p)^{a+b} read as multivalued
//! partial linear maps from GF(p)^a to GF(p)^b.
//!
//! Domain coordinates occupy indices `0..dim_dom` of the graph ambient,
//! codomain coordinates the rest. All operations keep the graph in
//! canonical form, so relation equality is structural equality.

use crate::field::Prime;
use crate::matrix::{Matrix, Vector};
use crate::subspace::Subspace;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearRelation {
    dim_dom: usize,
    dim_cod: usize,
    graph: Subspace,
}

impl LinearRelation {
    /// Wraps a graph subspace; its ambient must be `dim_dom + dim_cod`.
    pub fn from_graph(dim_dom: usize, dim_cod: usize, graph: Subspace) -> Self {
        assert_eq!(
            graph.ambient_dim(),
            dim_dom + dim_cod,
            "graph ambient must be dim_dom + dim_cod"
        );
        Self {
            dim_dom,
            dim_cod,
            graph,
        }
    }

    pub fn from_generators(
        p: Prime,
        dim_dom: usize,
        dim_cod: usize,
        generators: &[Vector],
    ) -> Result<Self> {
        let graph = Subspace::span(p, dim_dom + dim_cod, generators)?;
        Ok(Self::from_graph(dim_dom, dim_cod, graph))
    }

    /// The graph of the linear map `v -> m * v` (columns of `m` are the
    /// images of the standard basis vectors).
    pub fn from_matrix(m: &Matrix) -> Self {
        let p = m.modulus();
        let (dom, cod) = (m.ncols(), m.nrows());
        let gens: Vec<Vector> = (0..dom)
            .map(|i| {
                let e = Vector::standard(p, dom, i);
                let img = m.mat_vec(&e);
                e.concat(&img)
            })
            .collect();
        Self::from_generators(p, dom, cod, &gens).expect("generators have graph length")
    }

    /// The full relation: every pair is related.
    pub fn top(p: Prime, dim_dom: usize, dim_cod: usize) -> Self {
        Self::from_graph(dim_dom, dim_cod, Subspace::full(p, dim_dom + dim_cod))
    }

    /// The empty-graph relation `{(0,0)}`.
    pub fn bottom(p: Prime, dim_dom: usize, dim_cod: usize) -> Self {
        Self::from_graph(dim_dom, dim_cod, Subspace::zero(p, dim_dom + dim_cod))
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        Self::from_matrix(&Matrix::identity(p, n))
    }

    pub fn modulus(&self) -> Prime {
        self.graph.modulus()
    }

    pub fn dim_dom(&self) -> usize {
        self.dim_dom
    }

    pub fn dim_cod(&self) -> usize {
        self.dim_cod
    }

    pub fn graph(&self) -> &Subspace {
        &self.graph
    }

    pub fn is_endo(&self) -> bool {
        self.dim_dom == self.dim_cod
    }

    /// Function-composition order: `self.compose(rhs)` is "self after
    /// rhs", defined whenever `rhs.dim_cod == self.dim_dom`.
    ///
    /// Computed by embedding both graphs into A + B + P, intersecting,
    /// and projecting away the middle block.
    pub fn compose(&self, rhs: &Self) -> Self {
        assert_eq!(rhs.dim_cod, self.dim_dom, "composition dimension mismatch");
        let p = self.modulus();
        assert_eq!(p, rhs.modulus(), "composition across different fields");
        let (a, b, c) = (rhs.dim_dom, rhs.dim_cod, self.dim_cod);
        let triple = a + b + c;

        // first = graph(rhs) x P, second = A x graph(self).
        let mut first: Vec<Vector> = rhs
            .graph
            .basis_rows()
            .map(|g| g.concat(&Vector::zero(p, c)))
            .collect();
        first.extend((0..c).map(|k| Vector::standard(p, triple, a + b + k)));

        let mut second: Vec<Vector> = (0..a).map(|i| Vector::standard(p, triple, i)).collect();
        second.extend(
            self.graph
                .basis_rows()
                .map(|g| Vector::zero(p, a).concat(&g)),
        );

        let u = Subspace::span(p, triple, &first).expect("triple-ambient generators");
        let v = Subspace::span(p, triple, &second).expect("triple-ambient generators");
        let met = u.intersect(&v);

        let projected: Vec<Vector> = met
            .basis_rows()
            .map(|row| {
                let (dom, rest) = row.split_at(a);
                let (_, cod) = rest.split_at(b);
                dom.concat(&cod)
            })
            .collect();
        Self::from_generators(p, a, c, &projected).expect("projected generators")
    }

    /// Graph coordinates swapped: codomain becomes domain.
    pub fn inverse(&self) -> Self {
        let p = self.modulus();
        let gens: Vec<Vector> = self
            .graph
            .basis_rows()
            .map(|row| {
                let (dom, cod) = row.split_at(self.dim_dom);
                cod.concat(&dom)
            })
            .collect();
        Self::from_generators(p, self.dim_cod, self.dim_dom, &gens).expect("swapped generators")
    }

    /// Iterated composition; negative exponents iterate the inverse and
    /// `power(0)` is the identity.
    pub fn power(&self, k: i64) -> Self {
        assert!(self.is_endo(), "powers require an endorelation");
        if k < 0 {
            return self.inverse().power(-k);
        }
        let mut acc = Self::identity(self.modulus(), self.dim_dom);
        for _ in 0..k {
            acc = self.compose(&acc);
        }
        acc
    }

    /// Image of a subspace: project `graph ∩ (S x B)` to the codomain.
    pub fn image(&self, s: &Subspace) -> Subspace {
        assert_eq!(
            s.ambient_dim(),
            self.dim_dom,
            "image needs a subspace of the domain"
        );
        let p = self.modulus();
        let ambient = self.dim_dom + self.dim_cod;
        let mut gens: Vec<Vector> = s
            .basis_rows()
            .map(|v| v.concat(&Vector::zero(p, self.dim_cod)))
            .collect();
        gens.extend((0..self.dim_cod).map(|k| Vector::standard(p, ambient, self.dim_dom + k)));
        let cylinder = Subspace::span(p, ambient, &gens).expect("cylinder generators");
        let met = self.graph.intersect(&cylinder);
        let projected: Vec<Vector> = met
            .basis_rows()
            .map(|row| row.split_at(self.dim_dom).1)
            .collect();
        Subspace::span(p, self.dim_cod, &projected).expect("projected image")
    }

    pub fn preimage(&self, s: &Subspace) -> Subspace {
        self.inverse().image(s)
    }

    /// The indeterminacy subspace `phi(0)`.
    pub fn indeterminacy(&self) -> Subspace {
        self.image(&Subspace::zero(self.modulus(), self.dim_dom))
    }

    /// The kernel `phi^{-1}(0)`.
    pub fn kernel(&self) -> Subspace {
        self.preimage(&Subspace::zero(self.modulus(), self.dim_cod))
    }

    /// The domain of definition `phi^{-1}(B)`.
    pub fn domain_of_definition(&self) -> Subspace {
        self.preimage(&Subspace::full(self.modulus(), self.dim_cod))
    }

    /// The range `phi(A)`.
    pub fn range(&self) -> Subspace {
        self.image(&Subspace::full(self.modulus(), self.dim_dom))
    }

    pub fn is_single_valued(&self) -> bool {
        self.indeterminacy().is_zero()
    }

    pub fn is_total(&self) -> bool {
        self.domain_of_definition().is_full()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.range().is_full()
    }

    /// Single-valued and injective.
    pub fn is_matching(&self) -> bool {
        self.is_single_valued() && self.is_injective()
    }

    /// Total and surjective.
    pub fn is_correspondence(&self) -> bool {
        self.is_total() && self.is_surjective()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_matching() && self.is_correspondence()
    }

    /// Some image of `x`, solved against the canonical graph basis; the
    /// full image set is `apply(x) + indeterminacy()`. `None` when `x`
    /// lies outside the domain of definition.
    pub fn apply(&self, x: &Vector) -> Option<Vector> {
        assert_eq!(x.len(), self.dim_dom, "argument length mismatch");
        let mut rest = x.clone();
        let mut img = Vector::zero(self.modulus(), self.dim_cod);
        for (row, pivot) in self.graph.basis_rows().zip(self.graph.pivots()) {
            if pivot >= self.dim_dom {
                break;
            }
            let c = rest.get(pivot);
            if !c.is_zero() {
                let (dom, cod) = row.split_at(self.dim_dom);
                rest = rest.add(&dom.scale(-c));
                img = img.add(&cod.scale(c));
            }
        }
        rest.is_zero().then_some(img)
    }

    /// Extracts the matrix of a single-valued total relation; column `i`
    /// is the image of the i-th standard basis vector.
    pub fn to_matrix(&self) -> Result<Matrix> {
        // For a single-valued total relation the canonical graph basis is
        // [I | X], so the matrix is X transposed.
        let pivots = self.graph.pivots();
        let expects_pivots: Vec<usize> = (0..self.dim_dom).collect();
        if pivots != expects_pivots {
            return Err(Error::NotAMapping);
        }
        let x = self
            .graph
            .basis()
            .columns(self.dim_dom, self.dim_dom + self.dim_cod);
        Ok(x.transpose())
    }

    pub fn to_document(&self) -> RelationDoc {
        RelationDoc {
            p: u64::from(self.modulus().value()),
            dim_dom: self.dim_dom,
            dim_cod: self.dim_cod,
            generators: self.graph.basis().to_int_rows(),
        }
    }

    pub fn from_document(doc: &RelationDoc) -> Result<Self> {
        let p = Prime::new(doc.p)?;
        let ambient = doc.dim_dom + doc.dim_cod;
        let mut gens = Vec::with_capacity(doc.generators.len());
        for g in &doc.generators {
            if g.len() != ambient {
                return Err(Error::LengthMismatch {
                    expected: ambient,
                    found: g.len(),
                });
            }
            for &e in g {
                if e >= u64::from(p.value()) {
                    return Err(Error::EntryOutOfRange {
                        value: e as i64,
                        p: p.value(),
                    });
                }
            }
            gens.push(Vector::from_ints(p, g));
        }
        Self::from_generators(p, doc.dim_dom, doc.dim_cod, &gens)
    }
}

impl fmt::Debug for LinearRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Relation GF({})^{} -> GF({})^{} {:?}",
            self.modulus(),
            self.dim_dom,
            self.modulus(),
            self.dim_cod,
            self.graph.basis().to_int_rows()
        )
    }
}

/// On-disk form of a relation. Generators are integer vectors of length
/// `dim_dom + dim_cod` with entries in `[0, p)`, domain coordinates
/// first; the loader canonicalizes by spanning, the writer always emits
/// the canonical basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationDoc {
    pub p: u64,
    pub dim_dom: usize,
    pub dim_cod: usize,
    pub generators: Vec<Vec<u64>>,
}

impl RelationDoc {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serialization cannot fail")
    }
}
