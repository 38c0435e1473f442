//! Generalized kernel and image of an endorelation, the quotient and
//! restriction constructions built on them, and the canonical bijective
//! form every finite-dimensional endorelation reduces to.
//!
//! Both constructions realize their carrier concretely as GF(p)^m: the
//! restriction embeds via the canonical basis of the generalized image,
//! the quotient maps the complement basis of the generalized kernel onto
//! the standard basis. Inclusions and projections are ordinary relations,
//! so every conjugation below is plain relation composition.

use crate::canon::{invariant_factors, InvariantFactors};
use crate::field::Prime;
use crate::matrix::{Matrix, Vector};
use crate::relation::LinearRelation;
use crate::subspace::Subspace;
use crate::{Error, Result};

/// A pair (GF(p)^n, alpha) with alpha an endorelation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EndoObject {
    alpha: LinearRelation,
}

impl EndoObject {
    pub fn new(alpha: LinearRelation) -> Result<Self> {
        if !alpha.is_endo() {
            return Err(Error::NotEndo {
                dom: alpha.dim_dom(),
                cod: alpha.dim_cod(),
            });
        }
        Ok(Self { alpha })
    }

    /// The object (0, id_0).
    pub fn zero_object(p: Prime) -> Self {
        Self {
            alpha: LinearRelation::identity(p, 0),
        }
    }

    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        Self::new(LinearRelation::from_matrix(m))
    }

    pub fn modulus(&self) -> Prime {
        self.alpha.modulus()
    }

    pub fn dim(&self) -> usize {
        self.alpha.dim_dom()
    }

    pub fn alpha(&self) -> &LinearRelation {
        &self.alpha
    }
}

impl std::fmt::Debug for EndoObject {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "EndoObject({:?})", self.alpha)
    }
}

/// An iterated-image chain together with its stabilization index: the
/// least k with `terms[k] == terms[k+1]`. The repeated term is kept, and
/// k never exceeds dim + 1 on a finite-dimensional carrier.
#[derive(Clone, Debug)]
pub struct StabilizedChain {
    terms: Vec<Subspace>,
    stabilization_index: usize,
}

impl StabilizedChain {
    fn compute(start: Subspace, mut step: impl FnMut(&Subspace) -> Subspace, cap: usize) -> Self {
        let mut terms = vec![start];
        loop {
            let next = step(terms.last().expect("chain is nonempty"));
            let stabilized = next == *terms.last().expect("chain is nonempty");
            terms.push(next);
            if stabilized {
                let k = terms.len() - 2;
                assert!(
                    k <= cap,
                    "chain failed to stabilize within the finite-length bound"
                );
                return Self {
                    terms,
                    stabilization_index: k,
                };
            }
            assert!(
                terms.len() <= cap + 1,
                "chain failed to stabilize within the finite-length bound"
            );
        }
    }

    pub fn terms(&self) -> &[Subspace] {
        &self.terms
    }

    pub fn stabilization_index(&self) -> usize {
        self.stabilization_index
    }

    /// The stable value of the chain.
    pub fn limit(&self) -> &Subspace {
        &self.terms[self.stabilization_index]
    }
}

/// The chain `alpha^l(0)` for l = 0, 1, ...
pub fn forward_kernel_chain(obj: &EndoObject) -> StabilizedChain {
    let zero = Subspace::zero(obj.modulus(), obj.dim());
    StabilizedChain::compute(zero, |s| obj.alpha.image(s), obj.dim() + 1)
}

/// The chain `alpha^{-l}(0)`.
pub fn backward_kernel_chain(obj: &EndoObject) -> StabilizedChain {
    let inverse = obj.alpha.inverse();
    let zero = Subspace::zero(obj.modulus(), obj.dim());
    StabilizedChain::compute(zero, move |s| inverse.image(s), obj.dim() + 1)
}

/// The chain `alpha^l(A)`.
pub fn forward_image_chain(obj: &EndoObject) -> StabilizedChain {
    let full = Subspace::full(obj.modulus(), obj.dim());
    StabilizedChain::compute(full, |s| obj.alpha.image(s), obj.dim() + 1)
}

/// The chain `alpha^{-l}(A)`.
pub fn backward_image_chain(obj: &EndoObject) -> StabilizedChain {
    let inverse = obj.alpha.inverse();
    let full = Subspace::full(obj.modulus(), obj.dim());
    StabilizedChain::compute(full, move |s| inverse.image(s), obj.dim() + 1)
}

/// Generalized kernel: the sum of the stabilized forward and backward
/// kernel chains.
pub fn gker(obj: &EndoObject) -> Subspace {
    forward_kernel_chain(obj)
        .limit()
        .sum(backward_kernel_chain(obj).limit())
}

/// Generalized image: the intersection of the stabilized forward and
/// backward image chains.
pub fn gim(obj: &EndoObject) -> Subspace {
    forward_image_chain(obj)
        .limit()
        .intersect(backward_image_chain(obj).limit())
}

/// The embedding of GF(p)^{dim S} onto S along its canonical basis; a
/// total matching onto S.
pub fn inclusion_relation(s: &Subspace) -> LinearRelation {
    let p = s.modulus();
    let gens: Vec<Vector> = s
        .basis_rows()
        .enumerate()
        .map(|(i, row)| Vector::standard(p, s.dim(), i).concat(&row))
        .collect();
    LinearRelation::from_generators(p, s.dim(), s.ambient_dim(), &gens)
        .expect("inclusion generators have graph length")
}

/// The surjection GF(p)^ambient -> GF(p)^{ambient - dim K} that kills K
/// and sends the complement basis of K to the standard basis.
pub fn projection_relation(kernel: &Subspace) -> LinearRelation {
    let p = kernel.modulus();
    let ambient = kernel.ambient_dim();
    let target = ambient - kernel.dim();
    let mut gens: Vec<Vector> = kernel
        .basis_rows()
        .map(|row| row.concat(&Vector::zero(p, target)))
        .collect();
    gens.extend(
        kernel
            .complement_basis()
            .into_iter()
            .enumerate()
            .map(|(j, c)| c.concat(&Vector::standard(p, target, j))),
    );
    LinearRelation::from_generators(p, ambient, target, &gens)
        .expect("projection generators have graph length")
}

/// Restriction to the generalized image: conjugation by the inclusion.
pub fn le(obj: &EndoObject) -> EndoObject {
    let inc = inclusion_relation(&gim(obj));
    let beta = inc.inverse().compose(&obj.alpha.compose(&inc));
    EndoObject::new(beta).expect("conjugation yields an endorelation")
}

/// Quotient by the generalized kernel: conjugation by the projection.
pub fn lm(obj: &EndoObject) -> EndoObject {
    let proj = projection_relation(&gker(obj));
    let beta = proj.compose(&obj.alpha.compose(&proj.inverse()));
    EndoObject::new(beta).expect("conjugation yields an endorelation")
}

fn check_morphism(phi: &LinearRelation, src: &EndoObject, dst: &EndoObject) -> Result<()> {
    assert_eq!(phi.dim_dom(), src.dim(), "morphism domain mismatch");
    assert_eq!(phi.dim_cod(), dst.dim(), "morphism codomain mismatch");
    if phi.compose(src.alpha()) != dst.alpha().compose(phi) {
        return Err(Error::NotAMorphism);
    }
    Ok(())
}

/// Image of a morphism under the restriction construction.
pub fn le_morphism(
    phi: &LinearRelation,
    src: &EndoObject,
    dst: &EndoObject,
) -> Result<LinearRelation> {
    check_morphism(phi, src, dst)?;
    let inc_src = inclusion_relation(&gim(src));
    let inc_dst = inclusion_relation(&gim(dst));
    Ok(inc_dst.inverse().compose(&phi.compose(&inc_src)))
}

/// Image of a morphism under the quotient construction.
pub fn lm_morphism(
    phi: &LinearRelation,
    src: &EndoObject,
    dst: &EndoObject,
) -> Result<LinearRelation> {
    check_morphism(phi, src, dst)?;
    let proj_src = projection_relation(&gker(src));
    let proj_dst = projection_relation(&gker(dst));
    Ok(proj_dst.compose(&phi.compose(&proj_src.inverse())))
}

/// The canonical bijective representative: dimension and invertible
/// matrix of the endorelation obtained by quotienting out the
/// generalized kernel and then restricting to the generalized image.
///
/// Equality is similarity, not matrix identity: the carrier basis is an
/// artifact of the construction, the class is not.
#[derive(Clone, Debug)]
pub struct LerayForm {
    dim: usize,
    matrix: Matrix,
    factors: InvariantFactors,
}

impl LerayForm {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn factors(&self) -> &InvariantFactors {
        &self.factors
    }
}

impl PartialEq for LerayForm {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.factors == other.factors
    }
}

impl Eq for LerayForm {}

/// Quotient, then restrict, and extract the resulting bijection.
///
/// Panics if the reduction fails to produce a bijection; on a finite
/// dimensional carrier that always signals an implementation bug.
pub fn leray(obj: &EndoObject) -> LerayForm {
    let reduced = le(&lm(obj));
    let alpha = reduced.alpha();
    assert!(
        alpha.is_matching() && alpha.is_correspondence(),
        "canonical reduction must produce a bijection"
    );
    let matrix = alpha
        .to_matrix()
        .expect("a bijection is single-valued and total");
    assert!(matrix.is_invertible());
    LerayForm {
        dim: reduced.dim(),
        factors: invariant_factors(&matrix),
        matrix,
    }
}

/// Explicit intertwining morphisms between an object and its reduction,
/// with the power shift at which they become mutually inverse.
#[derive(Clone, Debug)]
pub struct SzymWitness {
    pub reduced: EndoObject,
    pub phi: LinearRelation,
    pub psi: LinearRelation,
    pub shift: usize,
}

impl SzymWitness {
    /// The four intertwining identities, checked as exact relation
    /// equalities: phi and psi commute with the endomorphisms, and their
    /// two composites equal the 2k-th powers.
    pub fn equations(&self, obj: &EndoObject) -> [bool; 4] {
        let alpha = obj.alpha();
        let beta = self.reduced.alpha();
        let two_k = 2 * self.shift as i64;
        [
            beta.compose(&self.phi) == self.phi.compose(alpha),
            self.psi.compose(beta) == alpha.compose(&self.psi),
            self.psi.compose(&self.phi) == alpha.power(two_k),
            beta.power(two_k) == self.phi.compose(&self.psi),
        ]
    }

    pub fn all_hold(&self, obj: &EndoObject) -> bool {
        self.equations(obj).iter().all(|&b| b)
    }
}

/// Witness for the restriction: k is the larger stabilization index of
/// the two image chains, phi = inc^{-1} after alpha^k, psi = alpha^k
/// after inc.
pub fn szym_witness_le(obj: &EndoObject) -> SzymWitness {
    let fwd = forward_image_chain(obj);
    let bwd = backward_image_chain(obj);
    let shift = fwd.stabilization_index().max(bwd.stabilization_index());
    let inc = inclusion_relation(&fwd.limit().intersect(bwd.limit()));
    let alpha_k = obj.alpha().power(shift as i64);
    let reduced = EndoObject::new(inc.inverse().compose(&obj.alpha.compose(&inc)))
        .expect("conjugation yields an endorelation");
    SzymWitness {
        phi: inc.inverse().compose(&alpha_k),
        psi: alpha_k.compose(&inc),
        reduced,
        shift,
    }
}

/// Witness for the quotient: k is the larger stabilization index of the
/// two kernel chains, phi = proj after alpha^k, psi = alpha^k after
/// proj^{-1}.
pub fn szym_witness_lm(obj: &EndoObject) -> SzymWitness {
    let fwd = forward_kernel_chain(obj);
    let bwd = backward_kernel_chain(obj);
    let shift = fwd.stabilization_index().max(bwd.stabilization_index());
    let proj = projection_relation(&fwd.limit().sum(bwd.limit()));
    let alpha_k = obj.alpha().power(shift as i64);
    let reduced = EndoObject::new(proj.compose(&obj.alpha.compose(&proj.inverse())))
        .expect("conjugation yields an endorelation");
    SzymWitness {
        phi: proj.compose(&alpha_k),
        psi: alpha_k.compose(&proj.inverse()),
        reduced,
        shift,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::enumerate_relations;

    fn gf(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn scalar_obj(p: u64, lambda: u64) -> EndoObject {
        EndoObject::from_matrix(&Matrix::from_int_rows(gf(p), 1, &[vec![lambda]]).unwrap()).unwrap()
    }

    fn top_obj(p: u64, n: usize) -> EndoObject {
        EndoObject::new(LinearRelation::top(gf(p), n, n)).unwrap()
    }

    fn all_endos(p: u64, n: usize) -> Vec<EndoObject> {
        enumerate_relations(gf(p), n)
            .unwrap()
            .map(|r| EndoObject::new(r).unwrap())
            .collect()
    }

    #[test]
    fn endo_object_validation() {
        let rect = LinearRelation::bottom(gf(3), 1, 2);
        assert!(matches!(
            EndoObject::new(rect),
            Err(Error::NotEndo { dom: 1, cod: 2 })
        ));
        let zero = EndoObject::zero_object(gf(3));
        assert_eq!(zero.dim(), 0);
        assert!(zero.alpha().is_isomorphism());
    }

    #[test]
    fn gker_examples() {
        assert!(gker(&scalar_obj(3, 2)).is_zero());
        assert!(gker(&scalar_obj(3, 0)).is_full());
        assert!(gker(&top_obj(3, 1)).is_full());
    }

    #[test]
    fn gim_examples() {
        assert!(gim(&scalar_obj(3, 2)).is_full());
        assert!(gim(&scalar_obj(3, 0)).is_zero());
        assert!(gim(&top_obj(3, 1)).is_full());
    }

    #[test]
    fn chains_are_monotone_and_stabilize_fast() {
        for obj in all_endos(2, 2) {
            let fwd_k = forward_kernel_chain(&obj);
            let bwd_k = backward_kernel_chain(&obj);
            let fwd_i = forward_image_chain(&obj);
            let bwd_i = backward_image_chain(&obj);
            for chain in [&fwd_k, &bwd_k] {
                assert!(chain.stabilization_index() <= obj.dim() + 1);
                for w in chain.terms().windows(2) {
                    assert!(w[1].contains_subspace(&w[0]), "kernel chains increase");
                }
            }
            for chain in [&fwd_i, &bwd_i] {
                assert!(chain.stabilization_index() <= obj.dim() + 1);
                for w in chain.terms().windows(2) {
                    assert!(w[0].contains_subspace(&w[1]), "image chains decrease");
                }
            }
            // The limit matches the relation power at the index.
            let k = fwd_k.stabilization_index() as i64;
            assert_eq!(
                obj.alpha().power(k).indeterminacy(),
                *fwd_k.limit(),
                "forward kernel limit is alpha^k(0)"
            );
        }
    }

    #[test]
    fn inclusion_examples() {
        let p = gf(2);
        let full = Subspace::full(p, 2);
        assert_eq!(inclusion_relation(&full), LinearRelation::identity(p, 2));

        let zero = Subspace::zero(p, 2);
        let inc0 = inclusion_relation(&zero);
        assert_eq!((inc0.dim_dom(), inc0.dim_cod()), (0, 2));
        assert!(inc0.is_single_valued() && inc0.is_total());

        let line = Subspace::span(p, 2, &[Vector::from_ints(p, &[1, 1])]).unwrap();
        let inc = inclusion_relation(&line);
        assert_eq!(inc.graph().basis().to_int_rows(), vec![vec![1, 1, 1]]);
        assert!(inc.is_matching() && inc.is_total());
        assert_eq!(inc.range(), line);
    }

    #[test]
    fn projection_examples() {
        let p = gf(2);
        assert_eq!(
            projection_relation(&Subspace::zero(p, 2)),
            LinearRelation::identity(p, 2)
        );

        let to_zero = projection_relation(&Subspace::full(p, 2));
        assert_eq!((to_zero.dim_dom(), to_zero.dim_cod()), (2, 0));
        assert!(to_zero.is_single_valued() && to_zero.is_total() && to_zero.is_surjective());

        let line = Subspace::span(p, 2, &[Vector::from_ints(p, &[1, 1])]).unwrap();
        let proj = projection_relation(&line);
        assert!(proj.is_single_valued() && proj.is_total() && proj.is_surjective());
        assert_eq!(proj.kernel(), line);
        // The complement vector (0,1) goes to the standard basis of GF(2)^1.
        assert_eq!(
            proj.apply(&Vector::from_ints(p, &[0, 1])).unwrap(),
            Vector::from_ints(p, &[1])
        );
    }

    #[test]
    fn le_examples() {
        let double = scalar_obj(3, 2);
        assert_eq!(le(&double), double);

        let reduced = le(&scalar_obj(3, 0));
        assert_eq!(reduced.dim(), 0);

        let top = top_obj(3, 1);
        assert_eq!(le(&top), top);
    }

    #[test]
    fn lm_examples() {
        let double = scalar_obj(3, 2);
        assert_eq!(lm(&double), double);

        assert_eq!(lm(&top_obj(3, 1)).dim(), 0);

        let nilpotent = EndoObject::from_matrix(
            &Matrix::from_int_rows(gf(2), 2, &[vec![0, 1], vec![0, 0]]).unwrap(),
        )
        .unwrap();
        let reduced = lm(&nilpotent);
        assert_eq!(reduced.dim(), 0);
    }

    #[test]
    fn leray_examples() {
        for p in [2u64, 3, 5] {
            for lambda in 1..p {
                let form = leray(&scalar_obj(p, lambda));
                assert_eq!(form.dim(), 1);
                assert_eq!(form.matrix().to_int_rows(), vec![vec![lambda]]);
            }
            let degenerate = leray(&top_obj(p, 1));
            assert_eq!(degenerate.dim(), 0);
            assert!(degenerate.factors().is_empty());
        }
        // A bijection is its own canonical form.
        let m = Matrix::from_int_rows(gf(2), 2, &[vec![1, 1], vec![0, 1]]).unwrap();
        let form = leray(&EndoObject::from_matrix(&m).unwrap());
        assert_eq!(form.dim(), 2);
        assert_eq!(form.matrix(), &m);
    }

    #[test]
    fn gker_is_invariant_and_gim_grows_exhaustively() {
        // Both inclusions hold for every endorelation on GF(2)^2, the
        // image/preimage ones for gker and the reverse pair for gim even
        // when alpha is not a matching.
        for obj in all_endos(2, 2) {
            let k = gker(&obj);
            assert!(k.contains_subspace(&obj.alpha().image(&k)));
            assert!(k.contains_subspace(&obj.alpha().preimage(&k)));
            let g = gim(&obj);
            assert!(obj.alpha().image(&g).contains_subspace(&g));
            assert!(obj.alpha().preimage(&g).contains_subspace(&g));
        }
    }

    #[test]
    fn normality_sweep_gf2_dim2() {
        for obj in all_endos(2, 2) {
            let form = leray(&obj);
            assert!(form.matrix().is_invertible());
        }
    }

    #[test]
    fn normality_random_gf3_dim3() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        let p = gf(3);
        for _ in 0..100 {
            let gens: Vec<Vector> = (0..rng.gen_range(0..=6usize))
                .map(|_| {
                    let entries: Vec<u64> = (0..6).map(|_| rng.gen_range(0..3u64)).collect();
                    Vector::from_ints(p, &entries)
                })
                .collect();
            let rel = LinearRelation::from_generators(p, 3, 3, &gens).unwrap();
            let obj = EndoObject::new(rel).unwrap();
            let form = leray(&obj);
            assert!(form.matrix().is_invertible());
        }
    }

    #[test]
    fn witness_equations_hold_exhaustively_gf2_dim2() {
        for obj in all_endos(2, 2) {
            let wle = szym_witness_le(&obj);
            assert_eq!(
                wle.equations(&obj),
                [true; 4],
                "restriction witness for {obj:?}"
            );
            let wlm = szym_witness_lm(&obj);
            assert_eq!(
                wlm.equations(&obj),
                [true; 4],
                "quotient witness for {obj:?}"
            );
        }
    }

    #[test]
    fn zero_object_is_its_own_reduction() {
        let zero = EndoObject::zero_object(gf(3));
        assert_eq!(le(&zero), zero);
        assert_eq!(lm(&zero), zero);
        let form = leray(&zero);
        assert_eq!(form.dim(), 0);
        for witness in [szym_witness_le(&zero), szym_witness_lm(&zero)] {
            assert_eq!(witness.shift, 0);
            assert!(witness.all_hold(&zero));
        }
    }

    #[test]
    fn witness_shift_is_zero_for_bijections() {
        let obj = scalar_obj(3, 2);
        let w = szym_witness_le(&obj);
        assert_eq!(w.shift, 0);
        assert_eq!(w.phi, LinearRelation::identity(gf(3), 1));
        assert_eq!(w.psi, LinearRelation::identity(gf(3), 1));
    }

    #[test]
    fn both_reduction_orders_agree_up_to_similarity() {
        for obj in all_endos(2, 2) {
            let le_lm = le(&lm(&obj));
            let lm_le = lm(&le(&obj));
            assert!(le_lm.alpha().is_isomorphism());
            assert!(lm_le.alpha().is_isomorphism());
            let a = le_lm.alpha().to_matrix().unwrap();
            let b = lm_le.alpha().to_matrix().unwrap();
            assert_eq!(a.nrows(), b.nrows());
            assert!(crate::canon::similar(&a, &b));
        }
    }

    #[test]
    fn functoriality_on_enumerated_morphisms() {
        // Identities map to identities, composition is preserved.
        let p = gf(2);
        let objs = all_endos(2, 1);
        for obj in objs.iter().chain(&all_endos(2, 2)) {
            let id = LinearRelation::identity(p, obj.dim());
            let le_id = le_morphism(&id, obj, obj).unwrap();
            assert_eq!(le_id, LinearRelation::identity(p, le(obj).dim()));
            let lm_id = lm_morphism(&id, obj, obj).unwrap();
            assert_eq!(lm_id, LinearRelation::identity(p, lm(obj).dim()));
        }
        // All composable morphism pairs between endorelations on small
        // carriers over GF(2).
        let mut checked = 0usize;
        for a in &objs {
            for b in &objs {
                for c in &objs {
                    let phis: Vec<LinearRelation> =
                        crate::subspace::enumerate_subspaces(p, a.dim() + b.dim())
                            .unwrap()
                            .map(|g| LinearRelation::from_graph(a.dim(), b.dim(), g))
                            .filter(|f| f.compose(a.alpha()) == b.alpha().compose(f))
                            .collect();
                    let psis: Vec<LinearRelation> =
                        crate::subspace::enumerate_subspaces(p, b.dim() + c.dim())
                            .unwrap()
                            .map(|g| LinearRelation::from_graph(b.dim(), c.dim(), g))
                            .filter(|f| f.compose(b.alpha()) == c.alpha().compose(f))
                            .collect();
                    for phi in &phis {
                        // The reduced morphism commutes with the reduced
                        // endomorphisms.
                        let le_phi = le_morphism(phi, a, b).unwrap();
                        assert_eq!(
                            le_phi.compose(le(a).alpha()),
                            le(b).alpha().compose(&le_phi)
                        );
                        let lm_phi = lm_morphism(phi, a, b).unwrap();
                        assert_eq!(
                            lm_phi.compose(lm(a).alpha()),
                            lm(b).alpha().compose(&lm_phi)
                        );
                        for psi in &psis {
                            let composed = psi.compose(phi);
                            assert_eq!(
                                le_morphism(&composed, a, c).unwrap(),
                                le_morphism(psi, b, c).unwrap().compose(&le_phi)
                            );
                            assert_eq!(
                                lm_morphism(&composed, a, c).unwrap(),
                                lm_morphism(psi, b, c).unwrap().compose(&lm_phi)
                            );
                            checked += 1;
                        }
                    }
                }
            }
        }
        assert!(checked > 100, "expected plenty of composable pairs");
    }

    #[test]
    fn functoriality_on_random_dim2_morphism_pairs() {
        // Composable morphism pairs through mixed carriers of dimension
        // up to 2 over GF(2), sampled from random object triples.
        use rand::{Rng, SeedableRng};
        let p = gf(2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        let pool: Vec<EndoObject> = all_endos(2, 1).into_iter().chain(all_endos(2, 2)).collect();
        let morphisms = |src: &EndoObject, dst: &EndoObject| -> Vec<LinearRelation> {
            crate::subspace::enumerate_subspaces(p, src.dim() + dst.dim())
                .unwrap()
                .map(|g| LinearRelation::from_graph(src.dim(), dst.dim(), g))
                .filter(|f| f.compose(src.alpha()) == dst.alpha().compose(f))
                .collect()
        };
        let mut checked = 0usize;
        while checked < 200 {
            let a = &pool[rng.gen_range(0..pool.len())];
            let b = &pool[rng.gen_range(0..pool.len())];
            let c = &pool[rng.gen_range(0..pool.len())];
            let phis = morphisms(a, b);
            let psis = morphisms(b, c);
            if phis.is_empty() || psis.is_empty() {
                continue;
            }
            let phi = &phis[rng.gen_range(0..phis.len())];
            let psi = &psis[rng.gen_range(0..psis.len())];
            let composed = psi.compose(phi);
            assert_eq!(
                le_morphism(&composed, a, c).unwrap(),
                le_morphism(psi, b, c)
                    .unwrap()
                    .compose(&le_morphism(phi, a, b).unwrap())
            );
            assert_eq!(
                lm_morphism(&composed, a, c).unwrap(),
                lm_morphism(psi, b, c)
                    .unwrap()
                    .compose(&lm_morphism(phi, a, b).unwrap())
            );
            checked += 1;
        }
    }

    #[test]
    fn non_morphisms_are_rejected() {
        let p = gf(3);
        let double = scalar_obj(3, 2);
        let zero = scalar_obj(3, 0);
        let id = LinearRelation::identity(p, 1);
        assert!(matches!(
            le_morphism(&id, &double, &zero),
            Err(Error::NotAMorphism)
        ));
    }
}
