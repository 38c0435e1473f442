//! Shift-equivalence decision for endorelations.
//!
//! The fast decider labels each object by the dimension and invariant
//! factors of its canonical bijective form; two objects are equivalent
//! exactly when the labels coincide. The brute-force oracle instead
//! searches for explicit intertwining relations whose composites are
//! powers of the endomorphisms, bounding the power search by the
//! eventual periodicity of the power sequence.

use crate::canon::InvariantFactors;
use crate::field::Prime;
use crate::leray::{leray, EndoObject};
use crate::relation::LinearRelation;
use crate::subspace::{enumerate_subspaces, Subspace};
use crate::{Error, Result};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Complete equivalence-class invariant: field, dimension of the
/// canonical bijective form, and its invariant factors. The degenerate
/// class (everything collapsing to the zero object) has dimension 0 and
/// no factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SzymClassLabel {
    p: Prime,
    dim: usize,
    factors: InvariantFactors,
}

impl SzymClassLabel {
    pub fn modulus(&self) -> Prime {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> &InvariantFactors {
        &self.factors
    }
}

#[derive(Serialize, Deserialize)]
struct LabelDoc {
    p: u64,
    dim: usize,
    invariant_factors: Vec<Vec<u64>>,
}

impl Serialize for SzymClassLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        LabelDoc {
            p: u64::from(self.p.value()),
            dim: self.dim,
            invariant_factors: self.factors.to_coeff_lists(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SzymClassLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let doc = LabelDoc::deserialize(deserializer)?;
        let p = Prime::new(doc.p).map_err(D::Error::custom)?;
        Ok(SzymClassLabel {
            p,
            dim: doc.dim,
            factors: InvariantFactors::from_coeff_lists(p, &doc.invariant_factors),
        })
    }
}

/// Label of an object: canonical form, then invariant factors.
pub fn szym_label(obj: &EndoObject) -> SzymClassLabel {
    let form = leray(obj);
    SzymClassLabel {
        p: obj.modulus(),
        dim: form.dim(),
        factors: form.factors().clone(),
    }
}

/// Decides shift equivalence by label comparison.
pub fn szym_equiv(a: &EndoObject, b: &EndoObject) -> Result<bool> {
    if a.modulus() != b.modulus() {
        return Err(Error::FieldMismatch(
            a.modulus().value(),
            b.modulus().value(),
        ));
    }
    Ok(szym_label(a) == szym_label(b))
}

/// A morphism `[phi, n]` of the localized category: an intertwining
/// relation together with a nonnegative power shift. Between fixed
/// endpoints, `[phi, n]` and `[psi, m]` name the same arrow when
/// `phi ∘ alpha^{m+k} = psi ∘ alpha^{n+k}` for some k.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SzymMorphism {
    phi: LinearRelation,
    shift: usize,
}

impl SzymMorphism {
    /// Validates the intertwining condition for the declared endpoints.
    pub fn new(
        phi: LinearRelation,
        shift: usize,
        src: &EndoObject,
        dst: &EndoObject,
    ) -> Result<Self> {
        assert_eq!(phi.dim_dom(), src.dim(), "morphism domain mismatch");
        assert_eq!(phi.dim_cod(), dst.dim(), "morphism codomain mismatch");
        if phi.compose(src.alpha()) != dst.alpha().compose(&phi) {
            return Err(Error::NotAMorphism);
        }
        Ok(Self { phi, shift })
    }

    pub fn identity(obj: &EndoObject) -> Self {
        Self {
            phi: LinearRelation::identity(obj.modulus(), obj.dim()),
            shift: 0,
        }
    }

    pub fn phi(&self) -> &LinearRelation {
        &self.phi
    }

    pub fn shift(&self) -> usize {
        self.shift
    }

    /// `[psi, m] ∘ [phi, n] = [psi ∘ phi, m + n]`.
    pub fn compose(&self, rhs: &SzymMorphism) -> SzymMorphism {
        SzymMorphism {
            phi: self.phi.compose(&rhs.phi),
            shift: self.shift + rhs.shift,
        }
    }

    /// Whether two representatives name the same arrow out of `src`.
    ///
    /// The witness exponent search stops at the power-profile horizon:
    /// powers repeat beyond it, so an equality holding at any larger k
    /// already holds at some k within the bound.
    pub fn equivalent(&self, other: &SzymMorphism, src: &EndoObject) -> bool {
        let alpha = src.alpha();
        let bound = power_profile(alpha).horizon();
        (0..=bound).any(|k| {
            self.phi.compose(&alpha.power((other.shift + k) as i64))
                == other.phi.compose(&alpha.power((self.shift + k) as i64))
        })
    }
}

/// Minimal preperiod and period of the power sequence of an
/// endorelation: `power(alpha, preperiod) == power(alpha, preperiod +
/// period)` and no earlier repetition exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PowerProfile {
    pub preperiod: usize,
    pub period: usize,
}

impl PowerProfile {
    /// First power index from which equality of powers is periodic.
    pub fn horizon(&self) -> usize {
        self.preperiod + self.period
    }
}

pub fn power_profile(alpha: &LinearRelation) -> PowerProfile {
    assert!(alpha.is_endo(), "power profile requires an endorelation");
    let mut seen: Vec<LinearRelation> = Vec::new();
    let mut current = LinearRelation::identity(alpha.modulus(), alpha.dim_dom());
    loop {
        if let Some(first) = seen.iter().position(|r| r == &current) {
            return PowerProfile {
                preperiod: first,
                period: seen.len() - first,
            };
        }
        seen.push(current.clone());
        current = alpha.compose(&current);
    }
}

const ORACLE_GUARD_BITS: f64 = 24.0;

fn oracle_guard(p: Prime, ambient: usize) -> Result<()> {
    let bits = (ambient * ambient) as f64 * f64::from(p.value()).log2();
    if bits > ORACLE_GUARD_BITS {
        return Err(Error::GuardExceeded(format!(
            "oracle search requires p^(ambient^2) <= 2^24, got {p}^({ambient}^2)"
        )));
    }
    Ok(())
}

/// All relations A -> B satisfying `phi after alpha == beta after phi`.
fn intertwiners(a: &EndoObject, b: &EndoObject) -> Result<Vec<LinearRelation>> {
    let p = a.modulus();
    Ok(enumerate_subspaces(p, a.dim() + b.dim())?
        .map(|g: Subspace| LinearRelation::from_graph(a.dim(), b.dim(), g))
        .filter(|phi| phi.compose(a.alpha()) == b.alpha().compose(phi))
        .collect())
}

/// Brute-force shift-equivalence decision: searches for intertwining
/// relations phi: A -> B and psi: B -> A and exponents t, k with
/// `psi after phi after alpha^k == alpha^(t+k)` and symmetrically for
/// beta. Exponents range over the power-profile horizon of both
/// endomorphisms; once powers repeat, larger exponents add nothing new.
pub fn oracle_szym_equiv(a: &EndoObject, b: &EndoObject) -> Result<bool> {
    if a.modulus() != b.modulus() {
        return Err(Error::FieldMismatch(
            a.modulus().value(),
            b.modulus().value(),
        ));
    }
    oracle_guard(a.modulus(), a.dim() + b.dim())?;

    let bound = power_profile(a.alpha())
        .horizon()
        .max(power_profile(b.alpha()).horizon());

    // alpha_powers[i] = alpha^i for i = 0 ..= 2 * bound.
    let powers = |alpha: &LinearRelation| -> Vec<LinearRelation> {
        let mut out = vec![LinearRelation::identity(alpha.modulus(), alpha.dim_dom())];
        for _ in 0..2 * bound {
            out.push(alpha.compose(out.last().expect("nonempty")));
        }
        out
    };
    let alpha_powers = powers(a.alpha());
    let beta_powers = powers(b.alpha());

    let phis = intertwiners(a, b)?;
    let psis = intertwiners(b, a)?;

    for phi in &phis {
        for psi in &psis {
            let round_trip_a = psi.compose(phi);
            let round_trip_b = phi.compose(psi);
            for t in 0..=bound {
                for k in 0..=bound {
                    if round_trip_a.compose(&alpha_powers[k]) == alpha_powers[t + k]
                        && round_trip_b.compose(&beta_powers[k]) == beta_powers[t + k]
                    {
                        return Ok(true);
                    }
                }
            }
        }
    }
    Ok(false)
}
