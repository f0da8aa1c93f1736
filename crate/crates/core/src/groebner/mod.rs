//! Groebner bases, elimination and extension analysis.
//!
//! [`buchberger`] computes reduced bases; [`eliminate`] slices a basis to
//! the elimination ideal for a suffix of the variable chain;
//! [`extension_report`] collects the leading coefficients that decide
//! whether a partial solution lifts. [`sylvester_resultant`] gives an
//! independent elimination route used to cross-check eliminants.

mod buchberger;
mod extension;
mod factor;
mod resultant;

pub use buchberger::{
    buchberger, certify, is_groebner, Certificate, Certifier, is_reduced, s_pair_failures, s_polynomial, BuchbergerConfig,
    GroebnerResult, PairStats, Selection, DEFAULT_PAIR_BUDGET,
};
pub use extension::{check_extends, extension_report, ExtensionReport, LeadingCoeff, ObstructionLocus};
pub use factor::{rational_roots, trial_factor, TrialFactorization};
pub use resultant::{bareiss_determinant, sylvester_matrix, sylvester_resultant};

use crate::error::{Error, Result};
use crate::ring::{MultiPoly, VarSet};

/// Finite generating set of an ideal in a fixed ring.
#[derive(Clone, Debug)]
pub struct IdealBasis {
    ring: VarSet,
    generators: Vec<MultiPoly>,
}

impl IdealBasis {
    pub fn new(generators: Vec<MultiPoly>) -> Result<Self> {
        let first = generators
            .first()
            .ok_or_else(|| Error::InvalidArgument("an ideal basis needs a generator".into()))?;
        let ring = first.ring().clone();
        for (i, g) in generators.iter().enumerate() {
            if g.ring() != &ring {
                return Err(Error::RingMismatch {
                    left: ring.to_string(),
                    right: g.ring().to_string(),
                });
            }
            if g.is_zero() {
                return Err(Error::ZeroDivisor(i));
            }
        }
        Ok(IdealBasis { ring, generators })
    }

    pub fn ring(&self) -> &VarSet {
        &self.ring
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    /// Same generators over a ring with the variables in another order.
    pub fn reordered(&self, target: &VarSet) -> Result<IdealBasis> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.to_ring(target))
            .collect::<Result<Vec<_>>>()?;
        IdealBasis::new(gens)
    }
}

/// Basis elements of `g` involving only `keep`, which must be the tail of
/// the ring's variable chain (in any listing order). This is a Groebner
/// basis of the corresponding elimination ideal when the order eliminates
/// the dropped prefix.
pub fn eliminate(g: &GroebnerResult, keep: &[&str]) -> Result<Vec<MultiPoly>> {
    let ring = &g.ring;
    let mut idx = Vec::with_capacity(keep.len());
    for name in keep {
        idx.push(ring.index_of(name)?);
    }
    idx.sort_unstable();
    idx.dedup();
    let k = ring.len() - idx.len();
    let is_suffix = idx.iter().enumerate().all(|(t, &i)| i == k + t);
    if !is_suffix || !g.order.eliminates_prefix(k) {
        return Err(Error::NotEliminationOrder {
            order: format!("{} over [{}]", g.order, ring),
            keep: keep.iter().map(|s| s.to_string()).collect(),
        });
    }
    Ok(g
        .basis
        .iter()
        .filter(|p| p.variables_used().iter().all(|&i| i >= k))
        .cloned()
        .collect())
}

/// True when each generator reduces to zero modulo `basis`.
pub fn generators_in_ideal(gens: &[MultiPoly], basis: &[MultiPoly], ord: &crate::ring::MonomialOrder) -> Result<bool> {
    let cert = Certifier::new(basis, ord)?;
    Ok(gens.iter().all(|f| cert.reduces_to_zero(f)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::MonomialOrder;

    fn ring() -> VarSet {
        VarSet::new(["x", "y", "z"]).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &ring()).unwrap()
    }

    #[test]
    fn elimination_slices() {
        let i = IdealBasis::new(vec![p("x^2 + y + z - 1"), p("x + y^2 + z - 1"), p("x + y + z^2 - 1")]).unwrap();
        let g = buchberger(&i, &MonomialOrder::Lex, &Default::default()).unwrap();
        assert!(is_groebner(&g.basis, &MonomialOrder::Lex).unwrap());
        let all = eliminate(&g, &["x", "y", "z"]).unwrap();
        assert_eq!(all, g.basis);
        let z_only = eliminate(&g, &["z"]).unwrap();
        assert_eq!(z_only.len(), 1);
        // known eliminant: z^6 - 4z^4 + 4z^3 - z^2 = z^2 (z - 1)^2 (z^2 + 2z - 1)
        assert_eq!(z_only[0], p("z^6 - 4*z^4 + 4*z^3 - z^2"));
        for e in eliminate(&g, &["y", "z"]).unwrap() {
            assert!(!e.contains_var(0));
        }
    }

    #[test]
    fn elimination_requires_suffix_and_elimination_order() {
        let i = IdealBasis::new(vec![p("x - y"), p("y - z^2")]).unwrap();
        let g = buchberger(&i, &MonomialOrder::Lex, &Default::default()).unwrap();
        assert!(matches!(eliminate(&g, &["x"]), Err(Error::NotEliminationOrder { .. })));
        let h = buchberger(&i, &MonomialOrder::Grevlex, &Default::default()).unwrap();
        assert!(matches!(eliminate(&h, &["z"]), Err(Error::NotEliminationOrder { .. })));
        assert!(eliminate(&g, &["w"]).is_err());
    }

    #[test]
    fn ideal_basis_rejects_zero_and_empty() {
        assert!(IdealBasis::new(vec![]).is_err());
        assert!(IdealBasis::new(vec![p("x"), MultiPoly::zero(&ring())]).is_err());
    }
}
