use num_traits::Zero;

use super::{MonomialOrder, MultiPoly};
use crate::error::{Error, Result};

/// Quotients and remainder of the multivariate division algorithm.
#[derive(Clone, Debug)]
pub struct Division {
    pub quotients: Vec<MultiPoly>,
    pub remainder: MultiPoly,
}

/// Divides `f` by the ordered list `divisors` under `ord`.
///
/// Returns `f = Σ qᵢ·dᵢ + r` where no term of `r` is divisible by any
/// `LT(dᵢ)`. The first divisor whose leading term divides the current
/// leading term is used, so the result depends on the divisor order.
pub fn divide_multi(f: &MultiPoly, divisors: &[MultiPoly], ord: &MonomialOrder) -> Result<Division> {
    let ring = f.ring();
    let mut leads = Vec::with_capacity(divisors.len());
    for (i, d) in divisors.iter().enumerate() {
        if d.ring() != ring {
            return Err(Error::RingMismatch {
                left: ring.to_string(),
                right: d.ring().to_string(),
            });
        }
        if d.is_zero() {
            return Err(Error::ZeroDivisor(i));
        }
        leads.push(d.leading_term(ord)?);
    }
    let mut quotients = vec![MultiPoly::zero(ring); divisors.len()];
    let mut remainder = MultiPoly::zero(ring);
    let mut p = f.clone();
    while !p.is_zero() {
        let (lm, lc) = p.leading_term(ord)?;
        let hit = leads
            .iter()
            .enumerate()
            .find_map(|(i, (dm, dc))| lm.div(dm).map(|q| (i, q, &lc / dc)));
        match hit {
            Some((i, m, c)) => {
                quotients[i].add_term(m.clone(), c.clone());
                p = &p - &divisors[i].mul_term(&m, &c);
            }
            None => {
                remainder.add_term(lm.clone(), lc.clone());
                p.add_term(lm, -lc);
            }
        }
    }
    Ok(Division {
        quotients,
        remainder,
    })
}

/// Remainder of `f` modulo `divisors`.
pub fn reduce(f: &MultiPoly, divisors: &[MultiPoly], ord: &MonomialOrder) -> Result<MultiPoly> {
    divide_multi(f, divisors, ord).map(|d| d.remainder)
}

impl MultiPoly {
    /// `self / d` when `d` divides `self` exactly in `Q[x]`.
    pub fn exact_div(&self, d: &MultiPoly) -> Result<MultiPoly> {
        if d.is_zero() {
            return Err(Error::ZeroDivisor(0));
        }
        let div = divide_multi(self, std::slice::from_ref(d), &MonomialOrder::Lex)?;
        if div.remainder.is_zero() {
            Ok(div.quotients.into_iter().next().unwrap())
        } else {
            Err(Error::InexactDivision)
        }
    }

    pub fn divides(&self, other: &MultiPoly) -> bool {
        !self.is_zero() && other.exact_div(self).is_ok()
    }
}

/// Checks the remainder condition of [`divide_multi`]: no term of `r` is
/// divisible by a leading monomial of the divisors.
pub fn is_fully_reduced(r: &MultiPoly, divisors: &[MultiPoly], ord: &MonomialOrder) -> bool {
    let leads: Vec<_> = divisors
        .iter()
        .filter_map(|d| d.leading_monomial(ord).ok())
        .collect();
    r.terms()
        .all(|(m, c)| c.is_zero() || leads.iter().all(|l| !l.divides(m)))
}
