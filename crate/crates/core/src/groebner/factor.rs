use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ring::{MultiPoly, Scalar};

/// Result of dividing out supplied candidate factors.
#[derive(Clone, Debug)]
pub struct TrialFactorization {
    pub cofactor: MultiPoly,
    pub multiplicities: Vec<u32>,
}

/// Divides `f` by each candidate as often as the division stays exact.
pub fn trial_factor(f: &MultiPoly, candidates: &[MultiPoly]) -> TrialFactorization {
    let mut cofactor = f.clone();
    let mut multiplicities = Vec::with_capacity(candidates.len());
    for c in candidates {
        let mut k = 0;
        if !c.is_zero() && !c.is_constant() && !cofactor.is_zero() {
            while let Ok(q) = cofactor.exact_div(c) {
                cofactor = q;
                k += 1;
            }
        }
        multiplicities.push(k);
    }
    TrialFactorization {
        cofactor,
        multiplicities,
    }
}

/// Rational roots with multiplicity of the univariate polynomial with
/// coefficients `coeffs` (low to high degree), sorted increasingly.
///
/// Uses the rational root theorem; candidates are enumerated only when the
/// extreme coefficients fit in 64 bits.
pub fn rational_roots(coeffs: &[Scalar]) -> Vec<(Scalar, usize)> {
    let mut c: Vec<Scalar> = coeffs.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    if c.len() <= 1 {
        return Vec::new();
    }
    // clear denominators
    let den = c.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = c.iter().map(|q| (q * Scalar::from_integer(den.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    let zero_mult = ints.iter().take_while(|x| x.is_zero()).count();
    if zero_mult > 0 {
        roots.push((Scalar::zero(), zero_mult));
        ints.drain(..zero_mult);
    }
    let (Some(a0), Some(an)) = (ints.first().and_then(|x| x.abs().to_u64()), ints.last().and_then(|x| x.abs().to_u64())) else {
        return roots;
    };
    let mut cands = Vec::new();
    for p in divisors(a0) {
        for q in divisors(an) {
            if p.gcd(&q) == 1 {
                let r = Scalar::new(BigInt::from(p), BigInt::from(q));
                cands.push(r.clone());
                cands.push(-r);
            }
        }
    }
    cands.sort();
    for r in cands {
        let mut m = 0;
        while ints.len() > 1 {
            match synthetic_div(&ints, &r) {
                Some(q) => {
                    ints = q;
                    m += 1;
                }
                None => break,
            }
        }
        if m > 0 {
            roots.push((r, m));
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    roots
}

fn divisors(n: u64) -> Vec<u64> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out
}

/// Quotient of integer polynomial `p` (low to high) by `(x - r)` when exact,
/// scaled back to integers.
fn synthetic_div(p: &[BigInt], r: &Scalar) -> Option<Vec<BigInt>> {
    let n = p.len() - 1;
    let mut q = vec![Scalar::zero(); n];
    let mut acc = Scalar::from_integer(p[n].clone());
    for k in (0..n).rev() {
        q[k] = acc.clone();
        acc = &acc * r + Scalar::from_integer(p[k].clone());
    }
    if !acc.is_zero() {
        return None;
    }
    let den = q.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()));
    Some(q.iter().map(|x| (x * Scalar::from_integer(den.clone())).to_integer()).collect())
}
