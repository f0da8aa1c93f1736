use num_complex::Complex64;
use serde::Serialize;

use super::factor::rational_roots;
use super::IdealBasis;
use crate::error::{Error, Result};
use crate::ring::{MonomialOrder, MultiPoly, Scalar};

/// Generator `i` written as `g·x^N + (terms of lower degree in x)`.
#[derive(Clone, Debug)]
pub struct LeadingCoeff {
    pub generator: usize,
    pub coeff: MultiPoly,
    pub degree: u32,
}

/// Common zero set `V(g_1, ..., g_s)` of the leading coefficients.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionLocus {
    /// Primitive gcd `h` of the leading coefficients; `V(h) ⊇ V(g_1..g_s)`.
    pub gcd: String,
    /// `V(g_1..g_s) = V(h)` exactly (some cofactor `g_i / h` is a nonzero constant).
    pub exact: bool,
    /// When `h` is univariate and splits over `Q`: its variable and roots.
    pub split: Option<(String, Vec<String>)>,
    /// The locus is empty (`h` is a nonzero constant and `exact`).
    pub empty: bool,
}

/// Leading coefficients of each generator in the eliminated variable.
#[derive(Clone, Debug)]
pub struct ExtensionReport {
    pub eliminated_var: String,
    /// Remaining variables in ring order; the coordinate order of partial points.
    pub remaining_vars: Vec<String>,
    pub leading_coeffs: Vec<LeadingCoeff>,
}

impl ExtensionReport {
    /// Polynomials whose common zeros are the non-extendable locus.
    pub fn obstruction_polys(&self) -> Vec<MultiPoly> {
        self.leading_coeffs.iter().map(|l| l.coeff.clone()).collect()
    }

    pub fn obstruction_locus(&self) -> ObstructionLocus {
        let ord = MonomialOrder::Lex;
        let gs = self.obstruction_polys();
        let ring = gs[0].ring().clone();
        let mut h = MultiPoly::zero(&ring);
        for g in &gs {
            h = h.gcd(g);
        }
        let exact = gs.iter().any(|g| {
            g.exact_div(&h)
                .map(|q| q.is_constant() && !q.is_zero())
                .unwrap_or(false)
        });
        let used = h.variables_used();
        let split = if used.len() == 1 {
            let var = ring.name(used[0]).to_string();
            let coeffs = h.coefficients_at(used[0]);
            let uni: Vec<Scalar> = coeffs
                .iter()
                .map(|c| c.coeff(&crate::ring::Monomial::one(ring.len())))
                .collect();
            let roots = rational_roots(&uni);
            let mult: usize = roots.iter().map(|(_, m)| *m).sum();
            if mult == uni.len() - 1 {
                let mut names: Vec<String> = roots.iter().map(|(r, _)| r.to_string()).collect();
                names.dedup();
                Some((var, names))
            } else {
                None
            }
        } else {
            None
        };
        ObstructionLocus {
            gcd: h.primitive(&ord).to_string(),
            exact,
            split,
            empty: exact && h.is_constant(),
        }
    }
}

/// For each generator, its degree `N_i` in `var` and the coefficient `g_i`
/// of `var^N_i`. A generator free of `var` has `N_i = 0`, `g_i` itself.
pub fn extension_report(ideal: &IdealBasis, var: &str) -> Result<ExtensionReport> {
    let ring = ideal.ring();
    let x = ring.index_of(var)?;
    let leading_coeffs = ideal
        .generators()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let cs = f.coefficients_at(x);
            let n = cs.len() - 1;
            LeadingCoeff {
                generator: i,
                coeff: cs[n].clone(),
                degree: n as u32,
            }
        })
        .collect();
    Ok(ExtensionReport {
        eliminated_var: var.to_string(),
        remaining_vars: ring
            .names()
            .iter()
            .filter(|n| n.as_str() != var)
            .cloned()
            .collect(),
        leading_coeffs,
    })
}

/// True iff the partial point lies outside `V(g_1, ..., g_s)`, i.e. some
/// `|g_i(point)| > tol`, so the extension theorem guarantees a lift.
/// `point` lists values of the remaining variables in ring order.
pub fn check_extends(report: &ExtensionReport, point: &[Complex64], tol: f64) -> Result<bool> {
    if point.len() != report.remaining_vars.len() {
        return Err(Error::Dimension {
            expected: report.remaining_vars.len(),
            got: point.len(),
        });
    }
    let Some(first) = report.leading_coeffs.first() else {
        return Ok(true);
    };
    let ring = first.coeff.ring();
    let x = ring.index_of(&report.eliminated_var)?;
    let mut full = Vec::with_capacity(ring.len());
    let mut it = point.iter();
    for i in 0..ring.len() {
        if i == x {
            full.push(Complex64::new(0.0, 0.0));
        } else {
            full.push(*it.next().unwrap());
        }
    }
    for l in &report.leading_coeffs {
        if l.coeff.eval_complex(&full)?.norm() > tol {
            return Ok(true);
        }
    }
    Ok(false)
}
