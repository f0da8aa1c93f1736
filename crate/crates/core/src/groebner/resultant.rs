//! Sylvester resultants with a fraction-free (Bareiss) determinant.

use crate::error::{Error, Result};
use crate::ring::MultiPoly;

/// Sylvester matrix of `f` and `g` in the variable at `index`; entries are
/// polynomials free of that variable. Rows `0..deg g` hold shifts of `f`,
/// the remaining rows shifts of `g`, highest coefficient first.
pub fn sylvester_matrix(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<Vec<Vec<MultiPoly>>> {
    let x = f.ring().index_of(var)?;
    let fc = f.coefficients_at(x);
    let gc = g.coefficients_at(x);
    let (m, n) = (fc.len() - 1, gc.len() - 1);
    let size = m + n;
    let zero = MultiPoly::zero(f.ring());
    let mut mat = vec![vec![zero; size]; size];
    for r in 0..n {
        for (k, c) in fc.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in gc.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    Ok(mat)
}

/// Determinant by Bareiss elimination; every division is exact.
pub fn bareiss_determinant(mut mat: Vec<Vec<MultiPoly>>, zero: &MultiPoly) -> Result<MultiPoly> {
    let n = mat.len();
    if n == 0 {
        return Ok(MultiPoly::one(zero.ring()));
    }
    let mut negate = false;
    let mut prev = MultiPoly::one(zero.ring());
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(zero.clone()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = if prev.is_constant() {
                    num.scale(&prev.coeff(&crate::ring::Monomial::one(zero.ring().len())).recip())
                } else {
                    num.exact_div(&prev)?
                };
            }
            mat[i][k] = zero.clone();
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// `Res_var(f, g)`, a polynomial free of `var` that vanishes on the
/// projection of `V(f, g)`.
pub fn sylvester_resultant(f: &MultiPoly, g: &MultiPoly, var: &str) -> Result<MultiPoly> {
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch {
            left: f.ring().to_string(),
            right: g.ring().to_string(),
        });
    }
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial("resultant"));
    }
    let x = f.ring().index_of(var)?;
    if !f.contains_var(x) && !g.contains_var(x) {
        return Err(Error::VariableAbsent(var.to_string()));
    }
    let mat = sylvester_matrix(f, g, var)?;
    bareiss_determinant(mat, &MultiPoly::zero(f.ring()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::VarSet;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &VarSet::new(["x", "a", "b"]).unwrap()).unwrap()
    }

    #[test]
    fn small_resultants() {
        assert_eq!(sylvester_resultant(&p("x^2 - 1"), &p("x - 2"), "x").unwrap(), p("3"));
        let r = sylvester_resultant(&p("x - a"), &p("x - b"), "x").unwrap();
        assert!(r == p("b - a") || r == p("a - b"));
        assert!(matches!(
            sylvester_resultant(&p("a"), &p("b"), "x"),
            Err(Error::VariableAbsent(_))
        ));
    }

    #[test]
    fn resultant_vanishes_on_common_roots() {
        // x^2 + a x + b and x - 1 share a root iff 1 + a + b = 0
        let r = sylvester_resultant(&p("x^2 + a*x + b"), &p("x - 1"), "x").unwrap();
        assert_eq!(r, p("1 + a + b"));
        // discriminant-like check: Res_x(f, f') for f = x^2 + b is 4b up to sign
        let r = sylvester_resultant(&p("x^2 + b"), &p("2*x"), "x").unwrap();
        assert!(r == p("4*b") || r == p("-4*b"));
    }

    #[test]
    fn zero_pivot_triggers_row_swap() {
        let z = MultiPoly::zero(&VarSet::new(["x", "a", "b"]).unwrap());
        let m = vec![vec![z.clone(), p("1")], vec![p("1"), z.clone()]];
        assert_eq!(bareiss_determinant(m, &z).unwrap(), p("-1"));
    }
}
