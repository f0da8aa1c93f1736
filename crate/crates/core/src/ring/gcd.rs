//! Multivariate gcd over `Q` by recursive primitive pseudo-remainder
//! sequences. The result is normalized to primitive integer form with a
//! positive lex leading coefficient.

use super::{MonomialOrder, MultiPoly};

impl MultiPoly {
    pub fn gcd(&self, other: &MultiPoly) -> MultiPoly {
        let ord = MonomialOrder::Lex;
        gcd_rec(self, other).primitive(&ord)
    }
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    let ring = a.ring();
    if a.is_zero() {
        return b.primitive(&MonomialOrder::Lex);
    }
    if b.is_zero() {
        return a.primitive(&MonomialOrder::Lex);
    }
    let main = (0..ring.len()).find(|&i| a.contains_var(i) || b.contains_var(i));
    let Some(x) = main else {
        // nonzero constants are units
        return MultiPoly::one(ring);
    };
    let (ca, pa) = split_content(a, x);
    let (cb, pb) = split_content(b, x);
    let content = gcd_rec(&ca, &cb);
    let (mut f, mut g) = if pa.degree_at(x) >= pb.degree_at(x) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    while !g.is_zero() && g.degree_at(x).unwrap_or(0) > 0 {
        let r = pseudo_rem(&f, &g, x);
        f = g;
        g = if r.is_zero() { r } else { split_content(&r, x).1 };
    }
    // a nonzero g of degree 0 in x means the primitive parts are coprime
    let pp = if g.is_zero() { f } else { MultiPoly::one(ring) };
    (&content * &pp).primitive(&MonomialOrder::Lex)
}

/// Content with respect to `x` (gcd of coefficients, free of `x`) and the
/// corresponding primitive part.
fn split_content(f: &MultiPoly, x: usize) -> (MultiPoly, MultiPoly) {
    let coeffs = f.coefficients_at(x);
    let mut c = MultiPoly::zero(f.ring());
    for k in coeffs.iter().rev().filter(|k| !k.is_zero()) {
        c = gcd_rec(&c, k);
        if c.is_constant() {
            break;
        }
    }
    let c = c.primitive(&MonomialOrder::Lex);
    let pp = if c.is_constant() {
        f.primitive(&MonomialOrder::Lex)
    } else {
        f.exact_div(&c)
            .expect("content divides every coefficient")
            .primitive(&MonomialOrder::Lex)
    };
    (c, pp)
}

/// `lc(g)^(deg f - deg g + 1) · f mod g` in the variable `x`.
pub(crate) fn pseudo_rem(f: &MultiPoly, g: &MultiPoly, x: usize) -> MultiPoly {
    let dg = g.degree_at(x).unwrap_or(0);
    let gc = g.coefficients_at(x);
    let lg = gc[dg as usize].clone();
    let n = f.ring().len();
    let mut r = f.clone();
    while let Some(dr) = r.degree_at(x) {
        if dr < dg || r.is_zero() {
            break;
        }
        let lr = r.coefficients_at(x).pop().unwrap();
        let shift = super::Monomial::var(n, x, dr - dg);
        let t = (&lr * g).mul_term(&shift, &super::Scalar::from_integer(1.into()));
        r = &(&lg * &r) - &t;
    }
    r
}
