use num_complex::Complex64;

use super::{MonomialOrder, MultiPoly, Scalar, VarSet};
use crate::error::{Error, Result};

/// Quotient `num / den` kept in lowest terms, with `den` primitive and of
/// positive lex leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: MultiPoly,
    den: MultiPoly,
}

impl RationalFunction {
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroPolynomial("denominator"));
        }
        if num.ring() != den.ring() {
            return Err(Error::RingMismatch {
                left: num.ring().to_string(),
                right: den.ring().to_string(),
            });
        }
        let ord = MonomialOrder::Lex;
        if num.is_zero() {
            return Ok(RationalFunction {
                den: MultiPoly::one(num.ring()),
                num,
            });
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let (content, den) = den.content_primitive(&ord)?;
        let num = num.scale(&content.recip());
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.ring());
        RationalFunction { num: p, den }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denominator(&self) -> &MultiPoly {
        &self.den
    }

    pub fn ring(&self) -> &VarSet {
        self.num.ring()
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        if self.den == other.den {
            return Self::new(self.num.try_add(&other.num)?, self.den.clone());
        }
        let num = self.num.try_mul(&other.den)?.try_add(&other.num.try_mul(&self.den)?)?;
        Self::new(num, self.den.try_mul(&other.den)?)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        Self::new(self.num.try_mul(&other.num)?, self.den.try_mul(&other.den)?)
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        if other.num.is_zero() {
            return Err(Error::ZeroPolynomial("divisor"));
        }
        Self::new(self.num.try_mul(&other.den)?, self.den.try_mul(&other.num)?)
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        RationalFunction {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Equality as functions, by cross-multiplication.
    pub fn cross_equal(&self, other: &Self) -> bool {
        match (self.num.try_mul(&other.den), other.num.try_mul(&self.den)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64> {
        Ok(self.num.eval_complex(point)? / self.den.eval_complex(point)?)
    }

    pub fn to_ring(&self, target: &VarSet) -> Result<Self> {
        Ok(RationalFunction {
            num: self.num.to_ring(target)?,
            den: self.den.to_ring(target)?,
        })
    }
}

impl std::fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_constant() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &VarSet::new(["u", "v"]).unwrap()).unwrap()
    }

    #[test]
    fn lowest_terms() {
        let r = RationalFunction::new(p("u^2 - v^2"), p("2*u - 2*v")).unwrap();
        assert_eq!(r.numerator(), &p("1/2*u + 1/2*v"));
        assert_eq!(r.denominator(), &p("1"));
        let r = RationalFunction::new(p("v"), p("-3*u")).unwrap();
        assert_eq!(r.denominator(), &p("u"));
        assert_eq!(r.numerator(), &p("-1/3*v"));
        assert!(RationalFunction::new(p("u"), p("0")).is_err());
    }

    #[test]
    fn field_operations() {
        let a = RationalFunction::new(p("1"), p("u")).unwrap();
        let b = RationalFunction::new(p("1"), p("v")).unwrap();
        let s = a.try_add(&b).unwrap();
        assert_eq!(s, RationalFunction::new(p("u + v"), p("u*v")).unwrap());
        let back = s.try_sub(&b).unwrap();
        assert_eq!(back, a);
        let q = s.try_div(&a).unwrap();
        assert!(q.cross_equal(&RationalFunction::new(p("u + v"), p("v")).unwrap()));
        let z = a.try_sub(&a).unwrap();
        assert!(z.numerator().is_zero());
    }
}
