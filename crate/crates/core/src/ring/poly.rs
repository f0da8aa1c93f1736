use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Monomial, MonomialOrder, Scalar};
use crate::error::{Error, Result};

/// Ordered list of distinct variable names; the index order defines the
/// ambient ring `Q[x_0, ..., x_{n-1}]` and the lex priority `x_0 > x_1 > ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarSet(Arc<[String]>);

impl VarSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::InvalidVarSet("no variables".into()));
        }
        for (i, n) in names.iter().enumerate() {
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(Error::InvalidVarSet(format!("`{n}` is not an identifier")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidVarSet(format!("duplicate variable `{n}`")));
            }
        }
        Ok(VarSet(names.into()))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, index: usize) -> &str {
        &self.0[index]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    fn same(&self, other: &VarSet) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(","))
    }
}

/// Value bound to a variable by [`MultiPoly::substitute`].
#[derive(Clone, Debug)]
pub enum Binding {
    Scalar(Scalar),
    Poly(MultiPoly),
}

impl From<Scalar> for Binding {
    fn from(q: Scalar) -> Self {
        Binding::Scalar(q)
    }
}

impl From<MultiPoly> for Binding {
    fn from(p: MultiPoly) -> Self {
        Binding::Poly(p)
    }
}

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept in a map keyed by exponent vector with no zero
/// coefficients, so structural equality is polynomial equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    ring: VarSet,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(ring: &VarSet) -> Self {
        MultiPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: &VarSet, c: Scalar) -> Self {
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.len()), c);
        }
        p
    }

    pub fn from_int(ring: &VarSet, c: i64) -> Self {
        Self::constant(ring, Scalar::from_integer(c.into()))
    }

    pub fn one(ring: &VarSet) -> Self {
        Self::from_int(ring, 1)
    }

    pub fn var(ring: &VarSet, name: &str) -> Result<Self> {
        let i = ring.index_of(name)?;
        Ok(Self::term(ring, Monomial::var(ring.len(), i, 1), Scalar::one()))
    }

    pub fn term(ring: &VarSet, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.len(), ring.len(), "monomial does not fit the ring");
        let mut p = Self::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms, merging repeated monomials.
    pub fn from_terms(ring: &VarSet, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.len(), ring.len(), "monomial does not fit the ring");
            p.add_term(m, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &VarSet {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lex order of the ring.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Terms in strictly decreasing order under `ord`.
    pub fn terms_desc(&self, ord: &MonomialOrder) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        if *ord != MonomialOrder::Lex {
            v.sort_by(|a, b| ord.cmp(a.0, b.0));
        }
        v.reverse();
        v
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Leading monomial and coefficient under `ord`.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(Monomial, Scalar)> {
        let (m, c) = self
            .terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .ok_or(Error::ZeroPolynomial("leading term"))?;
        Ok((m.clone(), c.clone()))
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Result<Monomial> {
        self.leading_term(ord).map(|t| t.0)
    }

    pub fn leading_coeff(&self, ord: &MonomialOrder) -> Result<Scalar> {
        self.leading_term(ord).map(|t| t.1)
    }

    /// Exponent vector of the leading monomial.
    pub fn multidegree(&self, ord: &MonomialOrder) -> Result<Vec<u32>> {
        self.leading_monomial(ord).map(|m| m.exponents().to_vec())
    }

    fn check_ring(&self, other: &MultiPoly) -> Result<()> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.check_ring(other)?;
        let mut out = Self::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// `c * m * self`.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    /// Splits `self = content * primitive` where `primitive` has coprime
    /// integer coefficients and a positive leading coefficient under `ord`.
    pub fn content_primitive(&self, ord: &MonomialOrder) -> Result<(Scalar, MultiPoly)> {
        let (_, lc) = self.leading_term(ord)?;
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        let mut content = Scalar::new(num_gcd, den_lcm);
        if lc.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        Ok((content, self.scale(&inv)))
    }

    /// Primitive integer form; the zero polynomial maps to itself.
    pub fn primitive(&self, ord: &MonomialOrder) -> MultiPoly {
        match self.content_primitive(ord) {
            Ok((_, p)) => p,
            Err(_) => self.clone(),
        }
    }

    /// Scales to leading coefficient 1 under `ord`.
    pub fn monic(&self, ord: &MonomialOrder) -> Result<MultiPoly> {
        let lc = self.leading_coeff(ord)?;
        Ok(self.scale(&lc.recip()))
    }

    /// True when `self = λ·other` for some nonzero rational `λ`.
    pub fn equal_up_to_scalar(&self, other: &MultiPoly) -> bool {
        if self.ring != other.ring || self.terms.len() != other.terms.len() {
            return false;
        }
        if self.is_zero() {
            return true;
        }
        let ord = MonomialOrder::Lex;
        self.primitive(&ord) == other.primitive(&ord)
    }

    pub fn integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Highest exponent of `var`; `None` stands for the degree of zero.
    pub fn degree_in(&self, var: &str) -> Result<Option<u32>> {
        let i = self.ring.index_of(var)?;
        Ok(self.degree_at(i))
    }

    pub fn degree_at(&self, index: usize) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(index)).max()
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::total_degree).max()
    }

    /// Indices of variables that occur in some term.
    pub fn variables_used(&self) -> Vec<usize> {
        (0..self.ring.len())
            .filter(|&i| self.terms.keys().any(|m| m.exp(i) > 0))
            .collect()
    }

    pub fn contains_var(&self, index: usize) -> bool {
        self.terms.keys().any(|m| m.exp(index) > 0)
    }

    /// Coefficients of `self` viewed as a polynomial in `var`; entry `k`
    /// multiplies `var^k` and is free of `var`.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<MultiPoly>> {
        let i = self.ring.index_of(var)?;
        Ok(self.coefficients_at(i))
    }

    pub(crate) fn coefficients_at(&self, index: usize) -> Vec<MultiPoly> {
        let deg = self.degree_at(index).unwrap_or(0) as usize;
        let mut out = vec![Self::zero(&self.ring); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exp(index) as usize;
            out[e].terms.insert(m.with_exp(index, 0), c.clone());
        }
        if self.is_zero() {
            out.clear();
        }
        out
    }

    /// Inverse of [`coefficients_in`](Self::coefficients_in).
    pub fn from_coefficients_at(ring: &VarSet, index: usize, coeffs: &[MultiPoly]) -> Self {
        let mut out = Self::zero(ring);
        for (k, c) in coeffs.iter().enumerate() {
            let xk = Monomial::var(ring.len(), index, k as u32);
            for (m, a) in &c.terms {
                out.add_term(m.mul(&xk), a.clone());
            }
        }
        out
    }

    /// Exact simultaneous substitution of ring variables. Polynomial
    /// bindings must live in the same ring as `self`.
    pub fn substitute(&self, bindings: &[(&str, Binding)]) -> Result<MultiPoly> {
        let n = self.ring.len();
        let mut values: Vec<Option<MultiPoly>> = vec![None; n];
        for (name, b) in bindings {
            let i = self.ring.index_of(name)?;
            let p = match b {
                Binding::Scalar(q) => Self::constant(&self.ring, q.clone()),
                Binding::Poly(p) => {
                    self.check_ring(p)?;
                    p.clone()
                }
            };
            values[i] = Some(p);
        }
        if values.iter().all(Option::is_none) {
            return Ok(self.clone());
        }
        // powers are cached per variable
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); n];
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut kept = Monomial::one(n);
            let mut factor = Self::one(&self.ring);
            for i in 0..n {
                let e = m.exp(i) as usize;
                match &values[i] {
                    None => kept = kept.with_exp(i, e as u32),
                    Some(val) if e > 0 => {
                        let cache = &mut powers[i];
                        if cache.is_empty() {
                            cache.push(Self::one(&self.ring));
                        }
                        while cache.len() <= e {
                            let next = cache.last().unwrap() * val;
                            cache.push(next);
                        }
                        factor = &factor * &cache[e];
                    }
                    Some(_) => {}
                }
            }
            let t = factor.mul_term(&kept, c);
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Sets `var := value` and keeps the ring.
    pub fn specialize(&self, var: &str, value: &Scalar) -> Result<MultiPoly> {
        self.substitute(&[(var, Binding::Scalar(value.clone()))])
    }

    /// Re-embeds into `target` by variable name. Fails if a variable that
    /// occurs in `self` is missing from `target`.
    pub fn to_ring(&self, target: &VarSet) -> Result<MultiPoly> {
        if self.ring.same(target) {
            return Ok(self.clone());
        }
        let used = self.variables_used();
        let mut map = vec![usize::MAX; self.ring.len()];
        for i in 0..self.ring.len() {
            match target.index_of(self.ring.name(i)) {
                Ok(j) => map[i] = j,
                Err(e) => {
                    if used.contains(&i) {
                        return Err(e);
                    }
                }
            }
        }
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            out.terms.insert(m.permuted(&map, target.len()), c.clone());
        }
        Ok(out)
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Result<Complex64> {
        if point.len() != self.ring.len() {
            return Err(Error::Dimension {
                expected: self.ring.len(),
                got: point.len(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(scalar_to_f64(c), 0.0);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= point[i].powu(e);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Exact evaluation at a rational point.
    pub fn eval_rational(&self, point: &[Scalar]) -> Result<Scalar> {
        if point.len() != self.ring.len() {
            return Err(Error::Dimension {
                expected: self.ring.len(),
                got: point.len(),
            });
        }
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// `Σ |a_m| |point^m|`, the natural scale for a floating residual.
    pub fn eval_abs_bound(&self, point: &[Complex64]) -> Result<f64> {
        if point.len() != self.ring.len() {
            return Err(Error::Dimension {
                expected: self.ring.len(),
                got: point.len(),
            });
        }
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut t = scalar_to_f64(c).abs();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= point[i].norm().powi(e as i32);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Partial derivative with respect to `var`.
    pub fn derivative(&self, var: &str) -> Result<MultiPoly> {
        let i = self.ring.index_of(var)?;
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exp(i);
            if e > 0 {
                out.terms.insert(m.with_exp(i, e - 1), c * Scalar::from_integer(e.into()));
            }
        }
        Ok(out)
    }

    /// Maximum absolute coefficient as a float, for diagnostics.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| scalar_to_f64(c).abs())
            .fold(0.0, f64::max)
    }
}

pub(crate) fn scalar_to_f64(c: &Scalar) -> f64 {
    c.to_f64().unwrap_or_else(|| {
        // numerator or denominator overflowed f64 individually
        let n = c.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = c.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $imp:ident) => {
        impl $tr<&MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            /// Panics when the operands live in different rings; use the
            /// `try_` variant to get an error instead.
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                self.$imp(rhs).expect("ring mismatch in polynomial arithmetic")
            }
        }
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $method(self, rhs: MultiPoly) -> MultiPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> VarSet {
        VarSet::new(["u", "v"]).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &ring()).unwrap()
    }

    #[test]
    fn varset_rejects_duplicates_and_empty() {
        assert!(VarSet::new(["u", "u"]).is_err());
        assert!(VarSet::new(Vec::<String>::new()).is_err());
        assert!(VarSet::new(["1x"]).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let p3 = p("u*v + v + 1");
        assert!((&p3 - &p3).is_zero());
        assert_eq!(p("u + v") * p("u - v"), p("u^2 - v^2"));
        assert_eq!(p("u + 1").pow(3), p("u^3 + 3*u^2 + 3*u + 1"));
        assert_eq!(p("u").pow(0), p("1"));
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let other = VarSet::new(["x"]).unwrap();
        let a = MultiPoly::var(&other, "x").unwrap();
        assert!(matches!(p("u").try_add(&a), Err(Error::RingMismatch { .. })));
    }

    #[test]
    fn leading_terms() {
        let ord = MonomialOrder::Lex;
        let (m, c) = p("u*v + 1 + v").leading_term(&ord).unwrap();
        assert_eq!(m.exponents(), &[1, 1]);
        assert_eq!(c, Scalar::from_integer(1.into()));
        let (m, c) = p("5").leading_term(&ord).unwrap();
        assert!(m.is_one());
        assert_eq!(c, Scalar::from_integer(5.into()));
        assert!(matches!(
            MultiPoly::zero(&ring()).leading_term(&ord),
            Err(Error::ZeroPolynomial(_))
        ));
    }

    #[test]
    fn content_and_primitive() {
        let ord = MonomialOrder::Lex;
        let (c, q) = p("2*u*v + 2").content_primitive(&ord).unwrap();
        assert_eq!(c, Scalar::from_integer(2.into()));
        assert_eq!(q, p("u*v + 1"));
        let (c, q) = p("-u*v - 1 - v").content_primitive(&ord).unwrap();
        assert_eq!(c, Scalar::from_integer((-1).into()));
        assert_eq!(q, p("u*v + v + 1"));
        let (c, q) = p("3/4*u - 1/6").content_primitive(&ord).unwrap();
        assert_eq!(q, p("9*u - 2"));
        assert_eq!(q.scale(&c), p("3/4*u - 1/6"));
        assert!(MultiPoly::zero(&ring()).content_primitive(&ord).is_err());
    }

    #[test]
    fn substitution() {
        let f = p("u^2*v + v");
        assert_eq!(f.substitute(&[]).unwrap(), f);
        let two = Scalar::from_integer(2.into());
        assert_eq!(f.specialize("v", &two).unwrap(), p("2*u^2 + 2"));
        assert_eq!(
            f.substitute(&[("u", Binding::Poly(p("u + v")))]).unwrap(),
            p("u^2*v + 2*u*v^2 + v^3 + v")
        );
        assert!(matches!(
            f.substitute(&[("w", Binding::Scalar(two))]),
            Err(Error::UnknownVariable(_))
        ));
    }

    #[test]
    fn degrees() {
        assert_eq!(p("u*v + 1 + v").degree_in("v").unwrap(), Some(1));
        assert_eq!(p("7").degree_in("u").unwrap(), Some(0));
        assert_eq!(MultiPoly::zero(&ring()).degree_in("u").unwrap(), None);
        assert!(p("u").degree_in("S5").is_err());
    }

    #[test]
    fn coefficient_view_round_trips() {
        let f = p("3*u^2*v - u*v^2 + v + 4");
        let cs = f.coefficients_in("u").unwrap();
        assert_eq!(cs.len(), 3);
        assert_eq!(cs[1], p("-v^2"));
        assert_eq!(MultiPoly::from_coefficients_at(&ring(), 0, &cs), f);
    }

    #[test]
    fn reembedding_by_name() {
        let big = VarSet::new(["v", "u", "S"]).unwrap();
        let f = p("u^2*v - 3").to_ring(&big).unwrap();
        assert_eq!(f, MultiPoly::parse("u^2*v - 3", &big).unwrap());
        let small = VarSet::new(["u"]).unwrap();
        assert!(p("v").to_ring(&small).is_err());
        assert_eq!(p("u + 1").to_ring(&small).unwrap().to_string(), "u + 1");
    }
}
