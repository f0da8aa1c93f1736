//! The `(u,v)`-plane picture of `x^2 + c`.
//!
//! For an orbit `x_0 -> x_1 -> x_2 -> ...` put `u = x_0 + x_1` and
//! `v = x_0 + x_2`. Shifting the orbit by one step acts on the plane as
//!
//! ```text
//! G(u, v) = ((-u + v + uv) / u, (u^2 - u + v - u^2 v - uv + uv^2 + v^2) / u)
//! ```
//!
//! and cycles of period `n` land on the curve `P_n(u, v) = 0`. The cycle
//! sum is a rational function `S_n(u, v)`; clearing its denominator gives
//! the constraint `B_n(u, v, S_n)`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::golden::Golden;
use crate::numeric::{orbit_oracle, NumericOrbit};
use crate::ring::{MonomialOrder, MultiPoly, RationalFunction, Scalar, VarSet};

/// `|u|` below this is treated as the pole of `G`.
pub const POLE_TOL: f64 = 1e-12;

/// Largest number of symbolic iterates built by [`uv_iterates_symbolic`].
pub const MAX_SYMBOLIC_STEPS: usize = 6;

/// Absolute bound on `|P_n|` at sampled cycle points.
pub const CURVE_TOL: f64 = 1e-8;

/// Sign-corrected period-five curve. It differs from the transcribed table
/// only in the `u^5 v^6` term, whose coefficient is `-3`.
const P5_TEXT: &str = "u^7*(-v^4 + 2*v^3 - v^2) + u^6*(3*v^5 - 8*v^4 + 5*v^3 + v^2 - v) \
    + u^5*(-3*v^6 + 14*v^5 - 12*v^4 - 5*v^3 + 7*v^2 - v) \
    + u^4*(v^7 - 12*v^6 + 18*v^5 + 6*v^4 - 16*v^3 + 3*v^2 + 2*v) \
    + u^3*(4*v^7 - 16*v^6 + 19*v^4 - 5*v^3 - 4*v^2 + 2*v + 1) \
    + u^2*(6*v^7 - 6*v^6 - 12*v^5 + 6*v^4 + 4*v^3 - 2*v^2) \
    + u*(4*v^7 + 3*v^6 - 4*v^5 - 2*v^4 + v^3) + v^7 + 2*v^6 + v^5";

/// Parameters used to sample cycles when validating a period curve.
pub const VALIDATION_PARAMETERS: [(f64, f64); 10] = [
    (0.25, 0.0),
    (0.3, 0.5),
    (-0.75, 0.1),
    (-0.1, 0.8),
    (0.4, -0.3),
    (-1.2, 0.2),
    (0.1, 0.1),
    (-0.5, -0.5),
    (0.0, 0.6),
    (-0.3, 0.0),
];

/// The ring `Q[u, v]`.
pub fn plane_ring() -> VarSet {
    VarSet::new(["u", "v"]).expect("static variable names")
}

/// The ring `Q[u, v, S<n>]` with `u > v > S<n>`.
pub fn sum_ring(n: u32) -> VarSet {
    VarSet::new(["u".to_string(), "v".to_string(), sum_symbol(n)]).expect("static variable names")
}

pub fn sum_symbol(n: u32) -> String {
    format!("S{n}")
}

fn check_period(n: u32) -> Result<()> {
    if (3..=5).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!("period {n} is not one of 3, 4, 5")))
    }
}

/// One step of `G`.
pub fn uv_step_numeric(p: (Complex64, Complex64)) -> Result<(Complex64, Complex64)> {
    let (u, v) = p;
    if u.norm() < POLE_TOL {
        return Err(Error::Pole(u.norm()));
    }
    let r = (-u + v + u * v) / u;
    let q = (u * u - u + v - u * u * v - u * v + u * v * v + v * v) / u;
    Ok((r, q))
}

/// `u = x_0 + x_1`, `v = x_0 + x_2` with `x_2 = x_1^2 + x_1 - x_0^2`.
pub fn xy_to_uv(x0: Complex64, x1: Complex64) -> (Complex64, Complex64) {
    (x0 + x1, x0 + x1 * x1 + x1 - x0 * x0)
}

/// Inverse of [`xy_to_uv`] together with the parameter `c = x_1 - x_0^2`.
pub fn uv_to_orbit_data(u: Complex64, v: Complex64) -> Result<(Complex64, Complex64, Complex64)> {
    if u.norm() < POLE_TOL {
        return Err(Error::Pole(u.norm()));
    }
    let d = (v - u) / u;
    let x0 = (u - d) / 2.0;
    let x1 = u - x0;
    Ok((x0, x1, x1 - x0 * x0))
}

/// `(R_n, Q_n) = (num_r / den, num_q / den)` over `Q[u, v]`.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMapPair {
    pub numerator_r: MultiPoly,
    pub numerator_q: MultiPoly,
    pub denominator: MultiPoly,
}

impl RationalMapPair {
    pub fn identity() -> Self {
        let ring = plane_ring();
        RationalMapPair {
            numerator_r: MultiPoly::var(&ring, "u").expect("u"),
            numerator_q: MultiPoly::var(&ring, "v").expect("v"),
            denominator: MultiPoly::one(&ring),
        }
    }

    pub fn r(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.numerator_r.clone(), self.denominator.clone())
    }

    pub fn q(&self) -> Result<RationalFunction> {
        RationalFunction::new(self.numerator_q.clone(), self.denominator.clone())
    }

    pub fn eval(&self, u: Complex64, v: Complex64) -> Result<(Complex64, Complex64)> {
        let d = self.denominator.eval_complex(&[u, v])?;
        if d.norm() < POLE_TOL {
            return Err(Error::Pole(d.norm()));
        }
        Ok((
            self.numerator_r.eval_complex(&[u, v])? / d,
            self.numerator_q.eval_complex(&[u, v])? / d,
        ))
    }

    /// `G` applied symbolically, then reduced by the common gcd.
    fn step(&self) -> Result<RationalMapPair> {
        let (a, b, d) = (&self.numerator_r, &self.numerator_q, &self.denominator);
        // G(A/D, B/D), both components over D^2 A
        let r_num = &(&(&(-(a * d)) + &(b * d)) + &(a * b)) * d;
        let q_num = &(&(&(&(&(&(a * a) * d) - &(&(a * d) * d)) + &(&(b * d) * d)) - &(&(a * a) * b))
            - &(&(&(a * b) * d) - &(&(a * b) * b)))
            + &(&(b * b) * d);
        let den = &(d * d) * a;
        let g = r_num.gcd(&q_num).gcd(&den);
        let ord = MonomialOrder::Lex;
        let (r_num, q_num, den) = if g.is_constant() {
            (r_num, q_num, den)
        } else {
            (r_num.exact_div(&g)?, q_num.exact_div(&g)?, den.exact_div(&g)?)
        };
        let (content, den) = den.content_primitive(&ord)?;
        let inv = content.recip();
        Ok(RationalMapPair {
            numerator_r: r_num.scale(&inv),
            numerator_q: q_num.scale(&inv),
            denominator: den,
        })
    }
}

/// `[(R_0, Q_0), ..., (R_n, Q_n)]` with `(R_0, Q_0) = (u, v)`.
pub fn uv_iterates_symbolic(n: usize) -> Result<Vec<RationalMapPair>> {
    if n > MAX_SYMBOLIC_STEPS {
        return Err(Error::BudgetExceeded {
            budget: MAX_SYMBOLIC_STEPS,
        });
    }
    let mut out = vec![RationalMapPair::identity()];
    for _ in 0..n {
        let next = out.last().expect("nonempty").step()?;
        out.push(next);
    }
    Ok(out)
}

/// Cycle sum `x_0 + ... + x_{n-1}` as a function of the first plane point,
/// using `x_0 = (u^2 + u - v) / (2u)` and `x_{i+1} = R_i - x_i`.
pub fn sum_poly(n: u32) -> Result<RationalFunction> {
    check_period(n)?;
    let ring = plane_ring();
    let p = |s: &str| MultiPoly::parse(s, &ring);
    let mut x = RationalFunction::new(p("u^2 + u - v")?, p("2*u")?)?;
    let mut total = x.clone();
    let iterates = uv_iterates_symbolic(n as usize - 2)?;
    for pair in iterates.iter().take(n as usize - 1) {
        x = pair.r()?.try_sub(&x)?;
        total = total.try_add(&x)?;
    }
    Ok(total)
}

/// `(u_0 + ... + u_{n-1}) / 2` with `u_i = R_i`. It agrees with
/// [`sum_poly`] on the curve `P_n = 0`, not identically.
pub fn half_u_sum(n: u32) -> Result<RationalFunction> {
    check_period(n)?;
    let iterates = uv_iterates_symbolic(n as usize - 1)?;
    let mut total = RationalFunction::from_poly(MultiPoly::zero(&plane_ring()));
    for pair in &iterates {
        total = total.try_add(&pair.r()?)?;
    }
    Ok(total.scale(&Scalar::new(1.into(), 2.into())))
}

/// True when `a - b` vanishes on `P = 0`, i.e. `P` divides the numerator
/// of the difference.
pub fn congruent_mod(a: &RationalFunction, b: &RationalFunction, p: &MultiPoly) -> Result<bool> {
    let diff = a.try_sub(b)?;
    Ok(diff.numerator().is_zero() || p.divides(diff.numerator()))
}

/// The curve `P_n(u, v) = 0` carrying the plane images of period-`n` cycles.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodCurve {
    pub n: u32,
    pub poly: MultiPoly,
}

/// Transcribed curve, without numeric validation.
pub fn period_curve_unchecked(n: u32) -> Result<PeriodCurve> {
    check_period(n)?;
    let ring = plane_ring();
    let poly = match n {
        5 => MultiPoly::parse(P5_TEXT, &ring)?,
        _ => Golden::period(n)?
            .get(&format!("P{n}"))?
            .to_ring(&ring)?,
    };
    Ok(PeriodCurve { n, poly })
}

/// Transcribed curve, checked to vanish (`|P_n| < 1e-8`) at every point of
/// sampled cycles of exact period `n`.
pub fn period_curve(n: u32) -> Result<PeriodCurve> {
    let curve = period_curve_unchecked(n)?;
    let worst = curve_residual(&curve.poly, &validation_orbits(n)?)?;
    if !(worst < CURVE_TOL) {
        return Err(Error::DataIntegrity(format!(
            "P{n} does not vanish on period-{n} cycles (max |P| = {worst:e})"
        )));
    }
    Ok(curve)
}

/// Ten cycles of exact period `n`, one per validation parameter.
pub fn validation_orbits(n: u32) -> Result<Vec<NumericOrbit>> {
    let mut out = Vec::with_capacity(VALIDATION_PARAMETERS.len());
    for (k, &(re, im)) in VALIDATION_PARAMETERS.iter().enumerate() {
        let orbits = orbit_oracle(Complex64::new(re, im), n)?;
        if orbits.is_empty() {
            return Err(Error::DataIntegrity(format!("no period-{n} cycle at c = {re}+{im}i")));
        }
        out.push(orbits[k % orbits.len()].clone());
    }
    Ok(out)
}

/// Largest `|P(u_i, v_i)|` over all plane points of the given cycles.
pub fn curve_residual(p: &MultiPoly, orbits: &[NumericOrbit]) -> Result<f64> {
    let mut worst = 0.0f64;
    for o in orbits {
        for (u, v) in o.uv_points() {
            worst = worst.max(p.eval_complex(&[u, v])?.norm());
        }
    }
    Ok(worst)
}

/// `B_n(u, v, S_n)`, linear in `S_n`, vanishing exactly when `S_n` equals
/// the cycle sum (for `u != 0`).
#[derive(Clone, Debug, PartialEq)]
pub struct SumConstraint {
    pub n: u32,
    pub sum_symbol: String,
    pub poly: MultiPoly,
}

/// `den · S_n - num` for `sum_poly(n) = num / den`, in primitive form with
/// positive lex leading coefficient.
pub fn sum_constraint(n: u32) -> Result<SumConstraint> {
    let s = sum_poly(n)?;
    let ring = sum_ring(n);
    let sym = sum_symbol(n);
    let num = s.numerator().to_ring(&ring)?;
    let den = s.denominator().to_ring(&ring)?;
    let poly = (&(&den * &MultiPoly::var(&ring, &sym)?) - &num).primitive(&MonomialOrder::Lex);
    Ok(SumConstraint {
        n,
        sum_symbol: sym,
        poly,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn pp(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &plane_ring()).unwrap()
    }

    #[test]
    fn step_examples() {
        let (r, q) = uv_step_numeric((c(1.0, 0.0), c(2.0, 0.0))).unwrap();
        assert_eq!((r, q), (c(3.0, 0.0), c(6.0, 0.0)));
        let z = c(0.7, -0.2);
        let (r, q) = uv_step_numeric((z, z)).unwrap();
        assert!((r - z).norm() < 1e-15 && (q - z).norm() < 1e-15);
        assert!(matches!(uv_step_numeric((c(0.0, 0.0), z)), Err(Error::Pole(_))));
    }

    #[test]
    fn step_matches_orbit_shift() {
        let cc = c(-0.3, 0.4);
        let x = crate::numeric::iterate_quadratic(cc, c(0.2, 0.1), 4);
        let p0 = (x[0] + x[1], x[0] + x[2]);
        let p1 = uv_step_numeric(p0).unwrap();
        assert!((p1.0 - (x[1] + x[2])).norm() < 1e-13);
        assert!((p1.1 - (x[1] + x[3])).norm() < 1e-13);
    }

    #[test]
    fn transforms_round_trip() {
        assert_eq!(xy_to_uv(c(0.0, 0.0), c(0.0, 0.0)), (c(0.0, 0.0), c(0.0, 0.0)));
        let x = c(0.3, -1.1);
        let (u, v) = xy_to_uv(x, x);
        assert_eq!(u, 2.0 * x);
        assert!((v - 2.0 * x).norm() < 1e-15);
        let (a, b, cc) = uv_to_orbit_data(u, v).unwrap();
        assert!((a - x).norm() < 1e-15 && (b - x).norm() < 1e-15);
        assert!((cc - (x - x * x)).norm() < 1e-15);
        for &(x0, x1) in &[(c(0.1, 0.9), c(-1.3, 0.2)), (c(2.0, 0.0), c(0.5, -0.5))] {
            let (u, v) = xy_to_uv(x0, x1);
            let (y0, y1, cc) = uv_to_orbit_data(u, v).unwrap();
            assert!((y0 - x0).norm() < 1e-12 && (y1 - x1).norm() < 1e-12);
            assert!((y1 - (y0 * y0 + cc)).norm() < 1e-12);
        }
        assert!(uv_to_orbit_data(c(0.0, 0.0), c(1.0, 0.0)).is_err());
    }

    #[test]
    fn first_iterate() {
        let it = uv_iterates_symbolic(1).unwrap();
        assert_eq!(it[0], RationalMapPair::identity());
        assert_eq!(it[1].numerator_r, pp("-u + v + u*v"));
        assert_eq!(it[1].denominator, pp("u"));
        assert_eq!(it[1].numerator_q, pp("u^2 - u + v - u^2*v - u*v + u*v^2 + v^2"));
        assert!(uv_iterates_symbolic(7).is_err());
    }

    #[test]
    fn symbolic_iterates_match_numeric() {
        let it = uv_iterates_symbolic(4).unwrap();
        let mut pt = (c(0.6, 0.3), c(-0.4, 0.9));
        let start = pt;
        for pair in &it {
            let (r, q) = pair.eval(start.0, start.1).unwrap();
            assert!((r - pt.0).norm() < 1e-10 * pt.0.norm().max(1.0));
            assert!((q - pt.1).norm() < 1e-10 * pt.1.norm().max(1.0));
            pt = uv_step_numeric(pt).unwrap();
        }
    }

    #[test]
    fn period_three_sum() {
        let s = sum_poly(3).unwrap();
        let expected = RationalFunction::new(pp("u^2 - u + v + 2*u*v"), pp("2*u")).unwrap();
        assert!(s.cross_equal(&expected));
        let b = sum_constraint(3).unwrap();
        assert_eq!(b.sum_symbol, "S3");
        assert_eq!(b.poly.degree_in("S3").unwrap(), Some(1));
        let printed = MultiPoly::parse("-u^2 + (2*S3 + 1 - 2*v)*u - v", &sum_ring(3)).unwrap();
        assert!(b.poly == printed || b.poly == -&printed);
    }

    #[test]
    fn curves_vanish_on_cycles() {
        for n in 3..=5 {
            let curve = period_curve(n).unwrap();
            assert_eq!(curve.n, n);
        }
        assert_eq!(period_curve(3).unwrap().poly, pp("u*v + 1 + v"));
        assert!(period_curve(6).is_err());
    }

    #[test]
    fn transcribed_period_five_fails_validation() {
        let g = Golden::period(5).unwrap();
        let printed = g.get("P5").unwrap().to_ring(&plane_ring()).unwrap();
        let worst = curve_residual(&printed, &validation_orbits(5).unwrap()).unwrap();
        assert!(worst > 1e-3);
        let fixed = period_curve_unchecked(5).unwrap().poly;
        let diff = &printed - &fixed;
        assert_eq!(diff, pp("6*u^5*v^6"));
    }
}
