use num_complex::Complex64;
use serde::Serialize;

use super::{find_roots, ComplexPoly};
use crate::error::{Error, Result};

/// Largest period for which `f_c^n(x) - x` (degree `2^n`) is built.
pub const MAX_ORACLE_PERIOD: u32 = 6;

/// Points closer than this are identified when grouping cycles.
const GROUP_TOL: f64 = 1e-6;
/// Cycles whose multiplier lies this close to 1 are near a collision.
const PARABOLIC_TOL: f64 = 1e-2;
/// Identification radius for approximations of a colliding cycle.
const CLUSTER_TOL: f64 = 5e-2;

/// A cycle `x_0 -> x_1 -> ... -> x_{n-1} -> x_0` of `x^2 + c`.
#[derive(Clone, Debug, Serialize)]
pub struct NumericOrbit {
    pub c: Complex64,
    /// Rotated so that the first point is smallest by (re, im).
    pub points: Vec<Complex64>,
    pub sum: Complex64,
    /// `max_i |x_i^2 + c - x_{i+1}|`.
    pub residual: f64,
    /// `Π 2 x_i`, the derivative of `f^n` along the cycle.
    pub multiplier: Complex64,
    /// The multiplier is close to 1, two cycle points nearly coincide, or a
    /// cycle point nearly coincides with a foreign root (near-parabolic
    /// parameter).
    pub degenerate: bool,
}

impl NumericOrbit {
    pub fn period(&self) -> usize {
        self.points.len()
    }

    /// `(u_i, v_i) = (x_i + x_{i+1}, x_i + x_{i+2})` along the cycle.
    pub fn uv_points(&self) -> Vec<(Complex64, Complex64)> {
        let n = self.points.len();
        (0..n)
            .map(|i| {
                let x = self.points[i];
                (x + self.points[(i + 1) % n], x + self.points[(i + 2) % n])
            })
            .collect()
    }
}

/// `x_0, f(x_0), ..., f^{k}(x_0)`.
pub fn iterate_quadratic(c: Complex64, x0: Complex64, k: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(k + 1);
    let mut x = x0;
    out.push(x);
    for _ in 0..k {
        x = x * x + c;
        out.push(x);
    }
    out
}

/// `f_c^n(x) - x` for `f_c(x) = x^2 + c`.
pub fn compose_quadratic(c: Complex64, n: u32) -> Result<ComplexPoly> {
    if n == 0 {
        return Err(Error::InvalidArgument("period must be at least 1".into()));
    }
    if n > MAX_ORACLE_PERIOD {
        return Err(Error::BudgetExceeded {
            budget: MAX_ORACLE_PERIOD as usize,
        });
    }
    let x = ComplexPoly::from_real(&[0.0, 1.0]);
    let cst = ComplexPoly::new(vec![c]);
    let mut p = x.clone();
    for _ in 0..n {
        p = p.mul(&p).add(&cst);
    }
    Ok(p.add(&ComplexPoly::from_real(&[0.0, -1.0])))
}

/// Newton on `f^n(x) - x`, whose derivative is `Π 2 x_i - 1`.
fn polish_cycle_point(c: Complex64, mut x: Complex64, n: usize) -> Complex64 {
    for _ in 0..50 {
        let mut y = x;
        let mut d = Complex64::new(1.0, 0.0);
        for _ in 0..n {
            d *= 2.0 * y;
            y = y * y + c;
        }
        let f = y - x;
        let fp = d - 1.0;
        if fp.norm() == 0.0 {
            break;
        }
        let next = x - f / fp;
        if !(next.re.is_finite() && next.im.is_finite()) {
            break;
        }
        if (next - x).norm() <= 1e-16 * x.norm().max(1.0) {
            x = next;
            break;
        }
        x = next;
    }
    x
}

fn exact_period(c: Complex64, x: Complex64, n: usize) -> usize {
    let pts = iterate_quadratic(c, x, n);
    let scale = x.norm().max(1.0);
    (1..=n)
        .find(|&k| n % k == 0 && (pts[k] - x).norm() <= GROUP_TOL * scale)
        .unwrap_or(n)
}

/// Builds a cycle from a point of exact period `n`.
pub(crate) fn cycle_from(c: Complex64, x0: Complex64, n: usize) -> NumericOrbit {
    cycle_from_points(c, iterate_quadratic(c, x0, n - 1))
}

/// Builds a cycle from approximations of all its points in order.
pub(crate) fn cycle_from_points(c: Complex64, mut pts: Vec<Complex64>) -> NumericOrbit {
    let n = pts.len();
    let start = (0..n)
        .min_by(|&i, &j| pts[i].re.total_cmp(&pts[j].re).then(pts[i].im.total_cmp(&pts[j].im)))
        .unwrap_or(0);
    pts.rotate_left(start);
    let residual = (0..n)
        .map(|i| (pts[i] * pts[i] + c - pts[(i + 1) % n]).norm())
        .fold(0.0, f64::max);
    let multiplier: Complex64 = pts.iter().map(|x| 2.0 * x).product();
    let mut degenerate = (multiplier - 1.0).norm() < PARABOLIC_TOL;
    for i in 0..n {
        for j in i + 1..n {
            if (pts[i] - pts[j]).norm() < GROUP_TOL {
                degenerate = true;
            }
        }
    }
    NumericOrbit {
        c,
        sum: pts.iter().sum(),
        points: pts,
        residual,
        multiplier,
        degenerate,
    }
}

/// Number of cycles of exact period `n` of a generic `x^2 + c`.
pub fn cycle_count(n: u32) -> usize {
    let points: i64 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(n / d) * (1i64 << d))
        .sum();
    (points / n as i64) as usize
}

fn mobius(mut n: u32) -> i64 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// All cycles of exact period `n` of `x^2 + c`, found by solving
/// `f^n(x) = x` and grouping roots under iteration.
pub fn orbit_oracle(c: Complex64, n: u32) -> Result<Vec<NumericOrbit>> {
    let p = compose_quadratic(c, n)?;
    let census = find_roots(&p)?;
    let n = n as usize;
    let roots = census.roots;
    let mut used = vec![false; roots.len()];
    let mut orbits: Vec<NumericOrbit> = Vec::new();
    for i in 0..roots.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let x = polish_cycle_point(c, roots[i], n);
        if exact_period(c, x, n) != n {
            continue;
        }
        let mut orbit = cycle_from(c, x, n);
        if orbits.iter().any(|o| same_cycle(o, &orbit)) {
            orbit.degenerate = true;
            if let Some(o) = orbits.iter_mut().find(|o| same_cycle(o, &orbit)) {
                o.degenerate = true;
            }
            continue;
        }
        for pt in &orbit.points {
            let nearest = (0..roots.len())
                .filter(|&j| !used[j])
                .min_by(|&a, &b| (roots[a] - pt).norm().total_cmp(&(roots[b] - pt).norm()));
            if let Some(j) = nearest {
                if (roots[j] - pt).norm() < GROUP_TOL * pt.norm().max(1.0) {
                    used[j] = true;
                }
            }
        }
        for (j, r) in roots.iter().enumerate() {
            if !used[j] && orbit.points.iter().any(|pt| (r - pt).norm() < GROUP_TOL) {
                orbit.degenerate = true;
            }
        }
        orbits.push(orbit);
    }
    Ok(orbits)
}

fn same_cycle(a: &NumericOrbit, b: &NumericOrbit) -> bool {
    let tol = if a.degenerate || b.degenerate { CLUSTER_TOL } else { GROUP_TOL };
    a.points.len() == b.points.len()
        && b.points
            .iter()
            .all(|q| a.points.iter().any(|p| (p - q).norm() < tol * p.norm().max(1.0)))
}
