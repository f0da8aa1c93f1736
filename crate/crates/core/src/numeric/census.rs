use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::orbit::{cycle_from_points, iterate_quadratic};
use super::{find_roots, ComplexPoly, RootCensus};
use crate::dynamics::{period_curve_unchecked, sum_constraint, uv_to_orbit_data};
use crate::error::{Error, Result};
use crate::golden::Golden;
use crate::ring::{Monomial, MultiPoly, VarSet};

/// Common roots of the two `u`-polynomials must agree this closely.
const LIFT_TOL: f64 = 1e-7;
/// Distinct cycles are separated by more than this.
const GROUP_TOL: f64 = 1e-6;
/// Roots this close to `v = 0` or `v = 1` are obstructed.
const OBSTRUCTION_TOL: f64 = 1e-7;
/// Required agreement of cycle sums with the target.
pub const SUM_TOL: f64 = 1e-8;
/// Bound on `|x_i^2 + c - x_{i+1}|` for lifted cycles.
pub const CYCLE_TOL: f64 = 1e-9;

/// A root `v_0` of `C(v, s)` lifted to a period-five cycle.
#[derive(Clone, Debug, Serialize)]
pub struct LiftedPoint {
    pub v: Complex64,
    pub u: Complex64,
    pub c: Complex64,
    /// Distance between the matched roots of `P_5(u, v_0)` and `B_5(u, v_0, s)`.
    pub lift_gap: f64,
    /// Distance of the next-closest pair, showing the match is unambiguous.
    pub runner_up_gap: f64,
    pub orbit_id: usize,
}

/// A root of `C(v, s)` on the obstruction locus `v ∈ {0, 1}`.
#[derive(Clone, Debug, Serialize)]
pub struct ExcludedRoot {
    pub v: Complex64,
    pub note: String,
}

/// One period-five cycle reached by lifting.
#[derive(Clone, Debug, Serialize)]
pub struct CensusOrbit {
    pub id: usize,
    pub c: Complex64,
    pub points: Vec<Complex64>,
    pub sum: Complex64,
    /// `Σ u_i` and `Σ v_i` over the cycle; both should equal `2 s`.
    pub u_sum: Complex64,
    pub v_sum: Complex64,
    pub cycle_residual: f64,
    /// Indices into [`SumCensus::lifted`].
    pub members: Vec<usize>,
}

/// Outcome of [`sum_census`] at one target sum.
#[derive(Clone, Debug, Serialize)]
pub struct SumCensus {
    pub s5: Complex64,
    /// `C(v, s)` coefficients, low degree first.
    pub eliminant: Vec<Complex64>,
    pub roots: RootCensus,
    pub lifted: Vec<LiftedPoint>,
    pub excluded: Vec<ExcludedRoot>,
    pub orbits: Vec<CensusOrbit>,
    pub distinct_orbits: usize,
    pub max_sum_error: f64,
    pub max_uv_sum_error: f64,
    pub max_cycle_residual: f64,
    /// Roots too close to separate, or orbits not reached five times.
    pub degenerate: bool,
}

impl SumCensus {
    /// Every lifted cycle closes, and its sums match the target.
    pub fn invariants_hold(&self) -> bool {
        self.max_sum_error < SUM_TOL
            && self.max_uv_sum_error < SUM_TOL
            && self.max_cycle_residual < CYCLE_TOL
            && (self.degenerate || self.distinct_orbits <= 3)
    }
}

/// Summary of a batch of censuses.
#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub samples: usize,
    pub max_distinct_orbits: usize,
    pub min_distinct_orbits: usize,
    pub degenerate_samples: usize,
    pub all_invariants_hold: bool,
}

/// `C(v, S5) = Σ c_k v^(15-k)` from the coefficient table, over `Q[v, S5]`.
pub fn census_polynomial() -> Result<MultiPoly> {
    let g = Golden::period(5)?;
    let target = VarSet::new(["v", "S5"])?;
    let mut out = MultiPoly::zero(&target);
    for k in 0..=15u32 {
        let ck = g.get(&format!("c{k}"))?.to_ring(&target)?;
        out = &out + &ck.mul_term(&Monomial::var(2, 0, 15 - k), &crate::ring::int(1));
    }
    Ok(out)
}

struct Lifter {
    p5: MultiPoly,
    b5: MultiPoly,
    p5_u: MultiPoly,
    p5_v: MultiPoly,
    b5_u: MultiPoly,
    b5_v: MultiPoly,
}

impl Lifter {
    fn new() -> Result<Self> {
        let ring = crate::dynamics::sum_ring(5);
        let p5 = period_curve_unchecked(5)?.poly.to_ring(&ring)?;
        let b5 = sum_constraint(5)?.poly;
        Ok(Lifter {
            p5_u: p5.derivative("u")?,
            p5_v: p5.derivative("v")?,
            b5_u: b5.derivative("u")?,
            b5_v: b5.derivative("v")?,
            p5,
            b5,
        })
    }

    /// Common root in `u` of `P_5(u, v)` and `B_5(u, v, s)`, with the gaps
    /// of the best and second-best root pairs.
    fn lift(&self, v: Complex64, s: Complex64) -> Result<(Complex64, f64, f64)> {
        let zero = Complex64::new(0.0, 0.0);
        let pu = ComplexPoly::from_multipoly(&self.p5, "u", &[zero, v, s])?;
        let bu = ComplexPoly::from_multipoly(&self.b5, "u", &[zero, v, s])?;
        let pr = find_roots(&pu)?.roots;
        let br = find_roots(&bu)?.roots;
        let mut pairs: Vec<(f64, Complex64)> = Vec::new();
        for a in &pr {
            for b in &br {
                let gap = (a - b).norm() / a.norm().max(1.0);
                pairs.push((gap, (a + b) / 2.0));
            }
        }
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        let (gap, u) = pairs[0];
        let runner_up = pairs.get(1).map_or(f64::INFINITY, |p| p.0);
        if !(gap < LIFT_TOL) {
            return Err(Error::LiftFailure(format!(
                "no common u-root at v = {v} (closest pair {gap:e})"
            )));
        }
        Ok((u, gap, runner_up))
    }

    /// Newton on `(P_5, B_5) = 0` in `(u, v)` with the sum held fixed.
    fn polish(&self, mut u: Complex64, mut v: Complex64, s: Complex64) -> Result<(Complex64, Complex64)> {
        for _ in 0..4 {
            let pt = [u, v, s];
            let f = self.p5.eval_complex(&pt)?;
            let g = self.b5.eval_complex(&pt)?;
            let (a, b) = (self.p5_u.eval_complex(&pt)?, self.p5_v.eval_complex(&pt)?);
            let (c, d) = (self.b5_u.eval_complex(&pt)?, self.b5_v.eval_complex(&pt)?);
            let det = a * d - b * c;
            if det.norm() == 0.0 {
                break;
            }
            let du = (f * d - b * g) / det;
            let dv = (a * g - f * c) / det;
            let (nu, nv) = (u - du, v - dv);
            if !(nu.re.is_finite() && nu.im.is_finite() && nv.re.is_finite() && nv.im.is_finite()) {
                break;
            }
            let before = f.norm() + g.norm();
            let after = self.p5.eval_complex(&[nu, nv, s])?.norm() + self.b5.eval_complex(&[nu, nv, s])?.norm();
            if after > before {
                break;
            }
            u = nu;
            v = nv;
        }
        Ok((u, v))
    }
}

/// Newton on `x_i^2 + c = x_{i+1}` in the cycle points at fixed `c`,
/// keeping the iterate with the smallest residual.
fn polish_cycle(c: Complex64, mut x: Vec<Complex64>) -> Vec<Complex64> {
    let n = x.len();
    let residual = |x: &[Complex64]| (0..n).map(|i| (x[i] * x[i] + c - x[(i + 1) % n]).norm()).fold(0.0, f64::max);
    let mut best = residual(&x);
    for _ in 0..8 {
        let mut a = vec![vec![Complex64::new(0.0, 0.0); n + 1]; n];
        for i in 0..n {
            a[i][i] = 2.0 * x[i];
            a[i][(i + 1) % n] -= 1.0;
            a[i][n] = -(x[i] * x[i] + c - x[(i + 1) % n]);
        }
        let Some(delta) = solve_dense(a) else { break };
        let next: Vec<Complex64> = x.iter().zip(&delta).map(|(xi, d)| xi + d).collect();
        let r = residual(&next);
        if !(r < best) {
            break;
        }
        best = r;
        x = next;
    }
    x
}

/// Gaussian elimination with partial pivoting on an augmented matrix.
fn solve_dense(mut a: Vec<Vec<Complex64>>) -> Option<Vec<Complex64>> {
    let m = a.len();
    for col in 0..m {
        let piv = (col..m).max_by(|&i, &j| a[i][col].norm().total_cmp(&a[j][col].norm()))?;
        if a[piv][col].norm() == 0.0 {
            return None;
        }
        a.swap(col, piv);
        for row in col + 1..m {
            let f = a[row][col] / a[col][col];
            for k in col..=m {
                let t = a[col][k];
                a[row][k] -= f * t;
            }
        }
    }
    let mut out = vec![Complex64::new(0.0, 0.0); m];
    for row in (0..m).rev() {
        let tail: Complex64 = (row + 1..m).map(|k| a[row][k] * out[k]).sum();
        out[row] = (a[row][m] - tail) / a[row][row];
    }
    Some(out)
}

/// Finds the roots of `C(v, s)`, lifts each unobstructed root to a point
/// `(u, v)` of `V(P_5, B_5)`, rebuilds the period-five cycle of `x^2 + c`
/// through it and groups the cycles.
pub fn sum_census(s5: Complex64) -> Result<SumCensus> {
    let lifter = Lifter::new()?;
    let cpoly = census_polynomial()?;
    sum_census_with(&lifter, &cpoly, s5)
}

fn sum_census_with(lifter: &Lifter, cpoly: &MultiPoly, s5: Complex64) -> Result<SumCensus> {
    if !(s5.re.is_finite() && s5.im.is_finite()) {
        return Err(Error::InvalidArgument("sum must be finite".into()));
    }
    let zero = Complex64::new(0.0, 0.0);
    let eliminant = ComplexPoly::from_multipoly(cpoly, "v", &[zero, s5])?;
    let roots = find_roots(&eliminant)?;
    let mut lifted: Vec<LiftedPoint> = Vec::new();
    let mut excluded = Vec::new();
    let mut orbits: Vec<CensusOrbit> = Vec::new();
    for &v0 in &roots.roots {
        if v0.norm() < OBSTRUCTION_TOL || (v0 - 1.0).norm() < OBSTRUCTION_TOL {
            excluded.push(ExcludedRoot {
                v: v0,
                note: "leading coefficients of P5 and B5 in u vanish; lift not guaranteed".into(),
            });
            continue;
        }
        let (u0, lift_gap, runner_up_gap) = lifter.lift(v0, s5)?;
        let (u, v) = lifter.polish(u0, v0, s5)?;
        let (x0, _, c) = uv_to_orbit_data(u, v)?;
        let pts = iterate_quadratic(c, x0, 5);
        let scale = x0.norm().max(1.0);
        if (1..5).any(|k| (pts[k] - x0).norm() <= GROUP_TOL * scale) {
            return Err(Error::LiftFailure(format!("lift of v = {v0} has period below five")));
        }
        let orbit_id = match orbits.iter().position(|o| {
            (o.c - c).norm() < GROUP_TOL * c.norm().max(1.0)
                && o.points.iter().any(|p| (p - x0).norm() < GROUP_TOL * scale)
        }) {
            Some(i) => i,
            None => {
                let cyc = cycle_from_points(c, polish_cycle(c, pts[..5].to_vec()));
                let n = cyc.points.len();
                let u_sum: Complex64 = (0..n).map(|i| cyc.points[i] + cyc.points[(i + 1) % n]).sum();
                let v_sum: Complex64 = (0..n).map(|i| cyc.points[i] + cyc.points[(i + 2) % n]).sum();
                orbits.push(CensusOrbit {
                    id: orbits.len(),
                    c,
                    sum: cyc.sum,
                    u_sum,
                    v_sum,
                    cycle_residual: cyc.residual,
                    points: cyc.points,
                    members: Vec::new(),
                });
                orbits.len() - 1
            }
        };
        orbits[orbit_id].members.push(lifted.len());
        lifted.push(LiftedPoint {
            v,
            u,
            c,
            lift_gap,
            runner_up_gap,
            orbit_id,
        });
    }
    let max_sum_error = orbits.iter().map(|o| (o.sum - s5).norm()).fold(0.0, f64::max);
    let max_uv_sum_error = orbits
        .iter()
        .map(|o| (o.u_sum - 2.0 * s5).norm().max((o.v_sum - 2.0 * s5).norm()))
        .fold(0.0, f64::max);
    let max_cycle_residual = orbits.iter().map(|o| o.cycle_residual).fold(0.0, f64::max);
    let degenerate = roots.min_gap.is_some_and(|g| g < 1e-7) || orbits.iter().any(|o| o.members.len() != 5);
    Ok(SumCensus {
        s5,
        eliminant: eliminant.coeffs().to_vec(),
        distinct_orbits: orbits.len(),
        roots,
        lifted,
        excluded,
        orbits,
        max_sum_error,
        max_uv_sum_error,
        max_cycle_residual,
        degenerate,
    })
}

/// Runs [`sum_census`] at each given sum and at `random` further sums drawn
/// uniformly from `[-2, 2] × [-2, 2]i` with a seeded generator.
pub fn census_sweep(fixed: &[Complex64], random: usize, seed: u64) -> Result<(Vec<SumCensus>, SweepSummary)> {
    let lifter = Lifter::new()?;
    let cpoly = census_polynomial()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut targets = fixed.to_vec();
    for _ in 0..random {
        targets.push(Complex64::new(rng.gen_range(-2.0..=2.0), rng.gen_range(-2.0..=2.0)));
    }
    let mut out = Vec::with_capacity(targets.len());
    for s in targets {
        out.push(sum_census_with(&lifter, &cpoly, s)?);
    }
    let summary = SweepSummary {
        samples: out.len(),
        max_distinct_orbits: out.iter().map(|c| c.distinct_orbits).max().unwrap_or(0),
        min_distinct_orbits: out.iter().map(|c| c.distinct_orbits).min().unwrap_or(0),
        degenerate_samples: out.iter().filter(|c| c.degenerate).count(),
        all_invariants_hold: out.iter().all(SumCensus::invariants_hold),
    };
    Ok((out, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_polynomial_shape() {
        let c = census_polynomial().unwrap();
        assert_eq!(c.degree_in("v").unwrap(), Some(15));
        assert_eq!(c.degree_in("S5").unwrap(), Some(7));
    }

    #[test]
    fn zero_sum_gives_three_cycles() {
        let c = sum_census(Complex64::new(0.0, 0.0)).unwrap();
        assert_eq!(c.roots.roots.len(), 15);
        assert_eq!(c.roots.real_count, 5);
        assert!(c.excluded.is_empty());
        assert_eq!(c.distinct_orbits, 3);
        assert!(!c.degenerate);
        assert!(c.invariants_hold(), "{c:?}");
    }
}
