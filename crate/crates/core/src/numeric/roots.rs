use num_complex::Complex64;
use serde::Serialize;

use super::ComplexPoly;
use crate::error::{Error, Result};

/// Tuning for [`find_roots_with`].
#[derive(Clone, Debug)]
pub struct RootOptions {
    pub max_sweeps: usize,
    /// Stop once every correction is below `step_tol · max(1, |z|)`.
    pub step_tol: f64,
    /// Bound on the relative residual of every accepted root.
    pub residual_tol: f64,
    /// A root is real when `|Im z| <= real_tol · max(1, |z|)`.
    pub real_tol: f64,
    pub newton_steps: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions {
            max_sweeps: 1000,
            step_tol: 1e-13,
            residual_tol: 1e-9,
            real_tol: 1e-7,
            newton_steps: 3,
        }
    }
}

/// All roots of a polynomial with their residuals.
#[derive(Clone, Debug, Serialize)]
pub struct RootCensus {
    /// Sorted by real part, then imaginary part.
    pub roots: Vec<Complex64>,
    /// `|p(z)| / max(1, Σ |a_i| |z|^i)` per root.
    pub residuals: Vec<f64>,
    pub real_count: usize,
    /// Smallest pairwise distance; absent for a single root.
    pub min_gap: Option<f64>,
    pub sweeps: usize,
    /// False when the sweep limit was hit but every residual still met the
    /// bound (typical for clustered roots).
    pub converged: bool,
}

impl RootCensus {
    pub fn is_real(&self, i: usize, real_tol: f64) -> bool {
        let z = self.roots[i];
        z.im.abs() <= real_tol * z.norm().max(1.0)
    }

    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }
}

pub fn find_roots(p: &ComplexPoly) -> Result<RootCensus> {
    find_roots_with(p, &RootOptions::default())
}

/// Durand–Kerner iteration from the seeds `r · (0.4 + 0.9i)^k`, where `r`
/// is a Fujiwara-type radius, followed by Newton polishing on `p`.
pub fn find_roots_with(p: &ComplexPoly, opts: &RootOptions) -> Result<RootCensus> {
    let n = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::InvalidArgument("root finding needs degree >= 1".into())),
    };
    let a = p.coeffs();
    if a.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
        return Err(Error::InvalidArgument("non-finite coefficient".into()));
    }
    let lead = a[n];
    let monic: Vec<Complex64> = a.iter().map(|c| c / lead).collect();
    let monic = ComplexPoly::new(monic);

    let radius = (1..=n)
        .map(|k| monic.coeffs()[n - k].norm().powf(1.0 / k as f64))
        .fold(0.0, f64::max);
    let radius = if radius > 0.0 { radius } else { 1.0 };
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32) * radius).collect();

    let mut sweeps = 0;
    let mut last_step = f64::INFINITY;
    let mut converged = false;
    while sweeps < opts.max_sweeps {
        sweeps += 1;
        last_step = 0.0;
        let mut worst = 0.0f64;
        for i in 0..n {
            let zi = z[i];
            let mut denom = Complex64::new(1.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    let d = zi - zj;
                    denom *= if d == Complex64::new(0.0, 0.0) {
                        Complex64::new(1e-300, 0.0)
                    } else {
                        d
                    };
                }
            }
            let w = monic.eval(zi) / denom;
            if w.re.is_finite() && w.im.is_finite() {
                z[i] = zi - w;
                last_step = last_step.max(w.norm());
                worst = worst.max(w.norm() / zi.norm().max(1.0));
            }
        }
        if worst < opts.step_tol {
            converged = true;
            break;
        }
    }

    let dp = p.derivative();
    for zi in z.iter_mut() {
        for _ in 0..opts.newton_steps {
            let f = p.eval(*zi);
            let d = dp.eval(*zi);
            if d.norm() == 0.0 {
                break;
            }
            let cand = *zi - f / d;
            if cand.re.is_finite() && cand.im.is_finite() && p.eval(cand).norm() < f.norm() {
                *zi = cand;
            } else {
                break;
            }
        }
    }

    z.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    let residuals: Vec<f64> = z.iter().map(|&zi| p.relative_residual(zi)).collect();
    if residuals.iter().any(|r| !(*r <= opts.residual_tol)) {
        return Err(Error::Convergence {
            sweeps,
            last_step,
            partial: z,
        });
    }
    let real_count = z
        .iter()
        .filter(|w| w.im.abs() <= opts.real_tol * w.norm().max(1.0))
        .count();
    let mut min_gap: Option<f64> = None;
    for i in 0..n {
        for j in i + 1..n {
            let g = (z[i] - z[j]).norm();
            min_gap = Some(min_gap.map_or(g, |m| m.min(g)));
        }
    }
    Ok(RootCensus {
        roots: z,
        residuals,
        real_count,
        min_gap,
        sweeps,
        converged,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn quadratic_and_cubic() {
        let c = find_roots(&ComplexPoly::from_real(&[1.0, 0.0, 1.0])).unwrap();
        assert_eq!(c.real_count, 0);
        assert!(close(c.roots[0], Complex64::new(0.0, -1.0)));
        assert!(close(c.roots[1], Complex64::new(0.0, 1.0)));
        let c = find_roots(&ComplexPoly::from_real(&[-1.0, 0.0, 0.0, 1.0])).unwrap();
        assert_eq!(c.real_count, 1);
        for z in &c.roots {
            assert!((z.powu(3) - 1.0).norm() < 1e-12);
        }
        assert!((c.min_gap.unwrap() - 3f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn wide_root_scales() {
        // roots 1e-3, 1, 1e6
        let q = ComplexPoly::from_real(&[-1e-3, 1.0])
            .mul(&ComplexPoly::from_real(&[-1.0, 1.0]))
            .mul(&ComplexPoly::from_real(&[-1e6, 1.0]));
        let c = find_roots(&q).unwrap();
        assert_eq!(c.real_count, 3);
        assert!((c.roots[2].re - 1e6).abs() < 1e-6);
        assert!((c.roots[0].re - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn double_root_accepted_by_residual() {
        // (x - 1)^2 (x + 2)
        let q = ComplexPoly::from_real(&[2.0, -3.0, 0.0, 1.0]);
        let c = find_roots(&q).unwrap();
        assert!(c.max_residual() <= 1e-9);
        assert!((c.roots[0].re + 2.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_constants() {
        assert!(find_roots(&ComplexPoly::from_real(&[3.0])).is_err());
    }
}
