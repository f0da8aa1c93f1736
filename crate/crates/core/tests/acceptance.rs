//! Acceptance suite: one PASS/FAIL line per criterion, then a nonzero exit
//! status if any criterion failed.

use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbitsum::dynamics::{
    curve_residual, period_curve, sum_constraint, sum_ring, uv_step_numeric, validation_orbits, xy_to_uv,
};
use orbitsum::groebner::{buchberger, certify, extension_report, is_reduced, BuchbergerConfig, IdealBasis};
use orbitsum::numeric::{census_sweep, find_roots, orbit_oracle, ComplexPoly, NumericOrbit};
use orbitsum::ring::{
    divide_multi, is_fully_reduced, BaseOrder, Block, Monomial, MonomialOrder, MultiPoly, RationalFunction, Scalar,
    VarSet,
};
use orbitsum::verify::{verify, Status, VerificationReport};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

type Criterion = fn(&mut Shared) -> Result<Outcome, String>;

#[derive(Default)]
struct Shared {
    reports: Vec<VerificationReport>,
}

fn main() {
    let criteria: [(&str, Criterion, Duration); 9] = [
        ("period-3 pipeline", period_three, Duration::from_secs(1)),
        ("period-4 pipeline", period_four, Duration::from_secs(5)),
        ("period-5 pipeline", period_five, Duration::from_secs(600)),
        ("extension analysis", extension, Duration::MAX),
        ("specialization at S5 = 0", specialization, Duration::MAX),
        ("three-valuedness", three_valued, Duration::from_secs(30)),
        ("plane sums of cycles", plane_sums, Duration::MAX),
        ("curve validation", curve_validation, Duration::MAX),
        ("algebra properties", algebra_properties, Duration::MAX),
    ];
    let mut shared = Shared::default();
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run(&mut shared);
        let elapsed = start.elapsed();
        let (pass, mut detail) = match result {
            Ok(o) => (o.pass, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        let in_time = elapsed < *limit;
        if !in_time {
            detail.push_str(&format!("; over the {:.0} s limit", limit.as_secs_f64()));
        }
        let pass = pass && in_time;
        if !pass {
            failed += 1;
        }
        println!(
            "[{}] criterion {}: {name} ({:.3} s) {detail}",
            if pass { "PASS" } else { "FAIL" },
            k + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn poly(text: &str, ring: &VarSet) -> Result<MultiPoly, String> {
    MultiPoly::parse(text, ring).map_err(err)
}

fn check_passes(report: &VerificationReport, names: &[&str]) -> Result<(), String> {
    for name in names {
        match report.check(name) {
            Some(c) if c.status == Status::Pass => {}
            Some(c) => return Err(format!("{}: check `{name}` is {:?}", report.name, c.status)),
            None => return Err(format!("{}: check `{name}` missing", report.name)),
        }
    }
    Ok(())
}

fn ideal(n: u32) -> Result<IdealBasis, String> {
    let ring = sum_ring(n);
    let p = period_curve(n).map_err(err)?.poly.to_ring(&ring).map_err(err)?;
    let b = sum_constraint(n).map_err(err)?.poly;
    IdealBasis::new(vec![p, b]).map_err(err)
}

/// `g = a·S + b` solved for `S`.
fn solve_linear(g: &MultiPoly, sym: &str) -> Result<RationalFunction, String> {
    let coeffs = g.coefficients_in(sym).map_err(err)?;
    if coeffs.len() != 2 {
        return Err(format!("not linear in {sym}"));
    }
    RationalFunction::new(-&coeffs[0], coeffs[1].clone()).map_err(err)
}

fn period_three(shared: &mut Shared) -> Result<Outcome, String> {
    let ring = sum_ring(3);
    let g = buchberger(&ideal(3)?, &MonomialOrder::Lex, &BuchbergerConfig::default()).map_err(err)?;
    let expected = [
        poly("v^3 - 2*v^2*S3 - 2*v*S3 - 3*v - 1", &ring)?,
        poly("u + v^2 - 2*v*S3 - 2*S3 - 2", &ring)?,
    ];
    let matches = g.basis.len() == 2
        && expected
            .iter()
            .all(|e| g.basis.iter().any(|b| b.equal_up_to_scalar(e)));
    let s3 = solve_linear(&g.basis[0], "S3")?;
    let closed = RationalFunction::new(poly("-1 - 3*v + v^3", &ring)?, poly("2*v*(v + 1)", &ring)?).map_err(err)?;
    let closed_ok = s3.cross_equal(&closed);
    let report = verify(3, "u", &BuchbergerConfig::default()).map_err(err)?;
    check_passes(&report, &["groebner certificate", "g31", "g32", "closed form S3"])?;
    shared.reports.push(report);
    Ok(outcome(
        matches && closed_ok,
        format!("basis matches: {matches}; S3 = {s3} cross-multiplies to the closed form: {closed_ok}"),
    ))
}

fn period_four(shared: &mut Shared) -> Result<Outcome, String> {
    let ring = sum_ring(4);
    let g = buchberger(&ideal(4)?, &MonomialOrder::Lex, &BuchbergerConfig::default()).map_err(err)?;
    let g41 = poly("v^4 - v^3*S4 + v^3 - v^2*S4 - v^2 - v", &ring)?;
    let found = g.basis.iter().any(|b| b.equal_up_to_scalar(&g41));
    let s4 = solve_linear(&g41, "S4")?;
    let closed = RationalFunction::new(poly("v^2 - 1", &ring)?, poly("v", &ring)?).map_err(err)?;
    let closed_ok = s4.cross_equal(&closed) && s4.denominator().num_terms() == 1;
    let u = verify(4, "u", &BuchbergerConfig::default()).map_err(err)?;
    check_passes(&u, &["groebner certificate", "g41", "closed form S4"])?;
    let v = verify(4, "v", &BuchbergerConfig::default()).map_err(err)?;
    check_passes(&v, &["groebner certificate", "G4v"])?;
    shared.reports.push(u);
    shared.reports.push(v);
    Ok(outcome(
        found && closed_ok,
        format!("g41 in basis: {found}; S4 simplifies to {s4}; eliminating v matches G4v"),
    ))
}

fn period_five(shared: &mut Shared) -> Result<Outcome, String> {
    let report = verify(5, "u", &BuchbergerConfig::default()).map_err(err)?;
    check_passes(
        &report,
        &["groebner certificate", "eliminant count", "eliminant factors", "eliminant degrees"],
    )?;
    let coeffs = report.check("C coefficients").ok_or("C coefficients missing")?;
    let arbitrated = coeffs.actual["resultant_divisible_by_computed"] == true;
    let coeff_ok = match coeffs.status {
        Status::Pass => true,
        Status::Discrepancy => arbitrated,
        Status::Fail => false,
    };
    let detail = format!(
        "C coefficients {:?} (scalar {}, resultant divisible: {arbitrated}); factors {}; degrees {}",
        coeffs.status,
        coeffs.actual["scalar"],
        report.check("eliminant factors").map(|c| c.actual.to_string()).unwrap_or_default(),
        report.check("eliminant degrees").map(|c| c.actual.to_string()).unwrap_or_default(),
    );
    shared.reports.push(report);
    Ok(outcome(coeff_ok, detail))
}

fn extension(_: &mut Shared) -> Result<Outcome, String> {
    let ring = sum_ring(5);
    let report = extension_report(&ideal(5)?, "u").map_err(err)?;
    let lcs = report.obstruction_polys();
    let a7 = poly("-v^4 + 2*v^3 - v^2", &ring)?;
    let b4 = poly("2*v^2 - 2*v", &ring)?;
    let lc_ok = lcs.len() == 2 && lcs[0] == a7 && lcs[1] == b4;
    let locus = report.obstruction_locus();
    let locus_ok = locus.exact
        && !locus.empty
        && locus
            .split
            .as_ref()
            .is_some_and(|(var, roots)| var == "v" && roots == &["0".to_string(), "1".to_string()]);
    Ok(outcome(
        lc_ok && locus_ok,
        format!(
            "leading coefficients [{}]; locus gcd {} split {:?}",
            lcs.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", "),
            locus.gcd,
            locus.split
        ),
    ))
}

const S0_TEXT: &str = "27*v^15 - 684*v^13 + 556*v^12 + 4002*v^11 - 4336*v^10 - 8380*v^9 + 14868*v^8 \
    + 4003*v^7 - 19924*v^6 + 5736*v^5 + 10380*v^4 - 4909*v^3 - 1934*v^2 + 1347*v - 27";

fn specialization(shared: &mut Shared) -> Result<Outcome, String> {
    let report = shared
        .reports
        .iter()
        .find(|r| r.name == "verify 5 --eliminate u")
        .ok_or("period-5 report unavailable")?;
    check_passes(report, &["C at S5 = 0"])?;
    let v = VarSet::new(["v"]).map_err(err)?;
    let printed = poly(S0_TEXT, &v)?;
    let computed_text = report.check("C at S5 = 0").map(|c| c.actual.as_str().unwrap_or("").to_string());
    let two = VarSet::new(["v", "S5"]).map_err(err)?;
    let computed = poly(&computed_text.unwrap_or_default(), &two)?.to_ring(&v).map_err(err)?;
    let exact = computed == printed;
    let coeffs: Vec<Complex64> = (0..=15)
        .map(|k| {
            let c = printed.coeff(&Monomial::new([k]));
            Complex64::new(num_traits::ToPrimitive::to_f64(&c).unwrap_or(f64::NAN), 0.0)
        })
        .collect();
    let census = find_roots(&ComplexPoly::new(coeffs)).map_err(err)?;
    let roots_ok = census.roots.len() == 15 && census.real_count == 5 && census.max_residual() < 1e-9;
    Ok(outcome(
        exact && roots_ok,
        format!(
            "coefficients exact: {exact}; {} roots, {} real, max residual {:.1e}, min gap {:.3e}",
            census.roots.len(),
            census.real_count,
            census.max_residual(),
            census.min_gap.unwrap_or(f64::NAN)
        ),
    ))
}

fn three_valued(_: &mut Shared) -> Result<Outcome, String> {
    let (censuses, summary) = census_sweep(&[Complex64::new(0.0, 0.0)], 20, 5).map_err(err)?;
    let mut ok = summary.samples == 21 && summary.all_invariants_hold && summary.max_distinct_orbits <= 3;
    for c in &censuses {
        ok &= c.lifted.len() + c.excluded.len() == c.roots.roots.len();
        ok &= c.max_cycle_residual < 1e-9 && c.max_sum_error < 1e-8;
        ok &= c.degenerate || c.distinct_orbits == 3;
    }
    let worst_sum = censuses.iter().map(|c| c.max_sum_error).fold(0.0, f64::max);
    let worst_cycle = censuses.iter().map(|c| c.max_cycle_residual).fold(0.0, f64::max);
    Ok(outcome(
        ok,
        format!(
            "{} sums, orbits per sum {}..{}, {} degenerate, max sum error {worst_sum:.1e}, max cycle residual {worst_cycle:.1e}",
            summary.samples, summary.min_distinct_orbits, summary.max_distinct_orbits, summary.degenerate_samples
        ),
    ))
}

/// Ten non-degenerate cycles of exact period `n` at seeded random parameters.
fn sample_orbits(n: u32, rng: &mut ChaCha8Rng) -> Result<Vec<NumericOrbit>, String> {
    let mut out = Vec::new();
    while out.len() < 10 {
        let c = Complex64::new(rng.gen_range(-2.0..0.5), rng.gen_range(-1.2..1.2));
        let orbits = orbit_oracle(c, n).map_err(err)?;
        if let Some(o) = orbits.into_iter().find(|o| !o.degenerate) {
            out.push(o);
        }
    }
    Ok(out)
}

fn plane_sums(_: &mut Shared) -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for n in 3..=5u32 {
        for o in sample_orbits(n, &mut rng)? {
            // sums along the plane map, started from the first point
            let mut p = xy_to_uv(o.points[0], o.points[1]);
            let (mut su, mut sv) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
            for _ in 0..n {
                su += p.0;
                sv += p.1;
                p = uv_step_numeric(p).map_err(err)?;
            }
            let twice = 2.0 * o.sum;
            worst = worst.max((su - twice).norm()).max((sv - twice).norm());
        }
    }
    Ok(outcome(worst < 1e-10, format!("30 cycles, max |sum - 2 sum x| = {worst:.1e}")))
}

fn curve_validation(_: &mut Shared) -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 3..=5u32 {
        let p = period_curve(n).map_err(err)?.poly;
        let mut orbits = validation_orbits(n).map_err(err)?;
        orbits.extend(sample_orbits(n, &mut rng)?);
        let on = curve_residual(&p, &orbits).map_err(err)?;
        let mut off = f64::INFINITY;
        for _ in 0..100 {
            let u = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            let v = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            off = off.min(p.eval_complex(&[u, v]).map_err(err)?.norm());
        }
        ok &= on < 1e-8 && off > 1e-3;
        parts.push(format!("P{n}: on cycles {on:.1e}, off cycles >= {off:.1e}"));
    }
    Ok(outcome(ok, parts.join("; ")))
}

fn random_poly(rng: &mut ChaCha8Rng, ring: &VarSet, terms: usize, max_exp: u32) -> MultiPoly {
    MultiPoly::from_terms(
        ring,
        (0..terms).map(|_| {
            let m = Monomial::new((0..ring.len()).map(|_| rng.gen_range(0..=max_exp)));
            let c = Scalar::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into());
            (m, c)
        }),
    )
}

fn orders() -> Vec<MonomialOrder> {
    vec![
        MonomialOrder::Lex,
        MonomialOrder::Grlex,
        MonomialOrder::Grevlex,
        MonomialOrder::Block(vec![
            Block {
                len: 1,
                order: BaseOrder::Lex,
            },
            Block {
                len: 2,
                order: BaseOrder::Grevlex,
            },
        ]),
    ]
}

fn algebra_properties(shared: &mut Shared) -> Result<Outcome, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let ring = VarSet::new(["x", "y", "z"]).map_err(err)?;
    let orders = orders();

    let mut division_failures = 0;
    for k in 0..1000 {
        let ord = &orders[k % orders.len()];
        let f = random_poly(&mut rng, &ring, 6, 4);
        let divisors: Vec<MultiPoly> = (0..rng.gen_range(1..=3))
            .map(|_| random_poly(&mut rng, &ring, 3, 2))
            .filter(|d| !d.is_zero())
            .collect();
        if divisors.is_empty() {
            continue;
        }
        let d = divide_multi(&f, &divisors, ord).map_err(err)?;
        let mut back = d.remainder.clone();
        for (q, g) in d.quotients.iter().zip(&divisors) {
            back = &back + &(q * g);
        }
        if back != f || !is_fully_reduced(&d.remainder, &divisors, ord) {
            division_failures += 1;
        }
    }

    let mut order_failures = 0;
    for _ in 0..1000 {
        let mono = |rng: &mut ChaCha8Rng| Monomial::new((0..3).map(|_| rng.gen_range(0..5u32)));
        let (a, b, c) = (mono(&mut rng), mono(&mut rng), mono(&mut rng));
        for ord in &orders {
            let ab = ord.cmp(&a, &b);
            let total = ab == ord.cmp(&b, &a).reverse() && (ab.is_eq() == (a == b));
            let multiplicative = ord.cmp(&a.mul(&c), &b.mul(&c)) == ab;
            let well = ord.cmp(&Monomial::one(3), &a).is_le();
            let transitive = !(ab.is_lt() && ord.cmp(&b, &c).is_lt()) || ord.cmp(&a, &c).is_lt();
            if !(total && multiplicative && well && transitive) {
                order_failures += 1;
            }
        }
    }

    let mut bases = 0;
    let mut basis_failures = 0;
    for k in 0..40 {
        let ord = &orders[k % orders.len()];
        let gens: Vec<MultiPoly> = (0..3)
            .map(|_| random_poly(&mut rng, &ring, 3, 2))
            .filter(|g| !g.is_zero())
            .collect();
        let Ok(ideal) = IdealBasis::new(gens) else { continue };
        let g = buchberger(&ideal, ord, &BuchbergerConfig::default()).map_err(err)?;
        bases += 1;
        let cert = certify(&g.basis, ord).map_err(err)?;
        let members = ideal
            .generators()
            .iter()
            .all(|f| orbitsum::ring::reduce(f, &g.basis, ord).is_ok_and(|r| r.is_zero()));
        if !(cert.holds() && members && is_reduced(&g.basis, ord)) {
            basis_failures += 1;
        }
    }
    let mut pipeline_bases = 0;
    for r in &shared.reports {
        pipeline_bases += 1;
        if r.check("groebner certificate").map(|c| c.status) != Some(Status::Pass) {
            basis_failures += 1;
        }
    }
    Ok(outcome(
        division_failures == 0 && order_failures == 0 && basis_failures == 0,
        format!(
            "1000 divisions: {division_failures} failures; 4000 order triples: {order_failures} failures; \
             {} certified bases: {basis_failures} failures",
            bases + pipeline_bases
        ),
    ))
}
