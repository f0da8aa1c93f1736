//! Buchberger's algorithm over `Q` with the normal selection strategy and
//! the Gebauer–Möller pair update (coprime and chain criteria).
//!
//! Internally every polynomial is a primitive integer polynomial stored as
//! a term vector sorted decreasingly under the active order. Reduction is
//! fraction-free: `p <- a·p - b·m·g` with `a, b` cofactors of the leading
//! coefficients, followed by content removal.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::IdealBasis;
use crate::error::{Error, Result};
use crate::ring::{BaseOrder, Block, Monomial, MonomialOrder, MultiPoly, Scalar, VarSet};

/// Default cap on the number of S-pair reductions.
pub const DEFAULT_PAIR_BUDGET: usize = 200_000;

/// Order in which critical pairs are processed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Selection {
    /// Smallest lcm under the active order.
    Normal,
    /// Smallest sugar degree, ties by smallest lcm.
    Sugar,
}

#[derive(Clone, Debug)]
pub struct BuchbergerConfig {
    /// Hard cap on pair reductions; exceeding it is an error.
    pub max_reductions: usize,
    pub selection: Selection,
    /// Reduce S-polynomial tails as well as heads inside the main loop.
    pub full_reduction: bool,
    /// Run on the homogenized ideal and dehomogenize the result.
    pub homogenize: bool,
}

impl Default for BuchbergerConfig {
    fn default() -> Self {
        BuchbergerConfig {
            max_reductions: DEFAULT_PAIR_BUDGET,
            selection: Selection::Normal,
            full_reduction: true,
            homogenize: false,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairStats {
    pub pairs_formed: usize,
    pub pairs_skipped: usize,
    pub reductions: usize,
    pub zero_reductions: usize,
}

/// Reduced Groebner basis, sorted by increasing leading monomial, each
/// element in primitive integer form with positive leading coefficient.
#[derive(Clone, Debug)]
pub struct GroebnerResult {
    pub ring: VarSet,
    pub order: MonomialOrder,
    pub basis: Vec<MultiPoly>,
    pub stats: PairStats,
}

#[derive(Clone, Debug)]
struct IPoly {
    terms: Vec<(Monomial, BigInt)>,
    sugar: u64,
}

impl IPoly {
    fn from_poly(p: &MultiPoly, ord: &MonomialOrder) -> IPoly {
        let prim = p.primitive(ord);
        let terms = prim
            .terms_desc(ord)
            .into_iter()
            .map(|(m, c)| (m.clone(), c.numer().clone()))
            .collect();
        let sugar = p.total_degree().unwrap_or(0);
        IPoly { terms, sugar }
    }

    fn to_poly(&self, ring: &VarSet) -> MultiPoly {
        MultiPoly::from_terms(
            ring,
            self.terms
                .iter()
                .map(|(m, c)| (m.clone(), Scalar::from_integer(c.clone()))),
        )
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_primitive(&mut self) {
        if self.terms.is_empty() {
            return;
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in &mut self.terms {
                *c /= &g;
            }
        }
    }
}

/// `a·p - b·m·g`, dropping the (cancelling) leading terms of both.
fn combine(
    p: Vec<(Monomial, BigInt)>,
    a: &BigInt,
    g: &[(Monomial, BigInt)],
    b: &BigInt,
    m: &Monomial,
    ord: &MonomialOrder,
) -> Vec<(Monomial, BigInt)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let a_one = a.is_one();
    let mut p = p.into_iter().skip(1).peekable();
    let mut g = g.iter().skip(1).map(|(gm, c)| (gm.mul(m), c)).peekable();
    loop {
        let take = match (p.peek(), g.peek()) {
            (None, None) => break,
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (Some(x), Some(y)) => ord.cmp(&x.0, &y.0),
        };
        match take {
            Ordering::Greater => {
                let (pm, mut c) = p.next().unwrap();
                if !a_one {
                    c *= a;
                }
                out.push((pm, c));
            }
            Ordering::Less => {
                let (gm, c) = g.next().unwrap();
                out.push((gm, -(c * b)));
            }
            Ordering::Equal => {
                let (pm, mut c) = p.next().unwrap();
                let (_, d) = g.next().unwrap();
                if !a_one {
                    c *= a;
                }
                c -= d * b;
                if !c.is_zero() {
                    out.push((pm, c));
                }
            }
        }
    }
    out
}

fn cofactors(x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
    let g = x.gcd(y);
    let (mut a, mut b) = (x / &g, y / &g);
    if a.is_negative() {
        a = -a;
        b = -b;
    }
    (a, b)
}

/// Fully reduces `f` modulo `basis` (top and tail), fraction-free.
fn reduce_full(f: &IPoly, basis: &[&IPoly], ord: &MonomialOrder) -> IPoly {
    reduce(f, basis, ord, true)
}

/// Fraction-free reduction; with `full == false` only the head is reduced.
fn reduce(f: &IPoly, basis: &[&IPoly], ord: &MonomialOrder, full: bool) -> IPoly {
    let mut p = f.terms.clone();
    let mut sugar = f.sugar;
    let mut r: Vec<(Monomial, BigInt)> = Vec::new();
    let mut start = 0usize;
    let mut steps = 0usize;
    while start < p.len() {
        let (lm, lc) = (&p[start].0, &p[start].1);
        let hit = basis
            .iter()
            .filter(|g| g.lm().divides(lm))
            .min_by_key(|g| (g.lc().bits(), g.terms.len()));
        match hit {
            Some(g) => {
                let m = lm.div(g.lm()).unwrap();
                sugar = sugar.max(g.sugar + m.total_degree());
                // lc(g)·p - lc(p)·m·g cancels the leading term
                let (a, b) = cofactors(g.lc(), lc);
                p = combine(p.split_off(start), &a, &g.terms, &b, &m, ord);
                start = 0;
                if !a.is_one() {
                    for (_, c) in &mut r {
                        *c *= &a;
                    }
                }
                steps += 1;
                if steps % STRIP_EVERY == 0 {
                    strip_joint_content(&mut p, &mut r);
                }
            }
            None if !full => {
                r.extend(p.drain(start..));
                break;
            }
            None => {
                r.push(p[start].clone());
                start += 1;
            }
        }
    }
    let mut out = IPoly { terms: r, sugar };
    out.make_primitive();
    out
}

const STRIP_EVERY: usize = 8;

fn strip_joint_content(p: &mut [(Monomial, BigInt)], r: &mut [(Monomial, BigInt)]) {
    let mut g = BigInt::zero();
    for (_, c) in p.iter().chain(r.iter()) {
        g = g.gcd(c);
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for (_, c) in p.iter_mut().chain(r.iter_mut()) {
        *c /= &g;
    }
}

fn s_poly_int(f: &IPoly, g: &IPoly, ord: &MonomialOrder) -> IPoly {
    let l = f.lm().lcm(g.lm());
    let mf = l.div(f.lm()).unwrap();
    let mg = l.div(g.lm()).unwrap();
    let (a, b) = cofactors(g.lc(), f.lc());
    // a·mf·f - b·mg·g
    let shifted: Vec<_> = f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect();
    let mut out = IPoly {
        terms: combine(shifted, &a, &g.terms, &b, &mg, ord),
        sugar: (f.sugar + mf.total_degree()).max(g.sugar + mg.total_degree()),
    };
    out.make_primitive();
    out
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u64,
}

/// Computes the reduced Groebner basis of `ideal` under `ord`.
///
/// With `config.homogenize` the computation runs on `f(x/h)·h^deg f` in a
/// ring with a fresh variable `h`, ordered by `ord` on the `x` part and then
/// by the power of `h`; setting `h = 1` in that basis gives a basis of the
/// original ideal.
pub fn buchberger(ideal: &IdealBasis, ord: &MonomialOrder, config: &BuchbergerConfig) -> Result<GroebnerResult> {
    let ring = ideal.ring().clone();
    let homogeneous = ideal.generators().iter().all(is_homogeneous);
    let (polys, active, stats) = if config.homogenize && !homogeneous {
        let (ext, ext_ord) = homogenized_ring(&ring, ord)?;
        let gens = ideal
            .generators()
            .iter()
            .map(|g| homogenize(g, &ext))
            .collect::<Vec<_>>();
        let (polys, active, stats) = run(&gens, &ext_ord, config)?;
        let n = ring.len();
        let polys: Vec<IPoly> = active
            .iter()
            .map(|&k| IPoly {
                terms: polys[k]
                    .terms
                    .iter()
                    .map(|(m, c)| (Monomial::new(m.exponents()[..n].iter().copied()), c.clone()))
                    .collect(),
                sugar: polys[k].sugar,
            })
            .collect();
        let active = (0..polys.len()).collect();
        (polys, active, stats)
    } else {
        run(ideal.generators(), ord, config)?
    };

    let basis = interreduce(&polys, &active, ord);
    let mut out: Vec<MultiPoly> = basis.iter().map(|p| p.to_poly(&ring)).collect();
    out.sort_by(|a, b| {
        ord.cmp(
            &a.leading_monomial(ord).unwrap(),
            &b.leading_monomial(ord).unwrap(),
        )
    });
    Ok(GroebnerResult {
        ring,
        order: ord.clone(),
        basis: out,
        stats,
    })
}

fn is_homogeneous(f: &MultiPoly) -> bool {
    let mut degs = f.terms().map(|(m, _)| m.total_degree());
    let first = degs.next();
    degs.all(|d| Some(d) == first)
}

/// Ring with an extra trailing variable and the order comparing the
/// original variables by `ord` first.
fn homogenized_ring(ring: &VarSet, ord: &MonomialOrder) -> Result<(VarSet, MonomialOrder)> {
    let n = ring.len();
    let name = (0..)
        .map(|k| if k == 0 { "h".to_string() } else { format!("h{k}") })
        .find(|h| ring.index_of(h).is_err())
        .unwrap();
    let mut names = ring.names().to_vec();
    names.push(name);
    let mut blocks = match ord {
        MonomialOrder::Lex => vec![Block { len: n, order: BaseOrder::Lex }],
        MonomialOrder::Grlex => vec![Block { len: n, order: BaseOrder::Grlex }],
        MonomialOrder::Grevlex => vec![Block { len: n, order: BaseOrder::Grevlex }],
        MonomialOrder::Block(b) => b.clone(),
    };
    blocks.push(Block { len: 1, order: BaseOrder::Lex });
    Ok((VarSet::new(names)?, MonomialOrder::Block(blocks)))
}

fn homogenize(f: &MultiPoly, ext: &VarSet) -> MultiPoly {
    let d = f.total_degree().unwrap_or(0);
    MultiPoly::from_terms(
        ext,
        f.terms().map(|(m, c)| {
            let e = m.exponents();
            let k = (d - m.total_degree()) as u32;
            (Monomial::new(e.iter().copied().chain([k])), c.clone())
        }),
    )
}

/// The main pair loop; returns all polynomials produced, the indices of the
/// current (non-redundant) basis and the counters.
fn run(gens: &[MultiPoly], ord: &MonomialOrder, config: &BuchbergerConfig) -> Result<(Vec<IPoly>, Vec<usize>, PairStats)> {
    let mut stats = PairStats::default();
    let mut polys: Vec<IPoly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // inter-reduce the input a little so duplicates and constants are caught
    for g in gens {
        let h = IPoly::from_poly(g, ord);
        let basis: Vec<&IPoly> = active.iter().map(|&k| &polys[k]).collect();
        let h = reduce_full(&h, &basis, ord);
        if h.is_zero() {
            continue;
        }
        polys.push(h);
        let idx = polys.len() - 1;
        update(&polys, &mut active, &mut pairs, idx, &mut stats);
    }

    while !pairs.is_empty() {
        // ties go to the earliest inserted pair
        let pos = (0..pairs.len())
            .min_by(|&x, &y| match config.selection {
                Selection::Normal => ord.cmp(&pairs[x].lcm, &pairs[y].lcm),
                Selection::Sugar => pairs[x]
                    .sugar
                    .cmp(&pairs[y].sugar)
                    .then_with(|| ord.cmp(&pairs[x].lcm, &pairs[y].lcm)),
            })
            .unwrap();
        let pair = pairs.remove(pos);
        if stats.reductions >= config.max_reductions {
            return Err(Error::BudgetExceeded {
                budget: config.max_reductions,
            });
        }
        stats.reductions += 1;
        let s = s_poly_int(&polys[pair.i], &polys[pair.j], ord);
        let basis: Vec<&IPoly> = active.iter().map(|&k| &polys[k]).collect();
        let h = reduce(&s, &basis, ord, config.full_reduction);
        if h.is_zero() {
            stats.zero_reductions += 1;
            continue;
        }
        polys.push(h);
        let idx = polys.len() - 1;
        update(&polys, &mut active, &mut pairs, idx, &mut stats);
    }
    Ok((polys, active, stats))
}

/// Gebauer–Möller installation of the new element `h`.
fn update(polys: &[IPoly], active: &mut Vec<usize>, pairs: &mut Vec<Pair>, h: usize, stats: &mut PairStats) {
    let lh = polys[h].lm().clone();
    let cand: Vec<Pair> = active
        .iter()
        .map(|&g| {
            let lcm = polys[g].lm().lcm(&lh);
            let deg = lcm.total_degree();
            let sugar = (polys[g].sugar + deg - polys[g].lm().total_degree())
                .max(polys[h].sugar + deg - lh.total_degree());
            Pair { i: g, j: h, lcm, sugar }
        })
        .collect();
    stats.pairs_formed += cand.len();

    // chain criterion among the new pairs
    let mut kept: Vec<Pair> = Vec::new();
    for (k, p) in cand.iter().enumerate() {
        let coprime = polys[p.i].lm().is_coprime(&lh);
        let dominated = cand.iter().enumerate().any(|(l, q)| {
            l != k && q.lcm.divides(&p.lcm) && (q.lcm != p.lcm || l < k)
        });
        if coprime || !dominated {
            kept.push(p.clone());
        } else {
            stats.pairs_skipped += 1;
        }
    }
    // coprime leading monomials
    let before = kept.len();
    kept.retain(|p| !polys[p.i].lm().is_coprime(&lh));
    stats.pairs_skipped += before - kept.len();

    // old pairs made redundant by h
    let before = pairs.len();
    pairs.retain(|p| {
        !(lh.divides(&p.lcm)
            && polys[p.i].lm().lcm(&lh) != p.lcm
            && polys[p.j].lm().lcm(&lh) != p.lcm)
    });
    stats.pairs_skipped += before - pairs.len();
    pairs.extend(kept);

    active.retain(|&g| !lh.divides(polys[g].lm()));
    active.push(h);
}

/// Minimal basis followed by tail reduction of each element.
fn interreduce(polys: &[IPoly], active: &[usize], ord: &MonomialOrder) -> Vec<IPoly> {
    let mut minimal: Vec<&IPoly> = Vec::new();
    for (k, &i) in active.iter().enumerate() {
        let li = polys[i].lm();
        let redundant = active.iter().enumerate().any(|(l, &j)| {
            l != k && polys[j].lm().divides(li) && (polys[j].lm() != li || l < k)
        });
        if !redundant {
            minimal.push(&polys[i]);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for (k, p) in minimal.iter().enumerate() {
        let others: Vec<&IPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, q)| *q)
            .collect();
        let r = reduce_full(p, &others, ord);
        out.push(r);
    }
    out
}

/// `S(f, g) = (L/LT(f))·f - (L/LT(g))·g` with `L = lcm(LM(f), LM(g))`.
pub fn s_polynomial(f: &MultiPoly, g: &MultiPoly, ord: &MonomialOrder) -> Result<MultiPoly> {
    let (mf, cf) = f.leading_term(ord)?;
    let (mg, cg) = g.leading_term(ord)?;
    if f.ring() != g.ring() {
        return Err(Error::RingMismatch {
            left: f.ring().to_string(),
            right: g.ring().to_string(),
        });
    }
    let l = mf.lcm(&mg);
    let a = f.mul_term(&l.div(&mf).unwrap(), &cf.recip());
    let b = g.mul_term(&l.div(&mg).unwrap(), &cg.recip());
    Ok(&a - &b)
}

/// Buchberger certificate: every S-polynomial of `basis` reduces to zero.
/// Returns the index pairs that fail.
pub fn s_pair_failures(basis: &[MultiPoly], ord: &MonomialOrder) -> Result<Vec<(usize, usize)>> {
    let cert = Certifier::new(basis, ord)?;
    let mut bad = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            if !cert.pair_reduces(i, j) {
                bad.push((i, j));
            }
        }
    }
    Ok(bad)
}

/// Checks S-pairs of a fixed basis one at a time.
pub struct Certifier<'a> {
    ints: Vec<IPoly>,
    ord: &'a MonomialOrder,
}

impl<'a> Certifier<'a> {
    pub fn new(basis: &[MultiPoly], ord: &'a MonomialOrder) -> Result<Self> {
        if basis.iter().any(MultiPoly::is_zero) {
            return Err(Error::ZeroPolynomial("s_polynomial"));
        }
        Ok(Certifier {
            ints: basis.iter().map(|p| IPoly::from_poly(p, ord)).collect(),
            ord,
        })
    }

    /// Whether `S(g_i, g_j)` reduces to zero modulo the basis.
    pub fn pair_reduces(&self, i: usize, j: usize) -> bool {
        // a nonzero normal form shows up already after head reduction
        let refs: Vec<&IPoly> = self.ints.iter().collect();
        let s = s_poly_int(&self.ints[i], &self.ints[j], self.ord);
        reduce(&s, &refs, self.ord, false).is_zero()
    }

    /// Whether `f` reduces to zero modulo the basis.
    pub fn reduces_to_zero(&self, f: &MultiPoly) -> bool {
        if f.is_zero() {
            return true;
        }
        let refs: Vec<&IPoly> = self.ints.iter().collect();
        reduce(&IPoly::from_poly(f, self.ord), &refs, self.ord, false).is_zero()
    }
}

/// Outcome of checking the S-pairs of a basis.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub pairs_total: usize,
    pub pairs_checked: usize,
    /// Pairs that Buchberger's product and chain criteria make redundant.
    pub pairs_skipped: usize,
    pub failures: Vec<(usize, usize)>,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Groebner certificate: every S-pair left after the product and chain
/// criteria reduces to zero. Equivalent to checking all pairs.
pub fn certify(basis: &[MultiPoly], ord: &MonomialOrder) -> Result<Certificate> {
    let cert = Certifier::new(basis, ord)?;
    let n = basis.len();
    let mut active = Vec::new();
    let mut pairs = Vec::new();
    let mut stats = PairStats::default();
    for k in 0..n {
        update(&cert.ints, &mut active, &mut pairs, k, &mut stats);
    }
    let mut out = Certificate {
        pairs_total: n * n.saturating_sub(1) / 2,
        pairs_checked: pairs.len(),
        ..Default::default()
    };
    out.pairs_skipped = out.pairs_total - out.pairs_checked;
    for p in &pairs {
        if !cert.pair_reduces(p.i, p.j) {
            out.failures.push((p.i.min(p.j), p.i.max(p.j)));
        }
    }
    out.failures.sort_unstable();
    Ok(out)
}

pub fn is_groebner(basis: &[MultiPoly], ord: &MonomialOrder) -> Result<bool> {
    certify(basis, ord).map(|c| c.holds())
}

/// Reducedness: no term of any element is divisible by another element's
/// leading monomial, and each element is primitive with positive LC.
pub fn is_reduced(basis: &[MultiPoly], ord: &MonomialOrder) -> bool {
    basis.iter().enumerate().all(|(k, p)| {
        let others: Vec<MultiPoly> = basis
            .iter()
            .enumerate()
            .filter(|(l, _)| *l != k)
            .map(|(_, q)| q.clone())
            .collect();
        crate::ring::is_fully_reduced(p, &others, ord) && p.primitive(ord) == *p
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> VarSet {
        VarSet::new(["x", "y"]).unwrap()
    }

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse(s, &ring()).unwrap()
    }

    #[test]
    fn single_generator_is_its_own_basis() {
        let i = IdealBasis::new(vec![p("x - y")]).unwrap();
        let g = buchberger(&i, &MonomialOrder::Lex, &Default::default()).unwrap();
        assert_eq!(g.basis, vec![p("x - y")]);
    }

    #[test]
    fn s_polynomial_examples() {
        let f = p("x^2 + y^2");
        assert!(s_polynomial(&f, &f, &MonomialOrder::Lex).unwrap().is_zero());
        // S(x^2+y^2, x-y) = (x^2+y^2) - x(x-y) = xy + y^2, which reduces to 2y^2
        let s = s_polynomial(&f, &p("x - y"), &MonomialOrder::Lex).unwrap();
        assert_eq!(s, p("x*y + y^2"));
        let r = crate::ring::reduce(&s, &[p("x - y")], &MonomialOrder::Lex).unwrap();
        assert_eq!(r, p("2*y^2"));
        assert!(s_polynomial(&MultiPoly::zero(&ring()), &f, &MonomialOrder::Lex).is_err());
    }

    #[test]
    fn textbook_basis() {
        // <x^2 - y, x^3 - x> under lex has basis {y^2 - y, x*y - x, x^2 - y}
        let i = IdealBasis::new(vec![p("x^3 - x"), p("x^2 - y")]).unwrap();
        let g = buchberger(&i, &MonomialOrder::Lex, &Default::default()).unwrap();
        assert_eq!(g.basis, vec![p("y^2 - y"), p("x*y - x"), p("x^2 - y")]);
        assert!(is_groebner(&g.basis, &MonomialOrder::Lex).unwrap());
        assert!(is_reduced(&g.basis, &MonomialOrder::Lex));
    }

    #[test]
    fn unit_ideal_collapses_to_one() {
        let i = IdealBasis::new(vec![p("x*y - 1"), p("x")]).unwrap();
        let g = buchberger(&i, &MonomialOrder::Grevlex, &Default::default()).unwrap();
        assert_eq!(g.basis, vec![p("1")]);
    }

    #[test]
    fn budget_is_enforced() {
        let i = IdealBasis::new(vec![p("x^3 - x"), p("x^2 - y")]).unwrap();
        let cfg = BuchbergerConfig { max_reductions: 0, ..Default::default() };
        assert!(matches!(
            buchberger(&i, &MonomialOrder::Lex, &cfg),
            Err(Error::BudgetExceeded { budget: 0 })
        ));
    }
}
