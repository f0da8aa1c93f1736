use serde::Serialize;

use super::{NumericOrbit, RootCensus, SumCensus};
use crate::error::{Error, Result};

/// One CSV line: a root or cycle point with its residual and, when it
/// belongs to a cycle, the cycle id and sum.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CsvRow {
    pub re: f64,
    pub im: f64,
    pub residual: f64,
    pub orbit_id: Option<usize>,
    pub sum_re: Option<f64>,
    pub sum_im: Option<f64>,
}

fn write_rows(rows: &[CsvRow]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::InvalidArgument(e.to_string()))
}

pub fn roots_csv(census: &RootCensus) -> Result<String> {
    let rows: Vec<CsvRow> = census
        .roots
        .iter()
        .zip(&census.residuals)
        .map(|(z, &residual)| CsvRow {
            re: z.re,
            im: z.im,
            residual,
            orbit_id: None,
            sum_re: None,
            sum_im: None,
        })
        .collect();
    write_rows(&rows)
}

/// Roots of `C(v, s)`, each tagged with the cycle it lifts to.
pub fn census_csv(census: &SumCensus) -> Result<String> {
    let rows: Vec<CsvRow> = census
        .roots
        .roots
        .iter()
        .zip(&census.roots.residuals)
        .map(|(z, &residual)| {
            let hit = census
                .lifted
                .iter()
                .min_by(|a, b| (a.v - z).norm().total_cmp(&(b.v - z).norm()))
                .filter(|p| (p.v - z).norm() < 1e-6 * z.norm().max(1.0));
            let orbit = hit.map(|p| &census.orbits[p.orbit_id]);
            CsvRow {
                re: z.re,
                im: z.im,
                residual,
                orbit_id: orbit.map(|o| o.id),
                sum_re: orbit.map(|o| o.sum.re),
                sum_im: orbit.map(|o| o.sum.im),
            }
        })
        .collect();
    write_rows(&rows)
}

/// Every point of every lifted cycle over a batch of censuses; cycle ids
/// run on across censuses.
pub fn census_orbits_csv(censuses: &[SumCensus]) -> Result<String> {
    let mut rows = Vec::new();
    let mut id = 0;
    for census in censuses {
        for o in &census.orbits {
            for z in &o.points {
                rows.push(CsvRow {
                    re: z.re,
                    im: z.im,
                    residual: o.cycle_residual,
                    orbit_id: Some(id),
                    sum_re: Some(o.sum.re),
                    sum_im: Some(o.sum.im),
                });
            }
            id += 1;
        }
    }
    write_rows(&rows)
}

/// Every point of every cycle, with the cycle's map residual.
pub fn orbits_csv(orbits: &[NumericOrbit]) -> Result<String> {
    let mut rows = Vec::new();
    for (id, o) in orbits.iter().enumerate() {
        for z in &o.points {
            rows.push(CsvRow {
                re: z.re,
                im: z.im,
                residual: o.residual,
                orbit_id: Some(id),
                sum_re: Some(o.sum.re),
                sum_im: Some(o.sum.im),
            });
        }
    }
    write_rows(&rows)
}
