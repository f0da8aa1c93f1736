//! Double-precision root finding, the brute-force orbit oracle for
//! `x^2 + c`, and the census that lifts eliminant roots back to cycles.

mod census;
mod export;
mod orbit;
mod parse;
mod poly;
mod roots;

pub use census::{
    census_polynomial, census_sweep, sum_census, CensusOrbit, ExcludedRoot, LiftedPoint, SumCensus,
    SweepSummary,
};
pub use export::{census_csv, census_orbits_csv, orbits_csv, roots_csv, CsvRow};
pub use orbit::{compose_quadratic, cycle_count, iterate_quadratic, orbit_oracle, NumericOrbit, MAX_ORACLE_PERIOD};
pub use parse::{parse_complex, parse_complex_exact, parse_decimal};
pub use poly::ComplexPoly;
pub use roots::{find_roots, find_roots_with, RootCensus, RootOptions};
