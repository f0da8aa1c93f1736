//! Reference polynomials for periods three to five, transcribed verbatim in
//! the crate's polynomial text format.
//!
//! Each file holds `name = expression` entries; indented lines continue the
//! previous entry and `#` starts a comment. The `ring` entry lists the
//! variables in elimination order.

use crate::error::{Error, Result};
use crate::ring::{MultiPoly, VarSet};

const PERIOD3: &str = include_str!("../data/period3.txt");
const PERIOD4: &str = include_str!("../data/period4.txt");
const PERIOD5: &str = include_str!("../data/period5.txt");

/// Parsed reference set for one period.
#[derive(Clone, Debug)]
pub struct Golden {
    period: u32,
    ring: VarSet,
    entries: Vec<(String, String, MultiPoly)>,
}

impl Golden {
    pub fn period(n: u32) -> Result<Golden> {
        let text = match n {
            3 => PERIOD3,
            4 => PERIOD4,
            5 => PERIOD5,
            _ => return Err(Error::InvalidArgument(format!("no reference data for period {n}"))),
        };
        Self::parse(n, text)
    }

    /// Raw file contents, for embedding in reports.
    pub fn source(n: u32) -> Option<&'static str> {
        match n {
            3 => Some(PERIOD3),
            4 => Some(PERIOD4),
            5 => Some(PERIOD5),
            _ => None,
        }
    }

    pub fn parse(period: u32, text: &str) -> Result<Golden> {
        let mut raw: Vec<(String, String)> = Vec::new();
        for line in text.lines() {
            let body = line.split('#').next().unwrap_or("");
            if body.trim().is_empty() {
                continue;
            }
            if body.starts_with(char::is_whitespace) {
                let last = raw
                    .last_mut()
                    .ok_or_else(|| Error::DataIntegrity("continuation before first entry".into()))?;
                last.1.push(' ');
                last.1.push_str(body.trim());
                continue;
            }
            let (k, v) = body
                .split_once('=')
                .ok_or_else(|| Error::DataIntegrity(format!("malformed line `{line}`")))?;
            raw.push((k.trim().to_string(), v.trim().to_string()));
        }
        let ring_pos = raw
            .iter()
            .position(|(k, _)| k == "ring")
            .ok_or_else(|| Error::DataIntegrity("missing ring entry".into()))?;
        let (_, names) = raw.remove(ring_pos);
        let ring = VarSet::new(names.split(',').map(str::trim))?;
        let mut entries = Vec::with_capacity(raw.len());
        for (k, v) in raw {
            let p = MultiPoly::parse(&v, &ring)
                .map_err(|e| Error::DataIntegrity(format!("entry `{k}`: {e}")))?;
            entries.push((k, v, p));
        }
        Ok(Golden { period, ring, entries })
    }

    pub fn period_number(&self) -> u32 {
        self.period
    }

    pub fn ring(&self) -> &VarSet {
        &self.ring
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(k, _, _)| k.as_str())
    }

    pub fn get(&self, name: &str) -> Result<&MultiPoly> {
        self.entries
            .iter()
            .find(|(k, _, _)| k == name)
            .map(|(_, _, p)| p)
            .ok_or_else(|| Error::DataIntegrity(format!("missing reference entry `{name}`")))
    }

    /// The entry exactly as written in the data file.
    pub fn text(&self, name: &str) -> Result<&str> {
        self.entries
            .iter()
            .find(|(k, _, _)| k == name)
            .map(|(_, t, _)| t.as_str())
            .ok_or_else(|| Error::DataIntegrity(format!("missing reference entry `{name}`")))
    }

    /// A constant entry as an integer.
    pub fn integer(&self, name: &str) -> Result<i64> {
        let p = self.get(name)?;
        let c = p.coeff(&crate::ring::Monomial::one(self.ring.len()));
        if !p.is_constant() || !c.is_integer() {
            return Err(Error::DataIntegrity(format!("entry `{name}` is not an integer")));
        }
        use num_traits::ToPrimitive;
        c.to_integer()
            .to_i64()
            .ok_or_else(|| Error::DataIntegrity(format!("entry `{name}` overflows")))
    }
}
