//! Job specifications: argument syntax and validation.

use std::collections::BTreeSet;
use std::fmt;
use std::path::PathBuf;

use dynirr::arith;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Cubic,
    Quadrat,
    Uni,
}

/// Checks in the order their rows appear for equal parameters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Structure,
    Eisenstein,
    Resultant,
    Modp,
    Survey,
    Oracle,
}

impl Check {
    const ALL: [Check; 6] = [
        Check::Structure,
        Check::Eisenstein,
        Check::Resultant,
        Check::Modp,
        Check::Survey,
        Check::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Structure => "structure",
            Check::Eisenstein => "eisenstein",
            Check::Resultant => "resultant",
            Check::Modp => "modp",
            Check::Survey => "survey",
            Check::Oracle => "oracle",
        }
    }

    fn applies_to(self, family: Family) -> bool {
        match family {
            Family::Cubic | Family::Quadrat => {
                matches!(self, Check::Structure | Check::Eisenstein | Check::Oracle)
            }
            Family::Uni => true,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

#[derive(Debug)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage(msg: impl Into<String>) -> UsageError {
    UsageError(msg.into())
}

/// A validated job. Serialized as the spec echo of the run manifest.
#[derive(Clone, Debug, Serialize)]
pub struct JobSpec {
    pub family: Family,
    pub k: Vec<u32>,
    #[serde(rename = "D", skip_serializing_if = "Vec::is_empty")]
    pub degrees: Vec<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub n: Vec<u32>,
    /// Explicit `d` values; empty means every valid `d` for each `D`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub d: Vec<u64>,
    pub checks: BTreeSet<Check>,
    /// Checks came from `all`, so ones that do not apply to a given `D` are
    /// skipped rather than refused.
    #[serde(skip)]
    pub from_all: bool,
    pub out: Option<PathBuf>,
    pub tol: f64,
    pub budget: usize,
}

impl JobSpec {
    /// The `d` values used for degree `D`.
    pub fn d_for(&self, degree: u64) -> Vec<u64> {
        if self.d.is_empty() {
            arith::divisors(degree).into_iter().filter(|&d| d > 1).collect()
        } else {
            self.d.clone()
        }
    }

    pub fn wants(&self, c: Check) -> bool {
        self.checks.contains(&c)
    }

    pub fn validate(&self) -> Result<(), UsageError> {
        if self.budget == 0 {
            return Err(usage("--budget must be positive"));
        }
        if !(1e-12..=1e-6).contains(&self.tol) {
            return Err(usage(format!("--tol {} outside [1e-12, 1e-6]", self.tol)));
        }
        if self.checks.is_empty() {
            return Err(usage("no checks selected"));
        }
        for c in &self.checks {
            if !c.applies_to(self.family) {
                return Err(usage(format!("check {c} does not apply to the {:?} family", self.family)));
            }
        }
        let needs_k = self.checks.iter().any(|&c| c != Check::Survey);
        if needs_k && self.k.is_empty() {
            return Err(usage("--k is required"));
        }
        if let Some(k) = self.k.iter().find(|&&k| k < 2) {
            return Err(usage(format!("k = {k}: preperiods start at 2")));
        }
        if self.family != Family::Uni {
            return Ok(());
        }
        if self.degrees.is_empty() {
            return Err(usage("--D is required"));
        }
        if self.n.is_empty() {
            return Err(usage("--n is required"));
        }
        if let Some(&deg) = self.degrees.iter().find(|&&deg| deg < 2 || deg > u32::MAX as u64) {
            return Err(usage(format!("D = {deg} out of range")));
        }
        if self.n.contains(&0) {
            return Err(usage("periods start at 1"));
        }
        for &deg in &self.degrees {
            for &d in &self.d {
                if d < 2 || deg % d != 0 {
                    return Err(usage(format!("d = {d} is not a divisor >= 2 of D = {deg}")));
                }
            }
            let prime_power = arith::prime_power(deg).is_some();
            for c in [Check::Eisenstein, Check::Modp, Check::Survey] {
                if self.explicit(c) && !prime_power {
                    return Err(usage(format!("check {c} needs D to be a prime power, got D = {deg}")));
                }
            }
        }
        if self.wants(Check::Survey) && self.n.iter().any(|&n| n < 2) {
            return Err(usage("the survey covers n >= 2"));
        }
        Ok(())
    }

    /// Requested by name rather than through `all`.
    fn explicit(&self, c: Check) -> bool {
        self.wants(c) && !self.from_all
    }
}

/// Parses `"2..5"` (inclusive), `"3"`, and comma lists of either.
pub fn parse_list<T>(s: &str) -> Result<Vec<T>, UsageError>
where
    T: std::str::FromStr + Copy + Ord + Into<u64> + TryFrom<u64>,
{
    let mut out = BTreeSet::new();
    for item in s.split(',').map(str::trim) {
        let bad = || usage(format!("cannot parse {item:?} in {s:?}"));
        if let Some((lo, hi)) = item.split_once("..") {
            let lo: T = lo.trim().parse().map_err(|_| bad())?;
            let hi: T = hi.trim().parse().map_err(|_| bad())?;
            if lo > hi {
                return Err(usage(format!("empty range {item:?}")));
            }
            if hi.into() - lo.into() > 10_000 {
                return Err(usage(format!("range {item:?} too long")));
            }
            for v in lo.into()..=hi.into() {
                out.insert(T::try_from(v).map_err(|_| bad())?);
            }
        } else {
            out.insert(item.parse().map_err(|_| bad())?);
        }
    }
    Ok(out.into_iter().collect())
}

/// `structure,modp` or `all`; `all` keeps only the checks that apply to the
/// family (and to `D`, decided per job).
pub fn parse_checks(s: &str, family: Family) -> Result<(BTreeSet<Check>, bool), UsageError> {
    let mut out = BTreeSet::new();
    let mut all = false;
    for item in s.split(',').map(str::trim) {
        if item == "all" {
            all = true;
            out.extend(Check::ALL.into_iter().filter(|c| c.applies_to(family) && *c != Check::Survey));
            continue;
        }
        let c = Check::ALL
            .into_iter()
            .find(|c| c.name() == item)
            .ok_or_else(|| usage(format!("unknown check {item:?}")))?;
        out.insert(c);
    }
    Ok((out, all))
}
