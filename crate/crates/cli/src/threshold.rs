//! Bisection for the parameter where a criterion's signed statistic crosses 0.

use std::fmt;
use std::str::FromStr;

use entmoments::{criteria, measures, numerics, states, DensityMatrix, Family};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::scan::parametric_family;

/// Signed statistic, positive on the entangled side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Statistic {
    /// `Q - 1`.
    Theorem1,
    /// Coefficient-test margin.
    Theorem2,
    /// `||rho^R||_1 - 1`.
    Realignment,
    /// `-lambda_min(rho^tau)`.
    Ppt,
    /// `max(M1, M2)`.
    ConcLowerBound,
}

impl Statistic {
    pub const ALL: [Statistic; 5] = [
        Statistic::Theorem1,
        Statistic::Theorem2,
        Statistic::Realignment,
        Statistic::Ppt,
        Statistic::ConcLowerBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Statistic::Theorem1 => "theorem1",
            Statistic::Theorem2 => "theorem2",
            Statistic::Realignment => "realignment",
            Statistic::Ppt => "ppt",
            Statistic::ConcLowerBound => "conc_lower_bound",
        }
    }

    pub fn eval(self, rho: &DensityMatrix, tol: f64) -> Result<f64> {
        Ok(match self {
            Statistic::Theorem1 => criteria::q_statistic(rho)? - 1.0,
            Statistic::Theorem2 => criteria::theorem2_test(rho, tol)?.margin,
            Statistic::Realignment => numerics::trace_norm(&states::realign(rho)?) - 1.0,
            Statistic::Ppt => -criteria::ppt_criterion(rho, tol)?.statistic,
            Statistic::ConcLowerBound => {
                let b = measures::concurrence_lower_bound(rho)?;
                b.m1.max(b.m2)
            }
        })
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Statistic {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Statistic> {
        Statistic::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<_> = Statistic::ALL.iter().map(|c| c.name()).collect();
            CliError::Usage(format!(
                "unknown criterion `{s}` (expected one of {})",
                names.join(", ")
            ))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Threshold {
    pub family: String,
    pub criterion: &'static str,
    pub root: f64,
    /// Final bracket; `f_lo` and `f_hi` lie on opposite sides of zero.
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
    pub iterations: usize,
}

/// Bisects until the bracket is shorter than `tol`.
pub fn find_threshold(family: &str, stat: Statistic, lo: f64, hi: f64, tol: f64) -> Result<Threshold> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(CliError::Usage(format!(
            "bisection tolerance must be positive, got {tol}"
        )));
    }
    if lo.is_nan() || hi.is_nan() || lo >= hi {
        return Err(CliError::Usage(format!("interval {lo}:{hi} must be increasing")));
    }
    let fam: Family = parametric_family(family, lo, hi)?;
    let f = |x: f64| -> Result<f64> {
        let rho = fam.build(&[x])?.density();
        stat.eval(&rho, entmoments::criteria::DEFAULT_CRITERION_TOL)
            .map_err(|e| e.context(format!("{} at parameter {x}", fam.name())))
    };
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    if (fa > 0.0) == (fb > 0.0) {
        return Err(CliError::NoRoot(format!(
            "{stat} on {family} does not change sign over [{lo}, {hi}] (values {fa}, {fb})"
        )));
    }
    let mut iterations = 0;
    while b - a >= tol {
        let mid = 0.5 * (a + b);
        let fm = f(mid)?;
        if (fm > 0.0) == (fa > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
            fb = fm;
        }
        iterations += 1;
    }
    Ok(Threshold {
        family: fam.name().to_string(),
        criterion: stat.name(),
        root: 0.5 * (a + b),
        lo: a,
        hi: b,
        f_lo: fa,
        f_hi: fb,
        iterations,
    })
}
