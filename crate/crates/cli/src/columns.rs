//! Per-state scalar columns shared by `scan` and `analyze`.

use std::fmt;
use std::str::FromStr;

use entmoments::convexroof::{estimate_roof, RoofConfig, RoofMeasure};
use entmoments::measures::{self, Side};
use entmoments::{criteria, numerics, states, DensityMatrix, State};

use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Column {
    /// Two-moment realignment statistic.
    Q,
    /// `||rho^R||_1 - 1`.
    RealignNormExcess,
    /// `||rho^tau||_1 - 1`.
    PtNormExcess,
    M1,
    M2,
    ConcLowerBound,
    EmmrsDirect,
    GteDirect,
    GmeConc,
    ConcFill,
    RoofEstimate,
}

impl Column {
    pub const ALL: [Column; 11] = [
        Column::Q,
        Column::RealignNormExcess,
        Column::PtNormExcess,
        Column::M1,
        Column::M2,
        Column::ConcLowerBound,
        Column::EmmrsDirect,
        Column::GteDirect,
        Column::GmeConc,
        Column::ConcFill,
        Column::RoofEstimate,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Column::Q => "Q",
            Column::RealignNormExcess => "rA_norm_excess",
            Column::PtNormExcess => "pt_norm_excess",
            Column::M1 => "M1",
            Column::M2 => "M2",
            Column::ConcLowerBound => "conc_lower_bound",
            Column::EmmrsDirect => "emmrs_direct",
            Column::GteDirect => "gte_direct",
            Column::GmeConc => "gme_conc",
            Column::ConcFill => "conc_fill",
            Column::RoofEstimate => "roof_estimate",
        }
    }

    /// Everything except the (expensive) roof estimate.
    pub fn defaults() -> Vec<Column> {
        Column::ALL.into_iter().filter(|&c| c != Column::RoofEstimate).collect()
    }

    /// Comma-separated column names.
    pub fn parse_list(s: &str) -> Result<Vec<Column>> {
        let cols = s
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        if cols.is_empty() {
            return Err(CliError::Usage("empty column list".into()));
        }
        Ok(cols)
    }
}

impl fmt::Display for Column {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Column {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Column> {
        Column::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| CliError::Usage(format!("unknown column `{s}`")))
    }
}

/// `None` where a column does not apply to the state's partition (or, for the
/// roof, to a state loaded without a positivity check).
pub fn evaluate(state: &State, columns: &[Column], roof: Option<&RoofConfig>) -> Result<Vec<Option<f64>>> {
    let rho = state.density();
    let bipartite = rho.num_parties() == 2;
    let tripartite = rho.num_parties() == 3;
    let mut bound = None;
    let mut out = Vec::with_capacity(columns.len());
    for &col in columns {
        let v = match col {
            Column::Q if bipartite => Some(criteria::q_statistic(&rho)?),
            Column::RealignNormExcess if bipartite => Some(numerics::trace_norm(&states::realign(&rho)?) - 1.0),
            Column::PtNormExcess if bipartite => Some(numerics::trace_norm(&states::partial_transpose(&rho)?) - 1.0),
            Column::M1 | Column::M2 | Column::ConcLowerBound if bipartite && min_dim(&rho) >= 2 => {
                let b = match bound {
                    Some(b) => b,
                    None => *bound.insert(measures::concurrence_lower_bound(&rho)?),
                };
                Some(match col {
                    Column::M1 => b.m1,
                    Column::M2 => b.m2,
                    _ => b.bound,
                })
            }
            Column::EmmrsDirect if bipartite => Some(measures::emmrs_direct(&rho, Side::Smaller)?.value),
            Column::GteDirect if tripartite => Some(measures::gte_emmrs_direct(&rho)?.value),
            Column::GmeConc if tripartite => Some(measures::gme_concurrence_direct(&rho)?.value),
            Column::ConcFill if tripartite => Some(measures::concurrence_fill(&rho)?.value),
            Column::RoofEstimate => match roof {
                Some(cfg) => roof_estimate(&rho, cfg)?,
                None => None,
            },
            _ => None,
        };
        out.push(v);
    }
    Ok(out)
}

fn min_dim(rho: &DensityMatrix) -> usize {
    rho.dims().iter().copied().min().unwrap_or(0)
}

/// Roof measure matching the partition: EMMRS for two parties, GTE for three.
pub fn roof_measure(rho: &DensityMatrix) -> Option<RoofMeasure> {
    match rho.num_parties() {
        2 => Some(RoofMeasure::Emmrs),
        3 => Some(RoofMeasure::GteEmmrs),
        _ => None,
    }
}

pub fn roof_estimate(rho: &DensityMatrix, cfg: &RoofConfig) -> Result<Option<f64>> {
    match roof_measure(rho) {
        Some(m) if rho.is_positivity_verified() => Ok(Some(estimate_roof(rho, m, cfg)?.estimate)),
        _ => Ok(None),
    }
}

/// Shortest round-trip decimal (exponent form outside `[1e-5, 1e16)`).
pub fn format_number(x: f64) -> String {
    format!("{x:?}")
}

/// [`format_number`], or empty for `None`.
pub fn format_cell(v: Option<f64>) -> String {
    v.map(format_number).unwrap_or_default()
}
