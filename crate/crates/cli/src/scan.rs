//! Parameter scans over a state family.

use std::io::Write;

use entmoments::convexroof::RoofConfig;
use entmoments::Family;
use rayon::prelude::*;
use serde_json::json;

use crate::columns::{self, Column};
use crate::error::{CliError, Result};

/// `A:B:STEPS` (or `A:B` where only an interval is needed).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub start: f64,
    pub end: f64,
    pub steps: Option<usize>,
}

impl Range {
    pub fn parse(s: &str) -> Result<Range> {
        let bad = || CliError::Usage(format!("range `{s}` is not A:B or A:B:STEPS"));
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| t.trim().parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(bad);
        let (start, end, steps) = match parts[..] {
            [a, b] => (num(a)?, num(b)?, None),
            [a, b, n] => (num(a)?, num(b)?, Some(n.trim().parse::<usize>().map_err(|_| bad())?)),
            _ => return Err(bad()),
        };
        Ok(Range { start, end, steps })
    }

    /// `steps` evenly spaced points from `start` to `end` inclusive.
    pub fn grid(&self) -> Result<Vec<f64>> {
        let n = self
            .steps
            .ok_or_else(|| CliError::Usage("scan range needs A:B:STEPS".into()))?;
        match n {
            0 => Err(CliError::Usage("scan needs at least one grid point".into())),
            1 => Ok(vec![self.start]),
            _ if self.end <= self.start => Err(CliError::Usage(format!(
                "scan range {}:{} must be increasing",
                self.start, self.end
            ))),
            _ => Ok((0..n)
                .map(|i| {
                    if i == n - 1 {
                        self.end
                    } else {
                        self.start + (self.end - self.start) * i as f64 / (n - 1) as f64
                    }
                })
                .collect()),
        }
    }
}

/// Resolves a one-parameter family and checks `[lo, hi]` against its domain.
pub fn parametric_family(name: &str, lo: f64, hi: f64) -> Result<Family> {
    let fam = Family::from_name(name).ok_or_else(|| CliError::Core(entmoments::Error::UnknownFamily(name.into())))?;
    let (dlo, dhi) = fam
        .domain()
        .ok_or_else(|| CliError::Usage(format!("family {name} has no scalar parameter to scan")))?;
    for x in [lo, hi] {
        if !(x >= dlo - 1e-12 && x <= dhi + 1e-12) {
            return Err(CliError::Core(entmoments::Error::Domain {
                family: fam.name(),
                value: x,
                lo: dlo,
                hi: dhi,
            }));
        }
    }
    Ok(fam)
}

/// SplitMix64 finalizer; decorrelates per-row seeds.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub columns: Vec<Column>,
    pub seed: u64,
    /// Settings for the roof column; seeds are replaced per row.
    pub roof: Option<RoofConfig>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub family: String,
    pub columns: Vec<Column>,
    pub grid: Vec<f64>,
    pub rows: Vec<Vec<Option<f64>>>,
}

pub fn run_scan(family: &str, range: &Range, opts: &ScanOptions) -> Result<ScanResult> {
    let fam = parametric_family(family, range.start, range.end)?;
    let grid = range.grid()?;
    let mut columns = opts.columns.clone();
    if opts.roof.is_some() && !columns.contains(&Column::RoofEstimate) {
        columns.push(Column::RoofEstimate);
    }
    let rows = grid
        .par_iter()
        .enumerate()
        .map(|(i, &x)| {
            let roof = opts.roof.as_ref().map(|cfg| RoofConfig {
                seed: splitmix64(opts.seed ^ i as u64),
                ..cfg.clone()
            });
            fam.build(&[x])
                .map_err(CliError::from)
                .and_then(|state| columns::evaluate(&state, &columns, roof.as_ref()))
                .map_err(|e| e.context(format!("{} at parameter {x}", fam.name())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanResult {
        family: fam.name().to_string(),
        columns,
        grid,
        rows,
    })
}

impl ScanResult {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        let io = |e: csv::Error| CliError::Usage(format!("writing csv: {e}"));
        let mut header = vec!["param"];
        header.extend(self.columns.iter().map(|c| c.name()));
        w.write_record(&header).map_err(io)?;
        for (x, row) in self.grid.iter().zip(&self.rows) {
            let mut rec = vec![columns::format_number(*x)];
            rec.extend(row.iter().map(|v| columns::format_cell(*v)));
            w.write_record(&rec).map_err(io)?;
        }
        w.flush().map_err(|e| CliError::Usage(format!("writing csv: {e}")))?;
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut header = vec!["param"];
        header.extend(self.columns.iter().map(|c| c.name()));
        let rows: Vec<Vec<Option<f64>>> = self
            .grid
            .iter()
            .zip(&self.rows)
            .map(|(&x, r)| std::iter::once(Some(x)).chain(r.iter().copied()).collect())
            .collect();
        json!({ "family": self.family, "columns": header, "rows": rows })
    }
}
