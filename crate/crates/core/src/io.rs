//! Plain-text output: trajectory CSV, dust-scan CSV and two-column plot data.

use std::io::{self, BufRead, Write};

use crate::dust_oracle::DustScanRow;
use crate::dynamics::State;
use crate::error::{Error, Result};
use crate::integrator::{Sample, Trajectory};

pub const TRAJECTORY_HEADER: &str = "t,a,adot,rho,P,X,flat_a3";
pub const DUST_SCAN_HEADER: &str = "alpha,branch,case,xi1,xi2,scenario";

/// Writes one row per sample with 17 significant digits.
pub fn write_trajectory_csv<W: Write>(traj: &Trajectory, mut out: W) -> io::Result<()> {
    writeln!(out, "{TRAJECTORY_HEADER}")?;
    for s in &traj.samples {
        writeln!(
            out,
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            s.t, s.state.a, s.state.adot, s.state.rho, s.pressure, s.x, s.flat_a3
        )?;
    }
    Ok(())
}

pub fn read_trajectory_csv<R: BufRead>(input: R) -> Result<Vec<Sample>> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty trajectory file".into()))?
        .map_err(|e| Error::Parse(e.to_string()))?;
    if header.trim() != TRAJECTORY_HEADER {
        return Err(Error::Parse(format!("unexpected header {header:?}")));
    }
    let mut samples = Vec::new();
    for (n, line) in lines.enumerate() {
        let line = line.map_err(|e| Error::Parse(e.to_string()))?;
        if line.trim().is_empty() {
            continue;
        }
        let v: Vec<f64> = line
            .split(',')
            .map(|f| f.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Parse(format!("row {}: {e}", n + 2)))?;
        if v.len() != 7 {
            return Err(Error::Parse(format!("row {}: expected 7 fields, got {}", n + 2, v.len())));
        }
        samples.push(Sample {
            t: v[0],
            state: State {
                a: v[1],
                adot: v[2],
                rho: v[3],
            },
            pressure: v[4],
            x: v[5],
            flat_a3: v[6],
        });
    }
    Ok(samples)
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.16e}")).unwrap_or_default()
}

pub fn write_dust_scan_csv<W: Write>(rows: &[DustScanRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{DUST_SCAN_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{:.16e},{},{},{},{},{}",
            r.alpha,
            r.branch.name(),
            r.case.name(),
            opt(r.xi1),
            opt(r.xi2),
            r.scenario
        )?;
    }
    Ok(())
}

/// Which column pairs [`write_plot_columns`] can emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotQuantity {
    A,
    Rho,
    Adot,
}

impl PlotQuantity {
    pub const ALL: [PlotQuantity; 3] = [PlotQuantity::A, PlotQuantity::Rho, PlotQuantity::Adot];

    pub fn suffix(self) -> &'static str {
        match self {
            PlotQuantity::A => "a",
            PlotQuantity::Rho => "rho",
            PlotQuantity::Adot => "adot",
        }
    }
}

/// Whitespace-separated `t value` rows, one per sample.
pub fn write_plot_columns<W: Write>(traj: &Trajectory, what: PlotQuantity, mut out: W) -> io::Result<()> {
    writeln!(out, "# t {}", what.suffix())?;
    for s in &traj.samples {
        let v = match what {
            PlotQuantity::A => s.state.a,
            PlotQuantity::Rho => s.state.rho,
            PlotQuantity::Adot => s.state.adot,
        };
        writeln!(out, "{:.16e} {:.16e}", s.t, v)?;
    }
    Ok(())
}
