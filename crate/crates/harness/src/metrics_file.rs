//! Per-selection metric series as CSV:
//! `step,coverage,mean_fitness,max_fitness,qd_score`, floats with nine
//! significant digits.

use std::path::Path;

use melita_core::MetricsSample;

use crate::error::{HarnessError, Result};

pub const HEADER: [&str; 5] = ["step", "coverage", "mean_fitness", "max_fitness", "qd_score"];

/// Fixed-point rendering with nine significant digits.
pub fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{:.8}", x);
    }
    let magnitude = x.abs().log10().floor() as i32;
    let decimals = (8 - magnitude).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    // rounding can carry into a new leading digit, e.g. 9.999999999 -> 10.00000000
    let reparsed: f64 = s.parse().expect("formatted float parses");
    if reparsed != 0.0 && reparsed.abs().log10().floor() as i32 > magnitude && decimals > 0 {
        format!("{:.*}", decimals - 1, x)
    } else {
        s
    }
}

pub fn write_series(path: &Path, series: &[MetricsSample]) -> Result<()> {
    let csv_err = |source| HarnessError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    w.write_record(HEADER).map_err(csv_err)?;
    for s in series {
        w.write_record([
            s.step.to_string(),
            sig9(s.coverage),
            sig9(s.mean_fitness),
            sig9(s.max_fitness),
            sig9(s.qd_score),
        ])
        .map_err(csv_err)?;
    }
    w.flush().map_err(|e| HarnessError::io(path, e))
}

pub fn read_series(path: &Path) -> Result<Vec<MetricsSample>> {
    let csv_err = |source| HarnessError::Csv {
        path: path.to_path_buf(),
        source,
    };
    let parse_err = |message: String| HarnessError::Parse {
        path: path.to_path_buf(),
        message,
    };
    let mut r = csv::Reader::from_path(path).map_err(csv_err)?;
    let header = r.headers().map_err(csv_err)?.clone();
    if header.iter().ne(HEADER) {
        return Err(parse_err(format!("unexpected header {:?}", header)));
    }
    let mut out = Vec::new();
    for (line, record) in r.records().enumerate() {
        let record = record.map_err(csv_err)?;
        let field = |i: usize| -> Result<f64> {
            record[i]
                .parse()
                .map_err(|_| parse_err(format!("row {}: bad {} `{}`", line + 1, HEADER[i], &record[i])))
        };
        out.push(MetricsSample {
            step: record[0]
                .parse()
                .map_err(|_| parse_err(format!("row {}: bad step", line + 1)))?,
            coverage: field(1)?,
            mean_fitness: field(2)?,
            max_fitness: field(3)?,
            qd_score: field(4)?,
        });
    }
    Ok(out)
}
