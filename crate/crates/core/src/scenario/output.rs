//! CSV export of sweep results.
//!
//! Columns: `t_s`, `elevation_deg`, then for each variant in config order
//! `<name>_gain_db`, `<name>_irs_gain_db`, `<name>_delay_spread_s`,
//! `<name>_doppler_hz`. Numbers use 17 significant digits in scientific
//! notation; zero power gives the literal `-inf`.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use super::runner::SweepResult;
use crate::{Error, Result};

pub const COLUMNS_PER_VARIANT: usize = 4;

pub fn header(variant_names: &[String]) -> Vec<String> {
    let mut cols = vec!["t_s".to_owned(), "elevation_deg".to_owned()];
    for name in variant_names {
        for suffix in ["gain_db", "irs_gain_db", "delay_spread_s", "doppler_hz"] {
            cols.push(format!("{name}_{suffix}"));
        }
    }
    cols
}

fn number(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv_to<W: Write>(result: &SweepResult, writer: W) -> Result<()> {
    if result.records.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let mut out = csv::Writer::from_writer(writer);
    out.write_record(header(&result.variant_names))?;
    for r in &result.records {
        let mut row = vec![number(r.t_s), number(r.elevation_deg)];
        for v in &r.variants {
            row.extend([v.channel_gain_db, v.irs_gain_db, v.delay_spread_s, v.doppler_spread_hz].map(number));
        }
        out.write_record(&row)?;
    }
    out.flush().map_err(|source| Error::Io { path: "<csv writer>".into(), source })?;
    Ok(())
}

pub fn write_csv(result: &SweepResult, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let io = |source| Error::Io { path: path.display().to_string(), source };
    let file = File::create(path).map_err(io)?;
    write_csv_to(result, std::io::BufWriter::new(file))
}
