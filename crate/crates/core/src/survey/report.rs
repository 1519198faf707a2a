use std::io::Write;

use super::{SurveyRecord, SurveyReport};
use crate::error::{Error, Result};

/// Equivalence used to deduplicate connection sets.
pub const EQUIVALENCE: &str = "GL(n,2)-orbits of connection sets; isomorphic graphs from distinct orbits are not merged";

fn hex_list(r: &SurveyRecord) -> String {
    let width = r.n.div_ceil(4) as usize;
    r.connection_set.iter().map(|c| format!("0x{c:0width$x}")).collect::<Vec<_>>().join(" ")
}

fn csv_error(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(io) => Error::Io(io),
        other => Error::Internal(format!("{other:?}")),
    }
}

/// Per-orbit CSV, preceded by `#` comment lines naming the equivalence.
pub fn write_csv<W: Write>(report: &SurveyReport, mut out: W) -> Result<()> {
    writeln!(out, "# equivalence: {}", report.equivalence)?;
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["n", "connection_set", "connected", "tau", "tau_mult", "x_dim", "uc"]).map_err(csv_error)?;
    for r in &report.records {
        w.write_record([
            r.n.to_string(),
            hex_list(r),
            r.connected.to_string(),
            r.tau.to_string(),
            r.tau_mult.to_string(),
            r.x_dim.to_string(),
            r.uc.to_string(),
        ])
        .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(report: &SurveyReport, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, report).map_err(|e| Error::Internal(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

/// Summary table with one line per exponent, then the per-orbit rows.
pub fn write_table<W: Write>(report: &SurveyReport, mut out: W) -> Result<()> {
    writeln!(out, "# equivalence: {}", report.equivalence)?;
    writeln!(out, "{:>3}  {:>16}  {:>16}", "n", "connected graphs", "UC graphs")?;
    for s in &report.summary {
        writeln!(out, "{:>3}  {:>16}  {:>16}", s.n, s.connected, s.uc)?;
    }
    writeln!(out)?;
    writeln!(out, "{:>3}  {:>5}  {:>8}  {:>5}  {:>3}  connection set", "n", "tau", "tau_mult", "x_dim", "uc")?;
    for r in &report.records {
        writeln!(
            out,
            "{:>3}  {:>5}  {:>8}  {:>5}  {:>3}  {}",
            r.n,
            r.tau,
            r.tau_mult,
            r.x_dim,
            if r.uc { "yes" } else { "no" },
            hex_list(r)
        )?;
    }
    Ok(())
}
