//! Flat CSV persistence for simulation results.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use crate::error::{io_err, Result, SimError};

pub const HEADER: [&str; 7] = ["sim", "param", "t_ce", "t_mi", "mmd2", "energy", "seed"];

/// One simulation cell: a scenario parameter evaluated under one seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExperimentRow {
    pub sim: u8,
    pub param: f64,
    pub t_ce: f64,
    pub t_mi: f64,
    pub mmd2: f64,
    pub energy: f64,
    pub seed: u64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ExperimentTable {
    pub rows: Vec<ExperimentRow>,
}

impl ExperimentTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn for_sim(&self, sim: u8) -> impl Iterator<Item = &ExperimentRow> + '_ {
        self.rows.iter().filter(move |r| r.sim == sim)
    }
}

// 17 significant digits
fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_csv<W: Write>(t: &ExperimentTable, out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for r in &t.rows {
        w.write_record([
            r.sim.to_string(),
            fmt_real(r.param),
            fmt_real(r.t_ce),
            fmt_real(r.t_mi),
            fmt_real(r.mmd2),
            fmt_real(r.energy),
            r.seed.to_string(),
        ])?;
    }
    w.flush()
}

pub fn write_table(t: &ExperimentTable, path: &Path) -> Result<()> {
    let file = File::create(path).map_err(|e| io_err(path, e))?;
    let mut buf = BufWriter::new(file);
    write_csv(t, &mut buf).map_err(|e| io_err(path, e))?;
    buf.flush().map_err(|e| io_err(path, e))
}

pub fn read_table(path: &Path) -> Result<ExperimentTable> {
    let file = File::open(path).map_err(|e| io_err(path, e))?;
    read_csv(file, &path.display().to_string())
}

pub fn read_csv<R: std::io::Read>(input: R, name: &str) -> Result<ExperimentTable> {
    let parse_err = |line: u64, column: usize, msg: String| SimError::Parse {
        path: name.to_string(),
        line,
        column,
        msg,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(input);
    let mut records = rdr.records();
    let header = match records.next() {
        Some(rec) => rec.map_err(|e| parse_err(1, 0, e.to_string()))?,
        None => return Err(parse_err(1, 0, "missing header".into())),
    };
    if header.iter().map(str::trim).ne(HEADER) {
        return Err(parse_err(
            1,
            0,
            format!("expected header `{}`", HEADER.join(",")),
        ));
    }
    let mut rows = Vec::new();
    for rec in records {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_err(line, 0, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.len() != HEADER.len() {
            return Err(parse_err(
                line,
                0,
                format!("expected {} fields, found {}", HEADER.len(), rec.len()),
            ));
        }
        let real = |c: usize| -> Result<f64> {
            rec[c]
                .trim()
                .parse::<f64>()
                .map_err(|e| parse_err(line, c + 1, format!("`{}` in {}: {e}", &rec[c], HEADER[c])))
        };
        let sim = rec[0]
            .trim()
            .parse::<u8>()
            .map_err(|e| parse_err(line, 1, format!("`{}` in sim: {e}", &rec[0])))?;
        let seed = rec[6]
            .trim()
            .parse::<u64>()
            .map_err(|e| parse_err(line, 7, format!("`{}` in seed: {e}", &rec[6])))?;
        rows.push(ExperimentRow {
            sim,
            param: real(1)?,
            t_ce: real(2)?,
            t_mi: real(3)?,
            mmd2: real(4)?,
            energy: real(5)?,
            seed,
        });
    }
    Ok(ExperimentTable { rows })
}
