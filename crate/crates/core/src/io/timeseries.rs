//! CSV time series. Floats are written with 17 significant digits so that
//! a read after a write returns bit-identical values.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::diagnostics::check_sorted;
use crate::error::{Error, Result};

pub const TIMESERIES_HEADER: [&str; 14] = [
    "t",
    "P",
    "E",
    "M",
    "visc_E_ledger",
    "visc_M_ledger",
    "I2",
    "J",
    "K",
    "phi",
    "c_speed",
    "max_u",
    "max_v",
    "flags",
];

pub const AUX_HEADER: [&str; 8] = ["t", "ux2", "u4", "uv", "v2", "vx2", "vx_rhox", "im_uux"];

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct TimeSeriesRow {
    pub t: f64,
    pub mass: f64,
    pub energy: f64,
    pub momentum: f64,
    pub visc_energy_ledger: f64,
    pub visc_momentum_ledger: f64,
    pub i2: f64,
    pub j: f64,
    pub k: f64,
    pub phi: f64,
    pub nonlocal_speed: f64,
    pub max_abs_u: f64,
    pub max_abs_v: f64,
    pub validity_flags: u32,
}

/// Integrals not in the main series that the moment identities need.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct AuxRow {
    pub t: f64,
    pub ux2: f64,
    pub u4: f64,
    pub uv: f64,
    pub v2: f64,
    pub vx2: f64,
    pub vx_rhox: f64,
    pub im_uux: f64,
}

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

trait CsvRow: Sized {
    const HEADER: &'static [&'static str];
    fn t(&self) -> f64;
    fn fields(&self) -> Vec<String>;
    fn parse(rec: &csv::StringRecord, line: u64) -> Result<Self>;
}

fn parse_f64(rec: &csv::StringRecord, i: usize, line: u64) -> Result<f64> {
    rec[i]
        .trim()
        .parse()
        .map_err(|_| Error::Format(format!("line {line}: column {} is not a number: {:?}", i + 1, &rec[i])))
}

impl CsvRow for TimeSeriesRow {
    const HEADER: &'static [&'static str] = &TIMESERIES_HEADER;

    fn t(&self) -> f64 {
        self.t
    }

    fn fields(&self) -> Vec<String> {
        let mut out: Vec<String> = [
            self.t,
            self.mass,
            self.energy,
            self.momentum,
            self.visc_energy_ledger,
            self.visc_momentum_ledger,
            self.i2,
            self.j,
            self.k,
            self.phi,
            self.nonlocal_speed,
            self.max_abs_u,
            self.max_abs_v,
        ]
        .iter()
        .map(|&x| fmt(x))
        .collect();
        out.push(self.validity_flags.to_string());
        out
    }

    fn parse(rec: &csv::StringRecord, line: u64) -> Result<Self> {
        let f = |i| parse_f64(rec, i, line);
        Ok(TimeSeriesRow {
            t: f(0)?,
            mass: f(1)?,
            energy: f(2)?,
            momentum: f(3)?,
            visc_energy_ledger: f(4)?,
            visc_momentum_ledger: f(5)?,
            i2: f(6)?,
            j: f(7)?,
            k: f(8)?,
            phi: f(9)?,
            nonlocal_speed: f(10)?,
            max_abs_u: f(11)?,
            max_abs_v: f(12)?,
            validity_flags: rec[13]
                .trim()
                .parse()
                .map_err(|_| Error::Format(format!("line {line}: flags must be an unsigned integer")))?,
        })
    }
}

impl CsvRow for AuxRow {
    const HEADER: &'static [&'static str] = &AUX_HEADER;

    fn t(&self) -> f64 {
        self.t
    }

    fn fields(&self) -> Vec<String> {
        [
            self.t,
            self.ux2,
            self.u4,
            self.uv,
            self.v2,
            self.vx2,
            self.vx_rhox,
            self.im_uux,
        ]
        .iter()
        .map(|&x| fmt(x))
        .collect()
    }

    fn parse(rec: &csv::StringRecord, line: u64) -> Result<Self> {
        let f = |i| parse_f64(rec, i, line);
        Ok(AuxRow {
            t: f(0)?,
            ux2: f(1)?,
            u4: f(2)?,
            uv: f(3)?,
            v2: f(4)?,
            vx2: f(5)?,
            vx_rhox: f(6)?,
            im_uux: f(7)?,
        })
    }
}

fn csv_err(e: csv::Error) -> Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => Error::Io(e),
        csv::ErrorKind::UnequalLengths { pos, expected_len, len } => Error::Format(format!(
            "line {}: expected {expected_len} columns, found {len}",
            pos.map(|p| p.line()).unwrap_or(0)
        )),
        other => Error::Format(format!("{other:?}")),
    }
}

fn write_rows<R: CsvRow, W: Write>(rows: &[R], out: W) -> Result<()> {
    check_sorted(rows.iter().map(CsvRow::t))?;
    let mut w = csv::WriterBuilder::new().from_writer(out);
    w.write_record(R::HEADER).map_err(csv_err)?;
    for r in rows {
        w.write_record(r.fields()).map_err(csv_err)?;
    }
    w.flush()?;
    Ok(())
}

fn read_rows<R: CsvRow, I: Read>(input: I) -> Result<Vec<R>> {
    let mut rd = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = rd.headers().map_err(csv_err)?.clone();
    if header.iter().ne(R::HEADER.iter().copied()) {
        return Err(Error::Format(format!(
            "unexpected header {:?}; expected {}",
            header.iter().collect::<Vec<_>>().join(","),
            R::HEADER.join(",")
        )));
    }
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(csv_err)?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        rows.push(R::parse(&rec, line)?);
    }
    check_sorted(rows.iter().map(CsvRow::t))?;
    Ok(rows)
}

pub fn write_timeseries_to<W: Write>(rows: &[TimeSeriesRow], out: W) -> Result<()> {
    write_rows(rows, out)
}

pub fn read_timeseries_from<I: Read>(input: I) -> Result<Vec<TimeSeriesRow>> {
    read_rows(input)
}

pub fn write_timeseries(rows: &[TimeSeriesRow], path: &Path) -> Result<()> {
    write_rows(rows, BufWriter::new(File::create(path)?))
}

pub fn read_timeseries(path: &Path) -> Result<Vec<TimeSeriesRow>> {
    read_rows(BufReader::new(File::open(path)?))
}

pub fn write_aux(rows: &[AuxRow], path: &Path) -> Result<()> {
    write_rows(rows, BufWriter::new(File::create(path)?))
}

pub fn read_aux(path: &Path) -> Result<Vec<AuxRow>> {
    read_rows(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(t: f64) -> TimeSeriesRow {
        TimeSeriesRow {
            t,
            mass: 1.0 / 3.0,
            energy: -2.5e-300,
            momentum: std::f64::consts::PI,
            phi: 1e300,
            validity_flags: 5,
            ..Default::default()
        }
    }

    #[test]
    fn empty_series_is_header_only() {
        let mut buf = Vec::new();
        write_timeseries_to(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "t,P,E,M,visc_E_ledger,visc_M_ledger,I2,J,K,phi,c_speed,max_u,max_v,flags\n"
        );
    }

    #[test]
    fn one_row_round_trips_bitwise() {
        let rows = vec![row(0.1)];
        let mut buf = Vec::new();
        write_timeseries_to(&rows, &mut buf).unwrap();
        let back = read_timeseries_from(buf.as_slice()).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].mass.to_bits(), rows[0].mass.to_bits());
        assert_eq!(back[0], rows[0]);
    }

    #[test]
    fn malformed_header_is_rejected() {
        let text = "t,P,E\n0,1,2\n";
        assert!(matches!(read_timeseries_from(text.as_bytes()), Err(Error::Format(_))));
    }

    #[test]
    fn short_row_is_rejected() {
        let mut buf = Vec::new();
        write_timeseries_to(&[row(0.0)], &mut buf).unwrap();
        buf.extend_from_slice(b"1.0,2.0\n");
        assert!(matches!(read_timeseries_from(buf.as_slice()), Err(Error::Format(_))));
    }

    #[test]
    fn unsorted_times_are_rejected() {
        let mut buf = Vec::new();
        assert!(write_timeseries_to(&[row(1.0), row(0.5)], &mut buf).is_err());
    }
}
