//! Binary snapshots.
//!
//! Layout, little-endian: magic `BNY1`, `u32` version, `f64` t, `f64` L,
//! `u64` N, `f64` a, b, epsilon, `u8` scheme, transport and diffusion ids,
//! then `u64` node count followed by interleaved `(re, im)` values of `u`,
//! then `u64` node count followed by `v`.

use std::fs::File;
use std::io::{BufReader, BufWriter, ErrorKind, Read, Write};
use std::path::Path;

use num_complex::Complex64;

use crate::dynamics::{DiffusionScheme, Scheme, SimState, TransportScheme};
use crate::error::{Error, Result};
use crate::field::{ComplexField, RealField};
use crate::grid::Grid;
use crate::physics::PhysParams;

pub const SNAPSHOT_MAGIC: &[u8; 4] = b"BNY1";
pub const SNAPSHOT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub grid: Grid,
    pub params: PhysParams,
    pub scheme: Scheme,
    pub transport: TransportScheme,
    pub diffusion: DiffusionScheme,
    pub u: ComplexField,
    pub v: RealField,
}

impl Snapshot {
    pub fn state(&self) -> SimState {
        SimState {
            t: self.t,
            u: self.u.clone(),
            v: self.v.clone(),
            diverged: !(self.u.is_finite() && self.v.is_finite()),
        }
    }
}

fn scheme_id(s: Scheme) -> u8 {
    match s {
        Scheme::Inviscid => 0,
        Scheme::Viscous => 1,
    }
}

fn transport_id(s: TransportScheme) -> u8 {
    match s {
        TransportScheme::Upwind1 => 0,
        TransportScheme::Minmod => 1,
    }
}

fn diffusion_id(s: DiffusionScheme) -> u8 {
    match s {
        DiffusionScheme::BackwardEuler => 0,
        DiffusionScheme::CrankNicolson => 1,
    }
}

pub fn write_snapshot_to<W: Write>(s: &Snapshot, mut w: W) -> Result<()> {
    s.grid.check_len(s.u.len())?;
    s.grid.check_len(s.v.len())?;
    w.write_all(SNAPSHOT_MAGIC)?;
    w.write_all(&SNAPSHOT_VERSION.to_le_bytes())?;
    for x in [s.t, s.grid.length()] {
        w.write_all(&x.to_le_bytes())?;
    }
    w.write_all(&(s.grid.cells() as u64).to_le_bytes())?;
    for x in [s.params.a, s.params.b, s.params.epsilon] {
        w.write_all(&x.to_le_bytes())?;
    }
    w.write_all(&[
        scheme_id(s.scheme),
        transport_id(s.transport),
        diffusion_id(s.diffusion),
    ])?;
    w.write_all(&(s.u.len() as u64).to_le_bytes())?;
    for z in s.u.iter() {
        w.write_all(&z.re.to_le_bytes())?;
        w.write_all(&z.im.to_le_bytes())?;
    }
    w.write_all(&(s.v.len() as u64).to_le_bytes())?;
    for x in s.v.iter() {
        w.write_all(&x.to_le_bytes())?;
    }
    w.flush()?;
    Ok(())
}

struct Cursor<R> {
    inner: R,
}

impl<R: Read> Cursor<R> {
    fn bytes<const K: usize>(&mut self) -> Result<[u8; K]> {
        let mut buf = [0u8; K];
        self.inner.read_exact(&mut buf).map_err(|e| {
            if e.kind() == ErrorKind::UnexpectedEof {
                Error::Format("truncated snapshot".into())
            } else {
                Error::Io(e)
            }
        })?;
        Ok(buf)
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.bytes()?))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.bytes()?))
    }

    fn len(&mut self, expected: usize) -> Result<usize> {
        let n = self.u64()?;
        if n != expected as u64 {
            return Err(Error::Format(format!(
                "snapshot array has {n} values but the grid has {expected} nodes"
            )));
        }
        Ok(expected)
    }
}

pub fn read_snapshot_from<R: Read>(r: R) -> Result<Snapshot> {
    let mut c = Cursor { inner: r };
    let magic: [u8; 4] = c.bytes()?;
    if &magic != SNAPSHOT_MAGIC {
        return Err(Error::Format(format!("bad snapshot magic {magic:?}")));
    }
    let version = u32::from_le_bytes(c.bytes()?);
    if version != SNAPSHOT_VERSION {
        return Err(Error::Format(format!(
            "unsupported snapshot version {version} (this reader handles {SNAPSHOT_VERSION})"
        )));
    }
    let t = c.f64()?;
    let length = c.f64()?;
    let cells = usize::try_from(c.u64()?).map_err(|_| Error::Format("grid size overflows".into()))?;
    let grid = Grid::new(length, cells).map_err(|e| Error::Format(format!("snapshot grid: {e}")))?;
    let params = PhysParams {
        a: c.f64()?,
        b: c.f64()?,
        epsilon: c.f64()?,
    };
    let [s, tr, df] = c.bytes::<3>()?;
    let scheme = match s {
        0 => Scheme::Inviscid,
        1 => Scheme::Viscous,
        x => return Err(Error::Format(format!("unknown scheme id {x}"))),
    };
    let transport = match tr {
        0 => TransportScheme::Upwind1,
        1 => TransportScheme::Minmod,
        x => return Err(Error::Format(format!("unknown transport id {x}"))),
    };
    let diffusion = match df {
        0 => DiffusionScheme::BackwardEuler,
        1 => DiffusionScheme::CrankNicolson,
        x => return Err(Error::Format(format!("unknown diffusion id {x}"))),
    };
    let n = c.len(grid.nodes())?;
    let mut u = Vec::with_capacity(n);
    for _ in 0..n {
        let re = c.f64()?;
        let im = c.f64()?;
        u.push(Complex64::new(re, im));
    }
    let n = c.len(grid.nodes())?;
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        v.push(c.f64()?);
    }
    let mut rest = [0u8; 1];
    if c.inner.read(&mut rest)? != 0 {
        return Err(Error::Format("trailing bytes after snapshot".into()));
    }
    Ok(Snapshot {
        t,
        grid,
        params,
        scheme,
        transport,
        diffusion,
        u: ComplexField::new(u),
        v: RealField::new(v),
    })
}

pub fn write_snapshot(s: &Snapshot, path: &Path) -> Result<()> {
    write_snapshot_to(s, BufWriter::new(File::create(path)?))
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    read_snapshot_from(BufReader::new(File::open(path)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Snapshot {
        let grid = Grid::new(3.0, 16).unwrap();
        Snapshot {
            t: 0.125,
            grid,
            params: PhysParams::new(1.0, -2.0, 1e-2).unwrap(),
            scheme: Scheme::Viscous,
            transport: TransportScheme::Minmod,
            diffusion: DiffusionScheme::CrankNicolson,
            u: ComplexField::from_fn(&grid, |x| Complex64::new(x.sin(), 1.0 / (1.0 + x))),
            v: RealField::from_fn(&grid, |x| (x * 0.7).cos() / 3.0),
        }
    }

    fn encode(s: &Snapshot) -> Vec<u8> {
        let mut buf = Vec::new();
        write_snapshot_to(s, &mut buf).unwrap();
        buf
    }

    #[test]
    fn round_trip_is_exact() {
        let s = sample();
        assert_eq!(read_snapshot_from(encode(&s).as_slice()).unwrap(), s);
    }

    #[test]
    fn version_bump_is_a_clean_error() {
        let mut buf = encode(&sample());
        buf[4..8].copy_from_slice(&2u32.to_le_bytes());
        let err = read_snapshot_from(buf.as_slice()).unwrap_err();
        assert!(err.to_string().contains("version 2"), "{err}");
    }

    #[test]
    fn bad_magic_and_truncation() {
        let mut buf = encode(&sample());
        buf[0] = b'X';
        assert!(matches!(read_snapshot_from(buf.as_slice()), Err(Error::Format(_))));
        let buf = encode(&sample());
        let err = read_snapshot_from(&buf[..buf.len() - 3]).unwrap_err();
        assert!(err.to_string().contains("truncated"));
    }
}
