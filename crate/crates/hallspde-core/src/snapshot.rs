//! Binary field snapshot format.
//!
//! Layout: magic `HMHD`, format version (u32 LE), N (u32 LE), L (f64 LE),
//! component count (u32 LE, 3 for one field, 6 for a state), then
//! coefficients as little-endian f64 `(re, im)` pairs in row-major k-order,
//! component-major, u-block before B-block.

use crate::error::{Error, Result};
use crate::spectral::{make_grid, SpectralField, State};
use num_complex::Complex64;
use std::io::{Read, Write};

const MAGIC: &[u8; 4] = b"HMHD";
const VERSION: u32 = 1;

fn write_header<W: Write>(w: &mut W, n: u32, l: f64, components: u32) -> Result<()> {
    w.write_all(MAGIC)?;
    w.write_all(&VERSION.to_le_bytes())?;
    w.write_all(&n.to_le_bytes())?;
    w.write_all(&l.to_le_bytes())?;
    w.write_all(&components.to_le_bytes())?;
    Ok(())
}

fn write_components<W: Write>(w: &mut W, field: &SpectralField) -> Result<()> {
    for c in 0..3 {
        for z in field.component(c) {
            w.write_all(&z.re.to_le_bytes())?;
            w.write_all(&z.im.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn write_field<W: Write>(w: &mut W, field: &SpectralField) -> Result<()> {
    let grid = field.grid();
    write_header(w, grid.resolution() as u32, grid.box_length(), 3)?;
    write_components(w, field)
}

pub fn write_state<W: Write>(w: &mut W, state: &State) -> Result<()> {
    let grid = state.grid();
    write_header(w, grid.resolution() as u32, grid.box_length(), 6)?;
    write_components(w, &state.u)?;
    write_components(w, &state.b)
}

struct Header {
    n: usize,
    l: f64,
    components: u32,
}

fn read_header<R: Read>(r: &mut R) -> Result<Header> {
    let mut magic = [0u8; 4];
    r.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::SnapshotFormat(format!(
            "bad magic {magic:?}, expected {MAGIC:?}"
        )));
    }
    let mut u32buf = [0u8; 4];
    r.read_exact(&mut u32buf)?;
    let version = u32::from_le_bytes(u32buf);
    if version != VERSION {
        return Err(Error::SnapshotFormat(format!(
            "unsupported version {version}"
        )));
    }
    r.read_exact(&mut u32buf)?;
    let n = u32::from_le_bytes(u32buf) as usize;
    let mut f64buf = [0u8; 8];
    r.read_exact(&mut f64buf)?;
    let l = f64::from_le_bytes(f64buf);
    r.read_exact(&mut u32buf)?;
    let components = u32::from_le_bytes(u32buf);
    if components != 3 && components != 6 {
        return Err(Error::SnapshotFormat(format!(
            "component count must be 3 or 6, got {components}"
        )));
    }
    Ok(Header { n, l, components })
}

fn read_components<R: Read>(r: &mut R, field: &mut SpectralField) -> Result<()> {
    let mut buf = [0u8; 16];
    for c in 0..3 {
        for z in field.component_mut(c) {
            r.read_exact(&mut buf)?;
            let re = f64::from_le_bytes(buf[0..8].try_into().unwrap());
            let im = f64::from_le_bytes(buf[8..16].try_into().unwrap());
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::SnapshotFormat("non-finite coefficient".into()));
            }
            *z = Complex64::new(re, im);
        }
    }
    Ok(())
}

#[derive(Debug)]
pub enum Snapshot {
    Field(SpectralField),
    State(State),
}

pub fn read_snapshot<R: Read>(r: &mut R) -> Result<Snapshot> {
    let header = read_header(r)?;
    let grid = make_grid(header.n, header.l)?;
    let mut u = SpectralField::zeros(grid);
    read_components(r, &mut u)?;
    if header.components == 3 {
        return Ok(Snapshot::Field(u));
    }
    let mut b = SpectralField::zeros(grid);
    read_components(r, &mut b)?;
    Ok(Snapshot::State(State::new(u, b)?))
}

pub fn read_state<R: Read>(r: &mut R) -> Result<State> {
    match read_snapshot(r)? {
        Snapshot::State(s) => Ok(s),
        Snapshot::Field(_) => Err(Error::SnapshotFormat(
            "expected a 6-component state snapshot".into(),
        )),
    }
}
