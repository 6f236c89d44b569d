//! CMAT binary format.
//!
//! ```text
//! offset  size  field
//! 0       4     magic "CMX1"
//! 4       8     rows, u64 little-endian
//! 12      8     cols, u64 little-endian
//! 20      16*n  entries row-major, each (re, im) as f64 little-endian
//! ```
//!
//! Vectors are stored with `cols = 1`.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, C64};

pub const CMAT_MAGIC: &[u8; 4] = b"CMX1";
const HEADER_LEN: usize = 20;
const ENTRY_LEN: usize = 16;

pub fn encode_cmat(a: &CMatrix) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + ENTRY_LEN * a.as_slice().len());
    out.extend_from_slice(CMAT_MAGIC);
    out.extend_from_slice(&(a.rows() as u64).to_le_bytes());
    out.extend_from_slice(&(a.cols() as u64).to_le_bytes());
    for z in a.as_slice() {
        out.extend_from_slice(&z.re.to_le_bytes());
        out.extend_from_slice(&z.im.to_le_bytes());
    }
    out
}

pub fn decode_cmat(bytes: &[u8]) -> Result<CMatrix> {
    let fmt = |offset: usize, message: String| Error::Format {
        offset: offset as u64,
        message,
    };
    if bytes.len() < HEADER_LEN {
        return Err(fmt(
            bytes.len(),
            format!("truncated header: {} of {HEADER_LEN} bytes", bytes.len()),
        ));
    }
    if &bytes[..4] != CMAT_MAGIC {
        return Err(fmt(0, format!("bad magic {:?}", &bytes[..4])));
    }
    let u64_at = |at: usize| u64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
    let rows = u64_at(4);
    let cols = u64_at(12);
    if rows == 0 || cols == 0 {
        return Err(fmt(4, format!("empty shape {rows}x{cols}")));
    }
    let payload = rows
        .checked_mul(cols)
        .and_then(|n| n.checked_mul(ENTRY_LEN as u64))
        .ok_or_else(|| fmt(4, format!("shape {rows}x{cols} overflows")))?;
    let available = (bytes.len() - HEADER_LEN) as u64;
    if available < payload {
        return Err(fmt(
            bytes.len(),
            format!("payload truncated: {rows}x{cols} needs {payload} bytes, found {available}"),
        ));
    }
    if available > payload {
        return Err(fmt(
            HEADER_LEN + payload as usize,
            format!("{} trailing bytes after payload", available - payload),
        ));
    }
    let (rows, cols) = (rows as usize, cols as usize);
    let mut data = Vec::with_capacity(rows * cols);
    for (idx, chunk) in bytes[HEADER_LEN..].chunks_exact(ENTRY_LEN).enumerate() {
        let re = f64::from_le_bytes(chunk[..8].try_into().unwrap());
        let im = f64::from_le_bytes(chunk[8..].try_into().unwrap());
        if !(re.is_finite() && im.is_finite()) {
            return Err(fmt(
                HEADER_LEN + idx * ENTRY_LEN,
                format!("non-finite entry {idx}"),
            ));
        }
        data.push(C64::new(re, im));
    }
    CMatrix::new(rows, cols, data)
}

pub fn write_cmat(path: impl AsRef<Path>, a: &CMatrix) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, encode_cmat(a)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_cmat(path: impl AsRef<Path>) -> Result<CMatrix> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })?;
    decode_cmat(&bytes)
}

pub fn write_cvec(path: impl AsRef<Path>, v: &CVector) -> Result<()> {
    let as_column = CMatrix::from_vec_unchecked(v.len(), 1, v.as_slice().to_vec());
    write_cmat(path, &as_column)
}

pub fn read_cvec(path: impl AsRef<Path>) -> Result<CVector> {
    let m = read_cmat(path)?;
    if m.cols() != 1 {
        return Err(Error::Format {
            offset: 12,
            message: format!("expected a column vector, found {} columns", m.cols()),
        });
    }
    Ok(CVector::from_vec_unchecked(m.as_slice().to_vec()))
}
