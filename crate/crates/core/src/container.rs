//! Shared binary container used by the dataset ("OPLB") and checkpoint
//! ("OPCK") files.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic: 4 bytes | version: u16 | header_len: u32 | header: UTF-8 JSON
//! | payload: raw bytes | crc32: u32
//! ```
//!
//! The CRC-32 (IEEE) covers every byte after the magic and version, i.e.
//! header length, header and payload. Files are written to a `.partial`
//! sibling and atomically renamed on success.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::FormatErrorKind;
use crate::{Error, Real, Result};

pub const FORMAT_VERSION: u16 = 1;

pub struct Container {
    pub header_json: String,
    pub payload: Vec<u8>,
}

pub fn write_container(path: &Path, magic: &[u8; 4], c: &Container) -> Result<()> {
    let mut body: Vec<u8> = Vec::with_capacity(c.header_json.len() + c.payload.len() + 16);
    body.extend_from_slice(&(c.header_json.len() as u32).to_le_bytes());
    body.extend_from_slice(c.header_json.as_bytes());
    body.extend_from_slice(&c.payload);

    let mut hasher = crc32fast::Hasher::new();
    hasher.update(&body);
    let crc = hasher.finalize();

    let mut bytes = Vec::with_capacity(body.len() + 10);
    bytes.extend_from_slice(magic);
    bytes.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    bytes.extend_from_slice(&body);
    bytes.extend_from_slice(&crc.to_le_bytes());

    let display = path.display().to_string();
    let partial = path.with_extension(match path.extension() {
        Some(ext) => format!("{}.partial", ext.to_string_lossy()),
        None => "partial".to_string(),
    });
    {
        let mut f = fs::File::create(&partial).map_err(|e| Error::io(&display, e))?;
        f.write_all(&bytes).map_err(|e| Error::io(&display, e))?;
        f.sync_all().map_err(|e| Error::io(&display, e))?;
    }
    fs::rename(&partial, path).map_err(|e| Error::io(&display, e))?;
    Ok(())
}

pub fn read_container(path: &Path, magic: &[u8; 4]) -> Result<Container> {
    let display = path.display().to_string();
    let bytes = fs::read(path).map_err(|e| Error::io(&display, e))?;
    if bytes.len() < 14 {
        return Err(Error::format(&display, FormatErrorKind::Truncated));
    }
    if &bytes[0..4] != magic {
        return Err(Error::format(&display, FormatErrorKind::BadMagic));
    }
    let version = u16::from_le_bytes([bytes[4], bytes[5]]);
    if version != FORMAT_VERSION {
        return Err(Error::format(&display, FormatErrorKind::VersionMismatch));
    }
    let body = &bytes[6..bytes.len() - 4];
    let stored_crc = u32::from_le_bytes(bytes[bytes.len() - 4..].try_into().unwrap());
    let mut hasher = crc32fast::Hasher::new();
    hasher.update(body);
    if hasher.finalize() != stored_crc {
        return Err(Error::format(&display, FormatErrorKind::ChecksumMismatch));
    }
    let header_len = u32::from_le_bytes(body[0..4].try_into().unwrap()) as usize;
    if body.len() < 4 + header_len {
        return Err(Error::format(&display, FormatErrorKind::Truncated));
    }
    let header_json = std::str::from_utf8(&body[4..4 + header_len])
        .map_err(|_| Error::format(&display, FormatErrorKind::MalformedHeader))?
        .to_string();
    let payload = body[4 + header_len..].to_vec();
    Ok(Container {
        header_json,
        payload,
    })
}

pub fn floats_to_bytes(out: &mut Vec<u8>, vals: &[Real]) {
    for v in vals {
        out.extend_from_slice(&v.to_le_bytes());
    }
}

/// Reads `count` little-endian f64 values starting at `*offset`, advancing it.
pub fn bytes_to_floats(
    payload: &[u8],
    offset: &mut usize,
    count: usize,
    path: &str,
) -> Result<Vec<Real>> {
    let need = count * 8;
    if payload.len() < *offset + need {
        return Err(Error::format(path, FormatErrorKind::Truncated));
    }
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let at = *offset + i * 8;
        out.push(Real::from_le_bytes(payload[at..at + 8].try_into().unwrap()));
    }
    *offset += need;
    Ok(out)
}
