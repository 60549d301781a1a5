//! The `RSXF` file container.
//!
//! Layout: a 16-byte header followed by `chunks` codewords of `n` symbols
//! each. Every symbol occupies `ceil(m/8)` little-endian bytes.
//!
//! | offset | size | field                          |
//! |--------|------|--------------------------------|
//! | 0      | 4    | magic `52 53 58 46` ("RSXF")   |
//! | 4      | 1    | version, always 1              |
//! | 5      | 1    | m                              |
//! | 6      | 1    | t                              |
//! | 7      | 1    | reserved, 0                    |
//! | 8      | 8    | payload length in bytes, LE    |
//!
//! The payload is read as a little-endian bit stream and cut into `m`-bit
//! symbols (for `m = 16` this is just consecutive byte pairs). Every `k`
//! symbols form one message chunk; the last chunk is zero padded.

use rsxf_core::{CodeParams, FieldElem};
use thiserror::Error;

pub const MAGIC: [u8; 4] = *b"RSXF";
pub const VERSION: u8 = 1;
pub const HEADER_LEN: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ContainerError {
    #[error("file is {0} bytes, shorter than the {HEADER_LEN}-byte header")]
    TruncatedHeader(usize),
    #[error("bad magic {0:02x?}")]
    BadMagic([u8; 4]),
    #[error("unsupported container version {0}")]
    BadVersion(u8),
    #[error("reserved header byte is {0}, expected 0")]
    BadReserved(u8),
    #[error("invalid code parameters m = {m}, t = {t}")]
    BadParams { m: u8, t: u8 },
    #[error("payload length {0} is too large")]
    PayloadTooLarge(u64),
    #[error("body is {got} bytes, expected {expected}")]
    BodyLength { expected: u64, got: u64 },
    #[error("symbol {index} has value {value:#x}, wider than {m} bits")]
    SymbolRange { index: usize, value: u16, m: u32 },
}

/// Decoded form of the 16-byte header.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContainerHeader {
    pub params: CodeParams,
    pub payload_len: u64,
}

impl ContainerHeader {
    pub fn new(params: CodeParams, payload_len: u64) -> Result<Self, ContainerError> {
        let h = Self { params, payload_len };
        h.chunks()?;
        Ok(h)
    }

    pub fn m(&self) -> u32 {
        self.params.m()
    }

    pub fn t(&self) -> u32 {
        self.params.t()
    }

    /// Bytes per stored symbol.
    pub fn symbol_width(&self) -> usize {
        self.m().div_ceil(8) as usize
    }

    /// Number of codewords needed for the payload.
    pub fn chunks(&self) -> Result<u64, ContainerError> {
        let bits = self
            .payload_len
            .checked_mul(8)
            .ok_or(ContainerError::PayloadTooLarge(self.payload_len))?;
        let per_chunk = self.params.k() as u64 * self.m() as u64;
        Ok(bits.div_ceil(per_chunk))
    }

    /// Exact body size in bytes.
    pub fn body_len(&self) -> Result<u64, ContainerError> {
        let too_large = ContainerError::PayloadTooLarge(self.payload_len);
        self.chunks()?
            .checked_mul(self.params.n() as u64)
            .and_then(|s| s.checked_mul(self.symbol_width() as u64))
            .ok_or(too_large)
    }

    pub fn to_bytes(&self) -> [u8; HEADER_LEN] {
        let mut out = [0u8; HEADER_LEN];
        out[..4].copy_from_slice(&MAGIC);
        out[4] = VERSION;
        out[5] = self.m() as u8;
        out[6] = self.t() as u8;
        out[8..].copy_from_slice(&self.payload_len.to_le_bytes());
        out
    }

    pub fn parse(bytes: &[u8]) -> Result<Self, ContainerError> {
        if bytes.len() < HEADER_LEN {
            return Err(ContainerError::TruncatedHeader(bytes.len()));
        }
        let magic: [u8; 4] = bytes[..4].try_into().unwrap();
        if magic != MAGIC {
            return Err(ContainerError::BadMagic(magic));
        }
        if bytes[4] != VERSION {
            return Err(ContainerError::BadVersion(bytes[4]));
        }
        if bytes[7] != 0 {
            return Err(ContainerError::BadReserved(bytes[7]));
        }
        let (m, t) = (bytes[5], bytes[6]);
        let params =
            CodeParams::new(m as u32, t as u32).map_err(|_| ContainerError::BadParams { m, t })?;
        let payload_len = u64::from_le_bytes(bytes[8..16].try_into().unwrap());
        Self::new(params, payload_len)
    }
}

/// A parsed container: header plus one symbol vector per chunk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Container {
    pub header: ContainerHeader,
    pub chunks: Vec<Vec<FieldElem>>,
}

impl Container {
    /// Parses a whole file, checking the body length and symbol ranges.
    pub fn parse(bytes: &[u8]) -> Result<Self, ContainerError> {
        let header = ContainerHeader::parse(bytes)?;
        let body = &bytes[HEADER_LEN..];
        let expected = header.body_len()?;
        if body.len() as u64 != expected {
            return Err(ContainerError::BodyLength { expected, got: body.len() as u64 });
        }
        let m = header.m();
        let w = header.symbol_width();
        let n = header.params.n();
        let mut chunks = Vec::with_capacity(header.chunks()? as usize);
        for (ci, raw) in body.chunks_exact(n * w).enumerate() {
            let symbols = read_symbols(raw, w);
            if let Some(i) = symbols.iter().position(|&s| (s as u32) >> m != 0) {
                return Err(ContainerError::SymbolRange { index: ci * n + i, value: symbols[i], m });
            }
            chunks.push(symbols);
        }
        Ok(Self { header, chunks })
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let w = self.header.symbol_width();
        let n = self.header.params.n();
        let mut out = Vec::with_capacity(HEADER_LEN + self.chunks.len() * n * w);
        out.extend_from_slice(&self.header.to_bytes());
        for c in &self.chunks {
            write_symbols(&mut out, c, w);
        }
        out
    }
}

fn read_symbols(raw: &[u8], width: usize) -> Vec<FieldElem> {
    match width {
        1 => raw.iter().map(|&b| b as FieldElem).collect(),
        _ => raw.chunks_exact(2).map(|p| u16::from_le_bytes([p[0], p[1]])).collect(),
    }
}

fn write_symbols(out: &mut Vec<u8>, symbols: &[FieldElem], width: usize) {
    for &s in symbols {
        out.extend_from_slice(&s.to_le_bytes()[..width]);
    }
}

/// Cuts `payload` into `m`-bit symbols, zero padding to `total` symbols.
pub fn pack_payload(payload: &[u8], m: u32, total: usize) -> Vec<FieldElem> {
    let mask = (1u32 << m) - 1;
    let mut out = Vec::with_capacity(total);
    let (mut acc, mut bits) = (0u32, 0u32);
    for &b in payload {
        acc |= (b as u32) << bits;
        bits += 8;
        while bits >= m {
            out.push((acc & mask) as FieldElem);
            acc >>= m;
            bits -= m;
        }
    }
    if bits > 0 {
        out.push(acc as FieldElem);
    }
    out.resize(total, 0);
    out
}

/// Inverse of [`pack_payload`]: the first `len` bytes of the bit stream.
pub fn unpack_payload(symbols: &[FieldElem], m: u32, len: usize) -> Vec<u8> {
    let mut out = Vec::with_capacity(len);
    let (mut acc, mut bits) = (0u32, 0u32);
    for &s in symbols {
        if out.len() == len {
            break;
        }
        acc |= (s as u32) << bits;
        bits += m;
        while bits >= 8 && out.len() < len {
            out.push(acc as u8);
            acc >>= 8;
            bits -= 8;
        }
    }
    out
}
