//! Canonical byte encodings for everything that crosses a party boundary.
//!
//! Field elements are fixed-width 8-byte little-endian; vectors carry a
//! u32-LE length prefix; every top-level record starts with a one-byte
//! schema version. The encoding is bit-exact by construction: there is one
//! valid serialization per value, and decoding rejects trailing bytes.

use crate::ffmath::Fe;
use thiserror::Error;

pub const SCHEMA_VERSION: u8 = 1;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodecError {
    #[error("unexpected end of input")]
    Eof,
    #[error("unsupported schema version {0}")]
    BadVersion(u8),
    #[error("trailing bytes after record")]
    Trailing,
    #[error("invalid tag byte {0}")]
    BadTag(u8),
}

#[derive(Default)]
pub struct Writer {
    buf: Vec<u8>,
}

impl Writer {
    pub fn record() -> Self {
        let mut w = Writer::default();
        w.buf.push(SCHEMA_VERSION);
        w
    }

    pub fn plain() -> Self {
        Writer::default()
    }

    pub fn u8(&mut self, v: u8) -> &mut Self {
        self.buf.push(v);
        self
    }

    pub fn u32(&mut self, v: u32) -> &mut Self {
        self.buf.extend_from_slice(&v.to_le_bytes());
        self
    }

    pub fn u64(&mut self, v: u64) -> &mut Self {
        self.buf.extend_from_slice(&v.to_le_bytes());
        self
    }

    pub fn fe(&mut self, v: Fe) -> &mut Self {
        self.u64(v.0)
    }

    pub fn fe_vec(&mut self, v: &[Fe]) -> &mut Self {
        self.u32(v.len() as u32);
        for &x in v {
            self.fe(x);
        }
        self
    }

    pub fn u64_vec(&mut self, v: &[u64]) -> &mut Self {
        self.u32(v.len() as u32);
        for &x in v {
            self.u64(x);
        }
        self
    }

    pub fn bytes(&mut self, v: &[u8]) -> &mut Self {
        self.u32(v.len() as u32);
        self.buf.extend_from_slice(v);
        self
    }

    pub fn finish(self) -> Vec<u8> {
        self.buf
    }
}

pub struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    /// Open a versioned record.
    pub fn record(buf: &'a [u8]) -> Result<Self, CodecError> {
        let mut r = Reader { buf, pos: 0 };
        let v = r.u8()?;
        if v != SCHEMA_VERSION {
            return Err(CodecError::BadVersion(v));
        }
        Ok(r)
    }

    pub fn plain(buf: &'a [u8]) -> Self {
        Reader { buf, pos: 0 }
    }

    pub fn u8(&mut self) -> Result<u8, CodecError> {
        let b = *self.buf.get(self.pos).ok_or(CodecError::Eof)?;
        self.pos += 1;
        Ok(b)
    }

    pub fn u32(&mut self) -> Result<u32, CodecError> {
        let end = self.pos + 4;
        let s = self.buf.get(self.pos..end).ok_or(CodecError::Eof)?;
        self.pos = end;
        Ok(u32::from_le_bytes(s.try_into().unwrap()))
    }

    pub fn u64(&mut self) -> Result<u64, CodecError> {
        let end = self.pos + 8;
        let s = self.buf.get(self.pos..end).ok_or(CodecError::Eof)?;
        self.pos = end;
        Ok(u64::from_le_bytes(s.try_into().unwrap()))
    }

    pub fn fe(&mut self) -> Result<Fe, CodecError> {
        Ok(Fe(self.u64()?))
    }

    pub fn fe_vec(&mut self) -> Result<Vec<Fe>, CodecError> {
        let n = self.u32()? as usize;
        (0..n).map(|_| self.fe()).collect()
    }

    pub fn u64_vec(&mut self) -> Result<Vec<u64>, CodecError> {
        let n = self.u32()? as usize;
        (0..n).map(|_| self.u64()).collect()
    }

    pub fn bytes(&mut self) -> Result<Vec<u8>, CodecError> {
        let n = self.u32()? as usize;
        let end = self.pos + n;
        let s = self.buf.get(self.pos..end).ok_or(CodecError::Eof)?;
        self.pos = end;
        Ok(s.to_vec())
    }

    pub fn done(&self) -> Result<(), CodecError> {
        if self.pos == self.buf.len() {
            Ok(())
        } else {
            Err(CodecError::Trailing)
        }
    }
}
