//! Binary portable graymap (P5, maxval 255) output for matrices.

use std::io::{self, Write};

use crate::matrix::DenseMatrix;

/// `⌊255 v / (p - 1)⌋`.
pub fn gray_level(v: u64, p: u64) -> u8 {
    (255 * v / (p - 1)) as u8
}

/// P5 image of `m`, one pixel per entry, row `i` of the matrix on image row `i`.
pub fn encode_pgm(m: &DenseMatrix) -> Vec<u8> {
    let p = m.modulus().get();
    let mut out = format!("P5\n{} {}\n255\n", m.cols(), m.rows()).into_bytes();
    out.extend(m.as_slice().iter().map(|&v| gray_level(v, p)));
    out
}

pub fn write_pgm(m: &DenseMatrix, mut w: impl Write) -> io::Result<()> {
    w.write_all(&encode_pgm(m))
}

/// A decoded P5 image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graymap {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub pixels: Vec<u8>,
}

impl Graymap {
    pub fn pixel(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }
}

/// Reads a P5 image with 8-bit samples. Comments are not supported.
pub fn decode_pgm(bytes: &[u8]) -> Option<Graymap> {
    let mut fields = Vec::with_capacity(4);
    let mut pos = 0;
    while fields.len() < 4 {
        while bytes.get(pos)?.is_ascii_whitespace() {
            pos += 1;
        }
        let start = pos;
        while !bytes.get(pos)?.is_ascii_whitespace() {
            pos += 1;
        }
        fields.push(std::str::from_utf8(&bytes[start..pos]).ok()?);
    }
    // exactly one whitespace byte separates the header from the raster
    pos += 1;
    if fields[0] != "P5" {
        return None;
    }
    let width: usize = fields[1].parse().ok()?;
    let height: usize = fields[2].parse().ok()?;
    let maxval: u16 = fields[3].parse().ok()?;
    if maxval == 0 || maxval > 255 {
        return None;
    }
    let pixels = bytes.get(pos..pos + width * height)?.to_vec();
    Some(Graymap {
        width,
        height,
        maxval,
        pixels,
    })
}
