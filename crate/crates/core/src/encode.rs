//! Numeric exports for external learners: padded symbol-index batches and
//! the 2D sinusoidal positional encoding.
//!
//! Per axis, entry `2k` is `sin(pos / 10000^(2k/d))` and entry `2k + 1` is
//! `cos(pos / 10000^(2k/d))`, where `d` is the *full* embedding dimension;
//! a 2D position `(i, j)` concatenates the two `d/2`-long axis vectors.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{Grid, MAX_DIM};

/// Index that marks padded (non-)cells, one past the last symbol.
pub const PADDING: u8 = 10;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("axis dimension {0} must be even and nonzero")]
    OddAxis(usize),
    #[error("embedding dimension {0} must be a positive multiple of 4")]
    BadDim(usize),
    #[error("position ({0}, {1}) outside the {max}x{max} table", max = MAX_DIM)]
    Position(usize, usize),
    #[error("empty batch")]
    EmptyBatch,
}

fn axis(pos: usize, d_axis: usize, d_model: usize) -> Vec<f64> {
    let mut v = Vec::with_capacity(d_axis);
    for k in 0..d_axis / 2 {
        let angle = pos as f64 / 10000f64.powf((2 * k) as f64 / d_model as f64);
        v.push(angle.sin());
        v.push(angle.cos());
    }
    v
}

/// Encoding of one axis position on its own: the full model dimension is
/// taken to be `2 · d_axis`.
pub fn pe_axis(pos: usize, d_axis: usize) -> Result<Vec<f64>, EncodeError> {
    if d_axis == 0 || d_axis % 2 != 0 {
        return Err(EncodeError::OddAxis(d_axis));
    }
    Ok(axis(pos, d_axis, 2 * d_axis))
}

/// `concat(pe_axis(i, d/2), pe_axis(j, d/2))`.
pub fn pe_2d(i: usize, j: usize, d: usize) -> Result<Vec<f64>, EncodeError> {
    if d == 0 || d % 4 != 0 {
        return Err(EncodeError::BadDim(d));
    }
    if i >= MAX_DIM || j >= MAX_DIM {
        return Err(EncodeError::Position(i, j));
    }
    let mut v = pe_axis(i, d / 2)?;
    v.extend(pe_axis(j, d / 2)?);
    Ok(v)
}

/// The full `30 × 30 × d` table, computed once and shared read-only.
#[derive(Debug, Clone, PartialEq)]
pub struct PosEncodingTable {
    d: usize,
    values: Vec<f32>,
}

impl PosEncodingTable {
    pub fn new(d: usize) -> Result<PosEncodingTable, EncodeError> {
        let mut values = Vec::with_capacity(MAX_DIM * MAX_DIM * d);
        for i in 0..MAX_DIM {
            for j in 0..MAX_DIM {
                values.extend(pe_2d(i, j, d)?.into_iter().map(|x| x as f32));
            }
        }
        Ok(PosEncodingTable { d, values })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &[f32] {
        let start = (i * MAX_DIM + j) * self.d;
        &self.values[start..start + self.d]
    }

    /// Row-major `[i][j][k]` values.
    pub fn values(&self) -> &[f32] {
        &self.values
    }

    /// Writes a one-line JSON header followed by little-endian `f32`s.
    pub fn write_binary(&self, mut out: impl Write) -> io::Result<()> {
        let header = BinaryHeader {
            dims: vec![MAX_DIM, MAX_DIM, self.d],
            d: Some(self.d),
            layout: "row-major".into(),
            dtype: "f32le".into(),
        };
        write_header(&mut out, &header)?;
        for x in &self.values {
            out.write_all(&x.to_le_bytes())?;
        }
        Ok(())
    }
}

/// Header line preceding every binary export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinaryHeader {
    pub dims: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    pub layout: String,
    pub dtype: String,
}

fn write_header(out: &mut impl Write, header: &BinaryHeader) -> io::Result<()> {
    serde_json::to_writer(&mut *out, header)?;
    out.write_all(b"\n")
}

/// Grids padded to a common `width × height` with [`PADDING`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaddedBatch {
    pub width: usize,
    pub height: usize,
    /// `len × height × width` indices, row-major.
    pub indices: Vec<u8>,
    /// True where a real cell sits.
    pub mask: Vec<bool>,
    /// Original `(width, height)` per grid.
    pub dims: Vec<(usize, usize)>,
}

pub fn to_indices(grids: &[Grid]) -> Result<PaddedBatch, EncodeError> {
    let width = grids.iter().map(Grid::width).max().ok_or(EncodeError::EmptyBatch)?;
    let height = grids.iter().map(Grid::height).max().unwrap_or(0);
    let plane = width * height;
    let mut indices = vec![PADDING; grids.len() * plane];
    let mut mask = vec![false; grids.len() * plane];
    for (b, g) in grids.iter().enumerate() {
        for (row, cells) in g.rows().enumerate() {
            for (col, s) in cells.iter().enumerate() {
                let i = b * plane + row * width + col;
                indices[i] = s.value();
                mask[i] = true;
            }
        }
    }
    Ok(PaddedBatch {
        width,
        height,
        indices,
        mask,
        dims: grids.iter().map(|g| (g.width(), g.height())).collect(),
    })
}

impl PaddedBatch {
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// Recovers the original grids.
    pub fn unpad(&self) -> Vec<Grid> {
        let plane = self.width * self.height;
        self.dims
            .iter()
            .enumerate()
            .map(|(b, &(w, h))| {
                let rows: Vec<&[u8]> = (0..h)
                    .map(|r| {
                        let start = b * plane + r * self.width;
                        &self.indices[start..start + w]
                    })
                    .collect();
                Grid::from_rows(&rows).expect("batch holds valid grids")
            })
            .collect()
    }

    /// Writes a one-line JSON header followed by the `u8` indices.
    pub fn write_binary(&self, mut out: impl Write) -> io::Result<()> {
        let header = BinaryHeader {
            dims: vec![self.len(), self.height, self.width],
            d: None,
            layout: "row-major".into(),
            dtype: "u8".into(),
        };
        write_header(&mut out, &header)?;
        out.write_all(&self.indices)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_position_alternates() {
        assert_eq!(pe_2d(0, 0, 8).unwrap(), vec![0.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0, 1.0]);
        assert_eq!(pe_axis(0, 6).unwrap(), vec![0.0, 1.0, 0.0, 1.0, 0.0, 1.0]);
    }

    #[test]
    fn first_frequency_is_unscaled() {
        let v = pe_axis(1, 4).unwrap();
        assert!((v[0] - 0.84147).abs() < 1e-5);
        assert!((v[1] - 0.54030).abs() < 1e-5);
    }

    #[test]
    fn second_frequency_uses_full_dimension() {
        // d_axis = 4 within a d = 8 model: k = 1 divides by 10000^(2/8) = 10.
        let v = pe_axis(5, 4).unwrap();
        assert!((v[2] - 0.5f64.sin()).abs() < 1e-12);
        assert!((v[3] - 0.5f64.cos()).abs() < 1e-12);
    }

    #[test]
    fn invalid_dimensions() {
        assert_eq!(pe_axis(3, 5), Err(EncodeError::OddAxis(5)));
        assert_eq!(pe_2d(0, 0, 6), Err(EncodeError::BadDim(6)));
        assert_eq!(pe_2d(30, 0, 8), Err(EncodeError::Position(30, 0)));
    }

    #[test]
    fn padding_arithmetic_and_unpad() {
        let small = Grid::from_rows(&[[1u8, 2], [3, 4]]).unwrap();
        let big = Grid::from_rows(&[[0u8, 0, 0], [5, 5, 5], [9, 9, 9]]).unwrap();
        let batch = to_indices(&[small.clone(), big.clone()]).unwrap();
        assert_eq!((batch.width, batch.height), (3, 3));
        assert_eq!(batch.indices[..9].iter().filter(|&&x| x == PADDING).count(), 5);
        assert_eq!(batch.mask[..9].iter().filter(|&&m| m).count(), 4);
        assert!(batch.mask[9..].iter().all(|&m| m));
        assert_eq!(batch.unpad(), vec![small.clone(), big]);

        let one = to_indices(std::slice::from_ref(&small)).unwrap();
        assert!(one.mask.iter().all(|&m| m));
        assert_eq!(to_indices(&[]), Err(EncodeError::EmptyBatch));
    }

    #[test]
    fn binary_layouts() {
        let table = PosEncodingTable::new(8).unwrap();
        let mut bytes = Vec::new();
        table.write_binary(&mut bytes).unwrap();
        let nl = bytes.iter().position(|&b| b == b'\n').unwrap();
        let header: BinaryHeader = serde_json::from_slice(&bytes[..nl]).unwrap();
        assert_eq!(header.dims, vec![30, 30, 8]);
        assert_eq!(bytes.len() - nl - 1, 30 * 30 * 8 * 4);
        let at = |i: usize| f32::from_le_bytes(bytes[nl + 1 + 4 * i..nl + 5 + 4 * i].try_into().unwrap());
        // Entry (i=0, j=1, k=4) is sin(1).
        assert_eq!(at(8 + 4), table.get(0, 1)[4]);
        assert!((at(8 + 4) - 1f32.sin()).abs() < 1e-6);
    }
}
