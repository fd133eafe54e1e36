//! Uniform sample grids and their on-disk format.
//!
//! Text form: one JSON header line `{"dim", "shape", "spacing", "origin"}` followed by
//! comma- or newline-separated float64 values in row-major order. Binary form: raw
//! little-endian float64 in `name.bin` with the header in `name.bin.json`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridHeader {
    pub dim: usize,
    pub shape: Vec<usize>,
    pub spacing: Vec<f64>,
    pub origin: Vec<f64>,
}

impl GridHeader {
    /// `points_per_axis` samples per axis covering `[-half_extent, half_extent)`.
    pub fn centered(dim: usize, points_per_axis: usize, half_extent: f64) -> Result<Self> {
        let h = GridHeader {
            dim,
            shape: vec![points_per_axis; dim],
            spacing: vec![2.0 * half_extent / points_per_axis as f64; dim],
            origin: vec![-half_extent; dim],
        };
        h.validate()?;
        Ok(h)
    }

    pub fn len(&self) -> usize {
        self.shape.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim == 0 || self.shape.len() != self.dim || self.spacing.len() != self.dim || self.origin.len() != self.dim {
            return Err(Error::GridFormat("dim, shape, spacing and origin must agree".into()));
        }
        if self.shape.iter().any(|&s| s == 0) {
            return Err(Error::GridFormat("empty axis".into()));
        }
        if self.spacing.iter().any(|h| !(*h > 0.0 && h.is_finite())) || self.origin.iter().any(|o| !o.is_finite()) {
            return Err(Error::GridFormat("spacing must be positive and origin finite".into()));
        }
        Ok(())
    }

    /// Coordinates of the sample with flat row-major index `idx`.
    pub fn point(&self, idx: usize) -> Vec<f64> {
        let mut p = vec![0.0; self.dim];
        let mut rem = idx;
        for ax in (0..self.dim).rev() {
            let i = rem % self.shape[ax];
            rem /= self.shape[ax];
            p[ax] = self.origin[ax] + i as f64 * self.spacing[ax];
        }
        p
    }

    /// `Π (shape_i · spacing_i)`.
    pub fn extent(&self) -> Vec<f64> {
        self.shape.iter().zip(&self.spacing).map(|(&n, &h)| n as f64 * h).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSamples {
    pub header: GridHeader,
    pub values: Vec<f64>,
}

impl GridSamples {
    pub fn new(header: GridHeader, values: Vec<f64>) -> Result<Self> {
        header.validate()?;
        if values.len() != header.len() {
            return Err(Error::GridFormat(format!(
                "header declares {} values, body has {}",
                header.len(),
                values.len()
            )));
        }
        Ok(GridSamples { header, values })
    }

    /// Sample `f` at every grid point.
    pub fn sample<F: Fn(&[f64]) -> f64 + Sync>(header: GridHeader, f: F) -> Result<Self> {
        header.validate()?;
        let values = (0..header.len()).into_par_iter().map(|i| f(&header.point(i))).collect();
        Ok(GridSamples { header, values })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let io = |e: std::io::Error| Error::GridFormat(format!("{}: {e}", path.display()));
        if path.extension().is_some_and(|e| e == "bin") {
            let header_text = fs::read_to_string(sidecar(path)).map_err(io)?;
            let header: GridHeader =
                serde_json::from_str(&header_text).map_err(|e| Error::GridFormat(e.to_string()))?;
            let bytes = fs::read(path).map_err(io)?;
            if bytes.len() % 8 != 0 {
                return Err(Error::GridFormat("binary body is not a whole number of float64".into()));
            }
            let values = bytes
                .chunks_exact(8)
                .map(|c| f64::from_le_bytes(c.try_into().expect("chunk of 8")))
                .collect();
            return GridSamples::new(header, values);
        }
        let text = fs::read_to_string(path).map_err(io)?;
        let (head, body) = text.split_once('\n').unwrap_or((&text, ""));
        let header: GridHeader = serde_json::from_str(head).map_err(|e| Error::GridFormat(e.to_string()))?;
        let values = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<f64>().map_err(|e| Error::GridFormat(format!("bad value {t:?}: {e}"))))
            .collect::<Result<Vec<f64>>>()?;
        GridSamples::new(header, values)
    }

    /// Writes the text form, or the binary form plus sidecar when the path ends in `.bin`.
    pub fn write(&self, path: &Path) -> Result<()> {
        let io = |e: std::io::Error| Error::GridFormat(format!("{}: {e}", path.display()));
        let header = serde_json::to_string(&self.header).map_err(|e| Error::GridFormat(e.to_string()))?;
        if path.extension().is_some_and(|e| e == "bin") {
            let bytes: Vec<u8> = self.values.iter().flat_map(|v| v.to_le_bytes()).collect();
            fs::write(path, bytes).map_err(io)?;
            return fs::write(sidecar(path), header).map_err(io);
        }
        let mut f = std::io::BufWriter::new(fs::File::create(path).map_err(io)?);
        writeln!(f, "{header}").map_err(io)?;
        let last = *self.header.shape.last().unwrap_or(&1);
        for row in self.values.chunks(last) {
            let line: Vec<String> = row.iter().map(|v| format!("{v:e}")).collect();
            writeln!(f, "{}", line.join(",")).map_err(io)?;
        }
        f.flush().map_err(io)
    }
}

fn sidecar(path: &Path) -> PathBuf {
    let mut s = path.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}
