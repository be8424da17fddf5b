//! File formats.
//!
//! POVMs are JSON objects `{"dim": d, "elements": [[[re, im], ...], ...]}`
//! where each element is its `d²` entries in row-major order. A fiducial
//! vector is a JSON array `[[re, im], ...]` of length `d`. Probability
//! vectors are a single CSV column headed `probability`.

use std::fs;
use std::io::{BufRead, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::distribution::ProbabilityDistribution;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, HermitianOperator};
use crate::report::fmt_f64;
use crate::sic::{GeneralSicPovm, Povm};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PovmFile {
    pub dim: usize,
    pub elements: Vec<Vec<[f64; 2]>>,
}

impl PovmFile {
    pub fn from_operators(elements: &[HermitianOperator]) -> Self {
        let dim = elements.first().map_or(0, HermitianOperator::dim);
        let elements = elements
            .iter()
            .map(|m| {
                let mat = m.matrix();
                (0..dim)
                    .flat_map(|i| (0..dim).map(move |j| (i, j)))
                    .map(|(i, j)| [mat[(i, j)].re, mat[(i, j)].im])
                    .collect()
            })
            .collect();
        Self { dim, elements }
    }

    /// Hermitian operators, without POVM validation.
    pub fn operators(&self) -> Result<Vec<HermitianOperator>> {
        let d = self.dim;
        if d == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        if self.elements.is_empty() {
            return Err(Error::Parse("no elements".into()));
        }
        self.elements
            .iter()
            .enumerate()
            .map(|(k, flat)| {
                if flat.len() != d * d {
                    return Err(Error::Parse(format!(
                        "element {k} has {} entries, expected {}",
                        flat.len(),
                        d * d
                    )));
                }
                let m = CMatrix::from_row_iterator(
                    d,
                    d,
                    flat.iter().map(|[re, im]| Complex64::new(*re, *im)),
                );
                HermitianOperator::new(m)
            })
            .collect()
    }

    pub fn to_povm(&self) -> Result<Povm> {
        Povm::new(self.operators()?)
    }
}

pub fn parse_povm_json(text: &str) -> Result<PovmFile> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_povm_file(path: impl AsRef<Path>) -> Result<PovmFile> {
    parse_povm_json(&fs::read_to_string(path)?)
}

pub fn write_povm_json<W: Write>(sic: &GeneralSicPovm, mut out: W) -> Result<()> {
    serde_json::to_writer(&mut out, &PovmFile::from_operators(sic.elements()))?;
    writeln!(out)?;
    Ok(())
}

pub fn parse_fiducial_json(text: &str) -> Result<CVector> {
    let entries: Vec<[f64; 2]> = serde_json::from_str(text)?;
    if entries.is_empty() {
        return Err(Error::Parse("empty fiducial vector".into()));
    }
    Ok(CVector::from_iterator(
        entries.len(),
        entries.iter().map(|[re, im]| Complex64::new(*re, *im)),
    ))
}

pub fn read_fiducial_file(path: impl AsRef<Path>) -> Result<CVector> {
    parse_fiducial_json(&fs::read_to_string(path)?)
}

pub fn write_probabilities_csv<W: Write>(p: &ProbabilityDistribution, mut out: W) -> Result<()> {
    writeln!(out, "probability")?;
    for &x in p.probs() {
        writeln!(out, "{}", fmt_f64(x))?;
    }
    Ok(())
}

pub fn read_probabilities_csv<R: BufRead>(input: R) -> Result<ProbabilityDistribution> {
    let mut probs = Vec::new();
    for (n, line) in input.lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() || (n == 0 && t.parse::<f64>().is_err()) {
            continue;
        }
        probs.push(
            t.parse::<f64>()
                .map_err(|_| Error::Parse(format!("line {}: {t:?} is not a number", n + 1)))?,
        );
    }
    ProbabilityDistribution::new(probs)
}
