//! General SIC-POVMs: validation, built-in rank-one constructions,
//! depolarized families, dual bases and linear-inversion tomography.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::distribution::ProbabilityDistribution;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector, DensityMatrix, HermitianOperator};
use crate::tol;

/// A set of positive operators summing to the identity.
#[derive(Clone, Debug)]
pub struct Povm {
    dim: usize,
    elements: Vec<HermitianOperator>,
}

impl Povm {
    pub fn new(elements: Vec<HermitianOperator>) -> Result<Self> {
        let dim = elements
            .first()
            .map(HermitianOperator::dim)
            .ok_or(Error::WrongCount {
                expected: 1,
                found: 0,
            })?;
        for el in &elements {
            linalg::check_dims(dim, el.dim())?;
        }
        for (index, el) in elements.iter().enumerate() {
            let min_eig = el.min_eigenvalue();
            if min_eig < -tol::PSD {
                return Err(Error::ElementNotPsd { index, min_eig });
            }
        }
        let residual = linalg::identity_residual(&elements, dim);
        if residual > tol::COMPLETE {
            return Err(Error::Incomplete { residual });
        }
        Ok(Self { dim, elements })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Raw measurements of a candidate POVM, computed without validating it.
#[derive(Clone, Debug, PartialEq)]
pub struct PovmDiagnostics {
    pub dim: usize,
    pub count: usize,
    pub completeness_residual: f64,
    pub min_eigenvalue: f64,
    /// Mean of the diagonal Gram entries.
    pub a: f64,
    /// Mean of the off-diagonal Gram entries.
    pub b: f64,
    pub diag_spread: f64,
    pub off_spread: f64,
    /// Largest `|tr(M_j) - 1/d|`.
    pub trace_deviation: f64,
}

impl PovmDiagnostics {
    pub fn gram_spread(&self) -> f64 {
        self.diag_spread.max(self.off_spread)
    }
}

/// Gram matrix `<M_j, M_k>` (real part; imaginary parts vanish for Hermitian inputs).
pub fn gram_matrix(elements: &[HermitianOperator]) -> Vec<Vec<f64>> {
    elements
        .iter()
        .map(|x| {
            elements
                .iter()
                .map(|y| (x.matrix().adjoint() * y.matrix()).trace().re)
                .collect()
        })
        .collect()
}

pub fn diagnose(elements: &[HermitianOperator]) -> Result<PovmDiagnostics> {
    let dim = elements
        .first()
        .map(HermitianOperator::dim)
        .ok_or(Error::WrongCount {
            expected: 1,
            found: 0,
        })?;
    for el in elements {
        linalg::check_dims(dim, el.dim())?;
    }
    let gram = gram_matrix(elements);
    let n = elements.len();
    let mut diag = Spread::default();
    let mut off = Spread::default();
    for (j, row) in gram.iter().enumerate() {
        for (k, &g) in row.iter().enumerate() {
            if j == k {
                diag.push(g);
            } else {
                off.push(g);
            }
        }
    }
    let inv_d = 1.0 / dim as f64;
    Ok(PovmDiagnostics {
        dim,
        count: n,
        completeness_residual: linalg::identity_residual(elements, dim),
        min_eigenvalue: elements
            .iter()
            .map(HermitianOperator::min_eigenvalue)
            .fold(f64::INFINITY, f64::min),
        a: diag.mean(),
        b: off.mean(),
        diag_spread: diag.width(),
        off_spread: off.width(),
        trace_deviation: elements
            .iter()
            .map(|m| (m.trace() - inv_d).abs())
            .fold(0.0, f64::max),
    })
}

#[derive(Default)]
struct Spread {
    min: Option<f64>,
    max: Option<f64>,
    sum: f64,
    count: usize,
}

impl Spread {
    fn push(&mut self, x: f64) {
        self.min = Some(self.min.map_or(x, |m| m.min(x)));
        self.max = Some(self.max.map_or(x, |m| m.max(x)));
        self.sum += x;
        self.count += 1;
    }

    fn mean(&self) -> f64 {
        if self.count == 0 {
            0.0
        } else {
            self.sum / self.count as f64
        }
    }

    fn width(&self) -> f64 {
        match (self.min, self.max) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0.0,
        }
    }
}

/// `(1 - a d) / (d (d² - 1))`.
pub fn overlap_from_a(a: f64, d: usize) -> f64 {
    let d = d as f64;
    (1.0 - a * d) / (d * (d * d - 1.0))
}

/// A POVM certified as a general SIC with parameters `a` and `b`.
#[derive(Clone, Debug)]
pub struct GeneralSicPovm {
    povm: Povm,
    a: f64,
    b: f64,
}

impl GeneralSicPovm {
    pub fn dim(&self) -> usize {
        self.povm.dim
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn povm(&self) -> &Povm {
        &self.povm
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.povm.elements
    }

    pub fn is_rank_one(&self) -> bool {
        let d = self.dim() as f64;
        (self.a - 1.0 / (d * d)).abs() < tol::SIC
    }

    /// `U M_j U†` for every element.
    pub fn conjugate_by(&self, unitary: &CMatrix) -> Result<Self> {
        let elements = self
            .elements()
            .iter()
            .map(|m| m.conjugate_by(unitary))
            .collect();
        validate_general_sic(Povm::new(elements)?)
    }
}

pub fn validate_general_sic(povm: Povm) -> Result<GeneralSicPovm> {
    let d = povm.dim;
    if povm.len() != d * d {
        return Err(Error::WrongCount {
            expected: d * d,
            found: povm.len(),
        });
    }
    let diag = diagnose(&povm.elements)?;
    if diag.diag_spread > tol::SIC || diag.off_spread > tol::SIC {
        return Err(Error::NotSymmetric {
            diag_spread: diag.diag_spread,
            off_spread: diag.off_spread,
        });
    }
    let inv_d = 1.0 / d as f64;
    if let Some((index, m)) = povm
        .elements
        .iter()
        .enumerate()
        .find(|(_, m)| (m.trace() - inv_d).abs() > tol::SIC)
    {
        return Err(Error::BadElementTrace {
            index,
            trace: m.trace(),
        });
    }
    let df = d as f64;
    let lower = df.powi(-3);
    let upper = df.powi(-2);
    if diag.a <= lower + tol::SIC || diag.a > upper + tol::SIC {
        return Err(Error::OutOfRange {
            a: diag.a,
            lower,
            upper,
        });
    }
    let expected = overlap_from_a(diag.a, d);
    if (diag.b - expected).abs() > tol::SIC {
        return Err(Error::InconsistentOverlap {
            b: diag.b,
            expected,
        });
    }
    Ok(GeneralSicPovm {
        povm,
        a: diag.a,
        b: diag.b,
    })
}

/// Weyl-Heisenberg orbit `X^p Z^q |φ>`, ordered by `p * d + q`, where
/// `Z|k> = ω^k |k>` and `X|k> = |k+1 mod d>`.
pub fn wh_orbit(fiducial: &CVector) -> Result<Vec<CVector>> {
    let d = fiducial.len();
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let norm = fiducial.norm();
    if (norm - 1.0).abs() > 1e-10 {
        return Err(Error::NonUnitVector(norm));
    }
    let omega = |k: usize| Complex64::from_polar(1.0, 2.0 * PI * (k % d) as f64 / d as f64);
    let mut orbit = Vec::with_capacity(d * d);
    for p in 0..d {
        for q in 0..d {
            let mut v = CVector::zeros(d);
            for k in 0..d {
                v[(k + p) % d] = omega(q * k) * fiducial[k];
            }
            orbit.push(v);
        }
    }
    Ok(orbit)
}

/// Builds `M_j = |φ_j><φ_j| / d` from unit vectors and validates the result.
pub fn sic_from_vectors(vectors: &[CVector]) -> Result<GeneralSicPovm> {
    let d = vectors
        .first()
        .map(|v| v.len())
        .ok_or(Error::WrongCount {
            expected: 1,
            found: 0,
        })?;
    let elements = vectors
        .iter()
        .map(|v| HermitianOperator::outer(v).scale(1.0 / d as f64))
        .collect();
    validate_general_sic(Povm::new(elements)?)
}

/// Unit vectors of the built-in rank-one SICs: the tetrahedron for d=2 and
/// the orbit of the Hesse fiducial `(0, 1, -1)/√2` for d=3.
pub fn rank_one_sic_vectors(d: usize) -> Result<Vec<CVector>> {
    match d {
        2 => {
            let s = 1.0 / 3f64.sqrt();
            let bloch = [
                [s, s, s],
                [s, -s, -s],
                [-s, s, -s],
                [-s, -s, s],
            ];
            Ok(bloch.iter().map(|n| qubit_from_bloch(*n)).collect())
        }
        3 => {
            let h = 1.0 / 2f64.sqrt();
            let fid = CVector::from_vec(vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(h, 0.0),
                Complex64::new(-h, 0.0),
            ]);
            wh_orbit(&fid)
        }
        _ => Err(Error::UnsupportedDimension(d)),
    }
}

fn qubit_from_bloch([x, y, z]: [f64; 3]) -> CVector {
    let theta = z.clamp(-1.0, 1.0).acos();
    let phi = y.atan2(x);
    CVector::from_vec(vec![
        Complex64::new((theta / 2.0).cos(), 0.0),
        Complex64::from_polar((theta / 2.0).sin(), phi),
    ])
}

pub fn rank_one_sic(d: usize) -> Result<GeneralSicPovm> {
    sic_from_vectors(&rank_one_sic_vectors(d)?)
}

/// Mixes every element with `I/d²`: `M_j(λ) = (1-λ) I/d² + λ M_j`.
///
/// For an input with parameter `a₀` the result has
/// `a(λ) = (1-λ²)/d³ + λ² a₀`, which for a rank-one input is
/// `(1-λ²)/d³ + λ²/d²`.
pub fn depolarize_sic(sic: &GeneralSicPovm, lambda: f64) -> Result<GeneralSicPovm> {
    if !(lambda > 0.0 && lambda <= 1.0) {
        return Err(Error::InvalidLambda(lambda));
    }
    let d = sic.dim();
    let noise = HermitianOperator::identity(d).scale((1.0 - lambda) / (d * d) as f64);
    let elements = sic
        .elements()
        .iter()
        .map(|m| noise.add_scaled(lambda, m))
        .collect();
    validate_general_sic(Povm::new(elements)?)
}

/// Predicted parameter of `depolarize_sic(sic, λ)`.
pub fn depolarized_a(a0: f64, d: usize, lambda: f64) -> f64 {
    let d = d as f64;
    (1.0 - lambda * lambda) / d.powi(3) + lambda * lambda * a0
}

/// Operators `M̃_k` with `<M_j, M̃_k> = δ_jk`.
#[derive(Clone, Debug)]
pub struct DualBasis {
    dim: usize,
    elements: Vec<HermitianOperator>,
}

impl DualBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[HermitianOperator] {
        &self.elements
    }

    /// `Σ_j p_j M̃_j`.
    pub fn reconstruct(&self, p: &ProbabilityDistribution) -> Result<HermitianOperator> {
        if p.len() != self.elements.len() {
            return Err(Error::WrongCount {
                expected: self.elements.len(),
                found: p.len(),
            });
        }
        Ok(self
            .elements
            .iter()
            .zip(p.probs())
            .fold(HermitianOperator::zeros(self.dim), |acc, (m, &pj)| {
                acc.add_scaled(pj, m)
            }))
    }

    /// Largest `|<M_j, M̃_k> - δ_jk|`.
    pub fn duality_residual(&self, sic: &GeneralSicPovm) -> f64 {
        let mut worst: f64 = 0.0;
        for (j, m) in sic.elements().iter().enumerate() {
            for (k, w) in self.elements.iter().enumerate() {
                let ip = (m.matrix().adjoint() * w.matrix()).trace();
                let target = if j == k { 1.0 } else { 0.0 };
                worst = worst.max((ip - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }
}

/// `M̃_j = d/(a d³ - 1) · ((d² - 1) M_j - (1 - a d) I)`.
pub fn dual_basis(sic: &GeneralSicPovm) -> Result<DualBasis> {
    let d = sic.dim();
    let df = d as f64;
    let a = sic.a();
    let gap = a * df.powi(3) - 1.0;
    if gap <= tol::SIC {
        return Err(Error::SingularFamily { a, gap });
    }
    let scale = df / gap;
    let shift = HermitianOperator::identity(d).scale(-(1.0 - a * df) * scale);
    let elements = sic
        .elements()
        .iter()
        .map(|m| shift.add_scaled((df * df - 1.0) * scale, m))
        .collect();
    let dual = DualBasis { dim: d, elements };
    debug_assert!(dual.duality_residual(sic) < 1e-6);
    Ok(dual)
}

/// Magnitude of the dual-basis coefficient `d(d²-1)/(a d³ - 1)`; grows
/// without bound as `a → d⁻³`, so it serves as a conditioning indicator.
pub fn dual_condition(sic: &GeneralSicPovm) -> f64 {
    let d = sic.dim() as f64;
    d * (d * d - 1.0) / (sic.a() * d.powi(3) - 1.0)
}

/// Outcome probabilities `p_j = tr(M_j ρ)`.
pub fn probabilities(sic: &GeneralSicPovm, rho: &DensityMatrix) -> Result<ProbabilityDistribution> {
    linalg::check_dims(sic.dim(), rho.dim())?;
    let probs = sic
        .elements()
        .iter()
        .map(|m| Ok(linalg::hs_inner(m, rho.operator())?.re))
        .collect::<Result<Vec<f64>>>()?;
    ProbabilityDistribution::new(probs)
}

/// Linear-inversion estimate `Σ_j p_j M̃_j`.
pub fn reconstruct(sic: &GeneralSicPovm, p: &ProbabilityDistribution) -> Result<HermitianOperator> {
    dual_basis(sic)?.reconstruct(p)
}
