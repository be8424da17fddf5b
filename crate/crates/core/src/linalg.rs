//! Dense complex Hermitian primitives: Hilbert-Schmidt products, Schatten
//! norms, generalized Gell-Mann generators, Bloch vectors and random states.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tol;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

#[cfg(test)]
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A d×d complex matrix certified Hermitian.
///
/// The stored entries are the Hermitian part of the input, so downstream
/// eigensolvers always see an exactly self-adjoint matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianOperator {
    entries: CMatrix,
}

impl HermitianOperator {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if !entries.is_square() {
            return Err(Error::NotSquare {
                rows: entries.nrows(),
                cols: entries.ncols(),
            });
        }
        if entries.nrows() == 0 {
            return Err(Error::InvalidDimension(0));
        }
        let anti = (&entries - entries.adjoint()).norm();
        let scale = entries.norm();
        if anti > tol::HERM * scale.max(f64::MIN_POSITIVE) && anti > 0.0 {
            return Err(Error::NotHermitian(anti / scale.max(f64::MIN_POSITIVE)));
        }
        Ok(Self::hermitian_part(entries))
    }

    /// Takes `(X + X†)/2` without checking how far `X` was from Hermitian.
    pub(crate) fn hermitian_part(entries: CMatrix) -> Self {
        let adj = entries.adjoint();
        Self {
            entries: (entries + adj) * Complex64::new(0.5, 0.0),
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            entries: CMatrix::identity(dim, dim),
        }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: CMatrix::zeros(dim, dim),
        }
    }

    /// Rank-one projector `|v><v|` (not normalized).
    pub fn outer(v: &CVector) -> Self {
        Self::hermitian_part(v * v.adjoint())
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> CMatrix {
        self.entries
    }

    pub fn trace(&self) -> f64 {
        self.entries.trace().re
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            entries: &self.entries * Complex64::new(factor, 0.0),
        }
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: f64, other: &Self) -> Self {
        Self {
            entries: &self.entries + &other.entries * Complex64::new(factor, 0.0),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.norm()
    }

    pub fn frobenius_distance(&self, other: &Self) -> f64 {
        (&self.entries - &other.entries).norm()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut vals: Vec<f64> = self
            .entries
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        vals.sort_by(f64::total_cmp);
        vals
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues()[0]
    }

    pub fn max_eigenvalue(&self) -> f64 {
        *self.eigenvalues().last().expect("non-empty operator")
    }

    /// Positive square root, clamping eigenvalues below zero.
    pub fn psd_sqrt(&self) -> Self {
        self.spectral_map(|x| x.max(0.0).sqrt())
    }

    /// Applies `f` to the spectrum: `U f(D) U†`.
    pub fn spectral_map(&self, f: impl Fn(f64) -> f64) -> Self {
        let eig = self.entries.clone().symmetric_eigen();
        let n = self.dim();
        let mut mapped = CMatrix::zeros(n, n);
        for (k, &lam) in eig.eigenvalues.iter().enumerate() {
            let col = eig.eigenvectors.column(k);
            mapped += col * col.adjoint() * Complex64::new(f(lam), 0.0);
        }
        Self::hermitian_part(mapped)
    }

    /// Conjugation `U X U†`.
    pub fn conjugate_by(&self, unitary: &CMatrix) -> Self {
        Self::hermitian_part(unitary * &self.entries * unitary.adjoint())
    }
}

/// A unit-trace positive semidefinite operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    op: HermitianOperator,
}

impl DensityMatrix {
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let tr = op.trace();
        if (tr - 1.0).abs() > tol::TRACE {
            return Err(Error::BadTrace(tr));
        }
        let min = op.min_eigenvalue();
        if min < -tol::PSD {
            return Err(Error::NonPositive(min));
        }
        Ok(Self { op })
    }

    /// The completely mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            op: HermitianOperator::identity(dim).scale(1.0 / dim as f64),
        }
    }

    /// `|psi><psi|` for a unit vector.
    pub fn pure(psi: &CVector) -> Result<Self> {
        let norm = psi.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NonUnitVector(norm));
        }
        Ok(Self {
            op: HermitianOperator::outer(&(psi / Complex64::new(norm, 0.0))),
        })
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.op
    }

    pub fn matrix(&self) -> &CMatrix {
        self.op.matrix()
    }

    /// Eigenvalues clamped to `[0, 1]`, ascending.
    pub fn spectrum(&self) -> Vec<f64> {
        self.op
            .eigenvalues()
            .into_iter()
            .map(|x| x.clamp(0.0, 1.0))
            .collect()
    }

    pub fn sqrt(&self) -> HermitianOperator {
        self.op.psd_sqrt()
    }
}

/// Order `q` of a Schatten norm; `Infinity` is the spectral norm.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SchattenOrder {
    Finite(f64),
    Infinity,
}

/// `tr(x† y)`.
pub fn hs_inner(x: &HermitianOperator, y: &HermitianOperator) -> Result<Complex64> {
    check_dims(x.dim(), y.dim())?;
    Ok((x.matrix().adjoint() * y.matrix()).trace())
}

/// Schatten norm of a Hermitian operator; singular values are `|eigenvalues|`.
pub fn schatten_norm(x: &HermitianOperator, q: SchattenOrder) -> Result<f64> {
    let sv: Vec<f64> = x.eigenvalues().into_iter().map(f64::abs).collect();
    norm_of_singular_values(&sv, q)
}

/// Schatten norm of an arbitrary square matrix via its singular values.
pub fn schatten_norm_general(x: &CMatrix, q: SchattenOrder) -> Result<f64> {
    let sv: Vec<f64> = x.clone().singular_values().iter().copied().collect();
    norm_of_singular_values(&sv, q)
}

fn norm_of_singular_values(sv: &[f64], q: SchattenOrder) -> Result<f64> {
    match q {
        SchattenOrder::Infinity => Ok(sv.iter().copied().fold(0.0, f64::max)),
        SchattenOrder::Finite(q) if q >= 1.0 && q.is_finite() => {
            let max = sv.iter().copied().fold(0.0, f64::max);
            if max == 0.0 {
                return Ok(0.0);
            }
            // scale by the largest value so the power sum cannot overflow
            let sum: f64 = sv.iter().map(|s| (s / max).powf(q)).sum();
            Ok(max * sum.powf(1.0 / q))
        }
        SchattenOrder::Finite(q) => Err(Error::InvalidSchattenOrder(q)),
    }
}

/// Generators of SU(d) with `tr(λ_m λ_n) = 2 δ_mn`.
#[derive(Clone, Debug)]
pub struct GeneratorBasis {
    dim: usize,
    generators: Vec<HermitianOperator>,
}

impl GeneratorBasis {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[HermitianOperator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Components `r_n = (d/2) tr(ρ λ_n)`.
    pub fn bloch_vector(&self, rho: &DensityMatrix) -> Result<BlochVector> {
        check_dims(self.dim, rho.dim())?;
        let half_d = self.dim as f64 / 2.0;
        let components = self
            .generators
            .iter()
            .map(|g| half_d * (rho.matrix() * g.matrix()).trace().re)
            .collect();
        Ok(BlochVector {
            dim: self.dim,
            components,
        })
    }

    /// `(1/d)(I + Σ r_n λ_n)`, rejected if it is not positive semidefinite.
    pub fn density(&self, r: &BlochVector) -> Result<DensityMatrix> {
        check_dims(self.dim, r.dim)?;
        if r.components.len() != self.generators.len() {
            return Err(Error::BlochLength {
                dim: r.dim,
                expected: self.generators.len(),
                found: r.components.len(),
            });
        }
        let mut op = HermitianOperator::identity(self.dim);
        for (g, &c) in self.generators.iter().zip(&r.components) {
            op = op.add_scaled(c, g);
        }
        let op = op.scale(1.0 / self.dim as f64);
        let min = op.min_eigenvalue();
        if min < -tol::PSD {
            return Err(Error::NonPositive(min));
        }
        DensityMatrix::new(op)
    }
}

/// Standard generalized Gell-Mann matrices: symmetric pairs `j<k`, then
/// antisymmetric pairs, then diagonal, pairs in lexicographic order.
pub fn gell_mann_basis(d: usize) -> Result<GeneratorBasis> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let pairs: Vec<(usize, usize)> = (0..d)
        .flat_map(|j| (j + 1..d).map(move |k| (j, k)))
        .collect();
    let mut generators = Vec::with_capacity(d * d - 1);
    for &(j, k) in &pairs {
        let mut m = CMatrix::zeros(d, d);
        m[(j, k)] = ONE;
        m[(k, j)] = ONE;
        generators.push(HermitianOperator { entries: m });
    }
    for &(j, k) in &pairs {
        let mut m = CMatrix::zeros(d, d);
        m[(j, k)] = Complex64::new(0.0, -1.0);
        m[(k, j)] = Complex64::new(0.0, 1.0);
        generators.push(HermitianOperator { entries: m });
    }
    for l in 1..d {
        let norm = (2.0 / (l * (l + 1)) as f64).sqrt();
        let mut m = CMatrix::zeros(d, d);
        for j in 0..l {
            m[(j, j)] = Complex64::new(norm, 0.0);
        }
        m[(l, l)] = Complex64::new(-(l as f64) * norm, 0.0);
        generators.push(HermitianOperator { entries: m });
    }
    Ok(GeneratorBasis { dim: d, generators })
}

/// Real coefficients of a state in the Gell-Mann basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlochVector {
    pub dim: usize,
    pub components: Vec<f64>,
}

impl BlochVector {
    pub fn new(dim: usize, components: Vec<f64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidDimension(dim));
        }
        if components.len() != dim * dim - 1 {
            return Err(Error::BlochLength {
                dim,
                expected: dim * dim - 1,
                found: components.len(),
            });
        }
        Ok(Self { dim, components })
    }

    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            components: vec![0.0; dim * dim - 1],
        }
    }

    pub fn norm_sq(&self) -> f64 {
        self.components.iter().map(|c| c * c).sum()
    }
}

pub fn bloch_from_density(rho: &DensityMatrix) -> Result<BlochVector> {
    gell_mann_basis(rho.dim())?.bloch_vector(rho)
}

pub fn density_from_bloch(r: &BlochVector) -> Result<DensityMatrix> {
    gell_mann_basis(r.dim)?.density(r)
}

/// `tr(ρ²)`.
pub fn purity(rho: &DensityMatrix) -> f64 {
    // ρ is Hermitian, so tr(ρ²) = Σ |ρ_ij|²
    rho.matrix().iter().map(|z| z.norm_sqr()).sum()
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Haar-random unit vector in `C^d`.
pub fn random_state_vector<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<CVector> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let v = CVector::from_fn(d, |_, _| complex_gaussian(rng));
    let norm = v.norm();
    Ok(v / Complex64::new(norm, 0.0))
}

pub fn random_pure_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DensityMatrix> {
    DensityMatrix::pure(&random_state_vector(d, rng)?)
}

/// `GG†/tr(GG†)` for a d×rank complex Gaussian `G` (Hilbert-Schmidt-induced ensemble).
pub fn random_density<R: Rng + ?Sized>(d: usize, rank: usize, rng: &mut R) -> Result<DensityMatrix> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if rank == 0 || rank > d {
        return Err(Error::InvalidRank { rank, dim: d });
    }
    let g = CMatrix::from_fn(d, rank, |_, _| complex_gaussian(rng));
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    let op = HermitianOperator::hermitian_part(w / Complex64::new(tr, 0.0));
    DensityMatrix::new(op)
}

/// Haar-random unitary from the QR decomposition of a complex Ginibre matrix,
/// with the phases of `R`'s diagonal absorbed into `Q`.
pub fn random_unitary<R: Rng + ?Sized>(d: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for k in 0..d {
        let diag = r[(k, k)];
        let phase = if diag.norm() > 0.0 {
            diag / Complex64::new(diag.norm(), 0.0)
        } else {
            ONE
        };
        for i in 0..d {
            q[(i, k)] *= phase;
        }
    }
    q
}

/// Frobenius-norm residual of `Σ ops - I`.
pub fn identity_residual(ops: &[HermitianOperator], dim: usize) -> f64 {
    let mut sum = CMatrix::zeros(dim, dim);
    for op in ops {
        sum += op.matrix();
    }
    (sum - CMatrix::identity(dim, dim)).norm()
}

pub(crate) fn check_dims(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(d: usize, rng: &mut ChaCha8Rng) -> HermitianOperator {
        let g = CMatrix::from_fn(d, d, |_, _| complex_gaussian(rng));
        HermitianOperator::hermitian_part(g)
    }

    #[test]
    fn hs_inner_identity_is_dimension() {
        for d in 2..6 {
            let id = HermitianOperator::identity(d);
            let ip = hs_inner(&id, &id).unwrap();
            assert_abs_diff_eq!(ip.re, d as f64, epsilon = 1e-14);
            assert_abs_diff_eq!(ip.im, 0.0);
        }
    }

    #[test]
    fn hs_inner_matches_entrywise_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let x = random_hermitian(3, &mut rng);
        let y = random_hermitian(3, &mut rng);
        let mut oracle = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                oracle += x.matrix()[(i, j)].conj() * y.matrix()[(i, j)];
            }
        }
        let ip = hs_inner(&x, &y).unwrap();
        assert_abs_diff_eq!(ip.re, oracle.re, epsilon = 1e-12);
        assert!(ip.im.abs() <= 1e-12);
    }

    #[test]
    fn hs_inner_rejects_mismatched_dims() {
        let r = hs_inner(&HermitianOperator::identity(2), &HermitianOperator::identity(3));
        assert!(matches!(r, Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn rejects_non_hermitian() {
        let mut m = CMatrix::identity(2, 2);
        m[(0, 1)] = ONE;
        assert!(matches!(HermitianOperator::new(m), Err(Error::NotHermitian(_))));
    }

    #[test]
    fn schatten_of_identity() {
        let id = HermitianOperator::identity(4);
        assert_abs_diff_eq!(schatten_norm(&id, SchattenOrder::Infinity).unwrap(), 1.0);
        assert_abs_diff_eq!(
            schatten_norm(&id, SchattenOrder::Finite(1.0)).unwrap(),
            4.0,
            epsilon = 1e-12
        );
        assert!(matches!(
            schatten_norm(&id, SchattenOrder::Finite(0.5)),
            Err(Error::InvalidSchattenOrder(_))
        ));
    }

    #[test]
    fn frobenius_is_schatten_two() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 2..5 {
            let x = random_hermitian(d, &mut rng);
            let two = schatten_norm(&x, SchattenOrder::Finite(2.0)).unwrap();
            let hs = hs_inner(&x, &x).unwrap().re.sqrt();
            assert_abs_diff_eq!(two, hs, epsilon = 1e-12);
            let three = schatten_norm(&x, SchattenOrder::Finite(3.0)).unwrap();
            assert!(three <= two + 1e-12);
        }
    }

    #[test]
    fn gell_mann_qubit_is_pauli() {
        let b = gell_mann_basis(2).unwrap();
        let i = Complex64::new(0.0, 1.0);
        let sx = CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]);
        let sy = CMatrix::from_row_slice(2, 2, &[ZERO, -i, i, ZERO]);
        let sz = CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]);
        assert_eq!(b.generators()[0].matrix(), &sx);
        assert_eq!(b.generators()[1].matrix(), &sy);
        assert_eq!(b.generators()[2].matrix(), &sz);
    }

    #[test]
    fn gell_mann_orthonormality() {
        for d in 2..7 {
            let b = gell_mann_basis(d).unwrap();
            assert_eq!(b.len(), d * d - 1);
            for (m, gm) in b.generators().iter().enumerate() {
                assert!(gm.trace().abs() < tol::TRACE);
                for (n, gn) in b.generators().iter().enumerate() {
                    let ip = hs_inner(gm, gn).unwrap();
                    let expect = if m == n { 2.0 } else { 0.0 };
                    assert_abs_diff_eq!(ip.re, expect, epsilon = 1e-12);
                }
            }
        }
        assert!(matches!(gell_mann_basis(1), Err(Error::InvalidDimension(1))));
    }

    #[test]
    fn bloch_of_mixed_and_ground_state() {
        let r = bloch_from_density(&DensityMatrix::maximally_mixed(3)).unwrap();
        assert!(r.components.iter().all(|c| c.abs() < 1e-15));

        let mut psi = CVector::zeros(2);
        psi[0] = ONE;
        let r = bloch_from_density(&DensityMatrix::pure(&psi).unwrap()).unwrap();
        assert_eq!(r.components, vec![0.0, 0.0, 1.0]);
    }

    #[test]
    fn density_from_bloch_cases() {
        let rho = density_from_bloch(&BlochVector::zero(3)).unwrap();
        assert!(rho.operator().frobenius_distance(&DensityMatrix::maximally_mixed(3).operator().clone()) < 1e-15);

        let up = density_from_bloch(&BlochVector::new(2, vec![0.0, 0.0, 1.0]).unwrap()).unwrap();
        let expect = CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, ZERO]);
        assert!((up.matrix() - expect).norm() < 1e-15);

        // ‖r‖² just above d(d-1)/2 = 3 would push the purity over 1
        let mut comps = vec![0.0; 8];
        comps[7] = 3.1f64.sqrt();
        let err = density_from_bloch(&BlochVector::new(3, comps).unwrap());
        assert!(matches!(err, Err(Error::NonPositive(_))));

        assert!(matches!(
            BlochVector::new(3, vec![0.0; 3]),
            Err(Error::BlochLength { .. })
        ));
    }

    #[test]
    fn purity_special_values() {
        assert_abs_diff_eq!(purity(&DensityMatrix::maximally_mixed(4)), 0.25, epsilon = 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pure = random_pure_state(3, &mut rng).unwrap();
        assert_abs_diff_eq!(purity(&pure), 1.0, epsilon = 1e-12);
        for r in [0.0, 0.3, 0.8, 1.0] {
            let rho = density_from_bloch(&BlochVector::new(2, vec![r * 0.6, 0.0, r * 0.8]).unwrap()).unwrap();
            assert_abs_diff_eq!(purity(&rho), (1.0 + r * r) / 2.0, epsilon = 1e-14);
        }
    }

    #[test]
    fn random_states_are_valid_and_seeded() {
        let mut a = ChaCha8Rng::seed_from_u64(1);
        let mut b = ChaCha8Rng::seed_from_u64(2);
        let pa = random_pure_state(3, &mut a).unwrap();
        let pb = random_pure_state(3, &mut b).unwrap();
        assert_abs_diff_eq!(pa.operator().trace(), 1.0, epsilon = 1e-14);
        let fidelity = (pa.matrix() * pb.matrix()).trace().re;
        assert!(fidelity < 1.0 - 1e-6);

        let mut a2 = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(random_pure_state(3, &mut a2).unwrap(), pa);

        let rank_one = random_density(4, 1, &mut a).unwrap();
        assert_abs_diff_eq!(purity(&rank_one), 1.0, epsilon = 1e-12);

        // HS-induced full-rank ensemble has mean purity 2d/(d²+1)
        let d = 8;
        let n = 400;
        let mean: f64 = (0..n)
            .map(|_| purity(&random_density(d, d, &mut a).unwrap()))
            .sum::<f64>()
            / n as f64;
        let expected = 2.0 * d as f64 / (d * d + 1) as f64;
        assert!((mean - expected).abs() < 0.01, "mean purity {mean}");
        assert!(mean > 1.0 / d as f64 && mean < 1.0);

        assert!(matches!(random_density(3, 0, &mut a), Err(Error::InvalidRank { .. })));
        assert!(matches!(random_density(3, 4, &mut a), Err(Error::InvalidRank { .. })));
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let u = random_unitary(4, &mut rng);
        let err = (u.adjoint() * &u - CMatrix::identity(4, 4)).norm();
        assert!(err < 1e-12);
    }

    #[test]
    fn psd_sqrt_squares_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let rho = random_density(3, 3, &mut rng).unwrap();
        let s = rho.sqrt();
        let back = s.matrix() * s.matrix();
        assert!((back - rho.matrix()).norm() < 1e-12);
    }
}
