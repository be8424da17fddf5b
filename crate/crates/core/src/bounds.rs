//! Closed-form index of coincidence and entropic lower bounds for general
//! SIC-POVMs, plus the pair (Maassen-Uffink type) bounds.

use num_complex::Complex64;

use crate::entropy::{self, EntropyOrder};
use crate::error::{Error, Result};
use crate::linalg::{self, purity, DensityMatrix, SchattenOrder};
use crate::report::{BoundContext, BoundKind, BoundReport};
use crate::sic::{probabilities, GeneralSicPovm};
use crate::tol;

const PURITY_SLACK: f64 = 1e-10;

fn check_a(a: f64, d: usize) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    let df = d as f64;
    let (lower, upper) = (df.powi(-3), df.powi(-2));
    if !(a > lower && a <= upper + tol::SIC) {
        return Err(Error::OutOfRange { a, lower, upper });
    }
    Ok(())
}

fn checked_purity(purity: f64, d: usize) -> Result<f64> {
    let lo = 1.0 / d as f64;
    if !(purity >= lo - PURITY_SLACK && purity <= 1.0 + PURITY_SLACK) {
        return Err(Error::ArgumentOutOfRange(format!(
            "purity {purity} outside [1/{d}, 1]"
        )));
    }
    Ok(purity.clamp(lo, 1.0))
}

/// `((a d³ - 1) P + d (1 - a d)) / (d (d² - 1))` for purity `P = tr(ρ²)`.
pub fn ic_exact(a: f64, d: usize, purity: f64) -> Result<f64> {
    check_a(a, d)?;
    let p = checked_purity(purity, d)?;
    let df = d as f64;
    Ok(((a * df.powi(3) - 1.0) * p + df * (1.0 - a * df)) / (df * (df * df - 1.0)))
}

/// Index of coincidence from the squared Bloch norm:
/// `1/d² + 2 (a d³ - 1) ‖r‖² / (d³ (d² - 1))`.
pub fn ic_bloch(a: f64, d: usize, bloch_norm_sq: f64) -> Result<f64> {
    check_a(a, d)?;
    let df = d as f64;
    let max = df * (df - 1.0) / 2.0;
    if !(bloch_norm_sq >= -PURITY_SLACK && bloch_norm_sq <= max + PURITY_SLACK) {
        return Err(Error::ArgumentOutOfRange(format!(
            "squared Bloch norm {bloch_norm_sq} outside [0, {max}]"
        )));
    }
    let r2 = bloch_norm_sq.clamp(0.0, max);
    Ok(1.0 / (df * df) + 2.0 * (a * df.powi(3) - 1.0) * r2 / (df.powi(3) * (df * df - 1.0)))
}

fn finite_order(alpha: EntropyOrder, lo: f64, hi: f64, reason: &'static str) -> Result<f64> {
    match alpha.value() {
        Some(a) if a >= lo && a <= hi => Ok(a),
        _ => Err(Error::UnsupportedOrder {
            order: alpha.to_string(),
            reason,
        }),
    }
}

/// `ln_α(1/C)` with `C = ic_exact(a, d, purity)`, valid for `α ∈ (0, 2]`.
pub fn tsallis_bound(a: f64, d: usize, purity: f64, alpha: EntropyOrder) -> Result<f64> {
    let al = finite_order(alpha, 0.0, 2.0, "the Tsallis bound holds for orders in (0, 2]")?;
    let c = ic_exact(a, d, purity)?;
    Ok(entropy::alpha_log_unchecked(1.0 / c, al))
}

/// `η^α · tsallis_bound + h_α(η)`.
pub fn tsallis_inefficiency_bound(
    a: f64,
    d: usize,
    purity: f64,
    alpha: EntropyOrder,
    eta: f64,
) -> Result<f64> {
    let bound = tsallis_bound(a, d, purity, alpha)?;
    let h = entropy::binary_tsallis(eta, alpha)?;
    let al = alpha.as_f64();
    Ok(eta.powf(al) * bound + h)
}

/// `α/(2(α-1)) · ln(1/C)`, valid for finite `α ≥ 2`.
///
/// The infinite order is not accepted; use [`min_entropy_bound`].
pub fn renyi_bound(a: f64, d: usize, purity: f64, alpha: EntropyOrder) -> Result<f64> {
    let al = finite_order(
        alpha,
        2.0,
        f64::MAX,
        "the Renyi bound needs a finite order >= 2; use renyi_collision_bound below 2 and min_entropy_bound at infinity",
    )?;
    let c = ic_exact(a, d, purity)?;
    Ok(al / (2.0 * (al - 1.0)) * (1.0 / c).ln())
}

/// `-ln C`; bounds every Rényi entropy of order `α ∈ (0, 2]`.
pub fn renyi_collision_bound(a: f64, d: usize, purity: f64) -> Result<f64> {
    Ok(-ic_exact(a, d, purity)?.ln())
}

/// `2 ln d - ln(1 + √(a d³ - 1) √(P d - 1))`.
pub fn min_entropy_bound(a: f64, d: usize, purity: f64) -> Result<f64> {
    check_a(a, d)?;
    let p = checked_purity(purity, d)?;
    let df = d as f64;
    let spread = (a * df.powi(3) - 1.0).max(0.0).sqrt() * (p * df - 1.0).max(0.0).sqrt();
    Ok(2.0 * df.ln() - spread.ln_1p())
}

/// Upper bound `(1/n)(1 + √(n-1) √(n b² - 1))` on the largest of `n`
/// numbers summing to 1 whose squares sum to `b²`.
pub fn max_prob_lemma(x: &[f64], b_sq: f64) -> Result<f64> {
    let n = x.len();
    if n == 0 {
        return Err(Error::InvalidDistribution("empty".into()));
    }
    let sum: f64 = x.iter().sum();
    if (sum - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidDistribution(format!("sums to {sum}")));
    }
    let nf = n as f64;
    let excess = (nf * b_sq - 1.0).max(0.0);
    Ok((1.0 + (nf - 1.0).sqrt() * excess.sqrt()) / nf)
}

/// `max_{i,j} |tr(M_i N_j ρ)| / √(p_i(M) p_j(N))`, skipping cells with a
/// probability below [`tol::PROB_FLOOR`].
pub fn pair_g(m: &GeneralSicPovm, n: &GeneralSicPovm, rho: &DensityMatrix) -> Result<f64> {
    linalg::check_dims(m.dim(), n.dim())?;
    let pm = probabilities(m, rho)?;
    let pn = probabilities(n, rho)?;
    let d = m.dim();
    let n_rho: Vec<_> = n.elements().iter().map(|nj| nj.matrix() * rho.matrix()).collect();
    let mut best: f64 = 0.0;
    for (mi, &p) in m.elements().iter().zip(pm.probs()) {
        if p < tol::PROB_FLOOR {
            continue;
        }
        for (x, &q) in n_rho.iter().zip(pn.probs()) {
            if q < tol::PROB_FLOOR {
                continue;
            }
            // tr(M_i X) = Σ_ik (M_i)_ik X_ki
            let mut tr = Complex64::new(0.0, 0.0);
            for i in 0..d {
                for k in 0..d {
                    tr += mi.matrix()[(i, k)] * x[(k, i)];
                }
            }
            best = best.max(tr.norm() / (p * q).sqrt());
        }
    }
    Ok(best)
}

/// `max_{i,j} ‖M_i^{1/2}‖_∞ ‖N_j^{1/2}‖_∞`.
pub fn pair_fbar(m: &GeneralSicPovm, n: &GeneralSicPovm) -> Result<f64> {
    linalg::check_dims(m.dim(), n.dim())?;
    let largest = |sic: &GeneralSicPovm| -> Result<f64> {
        sic.elements()
            .iter()
            .map(|el| linalg::schatten_norm(&el.psd_sqrt(), SchattenOrder::Infinity))
            .try_fold(0.0f64, |acc, x| Ok(acc.max(x?)))
    };
    Ok(largest(m)? * largest(n)?)
}

/// The three right-hand sides of the pair bounds, in decreasing order:
/// from `g`, from `f̄`, and from the parameters `a_M`, `a_N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairQuantities {
    pub g: f64,
    pub fbar: f64,
    pub a_m: f64,
    pub a_n: f64,
}

impl PairQuantities {
    pub fn compute(m: &GeneralSicPovm, n: &GeneralSicPovm, rho: &DensityMatrix) -> Result<Self> {
        Ok(Self {
            g: pair_g(m, n, rho)?,
            fbar: pair_fbar(m, n)?,
            a_m: m.a(),
            a_n: n.a(),
        })
    }

    /// `[ln_μ(g⁻²), ln_μ(f̄⁻²), ln_μ((a_M a_N)^{-1/2})]`.
    pub fn tsallis_rhs(&self, mu: f64) -> [f64; 3] {
        [
            entropy::alpha_log_unchecked(self.g.powi(-2), mu),
            entropy::alpha_log_unchecked(self.fbar.powi(-2), mu),
            entropy::alpha_log_unchecked((self.a_m * self.a_n).powf(-0.5), mu),
        ]
    }

    /// `[-2 ln g, -2 ln f̄, -(ln a_M + ln a_N)/2]`.
    pub fn renyi_rhs(&self) -> [f64; 3] {
        [
            -2.0 * self.g.ln(),
            -2.0 * self.fbar.ln(),
            -0.5 * (self.a_m.ln() + self.a_n.ln()),
        ]
    }
}

fn check_conjugate(alpha: EntropyOrder, beta: EntropyOrder) -> Result<(f64, f64)> {
    match (alpha.value(), beta.value()) {
        (Some(a), Some(b)) if (1.0 / a + 1.0 / b - 2.0).abs() < 1e-10 => Ok((a, b)),
        _ => Err(Error::ConjugacyViolated {
            alpha: alpha.as_f64(),
            beta: beta.as_f64(),
        }),
    }
}

fn pair_context(m: &GeneralSicPovm, n: &GeneralSicPovm, rho: &DensityMatrix) -> BoundContext {
    BoundContext::new(m.dim(), (m.a() * n.a()).sqrt()).purity(purity(rho))
}

/// Six reports for `H_α(M) + H_β(N)` and `R_α(M) + R_β(N)` against the
/// `g`, `f̄` and parameter bounds, with `1/α + 1/β = 2` and `μ = max(α, β)`.
pub fn pair_bounds(
    m: &GeneralSicPovm,
    n: &GeneralSicPovm,
    rho: &DensityMatrix,
    alpha: EntropyOrder,
    beta: EntropyOrder,
    tol_bound: f64,
) -> Result<Vec<BoundReport>> {
    let (a, b) = check_conjugate(alpha, beta)?;
    let q = PairQuantities::compute(m, n, rho)?;
    let pm = probabilities(m, rho)?;
    let pn = probabilities(n, rho)?;
    let tsallis_sum = entropy::tsallis_raw(pm.probs(), a) + entropy::tsallis_raw(pn.probs(), b);
    let renyi_sum = entropy::renyi_raw(pm.probs(), a) + entropy::renyi_raw(pn.probs(), b);
    let ctx = pair_context(m, n, rho).alpha(alpha);
    Ok(emit_pair_rows(
        &q,
        a.max(b),
        tsallis_sum,
        renyi_sum,
        &ctx,
        [
            BoundKind::PairTsallisG,
            BoundKind::PairTsallisFbar,
            BoundKind::PairTsallisParam,
        ],
        [
            BoundKind::PairRenyiG,
            BoundKind::PairRenyiFbar,
            BoundKind::PairRenyiParam,
        ],
        tol_bound,
    ))
}

/// The same six bounds applied to the sum of symmetrized entropies
/// `H̃_s(M) + H̃_s(N)` and `R̃_s(M) + R̃_s(N)`, with `μ = 1/(1-s)`.
pub fn pair_symmetrized_bounds(
    m: &GeneralSicPovm,
    n: &GeneralSicPovm,
    rho: &DensityMatrix,
    s: f64,
    tol_bound: f64,
) -> Result<Vec<BoundReport>> {
    let (alpha, _) = entropy::symmetrized_orders(s)?;
    let q = PairQuantities::compute(m, n, rho)?;
    let pm = probabilities(m, rho)?;
    let pn = probabilities(n, rho)?;
    let tsallis_sum = entropy::symmetrized_tsallis(&pm, s)? + entropy::symmetrized_tsallis(&pn, s)?;
    let renyi_sum = entropy::symmetrized_renyi(&pm, s)? + entropy::symmetrized_renyi(&pn, s)?;
    let ctx = pair_context(m, n, rho).alpha(alpha);
    Ok(emit_pair_rows(
        &q,
        alpha.as_f64(),
        tsallis_sum,
        renyi_sum,
        &ctx,
        [
            BoundKind::SymTsallisG,
            BoundKind::SymTsallisFbar,
            BoundKind::SymTsallisParam,
        ],
        [
            BoundKind::SymRenyiG,
            BoundKind::SymRenyiFbar,
            BoundKind::SymRenyiParam,
        ],
        tol_bound,
    ))
}

#[allow(clippy::too_many_arguments)]
fn emit_pair_rows(
    q: &PairQuantities,
    mu: f64,
    tsallis_sum: f64,
    renyi_sum: f64,
    ctx: &BoundContext,
    tsallis_kinds: [BoundKind; 3],
    renyi_kinds: [BoundKind; 3],
    tol_bound: f64,
) -> Vec<BoundReport> {
    let mut rows = Vec::with_capacity(6);
    for (kind, rhs) in tsallis_kinds.into_iter().zip(q.tsallis_rhs(mu)) {
        rows.push(BoundReport::new(kind, ctx.clone(), tsallis_sum, rhs, tol_bound));
    }
    for (kind, rhs) in renyi_kinds.into_iter().zip(q.renyi_rhs()) {
        rows.push(BoundReport::new(kind, ctx.clone(), renyi_sum, rhs, tol_bound));
    }
    rows
}
