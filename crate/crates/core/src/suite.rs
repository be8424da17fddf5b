//! Batch runners: sample states, evaluate every applicable bound and
//! collect reports in a canonical order.

use std::io::Write;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds;
use crate::entropy::{self, EntropyOrder};
use crate::error::{Error, Result};
use crate::linalg::{self, purity, DensityMatrix};
use crate::parallel::{map_indexed, ExecMode};
use crate::report::{self, BoundContext, BoundKind, BoundReport};
use crate::sic::{self, GeneralSicPovm};
use crate::tol;

/// A reproducible set of test states.
///
/// State 0 is `I/d` when `include_maximally_mixed` is set; the remaining
/// states are drawn from the Hilbert-Schmidt-induced ensemble with ranks
/// cycling through `1..=d`, so pure states are always represented.
#[derive(Clone, Debug, PartialEq)]
pub struct Ensemble {
    pub dim: usize,
    pub samples: usize,
    pub seed: u64,
    pub include_maximally_mixed: bool,
}

impl Ensemble {
    pub fn new(dim: usize, samples: usize, seed: u64) -> Self {
        Self {
            dim,
            samples,
            seed,
            include_maximally_mixed: true,
        }
    }

    pub fn states(&self) -> Result<Vec<DensityMatrix>> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.dim as u64);
        let mut states = Vec::with_capacity(self.samples + 1);
        if self.include_maximally_mixed {
            states.push(DensityMatrix::maximally_mixed(self.dim));
        }
        for i in 0..self.samples {
            let rank = 1 + i % self.dim;
            states.push(linalg::random_density(self.dim, rank, &mut rng)?);
        }
        Ok(states)
    }
}

/// Which orders and efficiencies to evaluate per (POVM, state).
#[derive(Clone, Debug, PartialEq)]
pub struct SuiteConfig {
    pub orders: Vec<EntropyOrder>,
    pub etas: Vec<f64>,
    pub tol_bound: f64,
    pub mode: ExecMode,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            orders: default_orders(),
            etas: default_etas(),
            tol_bound: tol::BOUND,
            mode: ExecMode::default(),
        }
    }
}

pub fn default_orders() -> Vec<EntropyOrder> {
    [0.3, 0.5, 1.0, 1.5, 2.0, 3.0, 10.0]
        .into_iter()
        .map(|a| EntropyOrder::new(a).expect("positive"))
        .chain(std::iter::once(EntropyOrder::INFINITY))
        .collect()
}

pub fn default_etas() -> Vec<f64> {
    vec![0.0, 0.25, 0.5, 0.9, 1.0]
}

pub fn default_lambdas() -> Vec<f64> {
    vec![0.2, 0.4, 0.6, 0.8, 1.0]
}

/// Every single-POVM bound that applies at each configured order:
/// Tsallis (and its detector-inefficiency form) and the collision bound
/// for `α ≤ 2`, Rényi for finite `α ≥ 2`, min-entropy at `α = ∞`.
pub fn evaluate_state(
    sic: &GeneralSicPovm,
    rho: &DensityMatrix,
    cfg: &SuiteConfig,
) -> Result<Vec<BoundReport>> {
    let (a, d) = (sic.a(), sic.dim());
    let pur = purity(rho);
    let p = sic::probabilities(sic, rho)?;
    let ctx = BoundContext::new(d, a).purity(pur);
    let mut rows = Vec::new();
    for &alpha in &cfg.orders {
        let c = ctx.clone().alpha(alpha);
        match alpha.value() {
            None => {
                let rhs = bounds::min_entropy_bound(a, d, pur)?;
                rows.push(BoundReport::new(
                    BoundKind::MinEntropy,
                    c,
                    entropy::renyi(&p, alpha),
                    rhs,
                    cfg.tol_bound,
                ));
            }
            Some(al) => {
                if al <= 2.0 {
                    let lhs = entropy::tsallis(&p, alpha)?;
                    let rhs = bounds::tsallis_bound(a, d, pur, alpha)?;
                    rows.push(BoundReport::new(BoundKind::Tsallis, c.clone(), lhs, rhs, cfg.tol_bound));
                    for &eta in &cfg.etas {
                        let distorted = entropy::distort(&p, eta)?;
                        let lhs = entropy::tsallis(distorted.distribution(), alpha)?;
                        let rhs = bounds::tsallis_inefficiency_bound(a, d, pur, alpha, eta)?;
                        rows.push(BoundReport::new(
                            BoundKind::TsallisInefficiency,
                            c.clone().eta(eta),
                            lhs,
                            rhs,
                            cfg.tol_bound,
                        ));
                    }
                    rows.push(BoundReport::new(
                        BoundKind::RenyiCollision,
                        c.clone(),
                        entropy::renyi(&p, alpha),
                        bounds::renyi_collision_bound(a, d, pur)?,
                        cfg.tol_bound,
                    ));
                }
                if al >= 2.0 {
                    rows.push(BoundReport::new(
                        BoundKind::Renyi,
                        c,
                        entropy::renyi(&p, alpha),
                        bounds::renyi_bound(a, d, pur, alpha)?,
                        cfg.tol_bound,
                    ));
                }
            }
        }
    }
    Ok(rows)
}

/// Evaluates every POVM on every state. Report `state` fields are the
/// indices into `states` plus `state_offset`; output is canonicalized.
pub fn check_bound_suite(
    sics: &[GeneralSicPovm],
    states: &[DensityMatrix],
    state_offset: usize,
    cfg: &SuiteConfig,
) -> Result<Vec<BoundReport>> {
    let per_state = map_indexed(states, cfg.mode, |i, rho| -> Result<Vec<BoundReport>> {
        let mut rows = Vec::new();
        for sic in sics {
            rows.extend(
                evaluate_state(sic, rho, cfg)?
                    .into_iter()
                    .map(|r| r.with_state(state_offset + i)),
            );
        }
        Ok(rows)
    });
    let mut reports = Vec::new();
    for rows in per_state {
        reports.extend(rows?);
    }
    report::canonicalize(&mut reports);
    Ok(reports)
}

/// The depolarized family `depolarize_sic(base, λ)` for each `λ`.
pub fn sic_family(base: &GeneralSicPovm, lambdas: &[f64]) -> Result<Vec<GeneralSicPovm>> {
    lambdas
        .iter()
        .map(|&l| sic::depolarize_sic(base, l))
        .collect()
}

/// Parameters of a full single-POVM sweep.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub dims: Vec<usize>,
    /// Replaces the built-in rank-one SIC as the family base; its dimension
    /// must then be the only entry of `dims`.
    pub base: Option<GeneralSicPovm>,
    pub lambdas: Vec<f64>,
    pub samples: usize,
    pub seed: u64,
    pub include_maximally_mixed: bool,
    pub suite: SuiteConfig,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            dims: vec![2, 3],
            base: None,
            lambdas: default_lambdas(),
            samples: 200,
            seed: 0,
            include_maximally_mixed: true,
            suite: SuiteConfig::default(),
        }
    }
}

pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<BoundReport>> {
    let mut reports = Vec::new();
    let mut offset = 0;
    for &d in &cfg.dims {
        let base = match &cfg.base {
            Some(b) if b.dim() == d => b.clone(),
            Some(b) => {
                return Err(Error::DimensionMismatch {
                    expected: b.dim(),
                    found: d,
                })
            }
            None => sic::rank_one_sic(d)?,
        };
        let sics = sic_family(&base, &cfg.lambdas)?;
        let ensemble = Ensemble {
            dim: d,
            samples: cfg.samples,
            seed: cfg.seed,
            include_maximally_mixed: cfg.include_maximally_mixed,
        };
        let states = ensemble.states()?;
        reports.extend(check_bound_suite(&sics, &states, offset, &cfg.suite)?);
        offset += states.len();
    }
    Ok(reports)
}

/// Parameters of a pair sweep.
#[derive(Clone, Debug, PartialEq)]
pub struct PairConfig {
    pub samples: usize,
    pub s_values: Vec<f64>,
    pub seed: u64,
    pub include_maximally_mixed: bool,
    pub tol_bound: f64,
    pub mode: ExecMode,
}

impl Default for PairConfig {
    fn default() -> Self {
        Self {
            samples: 200,
            s_values: vec![0.0, 0.25, 0.5, 0.75],
            seed: 0,
            include_maximally_mixed: true,
            tol_bound: tol::BOUND,
            mode: ExecMode::default(),
        }
    }
}

/// Per state and per `s`: six bounds at `(α, β) = (1/(1-s), 1/(1+s))`
/// followed by the six symmetrized-entropy bounds.
pub fn run_pair(m: &GeneralSicPovm, n: &GeneralSicPovm, cfg: &PairConfig) -> Result<Vec<BoundReport>> {
    linalg::check_dims(m.dim(), n.dim())?;
    let orders = cfg
        .s_values
        .iter()
        .map(|&s| entropy::symmetrized_orders(s).map(|o| (s, o)))
        .collect::<Result<Vec<_>>>()?;
    let states = Ensemble {
        dim: m.dim(),
        samples: cfg.samples,
        seed: cfg.seed,
        include_maximally_mixed: cfg.include_maximally_mixed,
    }
    .states()?;
    let per_state = map_indexed(&states, cfg.mode, |i, rho| -> Result<Vec<BoundReport>> {
        let mut rows = Vec::new();
        for &(s, (alpha, beta)) in &orders {
            rows.extend(bounds::pair_bounds(m, n, rho, alpha, beta, cfg.tol_bound)?);
            rows.extend(bounds::pair_symmetrized_bounds(m, n, rho, s, cfg.tol_bound)?);
        }
        Ok(rows.into_iter().map(|r| r.with_state(i)).collect())
    });
    let mut reports = Vec::new();
    for rows in per_state {
        reports.extend(rows?);
    }
    report::canonicalize(&mut reports);
    Ok(reports)
}

/// Reconstruction error of one state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TomoRow {
    pub state: usize,
    pub purity: f64,
    pub frobenius_error: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TomoOutcome {
    pub rows: Vec<TomoRow>,
    pub max_error: f64,
    /// Dual-basis coefficient `d(d²-1)/(a d³ - 1)`.
    pub condition: f64,
}

/// Measures each ensemble state with exact probabilities and inverts
/// through the dual basis. State 0 is `I/d`.
pub fn run_tomo(sic: &GeneralSicPovm, samples: usize, seed: u64, mode: ExecMode) -> Result<TomoOutcome> {
    let dual = sic::dual_basis(sic)?;
    let states = Ensemble::new(sic.dim(), samples, seed).states()?;
    let rows = map_indexed(&states, mode, |i, rho| -> Result<TomoRow> {
        let p = sic::probabilities(sic, rho)?;
        let back = dual.reconstruct(&p)?;
        Ok(TomoRow {
            state: i,
            purity: purity(rho),
            frobenius_error: back.frobenius_distance(rho.operator()),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let max_error = rows.iter().map(|r| r.frobenius_error).fold(0.0, f64::max);
    Ok(TomoOutcome {
        rows,
        max_error,
        condition: sic::dual_condition(sic),
    })
}

pub fn write_tomo_csv<W: Write>(outcome: &TomoOutcome, mut out: W) -> Result<()> {
    writeln!(out, "state,purity,frobenius_error")?;
    for r in &outcome.rows {
        writeln!(
            out,
            "{},{},{}",
            r.state,
            report::fmt_f64(r.purity),
            report::fmt_f64(r.frobenius_error)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::Summary;

    #[test]
    fn ensemble_is_reproducible() {
        let e = Ensemble::new(3, 6, 42);
        let a = e.states().unwrap();
        let b = e.states().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 7);
        assert_eq!(a[0], DensityMatrix::maximally_mixed(3));
        assert!((purity(&a[1]) - 1.0).abs() < 1e-12);
        let other = Ensemble::new(3, 6, 43).states().unwrap();
        assert_ne!(a[1], other[1]);
    }

    #[test]
    fn small_sweep_passes_and_modes_agree() {
        let mut cfg = SweepConfig {
            samples: 12,
            ..SweepConfig::default()
        };
        cfg.suite.mode = ExecMode::Sequential;
        let seq = run_sweep(&cfg).unwrap();
        cfg.suite.mode = ExecMode::Parallel;
        let par = run_sweep(&cfg).unwrap();
        assert_eq!(seq, par);
        let s = Summary::of(&seq);
        assert!(s.passed(), "{s}");
        assert!(s.saturated > 0);
    }

    #[test]
    fn order_routing() {
        let sic = sic::rank_one_sic(2).unwrap();
        let rho = DensityMatrix::maximally_mixed(2);
        let cfg = SuiteConfig {
            orders: vec![
                EntropyOrder::new(0.5).unwrap(),
                EntropyOrder::new(2.0).unwrap(),
                EntropyOrder::new(3.0).unwrap(),
                EntropyOrder::INFINITY,
            ],
            etas: vec![0.5],
            ..SuiteConfig::default()
        };
        let kinds: Vec<BoundKind> = evaluate_state(&sic, &rho, &cfg)
            .unwrap()
            .iter()
            .map(|r| r.bound_name)
            .collect();
        use BoundKind::*;
        assert_eq!(
            kinds,
            vec![
                Tsallis,
                TsallisInefficiency,
                RenyiCollision,
                Tsallis,
                TsallisInefficiency,
                RenyiCollision,
                Renyi,
                Renyi,
                MinEntropy
            ]
        );
    }

    #[test]
    fn tomography_round_trip() {
        let sic = sic::depolarize_sic(&sic::rank_one_sic(3).unwrap(), 0.5).unwrap();
        let out = run_tomo(&sic, 30, 1, ExecMode::Parallel).unwrap();
        assert_eq!(out.rows.len(), 31);
        assert!(out.max_error < 1e-9);
        assert!(out.rows[0].frobenius_error < 1e-10);
        let near = sic::depolarize_sic(&sic::rank_one_sic(3).unwrap(), 0.01).unwrap();
        assert!(sic::dual_condition(&near) > 100.0 * out.condition);
    }

    #[test]
    fn pair_rejects_mismatched_dims() {
        let m = sic::rank_one_sic(2).unwrap();
        let n = sic::rank_one_sic(3).unwrap();
        assert!(matches!(
            run_pair(&m, &n, &PairConfig::default()),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
