//! Generalized entropies of probability distributions.
//!
//! All logarithms are natural. Zero probabilities contribute nothing to any
//! sum, and orders within [`tol::SHANNON_BRANCH`] of one take the Shannon
//! branch explicitly.

use std::fmt;
use std::str::FromStr;

use crate::distribution::ProbabilityDistribution;
use crate::error::{Error, Result};
use crate::tol;

#[derive(Clone, Copy, Debug, PartialEq)]
enum Order {
    Finite(f64),
    Infinite,
}

/// A positive entropy order, or the `∞` sentinel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EntropyOrder(Order);

impl EntropyOrder {
    pub const SHANNON: Self = Self(Order::Finite(1.0));
    pub const INFINITY: Self = Self(Order::Infinite);

    pub fn new(alpha: f64) -> Result<Self> {
        if alpha == f64::INFINITY {
            return Ok(Self::INFINITY);
        }
        if alpha.is_nan() || alpha <= 0.0 || !alpha.is_finite() {
            return Err(Error::InvalidOrder(alpha));
        }
        Ok(Self(Order::Finite(alpha)))
    }

    /// `None` for the infinite order.
    pub fn value(self) -> Option<f64> {
        match self.0 {
            Order::Finite(a) => Some(a),
            Order::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self.0 == Order::Infinite
    }

    pub fn is_shannon(self) -> bool {
        matches!(self.0, Order::Finite(a) if (a - 1.0).abs() < tol::SHANNON_BRANCH)
    }

    /// `f64::INFINITY` for the sentinel, for tabular output.
    pub fn as_f64(self) -> f64 {
        self.value().unwrap_or(f64::INFINITY)
    }

    fn finite(self, what: &'static str) -> Result<f64> {
        self.value().ok_or(Error::UnsupportedOrder {
            order: "inf".into(),
            reason: what,
        })
    }
}

impl fmt::Display for EntropyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Order::Finite(a) => write!(f, "{a}"),
            Order::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for EntropyOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "inf" | "infinity" | "∞" => Ok(Self::INFINITY),
            t => {
                let v: f64 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("invalid entropy order {s:?}")))?;
                Self::new(v)
            }
        }
    }
}

/// `ln_α(x) = (x^{1-α} - 1)/(1 - α)`, the natural log on the Shannon branch.
pub fn alpha_log(x: f64, alpha: EntropyOrder) -> Result<f64> {
    if x.is_nan() || x <= 0.0 {
        return Err(Error::ArgumentOutOfRange(format!("alpha_log needs x > 0, got {x}")));
    }
    let a = alpha.finite("the alpha-logarithm needs a finite order")?;
    Ok(alpha_log_unchecked(x, a))
}

pub(crate) fn alpha_log_unchecked(x: f64, alpha: f64) -> f64 {
    if (alpha - 1.0).abs() < tol::SHANNON_BRANCH {
        x.ln()
    } else {
        let k = 1.0 - alpha;
        // expm1 keeps precision when (1-α) ln x is small
        (k * x.ln()).exp_m1() / k
    }
}

fn shannon(p: &[f64]) -> f64 {
    -p.iter().filter(|&&x| x > 0.0).map(|&x| x * x.ln()).sum::<f64>()
}

fn power_sum(p: &[f64], alpha: f64) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| x.powf(alpha)).sum()
}

/// Tsallis entropy `(Σ p^α - 1)/(1 - α)`.
pub fn tsallis(p: &ProbabilityDistribution, alpha: EntropyOrder) -> Result<f64> {
    let a = alpha.finite("Tsallis entropy is defined for finite orders")?;
    Ok(tsallis_raw(p.probs(), a))
}

pub(crate) fn tsallis_raw(p: &[f64], alpha: f64) -> f64 {
    if (alpha - 1.0).abs() < tol::SHANNON_BRANCH {
        shannon(p)
    } else {
        (power_sum(p, alpha) - 1.0) / (1.0 - alpha)
    }
}

/// Tsallis entropy in the form `Σ p_j ln_α(1/p_j)`.
pub fn tsallis_via_log(p: &ProbabilityDistribution, alpha: EntropyOrder) -> Result<f64> {
    let a = alpha.finite("Tsallis entropy is defined for finite orders")?;
    Ok(p.probs()
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| x * alpha_log_unchecked(1.0 / x, a))
        .sum())
}

/// Rényi entropy `ln(Σ p^α)/(1 - α)`; `-ln max p` at the infinite order.
pub fn renyi(p: &ProbabilityDistribution, alpha: EntropyOrder) -> f64 {
    match alpha.0 {
        Order::Infinite => -p.max().ln(),
        Order::Finite(a) => renyi_raw(p.probs(), a),
    }
}

pub(crate) fn renyi_raw(p: &[f64], alpha: f64) -> f64 {
    if (alpha - 1.0).abs() < tol::SHANNON_BRANCH {
        shannon(p)
    } else {
        power_sum(p, alpha).ln() / (1.0 - alpha)
    }
}

/// `Σ p_j²`.
pub fn index_of_coincidence(p: &ProbabilityDistribution) -> f64 {
    p.probs().iter().map(|x| x * x).sum()
}

/// A distribution passed through a detector of efficiency `η`: every
/// outcome is scaled by `η` and a no-click cell of mass `1 - η` is appended.
#[derive(Clone, Debug, PartialEq)]
pub struct DistortedDistribution {
    base: ProbabilityDistribution,
    eta: f64,
    probs: ProbabilityDistribution,
}

impl DistortedDistribution {
    pub fn base(&self) -> &ProbabilityDistribution {
        &self.base
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Outcome cells followed by the no-click cell.
    pub fn distribution(&self) -> &ProbabilityDistribution {
        &self.probs
    }

    pub fn no_click(&self) -> f64 {
        1.0 - self.eta
    }
}

fn check_eta(eta: f64) -> Result<()> {
    if (0.0..=1.0).contains(&eta) {
        Ok(())
    } else {
        Err(Error::InvalidEta(eta))
    }
}

pub fn distort(p: &ProbabilityDistribution, eta: f64) -> Result<DistortedDistribution> {
    check_eta(eta)?;
    let mut cells: Vec<f64> = p.probs().iter().map(|x| eta * x).collect();
    cells.push(1.0 - eta);
    Ok(DistortedDistribution {
        base: p.clone(),
        eta,
        probs: ProbabilityDistribution::new(cells)?,
    })
}

/// `h_α(η) = -η^α ln_α(η) - (1-η)^α ln_α(1-η)`, with `0^α ln_α(0) := 0`.
pub fn binary_tsallis(eta: f64, alpha: EntropyOrder) -> Result<f64> {
    check_eta(eta)?;
    let a = alpha.finite("binary Tsallis entropy needs a finite order")?;
    let term = |x: f64| {
        if x > 0.0 {
            -x.powf(a) * alpha_log_unchecked(x, a)
        } else {
            0.0
        }
    };
    Ok(term(eta) + term(1.0 - eta))
}

/// Orders `(α, β) = (1/(1-s), 1/(1+s))`, so `1/α + 1/β = 2`.
pub fn symmetrized_orders(s: f64) -> Result<(EntropyOrder, EntropyOrder)> {
    if !(0.0..1.0).contains(&s) {
        return Err(Error::InvalidSymmetrization(s));
    }
    Ok((
        EntropyOrder::new(1.0 / (1.0 - s))?,
        EntropyOrder::new(1.0 / (1.0 + s))?,
    ))
}

/// `(H_α + H_β)/2` with `α, β` from [`symmetrized_orders`].
pub fn symmetrized_tsallis(p: &ProbabilityDistribution, s: f64) -> Result<f64> {
    let (a, b) = symmetrized_orders(s)?;
    Ok(0.5 * (tsallis(p, a)? + tsallis(p, b)?))
}

/// `(R_α + R_β)/2` with `α, β` from [`symmetrized_orders`].
pub fn symmetrized_renyi(p: &ProbabilityDistribution, s: f64) -> Result<f64> {
    let (a, b) = symmetrized_orders(s)?;
    Ok(0.5 * (renyi(p, a) + renyi(p, b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn ord(a: f64) -> EntropyOrder {
        EntropyOrder::new(a).unwrap()
    }

    fn dist(v: Vec<f64>) -> ProbabilityDistribution {
        ProbabilityDistribution::new(v).unwrap()
    }

    #[test]
    fn order_parsing() {
        assert!(EntropyOrder::new(0.0).is_err());
        assert!(EntropyOrder::new(-1.0).is_err());
        assert!(EntropyOrder::new(f64::NAN).is_err());
        assert_eq!("inf".parse::<EntropyOrder>().unwrap(), EntropyOrder::INFINITY);
        assert_eq!("1.5".parse::<EntropyOrder>().unwrap().value(), Some(1.5));
        assert!("abc".parse::<EntropyOrder>().is_err());
        assert_eq!(EntropyOrder::INFINITY.to_string(), "inf");
    }

    #[test]
    fn alpha_log_values() {
        for a in [0.3, 1.0, 2.0, 5.0] {
            assert_eq!(alpha_log(1.0, ord(a)).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(alpha_log(std::f64::consts::E, ord(1.0)).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(
            alpha_log(std::f64::consts::E, ord(1.0 + 1e-9)).unwrap(),
            1.0,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(alpha_log(4.0, ord(2.0)).unwrap(), 0.75, epsilon = 1e-15);
        assert!(alpha_log(0.0, ord(2.0)).is_err());
        assert!(alpha_log(2.0, EntropyOrder::INFINITY).is_err());
    }

    #[test]
    fn tsallis_special_cases() {
        let u = ProbabilityDistribution::uniform(9);
        for a in [0.3, 0.5, 1.0, 1.5, 2.0, 3.0] {
            assert_abs_diff_eq!(
                tsallis(&u, ord(a)).unwrap(),
                alpha_log(9.0, ord(a)).unwrap(),
                epsilon = 1e-14
            );
            assert_eq!(tsallis(&ProbabilityDistribution::deterministic(4, 2), ord(a)).unwrap(), 0.0);
        }
        let p = dist(vec![0.5, 0.25, 0.25]);
        assert_abs_diff_eq!(
            tsallis(&p, ord(2.0)).unwrap(),
            1.0 - index_of_coincidence(&p),
            epsilon = 1e-15
        );
        assert!(tsallis(&p, EntropyOrder::INFINITY).is_err());
    }

    #[test]
    fn renyi_special_cases() {
        let u = ProbabilityDistribution::uniform(9);
        for a in [0.3, 1.0, 2.0, 7.0] {
            assert_abs_diff_eq!(renyi(&u, ord(a)), 2.0 * 3f64.ln(), epsilon = 1e-14);
        }
        assert_abs_diff_eq!(renyi(&u, EntropyOrder::INFINITY), 2.0 * 3f64.ln(), epsilon = 1e-14);
        let det = ProbabilityDistribution::deterministic(5, 0);
        for a in [0.5, 1.0, 2.0] {
            assert_eq!(renyi(&det, ord(a)), 0.0);
        }
        assert_eq!(renyi(&det, EntropyOrder::INFINITY), 0.0);
        let p = dist(vec![0.5, 0.25, 0.25]);
        assert_abs_diff_eq!(renyi(&p, ord(2.0)), -(3.0f64 / 8.0).ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(
            index_of_coincidence(&p),
            (-renyi(&p, ord(2.0))).exp(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn distort_edges() {
        let p = dist(vec![0.2, 0.3, 0.5]);
        let none = distort(&p, 0.0).unwrap();
        assert_eq!(none.distribution().probs(), &[0.0, 0.0, 0.0, 1.0]);
        let full = distort(&p, 1.0).unwrap();
        assert_eq!(full.distribution().probs(), &[0.2, 0.3, 0.5, 0.0]);
        assert!(matches!(distort(&p, 1.1), Err(Error::InvalidEta(_))));
    }

    #[test]
    fn binary_tsallis_values() {
        for a in [0.5, 1.0, 2.0] {
            assert_eq!(binary_tsallis(0.0, ord(a)).unwrap(), 0.0);
            assert_eq!(binary_tsallis(1.0, ord(a)).unwrap(), 0.0);
        }
        assert_abs_diff_eq!(binary_tsallis(0.5, ord(2.0)).unwrap(), 0.5, epsilon = 1e-15);
        let eta: f64 = 0.3;
        let shannon = -eta * eta.ln() - (1.0 - eta) * (1.0 - eta).ln();
        assert_abs_diff_eq!(binary_tsallis(eta, ord(1.0)).unwrap(), shannon, epsilon = 1e-15);
    }

    #[test]
    fn symmetrized_values() {
        let p = dist(vec![0.1, 0.2, 0.3, 0.4]);
        assert_abs_diff_eq!(
            symmetrized_tsallis(&p, 0.0).unwrap(),
            tsallis(&p, EntropyOrder::SHANNON).unwrap(),
            epsilon = 1e-15
        );
        for s in [0.0, 0.2, 0.5, 0.9] {
            let (a, b) = symmetrized_orders(s).unwrap();
            assert_abs_diff_eq!(1.0 / a.as_f64() + 1.0 / b.as_f64(), 2.0, epsilon = 1e-14);
        }
        let u = ProbabilityDistribution::uniform(16);
        assert_abs_diff_eq!(symmetrized_renyi(&u, 0.6).unwrap(), 2.0 * 4f64.ln(), epsilon = 1e-13);
        assert!(symmetrized_orders(1.0).is_err());
        assert!(symmetrized_orders(-0.1).is_err());
    }

    fn arb_dist() -> impl Strategy<Value = ProbabilityDistribution> {
        prop::collection::vec(0.0f64..1.0, 2..20).prop_filter_map("nonzero", |v| {
            let s: f64 = v.iter().sum();
            (s > 1e-3).then(|| ProbabilityDistribution::new(v.iter().map(|x| x / s).collect()).unwrap())
        })
    }

    proptest! {
        #[test]
        fn renyi_non_increasing(p in arb_dist(), a in 0.05f64..8.0, da in 0.0f64..8.0) {
            let lo = renyi(&p, ord(a));
            let hi = renyi(&p, ord(a + da));
            prop_assert!(lo >= hi - 1e-12);
            prop_assert!(hi >= renyi(&p, EntropyOrder::INFINITY) - 1e-12);
        }

        #[test]
        fn tsallis_forms_agree(p in arb_dist(), a in 0.05f64..6.0) {
            let direct = tsallis(&p, ord(a)).unwrap();
            let via_log = tsallis_via_log(&p, ord(a)).unwrap();
            prop_assert!((direct - via_log).abs() < 1e-12);
        }

        #[test]
        fn jensen_lower_bound(p in arb_dist(), a in 0.01f64..=2.0) {
            let c = index_of_coincidence(&p);
            let bound = alpha_log(1.0 / c, ord(a)).unwrap();
            prop_assert!(tsallis(&p, ord(a)).unwrap() >= bound - 1e-12);
        }

        #[test]
        fn power_sum_below_collision(p in arb_dist(), a in 2.0f64..20.0) {
            let lhs = power_sum(p.probs(), a).powf(1.0 / a);
            prop_assert!(lhs <= index_of_coincidence(&p).sqrt() + 1e-15);
        }

        #[test]
        fn distortion_identity(p in arb_dist(), eta_i in 0usize..5, a_i in 0usize..5) {
            let eta = [0.0, 0.25, 0.5, 0.9, 1.0][eta_i];
            let a = ord([0.5, 1.0, 1.5, 2.0, 3.0][a_i]);
            let lhs = tsallis(distort(&p, eta).unwrap().distribution(), a).unwrap();
            let rhs = eta.powf(a.as_f64()) * tsallis(&p, a).unwrap() + binary_tsallis(eta, a).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }

        #[test]
        fn shannon_limit(p in arb_dist()) {
            let h = tsallis(&p, EntropyOrder::SHANNON).unwrap();
            prop_assert!((renyi(&p, EntropyOrder::SHANNON) - h).abs() < 1e-15);
            // symmetric evaluation at 1 ± 1e-5 cancels the first-order term
            let (lo, hi) = (ord(1.0 - 1e-5), ord(1.0 + 1e-5));
            let ts = 0.5 * (tsallis(&p, lo).unwrap() + tsallis(&p, hi).unwrap());
            let rn = 0.5 * (renyi(&p, lo) + renyi(&p, hi));
            prop_assert!((ts - h).abs() < 1e-8);
            prop_assert!((rn - h).abs() < 1e-8);
        }
    }
}
