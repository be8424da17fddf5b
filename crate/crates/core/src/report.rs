//! Bound reports and their CSV / JSON-lines serialization.

use std::fmt;
use std::io::Write;

use serde::{Serialize, Serializer};

use crate::entropy::EntropyOrder;
use crate::error::Result;
use crate::tol;

/// Which inequality a report checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    /// Tsallis entropy against the index-of-coincidence bound, `α ∈ (0, 2]`.
    Tsallis,
    /// Tsallis entropy of the distorted distribution.
    TsallisInefficiency,
    /// Rényi entropy, `α ∈ [2, ∞)`.
    Renyi,
    /// Rényi entropy against the collision bound, `α ∈ (0, 2]`.
    RenyiCollision,
    MinEntropy,
    PairTsallisG,
    PairTsallisFbar,
    PairTsallisParam,
    PairRenyiG,
    PairRenyiFbar,
    PairRenyiParam,
    SymTsallisG,
    SymTsallisFbar,
    SymTsallisParam,
    SymRenyiG,
    SymRenyiFbar,
    SymRenyiParam,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Tsallis => "tsallis",
            Self::TsallisInefficiency => "tsallis_inefficiency",
            Self::Renyi => "renyi",
            Self::RenyiCollision => "renyi_collision",
            Self::MinEntropy => "min_entropy",
            Self::PairTsallisG => "pair_tsallis_g",
            Self::PairTsallisFbar => "pair_tsallis_fbar",
            Self::PairTsallisParam => "pair_tsallis_param",
            Self::PairRenyiG => "pair_renyi_g",
            Self::PairRenyiFbar => "pair_renyi_fbar",
            Self::PairRenyiParam => "pair_renyi_param",
            Self::SymTsallisG => "sym_tsallis_g",
            Self::SymTsallisFbar => "sym_tsallis_fbar",
            Self::SymTsallisParam => "sym_tsallis_param",
            Self::SymRenyiG => "sym_renyi_g",
            Self::SymRenyiFbar => "sym_renyi_fbar",
            Self::SymRenyiParam => "sym_renyi_param",
        }
    }

    /// Rényi-family rows, whose values are logarithms and so depend on the base.
    pub fn is_logarithmic(self) -> bool {
        matches!(
            self,
            Self::Renyi
                | Self::RenyiCollision
                | Self::MinEntropy
                | Self::PairRenyiG
                | Self::PairRenyiFbar
                | Self::PairRenyiParam
                | Self::SymRenyiG
                | Self::SymRenyiFbar
                | Self::SymRenyiParam
        )
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for EntropyOrder {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.value() {
            Some(a) => s.serialize_f64(a),
            None => s.serialize_str("inf"),
        }
    }
}

/// Parameters a bound was evaluated at.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundContext {
    pub d: usize,
    /// SIC parameter; for pair bounds the geometric mean `√(a_M a_N)`.
    pub a: f64,
    pub purity: Option<f64>,
    pub alpha: Option<EntropyOrder>,
    pub eta: Option<f64>,
}

impl BoundContext {
    pub fn new(d: usize, a: f64) -> Self {
        Self {
            d,
            a,
            purity: None,
            alpha: None,
            eta: None,
        }
    }

    pub fn purity(mut self, purity: f64) -> Self {
        self.purity = Some(purity);
        self
    }

    pub fn alpha(mut self, alpha: EntropyOrder) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn eta(mut self, eta: f64) -> Self {
        self.eta = Some(eta);
        self
    }
}

/// One inequality check: `lhs` is the computed quantity, `rhs` the bound.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub state: usize,
    pub bound_name: BoundKind,
    pub context: BoundContext,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub satisfied: bool,
}

impl BoundReport {
    pub fn new(kind: BoundKind, context: BoundContext, lhs: f64, rhs: f64, tol_bound: f64) -> Self {
        let slack = lhs - rhs;
        Self {
            state: 0,
            bound_name: kind,
            context,
            lhs,
            rhs,
            slack,
            satisfied: slack >= -tol_bound,
        }
    }

    pub fn with_state(mut self, state: usize) -> Self {
        self.state = state;
        self
    }

    pub fn is_saturated(&self) -> bool {
        self.slack.abs() < tol::SATURATION
    }

    /// Same row with logarithmic values rescaled to bits, for display.
    /// Tsallis rows are left unchanged.
    pub fn in_bits(&self) -> Self {
        let mut r = self.clone();
        if r.bound_name.is_logarithmic() {
            let k = std::f64::consts::LN_2;
            r.lhs /= k;
            r.rhs /= k;
            r.slack /= k;
        }
        r
    }
}

/// Counts over a batch of reports.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub rows: usize,
    pub violations: usize,
    pub saturated: usize,
    pub min_slack: f64,
}

impl Summary {
    pub fn of(reports: &[BoundReport]) -> Self {
        Self {
            rows: reports.len(),
            violations: reports.iter().filter(|r| !r.satisfied).count(),
            saturated: reports.iter().filter(|r| r.is_saturated()).count(),
            min_slack: reports
                .iter()
                .map(|r| r.slack)
                .fold(f64::INFINITY, f64::min),
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

impl fmt::Display for Summary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "rows={} violations={} saturated={} min_slack={:.3e}",
            self.rows, self.violations, self.saturated, self.min_slack
        )
    }
}

/// Stable sort by `(state, bound_name)`.
pub fn canonicalize(reports: &mut [BoundReport]) {
    reports.sort_by_key(|r| (r.state, r.bound_name));
}

/// Round-trippable float: 17 significant digits, `.` decimal.
pub fn fmt_f64(x: f64) -> String {
    if x.is_nan() {
        "nan".into()
    } else if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        format!("{x:.16e}")
    }
}

pub const CSV_HEADER: &str = "bound_name,d,a,purity,alpha,eta,lhs,rhs,slack,satisfied";

pub fn write_csv<W: Write>(reports: &[BoundReport], mut out: W) -> Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in reports {
        let opt = |x: Option<f64>| x.map(fmt_f64).unwrap_or_default();
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.bound_name,
            r.context.d,
            fmt_f64(r.context.a),
            opt(r.context.purity),
            opt(r.context.alpha.map(EntropyOrder::as_f64)),
            opt(r.context.eta),
            fmt_f64(r.lhs),
            fmt_f64(r.rhs),
            fmt_f64(r.slack),
            r.satisfied
        )?;
    }
    Ok(())
}

pub fn write_jsonl<W: Write>(reports: &[BoundReport], mut out: W) -> Result<()> {
    for r in reports {
        serde_json::to_writer(&mut out, r)?;
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn satisfied_tracks_slack() {
        let ctx = BoundContext::new(2, 0.25);
        let ok = BoundReport::new(BoundKind::Tsallis, ctx.clone(), 1.0, 1.0 + 5e-11, 1e-10);
        assert!(ok.satisfied && ok.is_saturated());
        let bad = BoundReport::new(BoundKind::Tsallis, ctx, 1.0, 1.0 + 2e-10, 1e-10);
        assert!(!bad.satisfied);
    }

    #[test]
    fn csv_layout() {
        let ctx = BoundContext::new(3, 0.1).purity(0.5).alpha(EntropyOrder::INFINITY);
        let r = BoundReport::new(BoundKind::MinEntropy, ctx, 2.0, 1.5, 1e-10);
        let mut buf = Vec::new();
        write_csv(std::slice::from_ref(&r), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(CSV_HEADER));
        assert_eq!(
            lines.next(),
            Some("min_entropy,3,1.0000000000000001e-1,5.0000000000000000e-1,inf,,2.0000000000000000e0,1.5000000000000000e0,5.0000000000000000e-1,true")
        );
        let x = 0.1f64 + 0.2;
        assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);

        let mut buf = Vec::new();
        write_jsonl(&[r], &mut buf).unwrap();
        let v: serde_json::Value = serde_json::from_slice(&buf).unwrap();
        assert_eq!(v["bound_name"], "min_entropy");
        assert_eq!(v["context"]["alpha"], "inf");
    }

    #[test]
    fn bits_rescale_only_logarithmic_rows() {
        let ctx = BoundContext::new(2, 0.25).purity(1.0);
        let ln4 = 4f64.ln();
        let r = BoundReport::new(BoundKind::PairRenyiParam, ctx.clone(), ln4, ln4, 1e-10).in_bits();
        assert!((r.rhs - 2.0).abs() < 1e-15 && r.slack == 0.0);
        let t = BoundReport::new(BoundKind::Tsallis, ctx, ln4, 1.0, 1e-10);
        assert_eq!(t.in_bits(), t);
    }
}
