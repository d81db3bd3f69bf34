//! Tri-state condition verdicts and the shared witness-search decision rule.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::numerics::{ls_slope, tail_quarter, LogGrid};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    HoldsWithWitness,
    FailsWithCounterexample,
    Inconclusive,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::HoldsWithWitness => "HoldsWithWitness",
            Status::FailsWithCounterexample => "FailsWithCounterexample",
            Status::Inconclusive => "Inconclusive",
        }
    }
}

/// Range of the grid a verdict was computed on.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct GridInfo {
    pub t_min: f64,
    pub t_max: f64,
    pub n: usize,
}

impl From<&LogGrid> for GridInfo {
    fn from(g: &LogGrid) -> Self {
        GridInfo {
            t_min: g.t_min(),
            t_max: g.t_max(),
            n: g.len(),
        }
    }
}

/// A point where `lhs <= rhs` fails, with the parameters it was tested for.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub point: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub params: BTreeMap<String, f64>,
}

impl Counterexample {
    pub fn new(point: f64, lhs: f64, rhs: f64) -> Self {
        Counterexample {
            point,
            lhs,
            rhs,
            params: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }
}

pub type Witness = BTreeMap<String, f64>;

pub fn witness(pairs: &[(&str, f64)]) -> Witness {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionVerdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub counterexample: Option<Counterexample>,
    pub grid: Option<GridInfo>,
    pub note: String,
}

impl ConditionVerdict {
    pub fn holds(witness: Witness, note: impl Into<String>) -> Self {
        ConditionVerdict {
            status: Status::HoldsWithWitness,
            witness: Some(witness),
            counterexample: None,
            grid: None,
            note: note.into(),
        }
    }

    pub fn fails(counterexample: Counterexample, note: impl Into<String>) -> Self {
        ConditionVerdict {
            status: Status::FailsWithCounterexample,
            witness: None,
            counterexample: Some(counterexample),
            grid: None,
            note: note.into(),
        }
    }

    pub fn inconclusive(note: impl Into<String>) -> Self {
        ConditionVerdict {
            status: Status::Inconclusive,
            witness: None,
            counterexample: None,
            grid: None,
            note: note.into(),
        }
    }

    pub fn with_counterexample(mut self, cx: Option<Counterexample>) -> Self {
        self.counterexample = cx;
        self
    }

    pub fn on_grid(mut self, grid: &LogGrid) -> Self {
        self.grid = Some(grid.into());
        self
    }

    pub fn holds_p(&self) -> bool {
        self.status == Status::HoldsWithWitness
    }

    pub fn fails_p(&self) -> bool {
        self.status == Status::FailsWithCounterexample
    }

    pub fn witness_value(&self, key: &str) -> Option<f64> {
        self.witness.as_ref().and_then(|w| w.get(key).copied())
    }
}

/// Inequality `lhs(t) <= rhs(t)` sampled along a grid for one candidate
/// parameter value.
#[derive(Debug, Clone)]
pub(crate) struct MarginScan {
    pub param: f64,
    /// `(t, lhs, rhs)` for every point that could be evaluated.
    pub samples: Vec<(f64, f64, f64)>,
    pub skipped: usize,
}

pub(crate) fn ineq_tol(lhs: f64, rhs: f64) -> f64 {
    1e-9 * 1f64.max(lhs.abs()).max(rhs.abs())
}

impl MarginScan {
    fn margins(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|&(_, l, r)| l - r)
    }

    /// Largest violation, if any sample exceeds tolerance.
    pub fn worst_violation(&self) -> Option<(f64, f64, f64)> {
        self.samples
            .iter()
            .filter(|&&(_, l, r)| l - r > ineq_tol(l, r))
            .copied()
            .fold(None, |best: Option<(f64, f64, f64)>, s| match best {
                Some(b) if b.1 - b.2 >= s.1 - s.2 => Some(b),
                _ => Some(s),
            })
    }

    /// Fitted rise of the margin over the last quarter of samples, measured
    /// against `log t`. Positive means the margin is growing at the tail.
    pub fn tail_rise(&self) -> Option<f64> {
        if self.samples.len() < 3 {
            return None;
        }
        let tail = &self.samples[tail_quarter(self.samples.len())];
        let x: Vec<f64> = tail.iter().map(|s| s.0.ln()).collect();
        let y: Vec<f64> = tail.iter().map(|s| s.1 - s.2).collect();
        let slope = ls_slope(&x, &y)?;
        Some(slope * (x[x.len() - 1] - x[0]))
    }

    pub fn trending_up(&self) -> bool {
        let last = self.margins().last().unwrap_or(0.0);
        match self.tail_rise() {
            Some(rise) => rise > 1e-6 * 1f64.max(last.abs()),
            None => false,
        }
    }

    /// Linear extrapolation in `log t` of where the margin crosses zero.
    fn extrapolated_crossing(&self) -> Option<f64> {
        let tail = &self.samples[tail_quarter(self.samples.len())];
        let x: Vec<f64> = tail.iter().map(|s| s.0.ln()).collect();
        let y: Vec<f64> = tail.iter().map(|s| s.1 - s.2).collect();
        let slope = ls_slope(&x, &y)?;
        let (t_last, l, r) = *self.samples.last()?;
        if slope <= 0.0 {
            return None;
        }
        Some((t_last.ln() + (r - l) / slope).exp())
    }
}

/// Decision rule for `exists param: lhs(t) <= rhs(t) for all t`.
///
/// * Holds with the first candidate that has no violation on the grid and a
///   margin that is not rising along the grid tail.
/// * Fails when every candidate's margin rises along the tail and at least
///   one candidate is violated on the grid.
/// * Inconclusive otherwise.
pub(crate) fn decide_exists(param_name: &str, scans: &[MarginScan], what: &str) -> ConditionVerdict {
    let skipped: usize = scans.iter().map(|s| s.skipped).sum();
    let skip_note = if skipped > 0 {
        format!("; {skipped} evaluations outside the evaluable range skipped")
    } else {
        String::new()
    };
    if scans.iter().all(|s| s.samples.is_empty()) {
        return ConditionVerdict::inconclusive(format!("{what}: no evaluable grid points{skip_note}"));
    }
    for scan in scans {
        if scan.samples.is_empty() {
            continue;
        }
        if scan.worst_violation().is_none() && !scan.trending_up() {
            let max_margin = scan.margins().fold(f64::NEG_INFINITY, f64::max);
            return ConditionVerdict::holds(
                witness(&[(param_name, scan.param), ("maxMargin", max_margin)]),
                format!(
                    "{what}: holds on tested range with {param_name} = {}{skip_note}",
                    scan.param
                ),
            );
        }
    }
    let violated_cx = scans.iter().rev().find_map(|s| {
        s.worst_violation()
            .map(|(t, l, r)| Counterexample::new(t, l, r).with(param_name, s.param))
    });
    let all_rising = scans
        .iter()
        .filter(|s| !s.samples.is_empty())
        .all(MarginScan::trending_up);
    if all_rising {
        if let Some(cx) = violated_cx {
            let crossings: Vec<String> = scans
                .iter()
                .filter(|s| s.worst_violation().is_none())
                .filter_map(|s| {
                    s.extrapolated_crossing()
                        .map(|t| format!("{param_name}={}: t~{t:.3e}", s.param))
                })
                .collect();
            let extra = if crossings.is_empty() {
                String::new()
            } else {
                format!("; extrapolated crossings {}", crossings.join(", "))
            };
            return ConditionVerdict::fails(
                cx,
                format!("{what}: margin rising along grid tail for every candidate {param_name}{extra}{skip_note}"),
            );
        }
    }
    ConditionVerdict::inconclusive(format!(
        "{what}: no candidate {param_name} certified and failure not established{skip_note}"
    ))
    .with_counterexample(violated_cx)
}
