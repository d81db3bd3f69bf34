//! Weight sequences `(M_p)`, their associated functions
//! `M(t) = sup_p log(t^p M_0 / M_p)`, and the Komatsu-style conditions on
//! sequences.
//!
//! Sequences are stored as `l_p = log M_p`. Every check works on the
//! normalized values `l_p - l_0`, i.e. with `M_0 = 1`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{ls_slope, tail_quarter, LogGrid};
use crate::verdict::{witness, ConditionVerdict, Counterexample};
use crate::weights::GrowthFunction;

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 256;

/// Candidate `A` values `10^0 .. 10^6` for the (M2)/(M2)' searches.
pub const A_CANDIDATES: [f64; 7] = [1.0, 1e1, 1e2, 1e3, 1e4, 1e5, 1e6];
/// Candidate `H` values for the (M2)/(M2)' searches.
pub const H_CANDIDATES_M2: [f64; 7] = [1.0, 1.25, 1.5, 2.0, 4.0, 8.0, 16.0];
/// Candidate `H` values for condition (1.1).
pub const H_CANDIDATES_1_1: [f64; 4] = [1.5, 2.0, 4.0, 8.0];

/// What lies beyond the last stored index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SequenceTail {
    /// The sequence continues but was cut at order `P`.
    Cutoff,
    /// `M_p = +inf` beyond the last index (e.g. the sequence of `log t`).
    Infinite,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WeightSequence {
    pub label: String,
    #[serde(rename = "logM")]
    log_values: Vec<f64>,
    #[serde(skip, default = "default_tail")]
    tail: SequenceTail,
}

fn default_tail() -> SequenceTail {
    SequenceTail::Cutoff
}

impl WeightSequence {
    pub fn new(label: impl Into<String>, log_values: Vec<f64>) -> Result<Self> {
        let seq = WeightSequence {
            label: label.into(),
            log_values,
            tail: SequenceTail::Cutoff,
        };
        seq.validate()?;
        Ok(seq)
    }

    pub fn with_tail(mut self, tail: SequenceTail) -> Self {
        self.tail = tail;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.log_values.is_empty() {
            return Err(Error::InvalidSequence("no values".into()));
        }
        if let Some(p) = self.log_values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSequence(format!("log M_{p} is not finite")));
        }
        Ok(())
    }

    /// Parses `{"label": str, "logM": [float...]}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let seq: WeightSequence = serde_json::from_str(s)?;
        seq.validate()?;
        Ok(seq)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("sequence serializes")
    }

    pub fn log_values(&self) -> &[f64] {
        &self.log_values
    }

    /// `l_p - l_0`.
    pub fn normalized(&self) -> Vec<f64> {
        let l0 = self.log_values[0];
        self.log_values.iter().map(|v| v - l0).collect()
    }

    /// Truncation order `P` (index of the last stored value).
    pub fn order(&self) -> usize {
        self.log_values.len() - 1
    }

    pub fn tail(&self) -> SequenceTail {
        self.tail
    }

    /// True when `M_p` was found to be infinite beyond the stored range.
    pub fn is_truncated(&self) -> bool {
        self.tail == SequenceTail::Infinite
    }
}

/// `M(t)` at one point together with where the supremum was attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AssociatedValue {
    pub value: f64,
    pub argmax: usize,
    /// Set when the maximizer is the truncation order of a cut-off sequence,
    /// so the true supremum may be larger.
    pub truncated: bool,
}

/// Brute-force `M(t) = max_{p <= P} (p log t + l_0 - l_p)`.
pub fn associated_function(seq: &WeightSequence, t: f64) -> Result<AssociatedValue> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "associated function needs t > 0, got {t}"
        )));
    }
    let u = t.ln();
    let l0 = seq.log_values[0];
    let mut best = f64::NEG_INFINITY;
    let mut argmax = 0;
    for (p, &l) in seq.log_values.iter().enumerate() {
        let v = p as f64 * u + l0 - l;
        if v > best {
            best = v;
            argmax = p;
        }
    }
    Ok(AssociatedValue {
        value: best,
        argmax,
        truncated: argmax == seq.order() && seq.tail == SequenceTail::Cutoff,
    })
}

/// Associated function evaluated through the lower convex hull of
/// `(p, l_p - l_0)`: `O(log P)` per evaluation.
#[derive(Debug, Clone)]
pub struct AssociatedFunction {
    label: String,
    /// Hull vertices `(p, n_p)`.
    hull: Vec<(usize, f64)>,
    /// Slope of hull edge `i -> i+1`, strictly increasing.
    slopes: Vec<f64>,
    order: usize,
    tail: SequenceTail,
}

impl AssociatedFunction {
    pub fn new(seq: &WeightSequence) -> Self {
        let n = seq.normalized();
        let mut hull: Vec<(usize, f64)> = Vec::new();
        for (p, &y) in n.iter().enumerate() {
            while hull.len() >= 2 {
                let (x0, y0) = hull[hull.len() - 2];
                let (x1, y1) = hull[hull.len() - 1];
                let cross = (x1 - x0) as f64 * (y - y0) - (y1 - y0) * (p - x0) as f64;
                if cross <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push((p, y));
        }
        let slopes = hull
            .windows(2)
            .map(|w| (w[1].1 - w[0].1) / (w[1].0 - w[0].0) as f64)
            .collect();
        AssociatedFunction {
            label: format!("M[{}]", seq.label),
            hull,
            slopes,
            order: seq.order(),
            tail: seq.tail,
        }
    }

    pub fn eval(&self, t: f64) -> Result<AssociatedValue> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "associated function needs t > 0, got {t}"
            )));
        }
        let u = t.ln();
        let i = self.slopes.partition_point(|&s| s < u);
        let (p, n) = self.hull[i];
        Ok(AssociatedValue {
            value: p as f64 * u - n,
            argmax: p,
            truncated: p == self.order && self.tail == SequenceTail::Cutoff,
        })
    }

    /// Largest `t` for which the maximizer stays below the truncation order.
    pub fn reliable_max(&self) -> f64 {
        match self.tail {
            SequenceTail::Infinite => f64::INFINITY,
            SequenceTail::Cutoff => self.slopes.last().map_or(0.0, |s| s.exp()),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }
}

impl GrowthFunction for AssociatedFunction {
    fn value(&self, t: f64) -> Option<f64> {
        if t > self.reliable_max() {
            return None;
        }
        self.eval(t).ok().map(|v| v.value)
    }

    fn name(&self) -> String {
        self.label.clone()
    }
}

/// Associated function cached on a grid.
#[derive(Debug, Clone)]
pub struct AssociatedFunctionView {
    pub grid: LogGrid,
    pub values: Vec<f64>,
    pub truncated: Vec<bool>,
}

impl AssociatedFunctionView {
    pub fn new(seq: &WeightSequence, grid: &LogGrid) -> Self {
        let m = AssociatedFunction::new(seq);
        let evals: Vec<AssociatedValue> = grid
            .points()
            .iter()
            .map(|&t| m.eval(t).expect("grid points are positive"))
            .collect();
        AssociatedFunctionView {
            grid: grid.clone(),
            values: evals.iter().map(|v| v.value).collect(),
            truncated: evals.iter().map(|v| v.truncated).collect(),
        }
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.values
            .windows(2)
            .all(|w| w[1] >= w[0] - 1e-12 * w[0].abs().max(1.0))
    }

    /// Discrete convexity of `u -> M(e^u)` (the grid is uniform in `u`).
    pub fn is_log_convex(&self) -> bool {
        self.values.windows(3).all(|w| w[0] + w[2] - 2.0 * w[1] >= -1e-9)
    }
}

/// `(M_p / M_0)^{1/p}` bounded below by a positive constant.
pub fn check_lower_root_bound(seq: &WeightSequence) -> ConditionVerdict {
    let n = seq.normalized();
    let order = seq.order();
    if order < 1 {
        return ConditionVerdict::inconclusive("lower root bound: need at least M_1");
    }
    let roots: Vec<f64> = (1..=order).map(|p| (n[p] / p as f64).exp()).collect();
    let (argmin, min) = roots.iter().enumerate().fold(
        (0, f64::INFINITY),
        |(bi, bv), (i, &v)| if v < bv { (i, v) } else { (bi, bv) },
    );
    let last = roots.len() - 1;
    if argmin == last && last > 0 && roots[last] < roots[last - 1] {
        return ConditionVerdict::inconclusive(format!(
            "lower root bound: running minimum still decreasing at p = {order} (root {min:e})"
        ));
    }
    if min > 0.0 {
        ConditionVerdict::holds(
            witness(&[("c", min), ("p", (argmin + 1) as f64)]),
            format!("lower root bound: (M_p/M_0)^(1/p) >= {min} for p <= {order}"),
        )
    } else {
        ConditionVerdict::inconclusive("lower root bound: minimum underflows to 0")
    }
}

/// Logarithmic convexity `M_p^2 <= M_{p-1} M_{p+1}`.
pub fn check_m1(seq: &WeightSequence) -> ConditionVerdict {
    let l = &seq.log_values;
    for p in 1..seq.order() {
        let lhs = 2.0 * l[p];
        let rhs = l[p - 1] + l[p + 1];
        if lhs > rhs + 1e-12 * l[p + 1].abs().max(1.0) {
            return ConditionVerdict::fails(
                Counterexample::new(p as f64, lhs, rhs),
                format!("(M1): 2 log M_{p} exceeds log M_{} + log M_{}", p - 1, p + 1),
            );
        }
    }
    ConditionVerdict::holds(
        witness(&[("order", seq.order() as f64)]),
        format!("(M1): log-convex for p <= {}", seq.order()),
    )
}

/// Shared search for `req_p <= log A + p log H` over the candidate grids.
fn search_a_h(req: &[f64], what: &str) -> ConditionVerdict {
    let tol = |v: f64| 1e-12 * v.abs().max(1.0);
    for &a in &A_CANDIDATES {
        for &h in &H_CANDIDATES_M2 {
            let ok = req
                .iter()
                .enumerate()
                .all(|(p, &r)| r <= a.ln() + p as f64 * h.ln() + tol(r));
            if ok {
                return ConditionVerdict::holds(
                    witness(&[("A", a), ("H", h)]),
                    format!("{what}: holds for p <= {} with A = {a}, H = {h}", req.len()),
                );
            }
        }
    }
    let (a, h) = (
        A_CANDIDATES[A_CANDIDATES.len() - 1],
        H_CANDIDATES_M2[H_CANDIDATES_M2.len() - 1],
    );
    let cx = req
        .iter()
        .enumerate()
        .map(|(p, &r)| (p, r, a.ln() + p as f64 * h.ln()))
        .filter(|(_, l, r)| l > r)
        .max_by(|x, y| (x.1 - x.2).total_cmp(&(y.1 - y.2)))
        .map(|(p, l, r)| Counterexample::new(p as f64, l, r).with("A", a).with("H", h));
    let growth = superlinear_exponent(req);
    match (growth, cx) {
        (Some(g), Some(cx)) if g >= 1.1 => ConditionVerdict::fails(
            cx,
            format!("{what}: required exponent grows like p^{g:.3} at cutoff (super-linear)"),
        ),
        (g, cx) => ConditionVerdict::inconclusive(format!(
            "{what}: no (A, H) on the candidate grid; tail growth exponent {}",
            g.map_or("n/a".to_string(), |g| format!("{g:.3}"))
        ))
        .with_counterexample(cx),
    }
}

/// Log-log slope of the positive tail of `req` against `p`.
fn superlinear_exponent(req: &[f64]) -> Option<f64> {
    let tail = tail_quarter(req.len());
    let pts: Vec<(f64, f64)> = tail
        .filter(|&p| p > 0 && req[p] > 0.0)
        .map(|p| ((p as f64).ln(), req[p].ln()))
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let (x, y): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
    ls_slope(&x, &y)
}

/// (M2)': `M_{p+1} <= A H^p M_p`.
pub fn check_m2prime(seq: &WeightSequence) -> ConditionVerdict {
    let n = seq.normalized();
    let req: Vec<f64> = n.windows(2).map(|w| w[1] - w[0]).collect();
    search_a_h(&req, "(M2)'")
}

/// (M2): `M_p <= A H^p min_{0<=q<=p} M_q M_{p-q}`.
pub fn check_m2(seq: &WeightSequence) -> ConditionVerdict {
    let n = seq.normalized();
    let req: Vec<f64> = (0..n.len())
        .map(|p| {
            let min = (0..=p).map(|q| n[q] + n[p - q]).fold(f64::INFINITY, f64::min);
            n[p] - min
        })
        .collect();
    search_a_h(&req, "(M2)")
}

/// Condition (1.1) for a fixed `C`: `s^{s/2} M_p <= B C^s H^{s+p} M_{s+p}`.
///
/// For each `H` the smallest admissible `B` on the sweep `s + p <= P` is
/// the maximum of the ratio. It only certifies a bound when that maximum is
/// attained away from the sweep boundary.
pub fn check_condition_1_1(seq: &WeightSequence, c: f64) -> Result<ConditionVerdict> {
    if !(c > 0.0) || !c.is_finite() {
        return Err(Error::InvalidArgument(format!("condition (1.1) needs C > 0, got {c}")));
    }
    let n = seq.normalized();
    let order = seq.order();
    let mut boundary_hits = Vec::new();
    for &h in &H_CANDIDATES_1_1 {
        let mut best = f64::NEG_INFINITY;
        let mut arg = (0, 0);
        for s in 0..=order {
            let half_s_log_s = 0.5 * s as f64 * (s.max(1) as f64).ln();
            for p in 0..=order - s {
                let g = half_s_log_s + n[p] - s as f64 * c.ln() - (s + p) as f64 * h.ln() - n[s + p];
                if g > best {
                    best = g;
                    arg = (s, p);
                }
            }
        }
        if arg.0 + arg.1 < order {
            return Ok(ConditionVerdict::holds(
                witness(&[
                    ("H", h),
                    ("B", best.exp()),
                    ("logB", best),
                    ("s", arg.0 as f64),
                    ("p", arg.1 as f64),
                ]),
                format!(
                    "(1.1) with C = {c}: B attained at s = {}, p = {} inside the sweep s+p <= {order}",
                    arg.0, arg.1
                ),
            ));
        }
        boundary_hits.push(format!("H={h}: logB={best:.4} at (s,p)=({},{})", arg.0, arg.1));
    }
    Ok(ConditionVerdict::inconclusive(format!(
        "(1.1) with C = {c}: maximum attained on the boundary s+p = {order} for every H ({})",
        boundary_hits.join("; ")
    )))
}

/// Gevrey sequence `M_p = (p!)^s`.
pub fn gevrey_sequence(s: f64, order: usize) -> Result<WeightSequence> {
    if !(s >= 1.0) || !s.is_finite() {
        return Err(Error::InvalidArgument(format!("Gevrey index must be >= 1, got {s}")));
    }
    if order < 1 {
        return Err(Error::InvalidArgument("Gevrey sequence needs order >= 1".into()));
    }
    let mut log_fact = 0.0;
    let mut values = Vec::with_capacity(order + 1);
    values.push(0.0);
    for p in 1..=order {
        log_fact += (p as f64).ln();
        values.push(s * log_fact);
    }
    WeightSequence::new(format!("gevrey:{s}"), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Status;

    fn seq(values: Vec<f64>) -> WeightSequence {
        WeightSequence::new("t", values).unwrap()
    }

    fn log_fact(p: usize) -> f64 {
        (1..=p).map(|k| (k as f64).ln()).sum()
    }

    #[test]
    fn rejects_bad_values() {
        assert!(WeightSequence::new("x", vec![]).is_err());
        assert!(WeightSequence::new("x", vec![0.0, f64::NAN]).is_err());
        assert!(WeightSequence::from_json_str(r#"{"label":"x","logM":[]}"#).is_err());
        let s = WeightSequence::from_json_str(r#"{"label":"x","logM":[1.0,2.0]}"#).unwrap();
        assert_eq!(s.normalized(), vec![0.0, 1.0]);
        assert_eq!(s.to_json_string(), r#"{"label":"x","logM":[1.0,2.0]}"#);
    }

    #[test]
    fn m_at_one_for_factorial() {
        let s = gevrey_sequence(1.0, 20).unwrap();
        let v = associated_function(&s, 1.0).unwrap();
        assert_eq!(v.value, 0.0);
        assert_eq!(v.argmax, 0);
        assert!(associated_function(&s, 0.0).is_err());
        assert!(associated_function(&s, -1.0).is_err());
    }

    #[test]
    fn m_at_e_for_squared_factorial() {
        let s = gevrey_sequence(2.0, 40).unwrap();
        let oracle = (0..=40)
            .map(|p| p as f64 - 2.0 * log_fact(p))
            .fold(f64::NEG_INFINITY, f64::max);
        let v = associated_function(&s, std::f64::consts::E).unwrap();
        assert!((v.value - oracle).abs() < 1e-12);
        assert!(!v.truncated);
    }

    #[test]
    fn constant_sequence_hits_cutoff() {
        let s = seq(vec![0.0; 9]);
        let v = associated_function(&s, 2.0).unwrap();
        assert!((v.value - 8.0 * 2f64.ln()).abs() < 1e-12);
        assert!(v.truncated);
        let h = AssociatedFunction::new(&s).eval(2.0).unwrap();
        assert!((h.value - v.value).abs() < 1e-12);
        assert!(h.truncated);
    }

    #[test]
    fn hull_matches_brute_force() {
        let s = gevrey_sequence(1.5, 128).unwrap();
        let hull = AssociatedFunction::new(&s);
        for &t in LogGrid::new(0.1, 1e4, 200).unwrap().points() {
            let a = associated_function(&s, t).unwrap();
            let b = hull.eval(t).unwrap();
            assert!((a.value - b.value).abs() < 1e-9 * a.value.abs().max(1.0), "t = {t}");
        }
    }

    #[test]
    fn infinite_tail_never_truncates() {
        let s = seq(vec![0.0, 0.0]).with_tail(SequenceTail::Infinite);
        let m = AssociatedFunction::new(&s);
        let v = m.eval(1e6).unwrap();
        assert!((v.value - 1e6f64.ln()).abs() < 1e-12);
        assert!(!v.truncated);
        assert!(m.reliable_max().is_infinite());
    }

    #[test]
    fn root_bound_examples() {
        let v = check_lower_root_bound(&gevrey_sequence(1.0, 64).unwrap());
        assert!(v.holds_p());
        assert!((v.witness_value("c").unwrap() - 1.0).abs() < 1e-12);
        let v = check_lower_root_bound(&seq(vec![0.0; 10]));
        assert_eq!(v.witness_value("c"), Some(1.0));
        let v = check_lower_root_bound(&seq((0..10).map(|p| -((p * p) as f64)).collect()));
        assert_eq!(v.status, Status::Inconclusive);
    }

    #[test]
    fn m1_examples() {
        assert!(check_m1(&gevrey_sequence(1.0, 64).unwrap()).holds_p());
        let v = check_m1(&seq(vec![0.0, 1.0, 0.0, 0.0]));
        assert!(v.fails_p());
        assert_eq!(v.counterexample.unwrap().point, 1.0);
    }

    #[test]
    fn m2prime_examples() {
        let v = check_m2prime(&gevrey_sequence(1.0, 64).unwrap());
        assert!(v.holds_p());
        // oracle: (p+1) <= A H^p for every p < P
        let (a, h) = (v.witness_value("A").unwrap(), v.witness_value("H").unwrap());
        assert!((0..64).all(|p| (p + 1) as f64 <= a * h.powi(p) * (1.0 + 1e-12)));

        let v = check_m2prime(&gevrey_sequence(2.0, 64).unwrap());
        assert!(v.holds_p());
        let (a, h) = (v.witness_value("A").unwrap(), v.witness_value("H").unwrap());
        assert!((0..64).all(|p| ((p + 1) * (p + 1)) as f64 <= a * h.powi(p) * (1.0 + 1e-12)));

        let v = check_m2prime(&seq((0..=64).map(|p| (p as f64).powi(3)).collect()));
        assert!(v.fails_p(), "{v:?}");
    }

    #[test]
    fn m2_examples() {
        let v = check_m2(&gevrey_sequence(1.0, 64).unwrap());
        assert_eq!(v.witness_value("A"), Some(1.0));
        assert_eq!(v.witness_value("H"), Some(2.0));
        let v = check_m2(&seq(vec![0.0; 16]));
        assert_eq!(v.witness_value("A"), Some(1.0));
        assert_eq!(v.witness_value("H"), Some(1.0));
    }

    #[test]
    fn condition_1_1_examples() {
        let v = check_condition_1_1(&gevrey_sequence(2.0, 64).unwrap(), 1.0).unwrap();
        assert!(v.holds_p());
        let v = check_condition_1_1(&seq(vec![0.0; 257]), 1.0).unwrap();
        assert_eq!(v.status, Status::Inconclusive);
        assert!(check_condition_1_1(&seq(vec![0.0; 4]), 0.0).is_err());
    }

    #[test]
    fn gevrey_values() {
        let s = gevrey_sequence(1.0, 4).unwrap();
        let expected = [0.0, 0.0, 2f64.ln(), 6f64.ln(), 24f64.ln()];
        for (a, b) in s.log_values().iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
        let s = gevrey_sequence(2.0, 10).unwrap();
        assert!((s.log_values()[10] - 2.0 * 3_628_800f64.ln()).abs() < 1e-12);
        assert!(check_m1(&gevrey_sequence(1.5, 256).unwrap()).holds_p());
        assert!(gevrey_sequence(0.5, 10).is_err());
    }
}
