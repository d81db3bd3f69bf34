//! Koethe matrices `a(j, k) = M(j sqrt k)` of the sequence spaces built
//! from a weight sequence or a weight function, the Grothendieck-Pietsch
//! series test, and the nuclearity decision with its diagnostics.
//!
//! Entries are carried as exponents; only bounded differences
//! `a(j, k) - a(m, k)` are ever exponentiated.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{ls_slope, CompensatedSum, LogGrid};
use crate::sequences::{AssociatedFunction, WeightSequence};
use crate::verdict::{witness, ConditionVerdict, Counterexample};
use crate::weights::{check_condition4, iterate_condition4, GrowthFunction, WeightFunction};

pub const DEFAULT_J_MAX: u32 = 8;
pub const DEFAULT_K_MAX: u64 = 1_000_000;
/// Every `k` up to this bound is summed exactly.
pub const DENSE_HEAD: u64 = 1024;
/// Geometric samples per octave beyond the dense head.
const PER_OCTAVE: f64 = 4.0;
/// Decay exponents are reported in `[-NU_CLAMP, NU_CLAMP]`.
pub const NU_CLAMP: f64 = 64.0;
/// Convergent when `nu >= 1 + margin`, divergent when `nu <= 1 - margin`.
pub const NU_MARGIN: f64 = 0.1;
/// Power `N` in the analytic route (`m >= H^N j`).
pub const ANALYTIC_N: u32 = 3;
const MONOTONE_TOL: f64 = 1e-9;

type SourceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// What the matrix rows are built from.
#[derive(Clone)]
pub enum KoetheSource {
    /// `M` is the associated function of a weight sequence.
    Sequence(AssociatedFunction),
    /// `M` is the weight itself.
    Weight(WeightFunction),
    /// Any nondecreasing function vanishing on `[0, 1]`.
    Function { name: String, f: SourceFn },
}

impl KoetheSource {
    pub fn sequence(seq: &WeightSequence) -> Self {
        KoetheSource::Sequence(AssociatedFunction::new(seq))
    }

    pub fn function(name: impl Into<String>, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        KoetheSource::Function {
            name: name.into(),
            f: Arc::new(f),
        }
    }

    /// Largest `t` at which the source is reliable.
    pub fn reliable_max(&self) -> f64 {
        match self {
            KoetheSource::Sequence(m) => m.reliable_max(),
            _ => f64::INFINITY,
        }
    }

    fn eval(&self, t: f64) -> Result<f64> {
        if t <= 0.0 {
            return Ok(0.0);
        }
        if t > self.reliable_max() {
            return Err(Error::OutOfRange(format!(
                "{} is reliable only up to t = {}, asked for {t}",
                self.name(),
                self.reliable_max()
            )));
        }
        let v = match self {
            KoetheSource::Sequence(m) => m.eval(t)?.value,
            KoetheSource::Weight(w) => w.evaluate(t)?,
            KoetheSource::Function { f, .. } => f(t),
        };
        if v.is_nan() {
            return Err(Error::InvalidArgument(format!("{} is NaN at t = {t}", self.name())));
        }
        Ok(v)
    }
}

impl GrowthFunction for KoetheSource {
    fn value(&self, t: f64) -> Option<f64> {
        self.eval(t).ok().filter(|v| v.is_finite())
    }

    fn name(&self) -> String {
        match self {
            KoetheSource::Sequence(m) => m.label().to_string(),
            KoetheSource::Weight(w) => w.label(),
            KoetheSource::Function { name, .. } => name.clone(),
        }
    }
}

impl fmt::Debug for KoetheSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KoetheSource({})", self.name())
    }
}

/// `k = 0..=min(K, 1024)`, then about four geometric samples per octave,
/// always ending at `K`.
pub fn sample_ks(k_max: u64) -> Vec<u64> {
    let mut ks: Vec<u64> = (0..=k_max.min(DENSE_HEAD)).collect();
    if k_max > DENSE_HEAD {
        let mut i = 1.0;
        loop {
            let k = (DENSE_HEAD as f64 * 2f64.powf(i / PER_OCTAVE)).round() as u64;
            if k >= k_max {
                break;
            }
            if k > *ks.last().unwrap() {
                ks.push(k);
            }
            i += 1.0;
        }
        ks.push(k_max);
    }
    ks
}

/// Exponent matrix `a(j, k) = M(j sqrt k)`, evaluated lazily and memoized.
pub struct KoetheMatrix {
    source: KoetheSource,
    j_max: u32,
    k_max: u64,
    cache: Mutex<HashMap<(u32, u64), f64>>,
    /// Invariant violations seen on the construction sample.
    pub invariant_notes: Vec<String>,
}

impl fmt::Debug for KoetheMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("KoetheMatrix")
            .field("source", &self.source)
            .field("j_max", &self.j_max)
            .field("k_max", &self.k_max)
            .finish()
    }
}

pub fn build_matrix(source: KoetheSource, j_max: u32, k_max: u64) -> Result<KoetheMatrix> {
    KoetheMatrix::new(source, j_max, k_max)
}

impl KoetheMatrix {
    pub fn new(source: KoetheSource, j_max: u32, k_max: u64) -> Result<Self> {
        if j_max < 1 || k_max < 1 {
            return Err(Error::InvalidArgument("need j_max >= 1 and k_max >= 1".into()));
        }
        let top = j_max as f64 * (k_max as f64).sqrt();
        if top > source.reliable_max() {
            return Err(Error::OutOfRange(format!(
                "{} is reliable only up to t = {}, the matrix needs t = {top}",
                source.name(),
                source.reliable_max()
            )));
        }
        let mut mat = KoetheMatrix {
            source,
            j_max,
            k_max,
            cache: Mutex::new(HashMap::new()),
            invariant_notes: Vec::new(),
        };
        mat.invariant_notes = mat.sample_invariants()?;
        Ok(mat)
    }

    pub fn with_defaults(source: KoetheSource) -> Result<Self> {
        Self::new(source, DEFAULT_J_MAX, DEFAULT_K_MAX)
    }

    pub fn source(&self) -> &KoetheSource {
        &self.source
    }

    pub fn j_max(&self) -> u32 {
        self.j_max
    }

    pub fn k_max(&self) -> u64 {
        self.k_max
    }

    /// `a(j, k)`; `a(j, 0) = 0`.
    pub fn exponent(&self, j: u32, k: u64) -> Result<f64> {
        if k == 0 {
            return Ok(0.0);
        }
        if let Some(&v) = self.cache.lock().expect("cache lock").get(&(j, k)) {
            return Ok(v);
        }
        let v = self.source.eval(j as f64 * (k as f64).sqrt())?;
        self.cache.lock().expect("cache lock").insert((j, k), v);
        Ok(v)
    }

    fn sample_invariants(&self) -> Result<Vec<String>> {
        let ks: Vec<u64> = sample_ks(self.k_max).into_iter().step_by(16).collect();
        let mut notes = Vec::new();
        for j in 1..=self.j_max {
            let mut prev: Option<(u64, f64)> = None;
            for &k in &ks {
                let a = self.exponent(j, k)?;
                if let Some((pk, pa)) = prev {
                    if a < pa - MONOTONE_TOL * pa.abs().max(1.0) {
                        notes.push(format!("a({j}, k) decreases between k = {pk} and k = {k}"));
                        break;
                    }
                }
                if j > 1 && a < self.exponent(j - 1, k)? - MONOTONE_TOL * a.abs().max(1.0) {
                    notes.push(format!("a(j, {k}) decreases between j = {} and j = {j}", j - 1));
                }
                prev = Some((k, a));
            }
        }
        if self.j_max >= 2 {
            let v = self.monotone_difference_check(1, self.j_max, self.k_max)?;
            if !v.holds_p() {
                notes.push(v.note);
            }
        }
        Ok(notes)
    }

    fn check_pair(&self, j: u32, m: u32, k_max: u64) -> Result<()> {
        if m <= j {
            return Err(Error::InvalidArgument(format!("need m > j, got j = {j}, m = {m}")));
        }
        if k_max < 1 || k_max > self.k_max {
            return Err(Error::InvalidArgument(format!(
                "K must lie in 1..={}, got {k_max}",
                self.k_max
            )));
        }
        Ok(())
    }

    /// Grothendieck-Pietsch series test for the pair `(j, m)`:
    /// `sum_k exp(a(j, k) - a(m, k))` with a decay-exponent fit over the
    /// last decade of `k`. `j = m` is allowed and diverges.
    pub fn gp_series_test(&self, j: u32, m: u32, k_max: u64) -> Result<SeriesTest> {
        if k_max < 1 || k_max > self.k_max {
            return Err(Error::InvalidArgument(format!(
                "K must lie in 1..={}, got {k_max}",
                self.k_max
            )));
        }
        let ks = sample_ks(k_max);
        let mut trace = Vec::with_capacity(ks.len());
        let mut acc = CompensatedSum::new();
        let mut prev: Option<(u64, f64)> = None;
        for &k in &ks {
            let e = self.exponent(j, k)? - self.exponent(m, k)?;
            let term = e.exp();
            match prev {
                Some((pk, pterm)) if k > pk + 1 => {
                    // trapezoid estimate of the terms in (pk, k]
                    let gap = (k - pk) as f64;
                    acc.add(gap * 0.5 * (pterm + term));
                }
                _ => acc.add(term),
            }
            prev = Some((k, term));
            trace.push(TracePoint {
                k,
                exponent: e,
                partial_sum: acc.value(),
            });
        }

        let fit = |lo: f64, hi: f64| -> Option<f64> {
            let (x, y): (Vec<f64>, Vec<f64>) = trace
                .iter()
                .filter(|p| p.k >= 1 && (p.k as f64) >= lo && (p.k as f64) <= hi)
                .map(|p| ((p.k as f64).ln(), p.exponent))
                .unzip();
            ls_slope(&x, &y).map(|s| -s)
        };
        let kf = k_max as f64;
        let nu_last = fit(kf / 10.0, kf).unwrap_or(0.0);
        let nu_prev = fit(kf / 100.0, kf / 10.0);
        let superpolynomial = matches!(nu_prev, Some(p) if nu_last > 1.0 + NU_MARGIN
            && nu_last - p > 0.1 * p.abs().max(1.0));
        let nu = if superpolynomial {
            NU_CLAMP
        } else {
            nu_last.clamp(-NU_CLAMP, NU_CLAMP)
        };
        let verdict = if nu >= 1.0 + NU_MARGIN {
            SeriesVerdict::Convergent
        } else if nu <= 1.0 - NU_MARGIN {
            SeriesVerdict::Divergent
        } else {
            SeriesVerdict::Inconclusive
        };
        Ok(SeriesTest {
            j,
            m,
            partial_sum: acc.value(),
            nu,
            nu_fit: nu_last,
            superpolynomial,
            verdict,
            trace,
        })
    }

    /// Empirical `sup_k k exp(a(j, k) - a(m, k))` over the sampled `k <= K`
    /// and the `k` where it is attained.
    pub fn sup_bound_diagnostic(&self, j: u32, m: u32, k_max: u64) -> Result<SupBound> {
        self.check_pair(j, m, k_max)?;
        let mut best = f64::NEG_INFINITY;
        let mut at = 1;
        for k in sample_ks(k_max).into_iter().filter(|&k| k >= 1) {
            let v = (k as f64).ln() + self.exponent(j, k)? - self.exponent(m, k)?;
            if v > best {
                best = v;
                at = k;
            }
        }
        Ok(SupBound {
            a_hat: best.exp(),
            attained_k: at,
            interior: at < k_max,
        })
    }

    /// `k -> a(m, k) - a(j, k)` nondecreasing over the sampled `k` in `1..=K`.
    pub fn monotone_difference_check(&self, j: u32, m: u32, k_max: u64) -> Result<ConditionVerdict> {
        self.check_pair(j, m, k_max)?;
        let mut prev: Option<(u64, f64)> = None;
        for k in sample_ks(k_max).into_iter().filter(|&k| k >= 1) {
            let d = self.exponent(m, k)? - self.exponent(j, k)?;
            if let Some((pk, pd)) = prev {
                if d < pd - MONOTONE_TOL * pd.abs().max(1.0) {
                    return Ok(ConditionVerdict::fails(
                        Counterexample::new(k as f64, pd, d)
                            .with("j", j as f64)
                            .with("m", m as f64)
                            .with("previousK", pk as f64),
                        format!("a({m}, k) - a({j}, k) decreases between k = {pk} and k = {k}"),
                    ));
                }
            }
            prev = Some((k, d));
        }
        Ok(ConditionVerdict::holds(
            witness(&[("j", j as f64), ("m", m as f64), ("K", k_max as f64)]),
            format!("a({m}, k) - a({j}, k) nondecreasing for k <= {k_max}"),
        ))
    }

    /// Rebuilds a condition (4) witness from a convergent pair,
    /// `H = max((m/j)(j+1), log(j^2 A) + M(1))`, and verifies
    /// `M(t) + log t <= M(H t) + H` on the grid.
    pub fn condition4_from_gp(&self, j: u32, m: u32, k_max: u64, grid: &LogGrid) -> Result<(f64, ConditionVerdict)> {
        self.check_pair(j, m, k_max)?;
        let series = self.gp_series_test(j, m, k_max)?;
        if series.verdict != SeriesVerdict::Convergent {
            return Err(Error::Precondition(format!(
                "series for (j, m) = ({j}, {m}) is {}, not convergent",
                series.verdict
            )));
        }
        let sup = self.sup_bound_diagnostic(j, m, k_max)?;
        if !sup.interior {
            return Err(Error::Precondition(format!(
                "sup bound for (j, m) = ({j}, {m}) attained at K = {k_max}"
            )));
        }
        let jf = j as f64;
        let m1 = self.source.eval(1.0)?;
        let h = ((m as f64 / jf) * (jf + 1.0)).max((jf * jf * sup.a_hat).ln() + m1);
        let src = &self.source;
        let mut checked = 0usize;
        for &t in grid.points() {
            let (Some(a), Some(b)) = (src.value(t), src.value(h * t)) else {
                continue;
            };
            let lhs = a + t.ln();
            let rhs = b + h;
            if lhs > rhs + crate::verdict::ineq_tol(lhs, rhs) {
                return Ok((
                    h,
                    ConditionVerdict::fails(
                        Counterexample::new(t, lhs, rhs).with("H", h),
                        "condition (4) with the reconstructed witness fails",
                    )
                    .on_grid(grid),
                ));
            }
            checked += 1;
        }
        let verdict = if checked == 0 {
            ConditionVerdict::inconclusive("condition (4) reconstruction: no evaluable grid point")
        } else {
            ConditionVerdict::holds(
                witness(&[("H", h), ("A", sup.a_hat), ("j", jf), ("m", m as f64)]),
                format!("condition (4) holds with reconstructed H = {h}"),
            )
        };
        Ok((h, verdict.on_grid(grid)))
    }

    /// Per-`j` search for a dominating row, by the series test and by the
    /// analytic route through condition (4).
    pub fn gp_nuclearity(&self, js: &[u32], opts: &NuclearityOptions) -> Result<NuclearityReport> {
        if js.is_empty() || js.iter().any(|&j| j < 1 || j > self.j_max) {
            return Err(Error::InvalidArgument(format!(
                "j values must lie in 1..={}",
                self.j_max
            )));
        }
        let k_max = opts.k_max.min(self.k_max);
        let cond4 = check_condition4(&self.source, &opts.grid);
        let analytic_h = cond4.witness_value("H").filter(|_| cond4.holds_p());
        let c_n = match analytic_h {
            Some(h) => Some(self.analytic_constant(js, h, k_max, &opts.grid)?),
            None => None,
        };

        let mut per_j = Vec::with_capacity(js.len());
        for &j in js {
            per_j.push(self.nuclearity_for_j(j, k_max, opts, analytic_h, c_n)?);
        }

        let all_certified = per_j.iter().all(|r| r.m.is_some());
        let refuted = per_j.iter().any(|r| r.all_divergent && r.analytic_m.is_none());
        let conflict = per_j.iter().any(|r| r.all_divergent && r.analytic_m.is_some());
        let status = if conflict {
            NuclearityStatus::Inconclusive
        } else if all_certified {
            NuclearityStatus::NuclearOnTestedRange
        } else if refuted {
            NuclearityStatus::NotNuclearEvidence
        } else {
            NuclearityStatus::Inconclusive
        };
        let routes_agree = per_j.iter().all(|r| r.series_m.is_some() == r.analytic_m.is_some());
        Ok(NuclearityReport {
            source: self.source.name(),
            per_j,
            status,
            routes_agree,
            condition4: cond4,
        })
    }

    fn nuclearity_for_j(
        &self,
        j: u32,
        k_max: u64,
        opts: &NuclearityOptions,
        analytic_h: Option<f64>,
        c_n: Option<f64>,
    ) -> Result<PerJ> {
        let mut series_m = None;
        let mut tested = 0u32;
        let mut divergent = 0u32;
        let mut best_nu = f64::NEG_INFINITY;
        let mut note = String::new();
        let mut chosen: Option<SeriesTest> = None;
        for m in (j + 1)..=opts.m_search_cap {
            let test = match self.gp_series_test(j, m, k_max) {
                Ok(t) => t,
                Err(Error::OutOfRange(msg)) => {
                    note = format!("search stopped at m = {m}: {msg}");
                    break;
                }
                Err(e) => return Err(e),
            };
            tested += 1;
            best_nu = best_nu.max(test.nu);
            match test.verdict {
                SeriesVerdict::Convergent => {
                    series_m = Some(m);
                    chosen = Some(test);
                    break;
                }
                SeriesVerdict::Divergent => divergent += 1,
                SeriesVerdict::Inconclusive => {}
            }
        }
        let all_divergent = series_m.is_none() && tested > 0 && divergent == tested;

        let analytic_m = match (analytic_h, c_n) {
            (Some(h), Some(c)) => self.analytic_certificate(j, h, c, k_max)?,
            _ => None,
        };

        let m = series_m.or(analytic_m);
        let sup_m = m.unwrap_or(opts.m_search_cap.max(j + 1));
        let sup_bound = self
            .sup_bound_diagnostic(j, sup_m, k_max)
            .map(|s| s.a_hat)
            .unwrap_or(f64::INFINITY);
        let nu = match &chosen {
            Some(t) => t.nu,
            None if best_nu.is_finite() => best_nu,
            None => 0.0,
        };
        let route = match (series_m, analytic_m) {
            (Some(_), Some(_)) => "both",
            (Some(_), None) => "series",
            (None, Some(_)) => "analytic",
            (None, None) => "none",
        }
        .to_string();
        let partial_sum = chosen.as_ref().map(|t| t.partial_sum);
        Ok(PerJ {
            j,
            m,
            nu,
            sup_bound,
            route,
            series_m,
            analytic_m,
            partial_sum,
            all_divergent,
            note,
        })
    }

    /// `C_(N,H)` measured on the grid and on every matrix point `t = j sqrt k`
    /// the certificate will look at.
    fn analytic_constant(&self, js: &[u32], h: f64, k_max: u64, grid: &LogGrid) -> Result<f64> {
        let (mut c, _) = iterate_condition4(&self.source, grid, h, ANALYTIC_N);
        let factor = h.powi(ANALYTIC_N as i32);
        let nf = ANALYTIC_N as f64;
        for &j in js {
            for k in sample_ks(k_max).into_iter().filter(|&k| k >= 1) {
                let t = j as f64 * (k as f64).sqrt();
                if let (Some(a), Some(b)) = (self.source.value(t), self.source.value(factor * t)) {
                    c = c.max(a + nf * t.ln() - b);
                }
            }
        }
        Ok(c)
    }

    /// With `M(t) + N log t <= M(H^N t) + C` on the grid, `m = ceil(H^N j)`
    /// gives `a(j, k) - a(m, k) <= C - N log(j sqrt k)`; the certificate
    /// checks that bound at every sampled `k`.
    fn analytic_certificate(&self, j: u32, h: f64, c: f64, k_max: u64) -> Result<Option<u32>> {
        let factor = (h.powi(ANALYTIC_N as i32) * j as f64).ceil();
        if factor > u32::MAX as f64 {
            return Ok(None);
        }
        let m = (factor as u32).max(j + 1);
        let nf = ANALYTIC_N as f64;
        for k in sample_ks(k_max).into_iter().filter(|&k| k >= 1) {
            let (a, b) = match (self.exponent(j, k), self.exponent(m, k)) {
                (Ok(a), Ok(b)) => (a, b),
                (Err(Error::OutOfRange(_)), _) | (_, Err(Error::OutOfRange(_))) => return Ok(None),
                (Err(e), _) | (_, Err(e)) => return Err(e),
            };
            let lhs = a - b;
            let rhs = c - nf * (j as f64 * (k as f64).sqrt()).ln();
            if lhs > rhs + crate::verdict::ineq_tol(lhs, rhs) {
                return Ok(None);
            }
        }
        Ok(Some(m))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SeriesVerdict {
    Convergent,
    Divergent,
    Inconclusive,
}

impl fmt::Display for SeriesVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SeriesVerdict::Convergent => "Convergent",
            SeriesVerdict::Divergent => "Divergent",
            SeriesVerdict::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    pub k: u64,
    /// `a(j, k) - a(m, k)`.
    pub exponent: f64,
    pub partial_sum: f64,
}

#[derive(Debug, Clone)]
pub struct SeriesTest {
    pub j: u32,
    pub m: u32,
    pub partial_sum: f64,
    /// Decay exponent in `summand ~ k^-nu`, clamped; `NU_CLAMP` when the
    /// decay is faster than any power.
    pub nu: f64,
    /// Raw fit over the last decade of `k`.
    pub nu_fit: f64,
    pub superpolynomial: bool,
    pub verdict: SeriesVerdict,
    pub trace: Vec<TracePoint>,
}

impl SeriesTest {
    /// CSV with columns `k,exponent,partial_sum`.
    pub fn trace_csv(&self) -> String {
        let mut out = String::from("k,exponent,partial_sum\n");
        for p in &self.trace {
            out.push_str(&format!("{},{},{}\n", p.k, p.exponent, p.partial_sum));
        }
        out
    }

    /// Share of the partial sum contributed by `k` in `(K/2, K]`.
    pub fn tail_share(&self) -> f64 {
        let Some(last) = self.trace.last() else {
            return 0.0;
        };
        let half = last.k / 2;
        let at_half = self
            .trace
            .iter()
            .take_while(|p| p.k <= half)
            .last()
            .map_or(0.0, |p| p.partial_sum);
        (last.partial_sum - at_half) / last.partial_sum
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupBound {
    pub a_hat: f64,
    pub attained_k: u64,
    /// False when the supremum sits at `K` (unbounded evidence).
    pub interior: bool,
}

#[derive(Debug, Clone)]
pub struct NuclearityOptions {
    /// Grid for the condition (4) route.
    pub grid: LogGrid,
    pub m_search_cap: u32,
    pub k_max: u64,
}

impl Default for NuclearityOptions {
    fn default() -> Self {
        NuclearityOptions {
            grid: LogGrid::default_range(),
            m_search_cap: 128,
            k_max: DEFAULT_K_MAX,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NuclearityStatus {
    NuclearOnTestedRange,
    NotNuclearEvidence,
    Inconclusive,
}

impl fmt::Display for NuclearityStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NuclearityStatus::NuclearOnTestedRange => "NuclearOnTestedRange",
            NuclearityStatus::NotNuclearEvidence => "NotNuclearEvidence",
            NuclearityStatus::Inconclusive => "Inconclusive",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PerJ {
    pub j: u32,
    /// Certified dominating row, by either route.
    pub m: Option<u32>,
    pub nu: f64,
    pub sup_bound: f64,
    /// `both`, `series`, `analytic`, or `none`.
    pub route: String,
    #[serde(skip)]
    pub series_m: Option<u32>,
    #[serde(skip)]
    pub analytic_m: Option<u32>,
    #[serde(skip)]
    pub partial_sum: Option<f64>,
    /// Every tested `m` was divergent.
    #[serde(skip)]
    pub all_divergent: bool,
    #[serde(skip)]
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct NuclearityReport {
    pub source: String,
    #[serde(rename = "perJ")]
    pub per_j: Vec<PerJ>,
    pub status: NuclearityStatus,
    #[serde(skip)]
    pub routes_agree: bool,
    #[serde(skip)]
    pub condition4: ConditionVerdict,
}

impl NuclearityReport {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
