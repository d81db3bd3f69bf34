//! Extended reals, log-spaced grids, and the sup/series primitives shared by
//! every other module.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponents above this are refused by [`partial_sums`]; `exp(709.8)` is the
/// largest finite double.
pub const OVERFLOW_EXPONENT: f64 = 700.0;

/// A nonnegative extended real: finite `x >= 0` or `+inf`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct ExtendedReal(f64);

impl ExtendedReal {
    pub const ZERO: ExtendedReal = ExtendedReal(0.0);
    pub const INFINITY: ExtendedReal = ExtendedReal(f64::INFINITY);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() {
            return Err(Error::InvalidArgument("extended real cannot be NaN".into()));
        }
        if value < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "extended real must be nonnegative, got {value}"
            )));
        }
        Ok(ExtendedReal(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    pub fn is_finite(self) -> bool {
        self.0.is_finite()
    }

    pub fn max(self, other: Self) -> Self {
        if self.0 >= other.0 {
            self
        } else {
            other
        }
    }
}

impl std::ops::Add for ExtendedReal {
    type Output = ExtendedReal;

    fn add(self, rhs: Self) -> Self {
        // inf + x stays inf; finite sums of nonnegatives stay nonnegative
        ExtendedReal(self.0 + rhs.0)
    }
}

impl fmt::Display for ExtendedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_infinite() {
            write!(f, "+inf")
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Logarithmically equispaced points `t_min = t_0 < ... < t_{n-1} = t_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct LogGrid {
    t_min: f64,
    t_max: f64,
    points: Vec<f64>,
}

impl LogGrid {
    pub fn new(t_min: f64, t_max: f64, n: usize) -> Result<Self> {
        if !t_min.is_finite() || !t_max.is_finite() {
            return Err(Error::InvalidGrid("bounds must be finite".into()));
        }
        if t_min <= 0.0 {
            return Err(Error::InvalidGrid(format!("t_min must be positive, got {t_min}")));
        }
        if t_max <= t_min {
            return Err(Error::InvalidGrid(format!(
                "empty range: t_max {t_max} <= t_min {t_min}"
            )));
        }
        if n < 2 {
            return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
        }
        let (lo, hi) = (t_min.ln(), t_max.ln());
        let step = (hi - lo) / (n - 1) as f64;
        let mut points: Vec<f64> = (0..n).map(|i| t_min * (i as f64 * step).exp()).collect();
        points[0] = t_min;
        points[n - 1] = t_max;
        Ok(LogGrid { t_min, t_max, points })
    }

    /// `[1, 1e8]` with 512 points.
    pub fn default_range() -> Self {
        LogGrid::new(1.0, 1e8, 512).expect("static grid")
    }

    pub fn t_min(&self) -> f64 {
        self.t_min
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    /// Constant ratio between consecutive points.
    pub fn ratio(&self) -> f64 {
        ((self.t_max.ln() - self.t_min.ln()) / (self.len() - 1) as f64).exp()
    }
}

pub fn make_log_grid(t_min: f64, t_max: f64, n: usize) -> Result<LogGrid> {
    LogGrid::new(t_min, t_max, n)
}

/// Maximum of `f` over the grid points and the first point attaining it.
///
/// `f` may return `+inf`, which absorbs. NaN values are an evaluation error.
pub fn sup_over_grid<F>(f: F, grid: &LogGrid) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64,
{
    let mut best = f64::NEG_INFINITY;
    let mut arg = grid.t_min();
    for &t in grid.points() {
        let v = f(t);
        if v.is_nan() {
            return Err(Error::InvalidArgument(format!("function is NaN at t = {t}")));
        }
        if v > best {
            best = v;
            arg = t;
        }
    }
    Ok((best, arg))
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// Partial sums `S_k = sum_{i<=k} exp(e_i)` for `k = 0..=k_max`.
///
/// Terms may be `-inf` (contributing 0). Exponents above
/// [`OVERFLOW_EXPONENT`] are refused.
pub fn partial_sums(exponents: &[f64], k_max: usize) -> Result<Vec<f64>> {
    if k_max < 1 {
        return Err(Error::InvalidArgument("need K >= 1".into()));
    }
    if exponents.len() <= k_max {
        return Err(Error::InvalidArgument(format!(
            "need {} exponents for K = {k_max}, got {}",
            k_max + 1,
            exponents.len()
        )));
    }
    let mut acc = CompensatedSum::new();
    let mut out = Vec::with_capacity(k_max + 1);
    for (index, &e) in exponents[..=k_max].iter().enumerate() {
        if e.is_nan() || e == f64::INFINITY || e > OVERFLOW_EXPONENT {
            return Err(Error::Overflow { index, exponent: e });
        }
        acc.add(e.exp());
        out.push(acc.value());
    }
    Ok(out)
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(x: &[f64], y: &[f64]) -> Option<f64> {
    let n = x.len();
    if n < 2 || y.len() != n {
        return None;
    }
    let mx = x.iter().sum::<f64>() / n as f64;
    let my = y.iter().sum::<f64>() / n as f64;
    let mut sxy = 0.0;
    let mut sxx = 0.0;
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
    }
    if sxx == 0.0 {
        None
    } else {
        Some(sxy / sxx)
    }
}

/// Golden-section search for the maximum of a unimodal `f` on `[a, b]`.
/// Returns `(argmax, max)`.
pub(crate) fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if (b - a).abs() <= 1e-15 * (1.0 + a.abs().max(b.abs())) {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d);
        }
    }
    if fc >= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Index range of the last quarter of `len` items (at least 3 items when
/// available).
pub(crate) fn tail_quarter(len: usize) -> std::ops::Range<usize> {
    let width = (len / 4).max(3).min(len);
    len - width..len
}
