use crate::numerics::{ls_slope, tail_quarter, LogGrid};
use crate::verdict::{decide_exists, ineq_tol, witness, ConditionVerdict, Counterexample, MarginScan};

use super::{GrowthFunction, WeightFunction, CONVEXITY_TOL};

pub const L_CANDIDATES: [f64; 6] = [1.0, 2.0, 4.0, 8.0, 16.0, 32.0];
pub const BMM_H_CANDIDATES: [f64; 9] = [1.5, 2.0, std::f64::consts::E, 4.0, 8.0, 16.0, 32.0, 100.0, 1000.0];
pub const COND4_H_CANDIDATES: [f64; 8] = [1.5, 2.0, std::f64::consts::E, 4.0, 8.0, 16.0, 100.0, 1000.0];

/// Ratio `omega(t)/t` below which the tail counts as `o(t)`.
const BETA_RATIO: f64 = 1e-3;
/// Relative wiggle allowed in the monotonicity of `omega(t)/t` (tables
/// interpolate `phi` linearly, which bends the ratio between samples).
const BETA_WIGGLE: f64 = 1e-4;

fn scan<F>(param: f64, grid: &LogGrid, sides: F) -> MarginScan
where
    F: Fn(f64) -> Option<(f64, f64)>,
{
    let mut samples = Vec::with_capacity(grid.len());
    let mut skipped = 0;
    for &t in grid.points() {
        match sides(t) {
            Some((l, r)) if l.is_finite() && r.is_finite() => samples.push((t, l, r)),
            _ => skipped += 1,
        }
    }
    MarginScan {
        param,
        samples,
        skipped,
    }
}

/// (alpha): `omega(2t) <= L (omega(t) + 1)`.
pub fn check_alpha(w: &WeightFunction, grid: &LogGrid) -> ConditionVerdict {
    let scans: Vec<MarginScan> = L_CANDIDATES
        .iter()
        .map(|&l| {
            scan(l, grid, |t| {
                Some((w.eval_unchecked(2.0 * t), l * (w.eval_unchecked(t) + 1.0)))
            })
        })
        .collect();
    decide_exists("L", &scans, "(alpha)").on_grid(grid)
}

/// (beta): `omega(t) = o(t)`, judged by `omega(t)/t` along the grid tail.
pub fn check_beta(w: &WeightFunction, grid: &LogGrid) -> ConditionVerdict {
    let pts = grid.points();
    let tail = &pts[tail_quarter(pts.len())];
    let ratios: Vec<f64> = tail.iter().map(|&t| w.eval_unchecked(t) / t).collect();
    let first = ratios[0];
    let last = *ratios.last().unwrap();
    let t_last = *tail.last().unwrap();
    let nonincreasing = ratios.windows(2).all(|r| r[1] <= r[0] * (1.0 + BETA_WIGGLE));
    let nondecreasing = ratios.windows(2).all(|r| r[1] >= r[0] * (1.0 - BETA_WIGGLE));
    let verdict = if nonincreasing && last < BETA_RATIO {
        ConditionVerdict::holds(
            witness(&[("ratio", last), ("t", t_last)]),
            format!("(beta): omega(t)/t decreasing to {last:e} at the grid tail"),
        )
    } else if nondecreasing && last >= BETA_RATIO && last >= first * (1.0 - BETA_WIGGLE) {
        ConditionVerdict::fails(
            Counterexample::new(t_last, w.eval_unchecked(t_last), BETA_RATIO * t_last).with("epsilon", BETA_RATIO),
            format!("(beta): omega(t)/t does not decrease along the tail (ends at {last:e})"),
        )
    } else {
        ConditionVerdict::inconclusive(format!(
            "(beta): omega(t)/t = {last:e} at t = {t_last:e}, not yet below {BETA_RATIO:e}"
        ))
    };
    verdict.on_grid(grid)
}

/// (gamma): `omega(t) >= a + b log(1 + t)` for some `a` and `b > 0`.
///
/// For each `b = 2^-k` the offset `a` is the minimum over `t = 0` and the
/// grid. The first `b` whose margin `omega - b log(1+t)` is not falling
/// along the grid tail is the witness.
pub fn check_gamma(w: &WeightFunction, grid: &LogGrid) -> ConditionVerdict {
    let pts = grid.points();
    let tail = tail_quarter(pts.len());
    let mut last_cx = None;
    for k in 0..=10 {
        let b = 0.5f64.powi(k);
        let margins: Vec<f64> = pts.iter().map(|&t| w.eval_unchecked(t) - b * t.ln_1p()).collect();
        let a = margins.iter().copied().fold(0.0, f64::min);
        let x: Vec<f64> = pts[tail.clone()].iter().map(|t| t.ln()).collect();
        let slope = ls_slope(&x, &margins[tail.clone()]).unwrap_or(0.0);
        let falling = slope * (x[x.len() - 1] - x[0]) < -1e-6 * margins[tail.end - 1].abs().max(1.0);
        if !falling {
            return ConditionVerdict::holds(
                witness(&[("a", a), ("b", b)]),
                format!("(gamma): omega(t) >= {a} + {b} log(1+t) on tested range"),
            )
            .on_grid(grid);
        }
        let head_min = margins[..tail.start].iter().copied().fold(0.0, f64::min);
        let t_last = pts[pts.len() - 1];
        if margins[pts.len() - 1] < head_min - 1e-9 {
            last_cx = Some(
                Counterexample::new(t_last, w.eval_unchecked(t_last), head_min + b * t_last.ln_1p())
                    .with("a", head_min)
                    .with("b", b),
            );
        }
    }
    match last_cx {
        Some(cx) => ConditionVerdict::fails(
            cx,
            "(gamma): omega - b log(1+t) keeps falling for every b = 2^-k, k <= 10",
        ),
        None => ConditionVerdict::inconclusive(
            "(gamma): margin falling at the tail but no violation of a head-fitted bound",
        ),
    }
    .on_grid(grid)
}

/// (delta): `x -> omega(e^x)` convex, via second differences on the
/// (uniform in `x`) log grid.
pub fn check_delta(w: &WeightFunction, grid: &LogGrid) -> ConditionVerdict {
    let pts = grid.points();
    let phi: Vec<f64> = pts.iter().map(|&t| w.eval_unchecked(t)).collect();
    let mut min_second = f64::INFINITY;
    for i in 1..phi.len() - 1 {
        let lhs = 2.0 * phi[i];
        let rhs = phi[i - 1] + phi[i + 1];
        min_second = min_second.min(rhs - lhs);
        if lhs - rhs > CONVEXITY_TOL * phi[i].abs().max(1.0) {
            return ConditionVerdict::fails(
                Counterexample::new(pts[i], lhs, rhs),
                format!("(delta): phi not convex near t = {:e}", pts[i]),
            )
            .on_grid(grid);
        }
    }
    ConditionVerdict::holds(
        witness(&[("minSecondDifference", min_second)]),
        "(delta): discrete second differences of phi nonnegative on tested range",
    )
    .on_grid(grid)
}

/// (BMM): `2 omega(t) <= omega(H t) + H`.
pub fn check_bmm(w: &WeightFunction, grid: &LogGrid) -> ConditionVerdict {
    let scans: Vec<MarginScan> = BMM_H_CANDIDATES
        .iter()
        .map(|&h| {
            scan(h, grid, |t| {
                Some((2.0 * w.eval_unchecked(t), w.eval_unchecked(h * t) + h))
            })
        })
        .collect();
    decide_exists("H", &scans, "(BMM)").on_grid(grid)
}

/// Condition (4): `M(t) + log t <= M(H t) + H`, for an associated function
/// or for a weight itself.
pub fn check_condition4(m: &dyn GrowthFunction, grid: &LogGrid) -> ConditionVerdict {
    let scans: Vec<MarginScan> = COND4_H_CANDIDATES
        .iter()
        .map(|&h| {
            scan(h, grid, |t| {
                let lhs = m.value(t)? + t.ln();
                let rhs = m.value(h * t)? + h;
                Some((lhs, rhs))
            })
        })
        .collect();
    decide_exists("H", &scans, &format!("condition (4) for {}", m.name())).on_grid(grid)
}

/// Measures the constant in `M(t) + N log t <= M(H^N t) + C`.
///
/// Returns the grid maximum of `M(t) + N log t - M(H^N t)`; the verdict
/// holds when it does not exceed `N H`.
pub fn iterate_condition4(m: &dyn GrowthFunction, grid: &LogGrid, h: f64, n: u32) -> (f64, ConditionVerdict) {
    let factor = h.powi(n as i32);
    let nf = n as f64;
    let mut best = f64::NEG_INFINITY;
    let mut at = None;
    let mut skipped = 0;
    for &t in grid.points() {
        match (m.value(t), m.value(factor * t)) {
            (Some(a), Some(b)) => {
                let c = a + nf * t.ln() - b;
                if c > best {
                    best = c;
                    at = Some((t, a + nf * t.ln(), b));
                }
            }
            _ => skipped += 1,
        }
    }
    let skip_note = if skipped > 0 {
        format!("; {skipped} grid points outside the evaluable range skipped")
    } else {
        String::new()
    };
    let bound = nf * h;
    let verdict = match at {
        None => ConditionVerdict::inconclusive(format!("iterated condition (4): no evaluable points{skip_note}")),
        Some(_) if best <= bound + ineq_tol(best, bound) => ConditionVerdict::holds(
            witness(&[("C", best), ("H", h), ("N", nf)]),
            format!("iterated condition (4): measured C_(N,H) = {best} <= N H = {bound}{skip_note}"),
        ),
        Some((t, lhs, mh)) => ConditionVerdict::fails(
            Counterexample::new(t, lhs, mh + bound).with("H", h).with("N", nf),
            format!("iterated condition (4): measured C_(N,H) = {best} > N H = {bound}{skip_note}"),
        ),
    };
    (best, verdict.on_grid(grid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verdict::Status;

    fn grid() -> LogGrid {
        LogGrid::default_range()
    }

    #[test]
    fn omega0_axioms_hold() {
        let w = WeightFunction::omega0();
        let a = check_alpha(&w, &grid());
        assert_eq!(a.witness_value("L"), Some(1.0));
        assert!(check_beta(&w, &grid()).holds_p());
        assert!(check_gamma(&w, &grid()).holds_p());
        assert!(check_delta(&w, &grid()).holds_p());
    }

    #[test]
    fn log_squared_alpha_needs_l_two() {
        let v = check_alpha(&WeightFunction::loga(2.0).unwrap(), &grid());
        assert_eq!(v.witness_value("L"), Some(2.0));
    }

    #[test]
    fn linear_table_violates_beta() {
        // omega(t) = t, i.e. phi(x) = e^x, normalized by the table to e^x - 1
        let w = WeightFunction::table_from_fn(20.0, 4001, f64::exp).unwrap();
        let v = check_beta(&w, &grid());
        assert!(v.fails_p(), "{v:?}");
        let cx = v.counterexample.unwrap();
        assert!(cx.lhs > cx.rhs);
    }

    #[test]
    fn bounded_weight_fails_gamma() {
        let w = WeightFunction::table(1.0, vec![0.0, 0.0, 0.0]).unwrap();
        let g = LogGrid::new(1.0, 1e8, 256).unwrap();
        // constant extension beyond the table keeps omega = 0
        assert!(check_gamma(&w, &g).fails_p());
    }

    #[test]
    fn bmm_examples() {
        let v = check_bmm(&WeightFunction::gevrey(2.0).unwrap(), &grid());
        assert_eq!(v.witness_value("H"), Some(4.0));
        let v = check_bmm(&WeightFunction::loga(2.0).unwrap(), &grid());
        assert!(v.fails_p(), "{v:?}");
        let v = check_bmm(&WeightFunction::omega0(), &grid());
        assert!(v.fails_p(), "{v:?}");
    }

    #[test]
    fn condition4_examples() {
        let v = check_condition4(&WeightFunction::loga(2.0).unwrap(), &grid());
        assert!(v.holds_p());
        assert!(v.witness_value("H").unwrap() <= std::f64::consts::E);
        let v = check_condition4(&WeightFunction::omega0(), &grid());
        assert!(v.fails_p(), "{v:?}");
        let v = check_condition4(&WeightFunction::gevrey(1.0).unwrap(), &grid());
        assert!(v.holds_p());
    }

    #[test]
    fn iterate_examples() {
        let e = std::f64::consts::E;
        let w = WeightFunction::loga(2.0).unwrap();
        let (c1, v1) = iterate_condition4(&w, &grid(), e, 1);
        assert!(v1.holds_p() && c1 <= e);
        // oracle: log^2 t + 2 log t - (log t + 2)^2 = -2 log t - 4, maximal at t = 1
        let (c2, v2) = iterate_condition4(&w, &grid(), e, 2);
        assert!(v2.holds_p());
        assert!((c2 + 4.0).abs() < 1e-9);
        assert!(c2 <= 2.0 * e - 1.0);
        let (c3, v3) = iterate_condition4(&WeightFunction::gevrey(2.0).unwrap(), &grid(), 4.0, 3);
        assert!(v3.holds_p() && c3.is_finite());
        assert_ne!(v3.status, Status::Inconclusive);
    }
}
