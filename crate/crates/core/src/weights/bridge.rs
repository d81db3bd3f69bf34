//! Passing between weight functions and weight sequences:
//! `M_p = e^{phi*(p)}`, its product form `sup_s s^p e^{-omega(s)}`, and the
//! inequalities that tie `omega` to the associated function of `(M_p)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::numerics::{golden_max, LogGrid};
use crate::sequences::{AssociatedFunction, SequenceTail, WeightSequence};
use crate::verdict::{ineq_tol, witness, ConditionVerdict, Counterexample};

use super::axioms::{check_bmm, check_condition4, iterate_condition4};
use super::conjugate::conjugate_at;
use super::{GrowthFunction, WeightFunction};

/// Pointwise tolerance on exponents for the sandwich inequalities.
pub const SANDWICH_TOL: f64 = 1e-6;

const PRODUCT_SCAN_POINTS: usize = 3001;

/// `l_p = phi*(p)` for `p = 0..=order`, cut at the first divergent slope.
pub fn sequence_from_weight(w: &WeightFunction, order: usize) -> WeightSequence {
    let slopes: Vec<f64> = (0..=order).map(|p| p as f64).collect();
    let values = conjugate_at(w, &slopes);
    finish_sequence(format!("conj[{}]", w.label()), values)
}

fn finish_sequence(label: String, mut values: Vec<f64>) -> WeightSequence {
    let tail = match values.iter().position(|v| !v.is_finite()) {
        Some(q) => {
            values.truncate(q.max(1));
            SequenceTail::Infinite
        }
        None => SequenceTail::Cutoff,
    };
    WeightSequence::new(label, values)
        .expect("conjugate values are finite")
        .with_tail(tail)
}

/// `l_p = sup_{s >= 1} (p log s - omega(s))`, computed directly in the
/// `s` domain (geometric scan, then golden-section refinement in `s`).
pub fn sequence_from_weight_product_form(w: &WeightFunction, order: usize) -> WeightSequence {
    let mut values = Vec::with_capacity(order + 1);
    for p in 0..=order {
        let v = product_form_entry(w, p as f64);
        let divergent = v.is_infinite();
        values.push(v);
        if divergent {
            break;
        }
    }
    finish_sequence(format!("prod[{}]", w.label()), values)
}

fn product_form_entry(w: &WeightFunction, p: f64) -> f64 {
    if p == 0.0 {
        return 0.0;
    }
    let objective = |s: f64| p * s.ln() - w.eval_unchecked(s);
    let mut log_span = w.phi_domain_end().unwrap_or(25.0);
    loop {
        let n = PRODUCT_SCAN_POINTS;
        let ratio = (log_span / (n - 1) as f64).exp();
        let mut s = 1.0;
        let mut prev_s = 1.0;
        let mut best = objective(1.0);
        let mut best_i = 0;
        let mut grid = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                prev_s = s;
                s *= ratio;
            }
            grid.push(s);
            let v = objective(s);
            if v > best {
                best = v;
                best_i = i;
            }
        }
        let at_end = best_i == n - 1;
        let rising = objective(grid[n - 1]) > objective(prev_s);
        if at_end && rising {
            if w.phi_domain_end().is_some() || log_span >= 700.0 {
                return f64::INFINITY;
            }
            log_span = (2.0 * log_span).min(700.0);
            continue;
        }
        let lo = grid[best_i.saturating_sub(1)];
        let hi = grid[(best_i + 1).min(n - 1)];
        let (_, refined) = golden_max(objective, lo, hi);
        return best.max(refined).max(0.0);
    }
}

/// Smallest order whose cut-off associated function is reliable up to
/// `t_max`, from the slope of `phi` at `log t_max`.
pub fn order_for_range(w: &WeightFunction, t_max: f64) -> usize {
    let x = t_max.max(1.0).ln();
    let h = 1e-6 * (1.0 + x);
    let slope = (w.phi(x + h) - w.phi(x)) / h;
    ((slope + 0.5).ceil() as usize + 1).clamp(8, 1 << 24)
}

fn refuse_truncated(seq: &WeightSequence, what: &str) -> Result<()> {
    if seq.is_truncated() {
        return Err(Error::Precondition(format!(
            "{what}: sequence {} is truncated (divergent conjugate)",
            seq.label
        )));
    }
    Ok(())
}

/// Checks `M(t) <= omega(t) <= M(t) + log t` on the grid and measures the
/// smallest `A` with `omega(t) <= 2 M(t) + A`.
pub fn equivalence_sandwich(
    w: &WeightFunction,
    seq: &WeightSequence,
    grid: &LogGrid,
) -> Result<(f64, ConditionVerdict)> {
    refuse_truncated(seq, "sandwich")?;
    let m = AssociatedFunction::new(seq);
    let mut a = f64::NEG_INFINITY;
    let mut checked = 0usize;
    let mut skipped = 0usize;
    for &t in grid.points() {
        let Some(mt) = m.value(t) else {
            skipped += 1;
            continue;
        };
        let om = w.eval_unchecked(t);
        if mt > om + SANDWICH_TOL {
            return Ok((
                f64::NAN,
                ConditionVerdict::fails(
                    Counterexample::new(t, mt, om).with("side", 0.0),
                    "sandwich: M(t) exceeds omega(t)",
                )
                .on_grid(grid),
            ));
        }
        if om > mt + t.ln() + SANDWICH_TOL {
            return Ok((
                f64::NAN,
                ConditionVerdict::fails(
                    Counterexample::new(t, om, mt + t.ln()).with("side", 1.0),
                    "sandwich: omega(t) exceeds M(t) + log t",
                )
                .on_grid(grid),
            ));
        }
        a = a.max(om - 2.0 * mt);
        checked += 1;
    }
    if checked == 0 {
        return Ok((
            f64::NAN,
            ConditionVerdict::inconclusive(format!(
                "sandwich: no grid point inside the reliable range of {}",
                m.label()
            ))
            .on_grid(grid),
        ));
    }
    let verdict = ConditionVerdict::holds(
        witness(&[("A", a), ("checked", checked as f64), ("skipped", skipped as f64)]),
        format!("sandwich: M <= omega <= M + log t at {checked} points, omega <= 2M + {a}"),
    )
    .on_grid(grid);
    Ok((a, verdict))
}

/// Checks that `M` inherits (BMM): `2M(t) <= M(H^2 t) + A/2 + 3H/2` with
/// `H` the (BMM) witness of `omega` and `A` from the sandwich.
pub fn bmm_transfer_check(w: &WeightFunction, seq: &WeightSequence, grid: &LogGrid) -> Result<ConditionVerdict> {
    let bmm = check_bmm(w, grid);
    let Some(h) = bmm.witness_value("H").filter(|_| bmm.holds_p()) else {
        return Err(Error::Precondition(format!("(BMM) does not hold for {}", w.label())));
    };
    let (a, sandwich) = equivalence_sandwich(w, seq, grid)?;
    if !sandwich.holds_p() {
        return Err(Error::Precondition(format!(
            "sandwich does not hold: {}",
            sandwich.note
        )));
    }
    let m = AssociatedFunction::new(seq);
    let h2 = h * h;
    let constant = a / 2.0 + 1.5 * h;
    let mut checked = 0usize;
    let mut skipped = 0usize;
    let mut max_margin = f64::NEG_INFINITY;
    for &t in grid.points() {
        let (Some(mt), Some(mh)) = (m.value(t), m.value(h2 * t)) else {
            skipped += 1;
            continue;
        };
        let lhs = 2.0 * mt;
        let rhs = mh + constant;
        max_margin = max_margin.max(lhs - rhs);
        if lhs > rhs + ineq_tol(lhs, rhs) {
            return Ok(ConditionVerdict::fails(
                Counterexample::new(t, lhs, rhs)
                    .with("H2", h2)
                    .with("constant", constant),
                "(BMM) transfer: 2M(t) exceeds M(H^2 t) + A/2 + 3H/2",
            )
            .on_grid(grid));
        }
        checked += 1;
    }
    if checked == 0 {
        return Ok(
            ConditionVerdict::inconclusive("(BMM) transfer: no grid point inside the reliable range").on_grid(grid),
        );
    }
    Ok(ConditionVerdict::holds(
        witness(&[
            ("H", h),
            ("H2", h2),
            ("A", a),
            ("constant", constant),
            ("maxMargin", max_margin),
            ("checked", checked as f64),
            ("skipped", skipped as f64),
        ]),
        format!("(BMM) transfer: 2M(t) <= M({h2} t) + {constant} at {checked} points"),
    )
    .on_grid(grid))
}

/// Witness tables of the two seminorm comparisons.
#[derive(Debug, Clone)]
pub struct SeminormReport {
    /// For each `j`: `(lambda, c)` with `e^{lambda phi*(p/lambda)} <= c j^-p M_p`.
    pub forward: Vec<(u32, Option<(f64, f64)>)>,
    /// For each `lambda`: `(j, C)` with `j^-p M_p <= C e^{lambda phi*(p/lambda)}`.
    pub reverse: Vec<(f64, Option<(u32, f64)>)>,
    pub verdict: ConditionVerdict,
}

/// Compares the sequence seminorms `j^-p M_p` with the weight seminorms
/// `e^{lambda phi*(p/lambda)}` in both directions over `p = 0..=P`.
///
/// A constant is accepted only when the supremum over `p` is attained
/// before the end of the sweep.
pub fn seminorm_equivalence_check(
    w: &WeightFunction,
    seq: &WeightSequence,
    lambdas: &[f64],
    js: &[u32],
) -> Result<SeminormReport> {
    refuse_truncated(seq, "seminorm equivalence")?;
    if lambdas.iter().any(|&l| !(l > 0.0)) || js.contains(&0) {
        return Err(Error::InvalidArgument("lambda must be > 0 and j >= 1".into()));
    }
    let n = seq.normalized();
    let order = seq.order();
    let scaled: Vec<Vec<f64>> = lambdas
        .iter()
        .map(|&lam| {
            let slopes: Vec<f64> = (0..=order).map(|p| p as f64 / lam).collect();
            conjugate_at(w, &slopes).into_iter().map(|v| lam * v).collect()
        })
        .collect();
    let interior_max = |g: &mut dyn Iterator<Item = f64>| -> Option<f64> {
        let mut best = f64::NEG_INFINITY;
        let mut arg = 0;
        for (p, v) in g.enumerate() {
            if v.is_nan() || v == f64::INFINITY {
                return None;
            }
            if v > best {
                best = v;
                arg = p;
            }
        }
        (arg < order).then_some(best)
    };

    let mut wit = BTreeMap::new();
    let mut exhausted = Vec::new();
    let mut forward = Vec::new();
    for &j in js {
        let lj = (j as f64).ln();
        let found = lambdas.iter().zip(&scaled).find_map(|(&lam, sc)| {
            let mut g = (0..=order).map(|p| sc[p] + p as f64 * lj - n[p]);
            interior_max(&mut g).map(|logc| (lam, logc.exp()))
        });
        match found {
            Some((lam, c)) => {
                wit.insert(format!("j{j}.lambda"), lam);
                wit.insert(format!("j{j}.c"), c);
            }
            None => exhausted.push(format!("j = {j}")),
        }
        forward.push((j, found));
    }
    let mut reverse = Vec::new();
    for (&lam, sc) in lambdas.iter().zip(&scaled) {
        let found = js.iter().find_map(|&j| {
            let lj = (j as f64).ln();
            let mut g = (0..=order).map(|p| n[p] - p as f64 * lj - sc[p]);
            interior_max(&mut g).map(|logc| (j, logc.exp()))
        });
        match found {
            Some((j, c)) => {
                wit.insert(format!("lambda{lam}.j"), j as f64);
                wit.insert(format!("lambda{lam}.C"), c);
            }
            None => exhausted.push(format!("lambda = {lam}")),
        }
        reverse.push((lam, found));
    }
    let verdict = if exhausted.is_empty() {
        ConditionVerdict::holds(
            wit,
            format!("seminorm equivalence: both directions certified for p <= {order}"),
        )
    } else {
        ConditionVerdict::inconclusive(format!(
            "seminorm equivalence: search exhausted for {}",
            exhausted.join(", ")
        ))
    };
    Ok(SeminormReport {
        forward,
        reverse,
        verdict,
    })
}

/// Transfer of condition (4) from `omega` to `M` through the sandwich:
/// `M(t) + log t <= M(H^2 t) + 2 log H + C_(2,H)`.
#[derive(Debug, Clone)]
pub struct Condition4Transfer {
    /// Condition (4) witness of `omega`.
    pub h: f64,
    /// Measured `C_(2,H)` for `omega`.
    pub c2: f64,
    /// `2 log H + C_(2,H)`.
    pub bound: f64,
    /// Grid maximum of `M(t) + log t - M(H^2 t)`.
    pub measured: f64,
    pub verdict: ConditionVerdict,
}

pub fn condition4_transfer_check(
    w: &WeightFunction,
    seq: &WeightSequence,
    grid: &LogGrid,
) -> Result<Condition4Transfer> {
    let cond4 = check_condition4(w, grid);
    let Some(h) = cond4.witness_value("H").filter(|_| cond4.holds_p()) else {
        return Err(Error::Precondition(format!(
            "condition (4) does not hold for {}",
            w.label()
        )));
    };
    let (c2, _) = iterate_condition4(w, grid, h, 2);
    let bound = 2.0 * h.ln() + c2;
    let m = AssociatedFunction::new(seq);
    let mut measured = f64::NEG_INFINITY;
    let mut worst = None;
    for &t in grid.points() {
        if let (Some(a), Some(b)) = (m.value(t), m.value(h * h * t)) {
            let v = a + t.ln() - b;
            if v > measured {
                measured = v;
                worst = Some((t, a + t.ln(), b + bound));
            }
        }
    }
    let verdict = match worst {
        None => ConditionVerdict::inconclusive("condition (4) transfer: no evaluable grid point"),
        Some(_) if measured <= bound + ineq_tol(measured, bound) => ConditionVerdict::holds(
            witness(&[("H", h), ("C2", c2), ("bound", bound), ("measured", measured)]),
            format!("condition (4) transfer: M(t) + log t <= M(H^2 t) + {measured} with bound {bound}"),
        ),
        Some((t, l, r)) => ConditionVerdict::fails(
            Counterexample::new(t, l, r).with("H", h),
            "condition (4) transfer: chain bound exceeded",
        ),
    }
    .on_grid(grid);
    Ok(Condition4Transfer {
        h,
        c2,
        bound,
        measured,
        verdict,
    })
}
