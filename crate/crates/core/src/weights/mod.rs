//! Weight functions `omega`, their axioms, Young conjugation, and the bridge
//! between weight functions and weight sequences.
//!
//! Every weight is normalized to vanish on `[0, 1]`. Closed-form families
//! are normalized by subtracting `omega(1)`, so `t^a` is carried as
//! `t^a - 1` on `t > 1`. This keeps `omega` continuous and
//! `phi(x) = omega(e^x)` convex. Tables are normalized by subtracting
//! their first sample.

mod axioms;
mod bridge;
mod conjugate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use axioms::{
    check_alpha, check_beta, check_bmm, check_condition4, check_delta, check_gamma, iterate_condition4,
    BMM_H_CANDIDATES, COND4_H_CANDIDATES, L_CANDIDATES,
};
pub use bridge::{
    bmm_transfer_check, condition4_transfer_check, equivalence_sandwich, order_for_range, seminorm_equivalence_check,
    sequence_from_weight, sequence_from_weight_product_form, Condition4Transfer, SeminormReport,
};
pub use conjugate::{
    biconjugate_check, conjugate_at, young_conjugate, young_conjugate_with, ConjugateOptions, ConjugateTable,
};

/// Convexity tolerance for sampled `phi`.
pub const CONVEXITY_TOL: f64 = 1e-9;

/// Something that can be evaluated as a growth function `t -> M(t)`.
///
/// `value` returns `None` outside the range where the function is known
/// reliably (e.g. beyond the truncation order of a sequence).
pub trait GrowthFunction {
    fn value(&self, t: f64) -> Option<f64>;
    fn name(&self) -> String;
}

/// Adapter turning a closure into a [`GrowthFunction`].
pub struct FnGrowth<F> {
    pub name: String,
    pub f: F,
}

impl<F: Fn(f64) -> Option<f64>> GrowthFunction for FnGrowth<F> {
    fn value(&self, t: f64) -> Option<f64> {
        (self.f)(t)
    }

    fn name(&self) -> String {
        self.name.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", content = "params", rename_all = "lowercase")]
pub enum Family {
    /// `log t` for `t > 1`.
    Omega0 {},
    /// `t^a - 1` for `t > 1`, `0 < a <= 1`.
    Power { a: f64 },
    /// `(log t)^a` for `t > 1`, `a >= 1`.
    Loga { a: f64 },
    /// `t^{1/s} - 1` for `t > 1`, `s >= 1`.
    Gevrey { s: f64 },
    /// Convex samples of `phi` on `x = i * dx`, `i = 0..n`.
    Table { dx: f64, phi: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct WeightFunction {
    family: Family,
}

impl WeightFunction {
    pub fn new(family: Family) -> Result<Self> {
        let family = match family {
            Family::Omega0 {} => Family::Omega0 {},
            Family::Power { a } => {
                if !(a > 0.0 && a <= 1.0) {
                    return Err(Error::InvalidWeight(format!(
                        "power exponent must lie in (0, 1], got {a}"
                    )));
                }
                Family::Power { a }
            }
            Family::Loga { a } => {
                if !(a >= 1.0) || !a.is_finite() {
                    return Err(Error::InvalidWeight(format!("log power must be >= 1, got {a}")));
                }
                Family::Loga { a }
            }
            Family::Gevrey { s } => {
                if !(s >= 1.0) || !s.is_finite() {
                    return Err(Error::InvalidWeight(format!("Gevrey index must be >= 1, got {s}")));
                }
                Family::Gevrey { s }
            }
            Family::Table { dx, phi } => {
                if !(dx > 0.0) || !dx.is_finite() {
                    return Err(Error::InvalidWeight(format!("table step must be positive, got {dx}")));
                }
                if phi.len() < 2 {
                    return Err(Error::InvalidWeight("table needs at least 2 samples".into()));
                }
                if phi.iter().any(|v| !v.is_finite()) {
                    return Err(Error::InvalidWeight("table samples must be finite".into()));
                }
                let base = phi[0];
                let phi: Vec<f64> = phi.iter().map(|v| v - base).collect();
                if let Some(i) = phi.windows(2).position(|w| w[1] < w[0] - CONVEXITY_TOL) {
                    return Err(Error::InvalidWeight(format!("table decreases at sample {}", i + 1)));
                }
                if let Some(i) = phi
                    .windows(3)
                    .position(|w| w[0] + w[2] - 2.0 * w[1] < -CONVEXITY_TOL * w[1].abs().max(1.0))
                {
                    return Err(Error::InvalidWeight(format!("table is not convex at sample {}", i + 1)));
                }
                Family::Table { dx, phi }
            }
        };
        Ok(WeightFunction { family })
    }

    pub fn omega0() -> Self {
        WeightFunction {
            family: Family::Omega0 {},
        }
    }

    pub fn power(a: f64) -> Result<Self> {
        Self::new(Family::Power { a })
    }

    pub fn loga(a: f64) -> Result<Self> {
        Self::new(Family::Loga { a })
    }

    pub fn gevrey(s: f64) -> Result<Self> {
        Self::new(Family::Gevrey { s })
    }

    /// Table of `phi(x) = omega(e^x)` sampled at `x = i * dx`.
    pub fn table(dx: f64, phi: Vec<f64>) -> Result<Self> {
        Self::new(Family::Table { dx, phi })
    }

    /// Samples a closure `phi` on `[0, x_max]` into a table.
    pub fn table_from_fn(x_max: f64, n: usize, phi: impl Fn(f64) -> f64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidWeight("table needs at least 2 samples".into()));
        }
        let dx = x_max / (n - 1) as f64;
        Self::table(dx, (0..n).map(|i| phi(i as f64 * dx)).collect())
    }

    /// Parses `{"family": str, "params": {...}}`.
    pub fn from_json_str(s: &str) -> Result<Self> {
        let family: Family = serde_json::from_str(s)?;
        Self::new(family)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("weight serializes")
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn label(&self) -> String {
        match &self.family {
            Family::Omega0 {} => "omega0".into(),
            Family::Power { a } => format!("power:{a}"),
            Family::Loga { a } => format!("log^{a}"),
            Family::Gevrey { s } => format!("gevrey:{s}"),
            Family::Table { phi, .. } => format!("table[{}]", phi.len()),
        }
    }

    /// False for the linear member `t - 1`, which violates `omega(t) = o(t)`.
    pub fn is_weight(&self) -> bool {
        match self.family {
            Family::Power { a } => a < 1.0,
            Family::Gevrey { s } => s > 1.0,
            _ => true,
        }
    }

    /// Right end of the sampled `phi` range for tables.
    pub fn phi_domain_end(&self) -> Option<f64> {
        match &self.family {
            Family::Table { dx, phi } => Some(dx * (phi.len() - 1) as f64),
            _ => None,
        }
    }

    /// `phi(x) = omega(e^x)`; zero for `x <= 0`.
    pub fn phi(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match &self.family {
            Family::Omega0 {} => x,
            Family::Power { a } => (a * x).exp_m1(),
            Family::Loga { a } => x.powf(*a),
            Family::Gevrey { s } => (x / s).exp_m1(),
            Family::Table { dx, phi } => {
                let pos = x / dx;
                let last = phi.len() - 1;
                if pos >= last as f64 {
                    let slope = (phi[last] - phi[last - 1]) / dx;
                    phi[last] + slope * (x - last as f64 * dx)
                } else {
                    let i = pos.floor() as usize;
                    let frac = pos - i as f64;
                    phi[i] + frac * (phi[i + 1] - phi[i])
                }
            }
        }
    }

    /// `omega(t)`, exactly zero on `[0, 1]`.
    pub fn evaluate(&self, t: f64) -> Result<f64> {
        if !(t >= 0.0) || !t.is_finite() {
            return Err(Error::InvalidArgument(format!("weight needs finite t >= 0, got {t}")));
        }
        Ok(self.eval_unchecked(t))
    }

    pub(crate) fn eval_unchecked(&self, t: f64) -> f64 {
        if t <= 1.0 {
            0.0
        } else {
            self.phi(t.ln())
        }
    }
}

impl GrowthFunction for WeightFunction {
    fn value(&self, t: f64) -> Option<f64> {
        let v = self.evaluate(t).ok()?;
        v.is_finite().then_some(v)
    }

    fn name(&self) -> String {
        self.label()
    }
}

pub fn evaluate(w: &WeightFunction, t: f64) -> Result<f64> {
    w.evaluate(t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluate_examples() {
        let e = std::f64::consts::E;
        assert!((WeightFunction::omega0().evaluate(e * e).unwrap() - 2.0).abs() < 1e-15);
        assert!((WeightFunction::loga(2.0).unwrap().evaluate(e.powi(3)).unwrap() - 9.0).abs() < 1e-12);
        assert_eq!(WeightFunction::power(0.5).unwrap().evaluate(0.5).unwrap(), 0.0);
        assert!(WeightFunction::omega0().evaluate(-1.0).is_err());
        assert!(WeightFunction::omega0().evaluate(f64::NAN).is_err());
    }

    #[test]
    fn power_is_continuous_at_one() {
        let w = WeightFunction::power(0.5).unwrap();
        assert_eq!(w.evaluate(1.0).unwrap(), 0.0);
        assert!(w.evaluate(1.0 + 1e-9).unwrap() < 1e-9);
        assert!((w.evaluate(100.0).unwrap() - 9.0).abs() < 1e-12);
    }

    #[test]
    fn constructors_validate() {
        assert!(WeightFunction::power(0.0).is_err());
        assert!(WeightFunction::power(1.5).is_err());
        assert!(WeightFunction::loga(0.5).is_err());
        assert!(WeightFunction::gevrey(0.9).is_err());
        assert!(!WeightFunction::power(1.0).unwrap().is_weight());
        assert!(WeightFunction::gevrey(2.0).unwrap().is_weight());
        assert!(WeightFunction::table(0.1, vec![0.0, 1.0, 1.5]).is_err());
        assert!(WeightFunction::table(0.1, vec![0.0, -1.0, -1.5]).is_err());
        assert!(WeightFunction::table(0.0, vec![0.0, 1.0]).is_err());
        assert!(WeightFunction::table(0.1, vec![0.0]).is_err());
    }

    #[test]
    fn table_normalizes_and_interpolates() {
        let w = WeightFunction::table(1.0, vec![1.0, 2.0, 4.0]).unwrap();
        assert_eq!(w.phi(0.0), 0.0);
        assert!((w.phi(0.5) - 0.5).abs() < 1e-15);
        assert!((w.phi(1.5) - 2.0).abs() < 1e-15);
        assert!((w.phi(3.0) - 5.0).abs() < 1e-15);
        assert_eq!(w.phi_domain_end(), Some(2.0));
    }

    #[test]
    fn json_shape() {
        let w = WeightFunction::gevrey(2.0).unwrap();
        assert_eq!(w.to_json_string(), r#"{"family":"gevrey","params":{"s":2.0}}"#);
        let back = WeightFunction::from_json_str(&w.to_json_string()).unwrap();
        assert_eq!(back, w);
        let o = WeightFunction::from_json_str(r#"{"family":"omega0","params":{}}"#).unwrap();
        assert_eq!(o, WeightFunction::omega0());
        assert!(WeightFunction::from_json_str(r#"{"family":"power","params":{"a":2.0}}"#).is_err());
        assert!(WeightFunction::from_json_str(r#"{"family":"nope"}"#).is_err());
    }
}
