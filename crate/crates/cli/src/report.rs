use serde::Serialize;
use weightcalc_core::koethe::{KoetheMatrix, KoetheSource, NuclearityOptions, NuclearityReport};
use weightcalc_core::numerics::LogGrid;
use weightcalc_core::sequences::{
    check_condition_1_1, check_lower_root_bound, check_m1, check_m2, check_m2prime, AssociatedFunction, WeightSequence,
};
use weightcalc_core::verdict::{witness, ConditionVerdict, Counterexample, GridInfo};
use weightcalc_core::weights::{
    biconjugate_check, bmm_transfer_check, check_alpha, check_beta, check_bmm, check_condition4, check_delta,
    check_gamma, condition4_transfer_check, equivalence_sandwich, seminorm_equivalence_check, sequence_from_weight,
    sequence_from_weight_product_form, young_conjugate,
};
use weightcalc_core::{Error, WeightFunction};

pub const SUITES: [&str; 6] = ["axioms", "bmm", "cond4", "conjugate", "bridge", "nuclearity"];

/// Slopes in the conjugate suite.
const CONJ_SLOPES: usize = 4097;
const CONJ_S_MAX: f64 = 64.0;
/// Largest `p` compared between the two sequence constructions.
const PRODUCT_FORM_P: usize = 64;
const SEMINORM_LAMBDAS: [f64; 5] = [0.25, 0.5, 1.0, 2.0, 4.0];
const SEMINORM_JS: [u32; 5] = [1, 2, 4, 8, 16];

pub enum Subject {
    Weight { spec: String, w: WeightFunction },
    Sequence { spec: String, seq: WeightSequence },
}

impl Subject {
    fn spec(&self) -> &str {
        match self {
            Subject::Weight { spec, .. } | Subject::Sequence { spec, .. } => spec,
        }
    }
}

pub struct Request {
    pub subject: Subject,
    pub suites: Vec<String>,
    pub grid: LogGrid,
    pub j_max: u32,
    pub k_max: u64,
    /// Truncation order used to turn a weight into a sequence.
    pub order: usize,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SubjectInfo {
    pub kind: &'static str,
    pub spec: String,
    pub label: String,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct KoetheInfo {
    pub j_max: u32,
    pub k_max: u64,
}

#[derive(Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub verdict: ConditionVerdict,
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Report {
    pub subject: SubjectInfo,
    pub grid: GridInfo,
    pub koethe: KoetheInfo,
    pub order: usize,
    pub suites: Vec<String>,
    pub checks: Vec<Check>,
    pub nuclearity: Option<NuclearityReport>,
}

/// Expands `all` and validates suite names.
pub fn parse_suites(list: &str) -> Result<Vec<String>, String> {
    let mut out: Vec<String> = Vec::new();
    for name in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        if name == "all" {
            for s in SUITES {
                if !out.iter().any(|o| o == s) {
                    out.push(s.to_string());
                }
            }
        } else if SUITES.contains(&name) {
            if !out.iter().any(|o| o == name) {
                out.push(name.to_string());
            }
        } else {
            return Err(format!(
                "unknown suite {name:?} (expected one of {}, all)",
                SUITES.join(", ")
            ));
        }
    }
    if out.is_empty() {
        return Err("suite list is empty".into());
    }
    Ok(out)
}

fn from_error(what: &str, e: Error) -> ConditionVerdict {
    ConditionVerdict::inconclusive(format!("{what} not run: {e}"))
}

fn not_applicable(what: &str) -> ConditionVerdict {
    ConditionVerdict::inconclusive(format!("{what} applies to weight functions only"))
}

pub fn run(req: &Request) -> Report {
    let mut checks = Vec::new();
    let mut nuclearity = None;
    let grid = &req.grid;
    let mut push = |suite: &'static str, name: &str, verdict: ConditionVerdict| {
        checks.push(Check {
            suite,
            name: name.to_string(),
            verdict,
        })
    };

    for suite in &req.suites {
        match (suite.as_str(), &req.subject) {
            ("axioms", Subject::Weight { w, .. }) => {
                push("axioms", "alpha", check_alpha(w, grid));
                push("axioms", "beta", check_beta(w, grid));
                push("axioms", "gamma", check_gamma(w, grid));
                push("axioms", "delta", check_delta(w, grid));
            }
            ("axioms", Subject::Sequence { seq, .. }) => {
                push("axioms", "M1", check_m1(seq));
                push("axioms", "M2prime", check_m2prime(seq));
                push("axioms", "M2", check_m2(seq));
                push("axioms", "lowerRootBound", check_lower_root_bound(seq));
                push(
                    "axioms",
                    "condition1_1",
                    check_condition_1_1(seq, 1.0).unwrap_or_else(|e| from_error("(1.1)", e)),
                );
            }
            ("bmm", Subject::Weight { w, .. }) => push("bmm", "bmm", check_bmm(w, grid)),
            ("bmm", Subject::Sequence { .. }) => push("bmm", "bmm", not_applicable("(BMM)")),
            ("cond4", Subject::Weight { w, .. }) => push("cond4", "cond4", check_condition4(w, grid)),
            ("cond4", Subject::Sequence { seq, .. }) => {
                let m = AssociatedFunction::new(seq);
                push("cond4", "cond4", check_condition4(&m, grid));
            }
            ("conjugate", Subject::Weight { w, .. }) => {
                for (name, v) in conjugate_checks(w, grid) {
                    push("conjugate", name, v);
                }
            }
            ("conjugate", Subject::Sequence { .. }) => push("conjugate", "invariants", not_applicable("conjugation")),
            ("bridge", Subject::Weight { w, .. }) => {
                for (name, v) in bridge_checks(w, grid, req.order) {
                    push("bridge", name, v);
                }
            }
            ("bridge", Subject::Sequence { .. }) => push("bridge", "sandwich", not_applicable("the bridge")),
            ("nuclearity", subject) => {
                let source = match subject {
                    Subject::Weight { w, .. } => KoetheSource::Weight(w.clone()),
                    Subject::Sequence { seq, .. } => KoetheSource::sequence(seq),
                };
                let opts = NuclearityOptions {
                    grid: grid.clone(),
                    k_max: req.k_max,
                    ..NuclearityOptions::default()
                };
                let js: Vec<u32> = (1..=req.j_max).collect();
                match KoetheMatrix::new(source, req.j_max, req.k_max).and_then(|mat| mat.gp_nuclearity(&js, &opts)) {
                    Ok(rep) => {
                        push("nuclearity", "cond4Route", rep.condition4.clone());
                        nuclearity = Some(rep);
                    }
                    Err(e) => push("nuclearity", "matrix", from_error("nuclearity", e)),
                }
            }
            _ => unreachable!("suite names are validated"),
        }
    }

    let (kind, label) = match &req.subject {
        Subject::Weight { w, .. } => ("family", w.label()),
        Subject::Sequence { seq, .. } => ("sequence", seq.label.clone()),
    };
    Report {
        subject: SubjectInfo {
            kind,
            spec: req.subject.spec().to_string(),
            label,
        },
        grid: GridInfo::from(grid),
        koethe: KoetheInfo {
            j_max: req.j_max,
            k_max: req.k_max,
        },
        order: req.order,
        suites: req.suites.clone(),
        checks,
        nuclearity,
    }
}

fn conjugate_checks(w: &WeightFunction, grid: &LogGrid) -> Vec<(&'static str, ConditionVerdict)> {
    let table = match young_conjugate(w, CONJ_S_MAX, CONJ_SLOPES) {
        Ok(t) => t,
        Err(e) => return vec![("invariants", from_error("conjugate table", e))],
    };
    // the max-of-tangents error shrinks with the slope spacing; accept a
    // small error or one that at least halves when the spacing is halved
    let err = biconjugate_check(w, &table, grid);
    let finer = young_conjugate(w, CONJ_S_MAX, 2 * CONJ_SLOPES - 1).map(|t| biconjugate_check(w, &t, grid));
    let bic = match finer {
        Ok(err2) if err <= 1e-6 || err2 <= 0.5 * err => ConditionVerdict::holds(
            witness(&[
                ("maxError", err),
                ("maxErrorHalfSpacing", err2),
                ("slopes", CONJ_SLOPES as f64),
                ("sMax", CONJ_S_MAX),
            ]),
            format!("phi** = phi within {err:e} at grid points with an interior supporting slope; {err2:e} at half the spacing"),
        ),
        Ok(err2) => ConditionVerdict::fails(
            Counterexample::new(CONJ_SLOPES as f64, err, err2),
            format!("phi** differs from phi by {err:e} and does not shrink with the slope spacing ({err2:e})"),
        ),
        Err(e) => from_error("biconjugate", e),
    };
    vec![
        ("invariants", table.check_invariants()),
        ("biconjugate", bic.on_grid(grid)),
    ]
}

fn bridge_checks(w: &WeightFunction, grid: &LogGrid, order: usize) -> Vec<(&'static str, ConditionVerdict)> {
    let seq = sequence_from_weight(w, order);
    let mut out = vec![("M1", check_m1(&seq))];

    let small = sequence_from_weight(w, PRODUCT_FORM_P);
    let prod = sequence_from_weight_product_form(w, PRODUCT_FORM_P);
    let agree = if small.log_values().len() != prod.log_values().len() {
        ConditionVerdict::fails(
            Counterexample::new(
                small.log_values().len().min(prod.log_values().len()) as f64,
                small.log_values().len() as f64,
                prod.log_values().len() as f64,
            ),
            "product form: the two constructions diverge at different orders",
        )
    } else {
        let (p, d) = small
            .log_values()
            .iter()
            .zip(prod.log_values())
            .map(|(a, b)| (a - b).abs())
            .enumerate()
            .fold((0, 0.0), |best, (p, d)| if d > best.1 { (p, d) } else { best });
        if d <= 1e-6 {
            ConditionVerdict::holds(
                witness(&[("maxDiff", d), ("p", p as f64), ("order", PRODUCT_FORM_P as f64)]),
                format!("conjugate and product-form sequences agree within {d:e} for p <= {PRODUCT_FORM_P}"),
            )
        } else {
            let (a, b) = (small.log_values()[p], prod.log_values()[p]);
            ConditionVerdict::fails(
                Counterexample::new(p as f64, a, b),
                format!("conjugate and product-form sequences differ by {d:e} at p = {p}"),
            )
        }
    };
    out.push(("productForm", agree));

    out.push((
        "sandwich",
        equivalence_sandwich(w, &seq, grid)
            .map(|(_, v)| v)
            .unwrap_or_else(|e| from_error("sandwich", e)),
    ));
    out.push((
        "bmmTransfer",
        bmm_transfer_check(w, &seq, grid).unwrap_or_else(|e| from_error("(BMM) transfer", e)),
    ));
    out.push((
        "cond4Transfer",
        condition4_transfer_check(w, &seq, grid)
            .map(|r| r.verdict)
            .unwrap_or_else(|e| from_error("condition (4) transfer", e)),
    ));
    out.push((
        "seminorms",
        seminorm_equivalence_check(w, &seq, &SEMINORM_LAMBDAS, &SEMINORM_JS)
            .map(|r| r.verdict)
            .unwrap_or_else(|e| from_error("seminorm equivalence", e)),
    ));
    out.push((
        "condition1_1",
        if seq.is_truncated() {
            from_error("(1.1)", Error::Precondition("sequence is truncated".into()))
        } else {
            check_condition_1_1(&seq, 1.0).unwrap_or_else(|e| from_error("(1.1)", e))
        },
    ));
    out
}
