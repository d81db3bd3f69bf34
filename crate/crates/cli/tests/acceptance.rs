//! Acceptance criteria 1-11. Each test prints one `criterion N: PASS|FAIL`
//! line before asserting.

use std::process::Command;

use weightcalc_core::koethe::{KoetheMatrix, KoetheSource, NuclearityOptions, NuclearityStatus, SeriesVerdict};
use weightcalc_core::numerics::LogGrid;
use weightcalc_core::sequences::{check_condition_1_1, check_m1, check_m2, AssociatedFunction, WeightSequence};
use weightcalc_core::weights::{
    biconjugate_check, bmm_transfer_check, check_bmm, check_condition4, condition4_transfer_check,
    equivalence_sandwich, order_for_range, sequence_from_weight, sequence_from_weight_product_form, young_conjugate,
    BMM_H_CANDIDATES,
};
use weightcalc_core::WeightFunction;

fn verdict_line(n: u32, title: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {n}: PASS - {title}");
    } else {
        println!("criterion {n}: FAIL - {title}: {}", failures.join("; "));
    }
    assert!(failures.is_empty(), "criterion {n} failed: {failures:?}");
}

fn grid() -> LogGrid {
    LogGrid::new(1.0, 1e8, 512).unwrap()
}

fn builtins() -> Vec<WeightFunction> {
    vec![
        WeightFunction::omega0(),
        WeightFunction::power(1.0 / 3.0).unwrap(),
        WeightFunction::power(0.5).unwrap(),
        WeightFunction::power(2.0 / 3.0).unwrap(),
        WeightFunction::loga(1.5).unwrap(),
        WeightFunction::loga(2.0).unwrap(),
        WeightFunction::loga(3.0).unwrap(),
        WeightFunction::gevrey(1.5).unwrap(),
        WeightFunction::gevrey(2.0).unwrap(),
        WeightFunction::gevrey(3.0).unwrap(),
    ]
}

fn sandwich_families() -> Vec<WeightFunction> {
    vec![
        WeightFunction::gevrey(1.5).unwrap(),
        WeightFunction::gevrey(2.0).unwrap(),
        WeightFunction::gevrey(3.0).unwrap(),
        WeightFunction::power(1.0 / 3.0).unwrap(),
        WeightFunction::power(0.5).unwrap(),
        WeightFunction::power(2.0 / 3.0).unwrap(),
    ]
}

#[test]
fn criterion_01_log_squared_cond4_without_bmm() {
    let w = WeightFunction::loga(2.0).unwrap();
    let g = grid();
    let mut bad = Vec::new();
    let c4 = check_condition4(&w, &g);
    match c4.witness_value("H") {
        Some(h) if c4.holds_p() && h <= std::f64::consts::E.powi(2) => {}
        _ => bad.push(format!("cond4: {c4:?}")),
    }
    let bmm = check_bmm(&w, &g);
    if !bmm.fails_p() {
        bad.push(format!("bmm: {:?}", bmm.status));
    }
    // oracle: for every H the margin 2 omega(t) - omega(Ht) - H grows at the end of the grid
    let margin = |h: f64, t: f64| 2.0 * t.ln().powi(2) - (h * t).ln().powi(2) - h;
    for h in BMM_H_CANDIDATES {
        if margin(h, 1e8) <= margin(h, 1e7) {
            bad.push(format!("bmm margin for H = {h} does not increase"));
        }
    }
    if let Some(cx) = &bmm.counterexample {
        if cx.lhs <= cx.rhs {
            bad.push("bmm counterexample does not violate".into());
        }
    } else {
        bad.push("bmm has no counterexample".into());
    }
    verdict_line(1, "log^2 satisfies cond4 with H <= e^2 but not (BMM)", &bad);
}

#[test]
fn criterion_02_omega0_degeneracy() {
    let w = WeightFunction::omega0();
    let g = grid();
    let mut bad = Vec::new();
    if !check_condition4(&w, &g).fails_p() {
        bad.push("cond4 does not fail".into());
    }
    let mat = KoetheMatrix::with_defaults(KoetheSource::Weight(w)).unwrap();
    let js: Vec<u32> = (1..=8).collect();
    let rep = mat.gp_nuclearity(&js, &NuclearityOptions::default()).unwrap();
    if rep.status != NuclearityStatus::NotNuclearEvidence {
        bad.push(format!("status {}", rep.status));
    }
    for r in &rep.per_j {
        if !(-0.05..=0.05).contains(&r.nu) {
            bad.push(format!("j = {}: nu = {}", r.j, r.nu));
        }
    }
    for (j, m) in [(1u32, 2u32), (1, 8), (3, 7), (8, 64)] {
        let t = mat.gp_series_test(j, m, 1_000_000).unwrap();
        if !(-0.05..=0.05).contains(&t.nu) || t.verdict != SeriesVerdict::Divergent {
            bad.push(format!("({j}, {m}): nu = {} {}", t.nu, t.verdict));
        }
        // summand exactly j/m once j sqrt k > 1
        let want = (j as f64 / m as f64).ln();
        for k in [4u64, 100, 12_345, 1_000_000] {
            let e = mat.exponent(j, k).unwrap() - mat.exponent(m, k).unwrap();
            if (e - want).abs() > 1e-12 {
                bad.push(format!("({j}, {m}, k = {k}): log summand {e} != {want}"));
            }
        }
    }
    verdict_line(
        2,
        "omega0: cond4 fails, NotNuclearEvidence, constant summand ratio j/m",
        &bad,
    );
}

#[test]
fn criterion_03_gevrey_nuclear_both_routes() {
    let w = WeightFunction::gevrey(2.0).unwrap();
    let g = grid();
    let mut bad = Vec::new();
    let mat = KoetheMatrix::with_defaults(KoetheSource::Weight(w)).unwrap();
    let js: Vec<u32> = (1..=8).collect();
    let rep = mat.gp_nuclearity(&js, &NuclearityOptions::default()).unwrap();
    if rep.status != NuclearityStatus::NuclearOnTestedRange {
        bad.push(format!("status {}", rep.status));
    }
    if !rep.routes_agree {
        bad.push("routes disagree".into());
    }
    for r in &rep.per_j {
        if r.route != "both" {
            bad.push(format!("j = {}: route {}", r.j, r.route));
        }
        let Some(m) = r.series_m else { continue };
        match mat.condition4_from_gp(r.j, m, 1_000_000, &g) {
            Ok((h, v)) if v.holds_p() && h.is_finite() => {}
            Ok((h, v)) => bad.push(format!("j = {}: H_hat = {h}, {:?}", r.j, v.status)),
            Err(e) => bad.push(format!("j = {}: {e}", r.j)),
        }
    }
    verdict_line(
        3,
        "t^(1/2): NuclearOnTestedRange for j = 1..8, routes agree, H_hat verifies cond4",
        &bad,
    );
}

#[test]
fn criterion_04_bridge_identity() {
    let mut bad = Vec::new();
    for w in builtins() {
        let a = sequence_from_weight(&w, 64);
        let b = sequence_from_weight_product_form(&w, 64);
        if a.log_values().len() != b.log_values().len() || a.is_truncated() != b.is_truncated() {
            bad.push(format!(
                "{}: lengths {} vs {}",
                w.label(),
                a.log_values().len(),
                b.log_values().len()
            ));
            continue;
        }
        for (p, (x, y)) in a.log_values().iter().zip(b.log_values()).enumerate() {
            if (x - y).abs() > 1e-6 {
                bad.push(format!("{}: p = {p}: {x} vs {y}", w.label()));
                break;
            }
        }
        if !check_m1(&a).holds_p() {
            bad.push(format!("{}: M1 fails", w.label()));
        }
    }
    verdict_line(
        4,
        "conjugate and product-form sequences agree to 1e-6 for p <= 64 and are log-convex",
        &bad,
    );
}

#[test]
fn criterion_05_sandwich() {
    let g = grid();
    let mut bad = Vec::new();
    for w in sandwich_families() {
        let seq = sequence_from_weight(&w, order_for_range(&w, g.t_max()));
        match equivalence_sandwich(&w, &seq, &g) {
            Ok((a, v)) if v.holds_p() && a.is_finite() => {
                if v.witness_value("skipped") != Some(0.0) {
                    bad.push(format!("{}: grid points skipped", w.label()));
                }
            }
            Ok((_, v)) => bad.push(format!("{}: {:?} {}", w.label(), v.status, v.note)),
            Err(e) => bad.push(format!("{}: {e}", w.label())),
        }
    }
    verdict_line(5, "M <= omega <= M + log t with finite A", &bad);
}

#[test]
fn criterion_06_bmm_transfer() {
    let g = grid();
    let mut bad = Vec::new();
    for w in sandwich_families() {
        let seq = sequence_from_weight(&w, order_for_range(&w, g.t_max()));
        let h = check_bmm(&w, &g).witness_value("H").unwrap_or(f64::NAN);
        let (a, _) = equivalence_sandwich(&w, &seq, &g).unwrap();
        match bmm_transfer_check(&w, &seq, &g) {
            Ok(v) if v.holds_p() => {
                let c = v.witness_value("constant").unwrap();
                if (c - (a / 2.0 + 1.5 * h)).abs() > 1e-12 {
                    bad.push(format!("{}: constant {c}", w.label()));
                }
            }
            Ok(v) => bad.push(format!("{}: {:?} {}", w.label(), v.status, v.note)),
            Err(e) => bad.push(format!("{}: {e}", w.label())),
        }
    }
    verdict_line(6, "2M(t) <= M(H^2 t) + A/2 + 3H/2", &bad);
}

#[test]
fn criterion_07_conjugation_calculus() {
    let g = grid();
    let mut bad = Vec::new();
    let quad = WeightFunction::table_from_fn(20.0, 20_001, |x| 0.5 * x * x).unwrap();
    let e1 = biconjugate_check(&quad, &young_conjugate(&quad, 10.0, 4096).unwrap(), &g);
    let e2 = biconjugate_check(&quad, &young_conjugate(&quad, 10.0, 8191).unwrap(), &g);
    if e1 > 1e-6 {
        bad.push(format!("biconjugate error {e1} at 4096 slopes"));
    }
    if e2 > 0.5 * e1 {
        bad.push(format!("error {e1} -> {e2} under slope doubling"));
    }
    let mut families = builtins();
    families.push(quad);
    for w in families {
        let t = young_conjugate(&w, 64.0, 4097).unwrap();
        let v = t.check_invariants();
        if !v.holds_p() {
            bad.push(format!("{}: {}", w.label(), v.note));
        }
    }
    println!("  biconjugate error: {e1:e} (4096 slopes), {e2:e} (8191 slopes)");
    verdict_line(7, "phi** = phi and conjugate table invariants", &bad);
}

/// Independent recomputation of the (1.1) ratio
/// `log(sqrt(s!)... )` in the sweep: `(s/2) log s + n_p - s log C - (s+p) log H - n_{p+s}`.
fn check_11_bound(seq: &WeightSequence, h: f64, log_b: f64) -> Option<(usize, usize, f64)> {
    let n = seq.normalized();
    let order = seq.order();
    for s in 0..=order {
        let lhs_s = 0.5 * s as f64 * (s.max(1) as f64).ln();
        for p in 0..=order - s {
            let g = lhs_s + n[p] - (s + p) as f64 * h.ln() - n[p + s];
            if g > log_b + 1e-9 * log_b.abs().max(1.0) {
                return Some((s, p, g));
            }
        }
    }
    None
}

#[test]
fn criterion_08_condition_1_1() {
    let mut bad = Vec::new();
    for w in [
        WeightFunction::gevrey(2.0).unwrap(),
        WeightFunction::power(0.5).unwrap(),
    ] {
        let seq = sequence_from_weight(&w, 256);
        let v = check_condition_1_1(&seq, 1.0).unwrap();
        if !v.holds_p() {
            bad.push(format!("{}: {:?} {}", w.label(), v.status, v.note));
            continue;
        }
        let h = v.witness_value("H").unwrap();
        let log_b = v.witness_value("logB").unwrap();
        if let Some((s, p, g)) = check_11_bound(&seq, h, log_b) {
            bad.push(format!(
                "{}: ratio {g} > log B = {log_b} at s = {s}, p = {p}",
                w.label()
            ));
        }
    }
    verdict_line(8, "(1.1) holds with C = 1 on s + p <= 256", &bad);
}

#[test]
fn criterion_09_log_squared_sequence_without_m2() {
    let w = WeightFunction::loga(2.0).unwrap();
    let g = grid();
    let mut bad = Vec::new();
    let order = order_for_range(&w, g.t_max()).max(256);
    let seq = sequence_from_weight(&w, order);
    if !check_m1(&seq).holds_p() {
        bad.push("M1 fails".into());
    }
    let c11 = check_condition_1_1(&seq, 1.0).unwrap();
    if !c11.holds_p() {
        bad.push(format!("(1.1): {:?}", c11.status));
    }
    let m = AssociatedFunction::new(&seq);
    let c4 = check_condition4(&m, &g);
    if !c4.holds_p() {
        bad.push(format!("cond4 of M: {:?} {}", c4.status, c4.note));
    }
    match condition4_transfer_check(&w, &seq, &g) {
        Ok(r) if r.verdict.holds_p() && r.measured <= r.bound => {
            println!(
                "  chain: measured {} <= 2 log H + C_(2,H) = {} (H = {})",
                r.measured, r.bound, r.h
            )
        }
        Ok(r) => bad.push(format!("chain: measured {} bound {}", r.measured, r.bound)),
        Err(e) => bad.push(format!("chain: {e}")),
    }
    let m2 = check_m2(&seq);
    if !m2.fails_p() {
        bad.push(format!("M2: {:?}", m2.status));
    }
    verdict_line(9, "log^2 sequence: M1, (1.1), cond4 for M, and M2 fails", &bad);
}

#[test]
fn criterion_10_proof_diagnostics() {
    let k_max = 1_000_000u64;
    let mut bad = Vec::new();
    let mut families = builtins();
    families.retain(|w| !matches!(w.label().as_str(), "omega0"));
    let mut convergent = 0;
    for w in families {
        // enough terms for M to be exact up to 8 sqrt K
        let seq = sequence_from_weight(&w, order_for_range(&w, 8.0 * (k_max as f64).sqrt()));
        let mat = KoetheMatrix::new(KoetheSource::sequence(&seq), 8, k_max).unwrap();
        for j in 1..8u32 {
            for m in (j + 1)..=8 {
                let v = mat.monotone_difference_check(j, m, k_max).unwrap();
                if !v.holds_p() {
                    bad.push(format!("{} ({j}, {m}): {}", w.label(), v.note));
                }
                if mat.gp_series_test(j, m, k_max).unwrap().verdict == SeriesVerdict::Convergent {
                    convergent += 1;
                    let s = mat.sup_bound_diagnostic(j, m, k_max).unwrap();
                    if !(s.a_hat.is_finite() && s.interior) {
                        bad.push(format!(
                            "{} ({j}, {m}): sup {} at k = {}",
                            w.label(),
                            s.a_hat,
                            s.attained_k
                        ));
                    }
                }
            }
        }
    }
    let omega0 = sequence_from_weight(&WeightFunction::omega0(), 64);
    let mat = KoetheMatrix::new(KoetheSource::sequence(&omega0), 8, k_max).unwrap();
    for j in 1..8u32 {
        for m in (j + 1)..=8 {
            if !mat.monotone_difference_check(j, m, k_max).unwrap().holds_p() {
                bad.push(format!("omega0 ({j}, {m}): monotone difference fails"));
            }
            let s = mat.sup_bound_diagnostic(j, m, k_max).unwrap();
            if s.interior || s.attained_k != k_max {
                bad.push(format!("omega0 ({j}, {m}): sup attained at k = {}", s.attained_k));
            }
        }
    }
    if convergent == 0 {
        bad.push("no convergent pair was exercised".into());
    }
    println!("  {convergent} convergent pairs checked");
    verdict_line(
        10,
        "monotone differences, interior sup bounds, omega0 unbounded at K",
        &bad,
    );
}

#[test]
fn criterion_11_determinism() {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_weightcalc"))
            .args(["analyze", "--family", "gevrey:2", "--suite", "all", "--format", "json"])
            .output()
            .expect("binary runs")
    };
    let a = run();
    let b = run();
    let mut bad = Vec::new();
    if !a.status.success() || !b.status.success() {
        bad.push(format!("exit status {:?} {:?}", a.status, b.status));
    }
    if a.stdout.is_empty() {
        bad.push("empty output".into());
    }
    if a.stdout != b.stdout {
        bad.push("outputs differ".into());
    }
    verdict_line(11, "two analyze runs give byte-identical JSON", &bad);
}
