use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};

use crate::report::Report;

/// Pretty JSON with every float written to 17 significant digits.
struct FixedFloats<'a>(PrettyFormatter<'a>);

macro_rules! forward {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(
            fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.0.$name(w $(, $arg)*)
            }
        )*
    };
}

impl Formatter for FixedFloats<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    forward! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        end_object_key();
        begin_object_value();
        end_object_value();
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = Serializer::with_formatter(&mut buf, FixedFloats(PrettyFormatter::new()));
    value.serialize(&mut ser).expect("report serializes");
    buf.push(b'\n');
    String::from_utf8(buf).expect("JSON is UTF-8")
}

fn evidence(v: &weightcalc_core::ConditionVerdict) -> String {
    if let Some(w) = &v.witness {
        let parts: Vec<String> = w.iter().map(|(k, x)| format!("{k}={x:.6e}")).collect();
        return parts.join(" ");
    }
    if let Some(c) = &v.counterexample {
        return format!("t={:.6e} lhs={:.6e} rhs={:.6e}", c.point, c.lhs, c.rhs);
    }
    v.note.clone()
}

/// Fixed-width table, one row per check.
pub fn to_text(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "subject {} ({})  grid [{:e}, {:e}] x {}  order {}\n",
        report.subject.spec, report.subject.label, report.grid.t_min, report.grid.t_max, report.grid.n, report.order
    ));
    out.push_str(&format!(
        "{:<12} {:<16} {:<26} {}\n",
        "suite", "check", "status", "evidence"
    ));
    for c in &report.checks {
        out.push_str(&format!(
            "{:<12} {:<16} {:<26} {}\n",
            c.suite,
            c.name,
            c.verdict.status.as_str(),
            evidence(&c.verdict)
        ));
    }
    if let Some(n) = &report.nuclearity {
        out.push_str(&format!("nuclearity {}  source {}\n", n.status, n.source));
        out.push_str(&format!(
            "{:>4} {:>6} {:>12} {:>14} {}\n",
            "j", "m", "nu", "supBound", "route"
        ));
        for r in &n.per_j {
            let m = r.m.map_or_else(|| "-".to_string(), |m| m.to_string());
            out.push_str(&format!(
                "{:>4} {:>6} {:>12.4} {:>14.6e} {}\n",
                r.j, m, r.nu, r.sup_bound, r.route
            ));
        }
    }
    out
}
