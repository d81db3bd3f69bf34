//! One-token subject specs used by the command line.
//!
//! Weights: `omega0 | power:<a> | log^<a> | log<a> | gevrey:<s> | table:<path>`.
//! Sequences: `gevreyseq:<s> | file:<path>`.
//!
//! Parsing is pure; the `load_*` functions read the referenced files.

use std::path::Path;

use crate::error::{Error, Result};
use crate::sequences::{gevrey_sequence, WeightSequence};
use crate::weights::WeightFunction;

#[derive(Debug, Clone, PartialEq)]
pub enum FamilySpec {
    Builtin(WeightFunction),
    Table(String),
}

#[derive(Debug, Clone, PartialEq)]
pub enum SequenceSpec {
    Gevrey(f64),
    File(String),
}

fn number(s: &str, what: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| Error::Parse(format!("{what}: expected a number, got {s:?}")))?;
    if !v.is_finite() {
        return Err(Error::Parse(format!("{what}: expected a finite number, got {s:?}")));
    }
    Ok(v)
}

fn path_arg(rest: &str, what: &str) -> Result<String> {
    if rest.is_empty() {
        return Err(Error::Parse(format!("{what}: missing path")));
    }
    Ok(rest.to_string())
}

pub fn parse_family(spec: &str) -> Result<FamilySpec> {
    let spec = spec.trim();
    if spec == "omega0" {
        return Ok(FamilySpec::Builtin(WeightFunction::omega0()));
    }
    if let Some(rest) = spec.strip_prefix("table:") {
        return Ok(FamilySpec::Table(path_arg(rest, "table")?));
    }
    let w = if let Some(rest) = spec.strip_prefix("power:") {
        WeightFunction::power(number(rest, "power")?)?
    } else if let Some(rest) = spec.strip_prefix("gevrey:") {
        WeightFunction::gevrey(number(rest, "gevrey")?)?
    } else if let Some(rest) = spec.strip_prefix("log^").or_else(|| spec.strip_prefix("log")) {
        WeightFunction::loga(number(rest, "log")?)?
    } else {
        return Err(Error::Parse(format!("unknown family {spec:?}")));
    };
    Ok(FamilySpec::Builtin(w))
}

pub fn parse_sequence(spec: &str) -> Result<SequenceSpec> {
    let spec = spec.trim();
    if let Some(rest) = spec.strip_prefix("gevreyseq:") {
        let s = number(rest, "gevreyseq")?;
        if !(s > 0.0) {
            return Err(Error::Parse(format!("gevreyseq: index must be positive, got {s}")));
        }
        return Ok(SequenceSpec::Gevrey(s));
    }
    if let Some(rest) = spec.strip_prefix("file:") {
        return Ok(SequenceSpec::File(path_arg(rest, "file")?));
    }
    Err(Error::Parse(format!("unknown sequence {spec:?}")))
}

/// Table file contents: either weight JSON, or rows `x,phi` on a uniform
/// grid starting at `x = 0` (an optional non-numeric header is skipped;
/// `#` starts a comment).
pub fn parse_table_text(text: &str) -> Result<WeightFunction> {
    if text.trim_start().starts_with('{') {
        return WeightFunction::from_json_str(text);
    }
    let mut xs = Vec::new();
    let mut phi = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let cols: Vec<&str> = line.split([',', ' ', '\t']).filter(|c| !c.is_empty()).collect();
        if cols.len() != 2 {
            return Err(Error::Parse(format!("table line {}: expected 2 columns", lineno + 1)));
        }
        let (Ok(x), Ok(y)) = (cols[0].parse::<f64>(), cols[1].parse::<f64>()) else {
            if xs.is_empty() && phi.is_empty() {
                continue;
            }
            return Err(Error::Parse(format!("table line {}: expected numbers", lineno + 1)));
        };
        xs.push(x);
        phi.push(y);
    }
    if xs.len() < 2 {
        return Err(Error::Parse("table needs at least 2 rows".into()));
    }
    if xs[0] != 0.0 {
        return Err(Error::Parse("table must start at x = 0".into()));
    }
    let dx = xs[1] - xs[0];
    if !(dx > 0.0) || !dx.is_finite() {
        return Err(Error::Parse("table x values must increase".into()));
    }
    for (i, &x) in xs.iter().enumerate() {
        if (x - i as f64 * dx).abs() > 1e-9 * (1.0 + x.abs()) {
            return Err(Error::Parse(format!("table row {}: x is not on a uniform grid", i + 1)));
        }
    }
    WeightFunction::table(dx, phi)
}

pub fn load_family(spec: &str) -> Result<WeightFunction> {
    match parse_family(spec)? {
        FamilySpec::Builtin(w) => Ok(w),
        FamilySpec::Table(path) => parse_table_text(&std::fs::read_to_string(Path::new(&path))?),
    }
}

pub fn load_sequence(spec: &str, order: usize) -> Result<WeightSequence> {
    match parse_sequence(spec)? {
        SequenceSpec::Gevrey(s) => gevrey_sequence(s, order),
        SequenceSpec::File(path) => WeightSequence::from_json_str(&std::fs::read_to_string(Path::new(&path))?),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_grammar() {
        assert_eq!(
            parse_family("omega0").unwrap(),
            FamilySpec::Builtin(WeightFunction::omega0())
        );
        assert_eq!(
            parse_family("log2").unwrap(),
            FamilySpec::Builtin(WeightFunction::loga(2.0).unwrap())
        );
        assert_eq!(parse_family("log^2").unwrap(), parse_family("log2").unwrap());
        assert_eq!(
            parse_family("gevrey:2").unwrap(),
            FamilySpec::Builtin(WeightFunction::gevrey(2.0).unwrap())
        );
        assert_eq!(parse_family("table:a.csv").unwrap(), FamilySpec::Table("a.csv".into()));
        for bad in [
            "",
            "omega1",
            "power:",
            "power:2",
            "gevrey:x",
            "table:",
            "log^nan",
            "gevrey:inf",
        ] {
            assert!(parse_family(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn sequence_grammar() {
        assert_eq!(parse_sequence("gevreyseq:2").unwrap(), SequenceSpec::Gevrey(2.0));
        assert_eq!(
            parse_sequence("file:x.json").unwrap(),
            SequenceSpec::File("x.json".into())
        );
        assert!(parse_sequence("gevreyseq:-1").is_err());
        assert!(parse_sequence("gevrey:2").is_err());
    }

    #[test]
    fn table_text() {
        let w = parse_table_text("x,phi\n0,0\n0.5,0.25\n1,1\n").unwrap();
        assert_eq!(w.phi_domain_end(), Some(1.0));
        assert!(parse_table_text("0,0\n1,1\n3,2\n").is_err());
        assert!(parse_table_text("0,0\n").is_err());
        assert!(parse_table_text("0,0\n1,1\n2,1.5\n").is_err());
        let j = parse_table_text(r#"{"family":"table","params":{"dx":1.0,"phi":[0.0,1.0,3.0]}}"#).unwrap();
        assert_eq!(j.phi_domain_end(), Some(2.0));
    }
}
