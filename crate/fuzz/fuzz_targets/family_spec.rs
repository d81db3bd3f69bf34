#![no_main]

use libfuzzer_sys::fuzz_target;
use weightcalc_core::subject::{parse_family, FamilySpec};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(FamilySpec::Builtin(w)) = parse_family(s) {
            // every accepted weight vanishes on [0, 1] and evaluates finitely
            assert_eq!(w.evaluate(1.0).unwrap(), 0.0);
            assert!(w.evaluate(10.0).unwrap().is_finite());
        }
    }
});
