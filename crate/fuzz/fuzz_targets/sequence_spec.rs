#![no_main]

use libfuzzer_sys::fuzz_target;
use weightcalc_core::subject::{parse_sequence, SequenceSpec};

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(SequenceSpec::Gevrey(g)) = parse_sequence(s) {
            assert!(g > 0.0 && g.is_finite());
        }
    }
});
