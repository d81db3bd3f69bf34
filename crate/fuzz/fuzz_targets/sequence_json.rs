#![no_main]

use libfuzzer_sys::fuzz_target;
use weightcalc_core::sequences::{check_m1, AssociatedFunction};
use weightcalc_core::WeightSequence;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(seq) = WeightSequence::from_json_str(s) {
            let back = WeightSequence::from_json_str(&seq.to_json_string()).unwrap();
            assert_eq!(back.log_values(), seq.log_values());
            let _ = check_m1(&seq);
            let _ = AssociatedFunction::new(&seq).eval(10.0);
        }
    }
});
