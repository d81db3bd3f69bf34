#![no_main]

use libfuzzer_sys::fuzz_target;
use weightcalc_core::weights::conjugate_at;
use weightcalc_core::WeightFunction;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(w) = WeightFunction::from_json_str(s) {
            assert_eq!(WeightFunction::from_json_str(&w.to_json_string()).unwrap(), w);
            let c = conjugate_at(&w, &[0.0, 1.0, 2.5]);
            assert_eq!(c[0], 0.0);
            assert!(c.iter().all(|v| *v >= 0.0));
        }
    }
});
