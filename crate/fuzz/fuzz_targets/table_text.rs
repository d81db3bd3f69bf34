#![no_main]

use libfuzzer_sys::fuzz_target;
use weightcalc_core::subject::parse_table_text;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(w) = parse_table_text(s) {
            assert_eq!(w.phi(0.0), 0.0);
        }
    }
});
