#![no_main]

use libfuzzer_sys::fuzz_target;
use stringy_core::io::{emit_strata, parse_strata};
use stringy_core::resolution::validate_data;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(d) = parse_strata(s) {
        let _ = validate_data(&d);
        let text = emit_strata(&d);
        assert_eq!(emit_strata(&parse_strata(&text).expect("emitted strata parse")), text);
    }
});
