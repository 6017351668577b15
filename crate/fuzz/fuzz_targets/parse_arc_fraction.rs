#![no_main]

use libfuzzer_sys::fuzz_target;
use stringy_core::io::{emit_arc_fraction, parse_arc_fraction};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_arc_fraction(s) {
        let text = emit_arc_fraction(&f);
        let back = parse_arc_fraction(&text).expect("emitted arc fraction parses");
        assert_eq!(emit_arc_fraction(&back), text);
    }
});
