#![no_main]

use libfuzzer_sys::fuzz_target;
use stringy_core::io::{emit_fraction, parse_fraction};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(f) = parse_fraction(s) {
        assert!(f.is_reduced());
        let text = emit_fraction(&f);
        let back = parse_fraction(&text).expect("emitted fraction parses");
        assert_eq!(back, f);
        assert_eq!(emit_fraction(&back), text);
    }
});
