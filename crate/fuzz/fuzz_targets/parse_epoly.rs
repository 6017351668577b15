#![no_main]

use libfuzzer_sys::fuzz_target;
use stringy_core::io::{emit_epoly, parse_epoly};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(e) = parse_epoly(s) {
        let text = emit_epoly(&e);
        let back = parse_epoly(&text).expect("emitted polynomial parses");
        assert_eq!(back, e);
    }
});
