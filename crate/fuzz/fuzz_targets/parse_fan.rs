#![no_main]

use libfuzzer_sys::fuzz_target;
use stringy_core::io::{emit_fan, parse_fan};
use stringy_core::toricfan::check_fan;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(fan) = parse_fan(s) {
        let _ = check_fan(&fan);
        let text = emit_fan(&fan);
        let back = parse_fan(&text).expect("emitted fan parses");
        assert_eq!(emit_fan(&back), text);
    }
});
