#![no_main]

use libfuzzer_sys::fuzz_target;
use mdscoset::parse::parse_arc;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(arc) = parse_arc(s) {
        assert_eq!(parse_arc(&arc.to_string()).unwrap(), arc);
    }
});
