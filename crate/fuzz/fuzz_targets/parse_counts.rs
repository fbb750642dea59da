#![no_main]

use libfuzzer_sys::fuzz_target;
use mdscoset::parse::parse_counts;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(counts) = parse_counts(s) {
        // Canonical decimal text must parse back to the same values.
        let text: Vec<String> = counts.iter().map(ToString::to_string).collect();
        assert_eq!(parse_counts(&text.join(",")).unwrap(), counts);
    }
});
