#![no_main]

use libfuzzer_sys::fuzz_target;
use mdscoset::parse::parse_index_list;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(idx) = parse_index_list(s) {
        let text: Vec<String> = idx.iter().map(ToString::to_string).collect();
        assert_eq!(parse_index_list(&text.join(",")).unwrap(), idx);
    }
});
