#![no_main]

use libfuzzer_sys::fuzz_target;
use mdscoset::serial::decode_census;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = decode_census(s) {
        let again = serde_json::to_string(&doc).unwrap();
        assert_eq!(decode_census(&again).unwrap(), doc);
    }
});
