#![no_main]

use libfuzzer_sys::fuzz_target;
use mdscoset::serial::decode_distribution;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(doc) = decode_distribution(s) {
        let again = serde_json::to_string(&doc).unwrap();
        assert_eq!(decode_distribution(&again).unwrap(), doc);
    }
});
