//! Replays the checked-in fuzz seeds through the same entry points and
//! round-trip assertions as the fuzz targets, so the seeds stay meaningful.

use std::fs;
use std::path::PathBuf;

use mdscoset::parse::{parse_arc, parse_counts, parse_index_list, parse_poly};
use mdscoset::serial::{decode_census, decode_distribution};

fn seeds(target: &str) -> Vec<(String, Vec<u8>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), fs::read(&p).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

fn text(data: &[u8]) -> &str {
    std::str::from_utf8(data).unwrap()
}

#[test]
fn list_seeds() {
    let mut accepted = 0;
    for (_, data) in seeds("parse_counts") {
        if let Ok(c) = parse_counts(text(&data)) {
            let s: Vec<String> = c.iter().map(ToString::to_string).collect();
            assert_eq!(parse_counts(&s.join(",")).unwrap(), c);
            accepted += 1;
        }
    }
    assert_eq!(accepted, 3);
    for (_, data) in seeds("parse_index_list") {
        if let Ok(idx) = parse_index_list(text(&data)) {
            let s: Vec<String> = idx.iter().map(ToString::to_string).collect();
            assert_eq!(parse_index_list(&s.join(",")).unwrap(), idx);
        }
    }
}

#[test]
fn poly_and_arc_seeds() {
    const PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];
    for (name, data) in seeds("parse_poly") {
        let (&sel, rest) = data.split_first().unwrap();
        let p = PRIMES[sel as usize % PRIMES.len()];
        let Ok(coeffs) = parse_poly(text(rest), p) else {
            assert_eq!(name, "split_token");
            continue;
        };
        let field = mdscoset::gf::Field::with_modulus(p, &coeffs);
        assert_eq!(field.is_ok(), name.starts_with("gf"), "{name}");
    }
    for (name, data) in seeds("parse_arc") {
        let arc = parse_arc(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(parse_arc(&arc.to_string()).unwrap(), arc);
    }
}

#[test]
fn document_seeds() {
    for (name, data) in seeds("decode_distribution") {
        let doc = decode_distribution(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(decode_distribution(&serde_json::to_string(&doc).unwrap()).unwrap(), doc);
    }
    for (name, data) in seeds("decode_census") {
        let doc = decode_census(text(&data)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(decode_census(&serde_json::to_string(&doc).unwrap()).unwrap(), doc);
    }
}
