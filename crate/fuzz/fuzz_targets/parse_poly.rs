#![no_main]

use libfuzzer_sys::fuzz_target;
use mdscoset::gf::Field;
use mdscoset::parse::parse_poly;

const PRIMES: [u32; 6] = [2, 3, 5, 7, 11, 13];

// First byte picks the characteristic; the rest is the polynomial text.
fuzz_target!(|data: &[u8]| {
    let Some((&sel, rest)) = data.split_first() else { return };
    let Ok(s) = std::str::from_utf8(rest) else { return };
    let p = PRIMES[sel as usize % PRIMES.len()];
    let Ok(coeffs) = parse_poly(s, p) else { return };
    assert!(coeffs.iter().all(|&c| c < p));
    assert!(coeffs.last().is_none_or(|&c| c != 0));
    // Keep field construction cheap.
    let Some(degree) = coeffs.len().checked_sub(1).filter(|&m| m >= 1) else { return };
    let order = (p as u64).checked_pow(degree as u32).unwrap_or(u64::MAX);
    if order > 4096 {
        return;
    }
    if let Ok(f) = Field::with_modulus(p, &coeffs) {
        assert_eq!(f.order() as u64, order);
    }
});
