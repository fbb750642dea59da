//! Parsers for the textual inputs accepted on the command line.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::geometry::ArcChoice;

/// Longest list accepted by the list parsers.
pub const MAX_LIST_LEN: usize = 4096;
/// Longest decimal literal accepted for a count.
pub const MAX_DIGITS: usize = 4096;
/// Highest polynomial degree accepted.
pub const MAX_DEGREE: usize = 64;

fn items(s: &str) -> Result<Vec<&str>> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse("empty list"));
    }
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() > MAX_LIST_LEN {
        return Err(Error::parse(format!("list longer than {MAX_LIST_LEN} entries")));
    }
    if let Some(i) = parts.iter().position(|p| p.is_empty()) {
        return Err(Error::parse(format!("empty entry at position {i}")));
    }
    Ok(parts)
}

fn decimal(s: &str) -> Result<&str> {
    if s.len() > MAX_DIGITS {
        return Err(Error::parse(format!("number longer than {MAX_DIGITS} digits")));
    }
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Error::parse(format!("{s:?} is not a non-negative decimal integer")));
    }
    Ok(s)
}

/// Comma-separated non-negative counts, e.g. `0,0,2`.
pub fn parse_counts(s: &str) -> Result<Vec<BigInt>> {
    items(s)?
        .into_iter()
        .map(|p| decimal(p)?.parse::<BigInt>().map_err(|e| Error::parse(e.to_string())))
        .collect()
}

/// Comma-separated distinct indices, e.g. `4,5`.
pub fn parse_index_list(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for p in items(s)? {
        let i: usize = decimal(p)?.parse().map_err(|_| Error::parse(format!("index {p:?} out of range")))?;
        if out.contains(&i) {
            return Err(Error::parse(format!("index {i} repeated")));
        }
        out.push(i);
    }
    Ok(out)
}

/// A polynomial over GF(p) such as `x^2+x+1`, `2x^3 + 1` or `x^4+x+1`, as
/// coefficients low degree first. Like terms are combined; `-` is accepted.
pub fn parse_poly(s: &str, p: u32) -> Result<Vec<u32>> {
    if p < 2 {
        return Err(Error::parse("characteristic must be at least 2"));
    }
    // Blanks may separate operators, never the characters of one token:
    // `x^4 2` is an error rather than `x^42`.
    let chars: Vec<char> = s.chars().collect();
    for (i, w) in chars.windows(2).enumerate() {
        if w[0].is_ascii_alphanumeric() && w[1].is_whitespace() {
            let next = chars[i + 1..].iter().find(|c| !c.is_whitespace());
            if next.is_some_and(|c| c.is_ascii_alphanumeric()) {
                return Err(Error::parse(format!("unexpected blank in polynomial {s:?}")));
            }
        }
    }
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::parse("empty polynomial"));
    }
    if !compact.is_ascii() {
        return Err(Error::parse("polynomial must be ASCII"));
    }
    let p64 = p as u64;
    let mut coeffs: Vec<u64> = Vec::new();
    let bytes = compact.as_bytes();
    let mut i = 0;
    let mut first = true;
    while i < bytes.len() {
        let mut negative = false;
        match bytes[i] {
            b'+' => i += 1,
            b'-' => {
                negative = true;
                i += 1;
            }
            _ if first => {}
            c => return Err(Error::parse(format!("expected '+' or '-' before {:?}", c as char))),
        }
        first = false;
        let start = i;
        while i < bytes.len() && bytes[i] != b'+' && bytes[i] != b'-' {
            i += 1;
        }
        let (c, e) = parse_term(&compact[start..i], p64)?;
        if e > MAX_DEGREE {
            return Err(Error::parse(format!("degree {e} exceeds {MAX_DEGREE}")));
        }
        if coeffs.len() <= e {
            coeffs.resize(e + 1, 0);
        }
        let c = if negative { (p64 - c) % p64 } else { c };
        coeffs[e] = (coeffs[e] + c) % p64;
    }
    while coeffs.len() > 1 && coeffs.last() == Some(&0) {
        coeffs.pop();
    }
    if coeffs.iter().all(|&c| c == 0) {
        return Err(Error::parse("zero polynomial"));
    }
    Ok(coeffs.into_iter().map(|c| c as u32).collect())
}

/// One term `[c][*]x[^e]` or `c`; the coefficient is reduced mod `p`.
fn parse_term(t: &str, p: u64) -> Result<(u64, usize)> {
    if t.is_empty() {
        return Err(Error::parse("empty term"));
    }
    let reduce = |digits: &str| -> Result<u64> {
        let d = decimal(digits)?;
        Ok(d.bytes().fold(0u64, |acc, b| (acc * 10 + (b - b'0') as u64) % p))
    };
    match t.find('x') {
        None => Ok((reduce(t)?, 0)),
        Some(pos) => {
            let coef = t[..pos].strip_suffix('*').unwrap_or(&t[..pos]);
            let c = if coef.is_empty() { 1 % p } else { reduce(coef)? };
            let rest = &t[pos + 1..];
            let e = if rest.is_empty() {
                1
            } else {
                let digits = rest.strip_prefix('^').ok_or_else(|| Error::parse(format!("bad exponent in {t:?}")))?;
                let d = decimal(digits)?;
                if d.len() > 4 {
                    return Err(Error::parse(format!("exponent in {t:?} too large")));
                }
                d.parse().expect("short decimal")
            };
            Ok((c, e))
        }
    }
}

/// `conic`, `hyperoval`, or `conic-minus:K` (the conic without K points).
pub fn parse_arc(s: &str) -> Result<ArcChoice> {
    let s = s.trim().to_ascii_lowercase();
    match s.as_str() {
        "conic" => Ok(ArcChoice::Conic),
        "hyperoval" => Ok(ArcChoice::Hyperoval),
        _ => {
            let k = s
                .strip_prefix("conic-minus:")
                .ok_or_else(|| Error::parse(format!("unknown arc {s:?} (conic, hyperoval, conic-minus:K)")))?;
            let k: usize = decimal(k)?.parse().map_err(|_| Error::parse("removal count out of range"))?;
            if k == 0 {
                return Err(Error::parse("conic-minus needs at least one point removed"));
            }
            Ok(ArcChoice::ConicMinus(k))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_counts("0, 0,2").unwrap(), vec![0.into(), 0.into(), BigInt::from(2)]);
        let big = parse_counts("123456789012345678901234567890").unwrap();
        assert_eq!(big[0].to_string(), "123456789012345678901234567890");
        for bad in ["", "1,,2", "-1", "+1", "1.5", "a", "1,"] {
            assert!(parse_counts(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn index_lists() {
        assert_eq!(parse_index_list("5,3").unwrap(), vec![5, 3]);
        assert!(parse_index_list("1,1").is_err());
        assert!(parse_index_list("99999999999999999999999").is_err());
    }

    #[test]
    fn polys() {
        assert_eq!(parse_poly("x^2+x+1", 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(parse_poly("x^2 + 1", 3).unwrap(), vec![1, 0, 1]);
        assert_eq!(parse_poly("2x^3+1", 3).unwrap(), vec![1, 0, 0, 2]);
        assert_eq!(parse_poly("2*x^3-1", 3).unwrap(), vec![2, 0, 0, 2]);
        assert_eq!(parse_poly("x+x", 3).unwrap(), vec![0, 2]);
        assert_eq!(parse_poly("1", 5).unwrap(), vec![1]);
        for bad in ["", "x^", "x^a", "++x", "x^2+", "3", "y+1", "x^100", "x^4 2", "1 0x"] {
            assert!(parse_poly(bad, 3).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn arcs() {
        assert_eq!(parse_arc("conic").unwrap(), ArcChoice::Conic);
        assert_eq!(parse_arc("Hyperoval").unwrap(), ArcChoice::Hyperoval);
        assert_eq!(parse_arc("conic-minus:2").unwrap(), ArcChoice::ConicMinus(2));
        for bad in ["", "conic-minus:", "conic-minus:0", "line", "conic-minus:-1"] {
            assert!(parse_arc(bad).is_err(), "{bad:?}");
        }
    }
}
