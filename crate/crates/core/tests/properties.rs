use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::sample::subsequence;

use mdscoset::code::{Budget, CosetCensus};
use mdscoset::combinat::binom;
use mdscoset::formulas::{bonneau_original_raw, bonneau_transformed_raw, prefix_census, LowWeightPrefix};
use mdscoset::gf::{Elem, Field};
use mdscoset::mds::{Family, MdsSpec};
use mdscoset::parse::{parse_counts, parse_index_list, parse_poly};
use mdscoset::serial::{decode_census, CensusDoc};

fn gf(q: u64) -> Arc<Field> {
    Arc::new(Field::from_order(q).unwrap())
}

/// Classes as comparable tuples.
fn shape(c: &CosetCensus) -> Vec<(usize, u64, Vec<BigInt>)> {
    c.classes().iter().map(|k| (k.weight, k.cosets, k.distribution.counts().to_vec())).collect()
}

fn census(s: &MdsSpec) -> CosetCensus {
    s.build().unwrap().coset_census(Budget::DEFAULT).unwrap()
}

/// `(q, d)` pairs small enough for repeated ambient censuses.
fn small_params() -> impl Strategy<Value = (u64, usize)> {
    prop_oneof![Just((4, 3)), Just((4, 4)), Just((5, 3)), Just((5, 4)), Just((5, 5)), Just((7, 4)), Just((7, 5))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn formula_forms_agree(q in prop::sample::select(vec![3u32, 4, 5, 7, 8, 9, 11, 13, 16]),
                           d in 2usize..=7, extra in 0usize..6, seed in prop::collection::vec(any::<u64>(), 7)) {
        let n = (d + extra).min(q as usize + 2);
        prop_assume!(n >= d);
        let prefix: Vec<BigInt> = (0..d - 1)
            .map(|v| {
                let cap = binom(n as u64, v as i64) * num_traits::pow(BigInt::from(q - 1), v);
                if v == 0 { BigInt::from(seed[0] % 2) } else { BigInt::from(seed[v]) % (cap + 1) }
            })
            .collect();
        let p = LowWeightPrefix::new(n, d, q, prefix).unwrap();
        prop_assert_eq!(bonneau_original_raw(&p), bonneau_transformed_raw(&p));
    }

    #[test]
    fn field_laws(q in prop::sample::select(vec![4u64, 8, 9, 16, 25, 27, 49]), a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = Field::from_order(q).unwrap();
        let e = |x: u32| f.elem(x % q as u32).unwrap();
        let (a, b, c) = (e(a), e(b), e(c));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
        }
    }

    #[test]
    fn parse_round_trips(counts in prop::collection::vec(any::<u128>(), 1..20),
                         idx in prop::collection::btree_set(0usize..1000, 1..20)) {
        let text: Vec<String> = counts.iter().map(|c| c.to_string()).collect();
        let parsed = parse_counts(&text.join(",")).unwrap();
        prop_assert_eq!(parsed, counts.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
        let idx: Vec<usize> = idx.into_iter().collect();
        let text: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        prop_assert_eq!(parse_index_list(&text.join(" , ")).unwrap(), idx);
    }

    #[test]
    fn poly_round_trip(p in prop::sample::select(vec![2u32, 3, 5, 7]), coeffs in prop::collection::vec(0u32..7, 1..8)) {
        let coeffs: Vec<u32> = coeffs.into_iter().map(|c| c % p).collect();
        prop_assume!(coeffs.iter().any(|&c| c != 0));
        let terms: Vec<String> = coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(e, c)| match e { 0 => c.to_string(), 1 => format!("{c}x"), _ => format!("{c}*x^{e}") })
            .collect();
        let mut want = coeffs.clone();
        while want.last() == Some(&0) {
            want.pop();
        }
        prop_assert_eq!(parse_poly(&terms.join(" + "), p).unwrap(), want);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    /// Column multipliers and the order of the Vandermonde elements give
    /// equivalent codes, hence identical censuses.
    #[test]
    fn census_invariant_under_scaling((q, d) in small_params(), seed in any::<u64>(), delta in 0usize..3) {
        let f = gf(q);
        let full = MdsSpec::new(Family::Gdrs, f.clone(), d).unwrap();
        prop_assume!(delta <= full.family_len() - d);
        let base = full.shortened_from_end(delta).unwrap();
        let nonzero: Vec<Elem> = f.nonzero().collect();
        let mut scaled = base.clone();
        let mut s = seed;
        let mut next = || { s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); (s >> 33) as usize };
        for v in scaled.vs.iter_mut() {
            *v = nonzero[next() % nonzero.len()];
        }
        for i in (1..scaled.alphas.len()).rev() {
            let j = next() % (i + 1);
            scaled.alphas.swap(i, j);
        }
        prop_assert_eq!(shape(&census(&base)), shape(&census(&scaled)));
    }

    /// Any choice of at most three removed columns gives the same census
    /// as removing the last ones.
    #[test]
    fn removal_choice_is_irrelevant((q, d) in small_params(), pick in subsequence((0usize..8).collect::<Vec<_>>(), 1..=3)) {
        let len = q as usize + 1;
        let removed: Vec<usize> = pick.into_iter().filter(|&i| i < len).collect();
        prop_assume!(!removed.is_empty() && removed.len() <= len - d);
        let f = gf(q);
        let chosen = MdsSpec::new(Family::Gdrs, f.clone(), d).unwrap().with_removed(&removed).unwrap();
        let last = MdsSpec::new(Family::Gdrs, f, d).unwrap().shortened_from_end(removed.len()).unwrap();
        prop_assert_eq!(shape(&census(&chosen)), shape(&census(&last)));
    }

    #[test]
    fn prefix_route_matches_ambient((q, d) in small_params(), delta in 0usize..3) {
        let s = MdsSpec::new(Family::Gdrs, gf(q), d).unwrap();
        prop_assume!(delta <= s.family_len() - d);
        let s = s.shortened_from_end(delta).unwrap();
        let code = s.build().unwrap();
        let ambient = code.coset_census(Budget::DEFAULT).unwrap();
        let prefix = prefix_census(&code, Budget::DEFAULT).unwrap();
        prop_assert_eq!(shape(&ambient), shape(&prefix));
        prop_assert_eq!(ambient.class_of_syndrome(7).distribution.clone(), prefix.class_of_syndrome(7).distribution.clone());
    }

    #[test]
    fn census_documents_round_trip((q, d) in small_params(), delta in 0usize..3, bump in 0usize..64) {
        let s = MdsSpec::new(Family::Gdrs, gf(q), d).unwrap();
        prop_assume!(delta <= s.family_len() - d);
        let s = s.shortened_from_end(delta).unwrap();
        let doc = CensusDoc::new(s.label(), &census(&s));
        let text = serde_json::to_string(&doc).unwrap();
        prop_assert_eq!(decode_census(&text).unwrap(), doc.clone());
        let mut broken = doc;
        let i = bump % broken.classes.len();
        broken.classes[i].cosets += 1;
        prop_assert!(decode_census(&serde_json::to_string(&broken).unwrap()).is_err());
    }
}
