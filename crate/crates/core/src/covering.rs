//! Multiple coverings of the farthest-off points.
//!
//! A code of covering radius `R` is an `(R, mu)`-MCF code when every vector
//! at distance `R` has at least `mu` codewords at distance `R`; for a vector
//! in a weight-`R` coset that number is the coset's `B_R`. All figures here
//! come from a coset census, so `mu` is an exact minimum.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::code::{Budget, CosetCensus};
use crate::combinat::binom;
use crate::error::{Error, Result};
use crate::mds::MdsSpec;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McfReport {
    pub n: usize,
    pub k: usize,
    pub q: u32,
    pub d: usize,
    pub radius: usize,
    /// Smallest `B_R` over the farthest-off cosets.
    pub mu: BigInt,
    /// All farthest-off cosets share `B_R = mu`.
    pub is_apmcf: bool,
    /// APMCF and `d >= 2R`.
    pub is_pmcf: bool,
    /// Average of `B_R` over farthest-off vectors, divided by `mu`.
    pub mu_density: BigRational,
    /// Number of cosets of weight `R`.
    pub farthest_off_cosets: u64,
    /// `(B_R, cosets)` for each distinct value, ascending.
    pub values: Vec<(BigInt, u64)>,
}

pub fn mcf_classify(census: &CosetCensus, d: usize) -> Result<McfReport> {
    let radius = census.covering_radius();
    if radius == 0 {
        return Err(Error::domain("a code with covering radius 0 has no farthest-off points"));
    }
    let mut values: Vec<(BigInt, u64)> = Vec::new();
    for c in census.classes_of_weight(radius) {
        let b = c.distribution.get(radius);
        match values.iter_mut().find(|(v, _)| *v == b) {
            Some((_, n)) => *n += c.cosets,
            None => values.push((b, c.cosets)),
        }
    }
    values.sort();
    let mu = values[0].0.clone();
    let cosets: u64 = values.iter().map(|(_, c)| c).sum();
    let weighted: BigInt = values.iter().map(|(b, c)| b * BigInt::from(*c)).sum();
    let mu_density = BigRational::new(weighted, &mu * BigInt::from(cosets));
    let is_apmcf = values.len() == 1;
    Ok(McfReport {
        n: census.n(),
        k: census.k(),
        q: census.q(),
        d,
        radius,
        is_apmcf,
        is_pmcf: is_apmcf && d >= 2 * radius,
        mu,
        mu_density,
        farthest_off_cosets: cosets,
        values,
    })
}

/// `C(n,2)(q-1)^2 / (mu (q^(n-k) - 1 - n(q-1)))`, the density of a code with
/// `R = 2` and `d > 3`.
pub fn mu_density_closed_form(n: usize, k: usize, q: u32, mu: &BigInt) -> Result<BigRational> {
    let qm1 = BigInt::from(q - 1);
    let weight2 = num_traits::pow(BigInt::from(q), n - k) - BigInt::one() - BigInt::from(n) * &qm1;
    if weight2 <= BigInt::zero() || mu <= &BigInt::zero() {
        return Err(Error::domain("closed-form density needs weight-2 cosets and mu > 0"));
    }
    Ok(BigRational::new(binom(n as u64, 2) * &qm1 * &qm1, mu * weight2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeepHoleCertificate {
    /// Cosets of weight `d - 1` in the shortened code.
    pub count: u64,
    pub delta: usize,
    pub parent_radius: usize,
    /// `(q - 1) Δ`, required exactly when the parent has `R = d - 2`.
    pub exact: BigInt,
    /// `(q - 1)(q + 1 - n)`, the bound that always applies.
    pub lower_bound: BigInt,
    pub equality_applies: bool,
    /// `count >= lower_bound`.
    pub meets_bound: bool,
    /// The equality when it is claimed, the bound otherwise.
    pub holds: bool,
}

/// Counts weight-`(d-1)` cosets of a code obtained by column removal and
/// checks them against `(q-1) Δ` (parent with `R = d - 2`) or the lower
/// bound `(q-1)(q+1-n)` otherwise. The parent's radius comes from a
/// breadth-first search over its syndromes.
pub fn count_deep_hole_cosets(spec: &MdsSpec, census: &CosetCensus, budget: Budget) -> Result<DeepHoleCertificate> {
    let delta = spec.delta();
    if delta == 0 {
        return Err(Error::domain("deep-hole certificate needs a code obtained by column removal"));
    }
    if census.n() != spec.n() || census.q() != spec.q() {
        return Err(Error::domain("census does not belong to the specified code"));
    }
    let mut parent = spec.clone();
    parent.removed.clear();
    let parent_radius = parent.build()?.coset_weight_profile(budget)?.covering_radius();
    let d = spec.d;
    let q = BigInt::from(spec.q() - 1);
    let count = census.cosets_of_weight(d - 1);
    let exact = &q * BigInt::from(delta);
    let lower_bound = &q * (BigInt::from(spec.q() + 1) - BigInt::from(spec.n())).max(BigInt::zero());
    let equality_applies = parent_radius + 2 == d;
    let meets_bound = BigInt::from(count) >= lower_bound;
    let holds = if equality_applies { BigInt::from(count) == exact } else { meets_bound };
    Ok(DeepHoleCertificate { count, delta, parent_radius, exact, lower_bound, equality_applies, meets_bound, holds })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SaturatingKind {
    /// Every point off the column set is covered exactly `mu` times.
    Optimal,
    /// Every point is covered at least `mu` times.
    Multiple,
}

/// The column-set reading of an MCF certificate: the `n` parity-check
/// columns form an `(R-1, mu)`-saturating set in `PG(n-k-1, q)`,
/// optimal (OS) when the code is APMCF.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturatingStatement {
    pub certified: bool,
    pub kind: Option<SaturatingKind>,
    pub rho: usize,
    pub mu: BigInt,
    pub set_size: usize,
    pub space_dim: usize,
    pub q: u32,
    pub text: String,
}

pub fn saturating_set_report(report: &McfReport) -> SaturatingStatement {
    let space_dim = report.n - report.k - 1;
    let mut st = SaturatingStatement {
        certified: false,
        kind: None,
        rho: report.radius.saturating_sub(1),
        mu: report.mu.clone(),
        set_size: report.n,
        space_dim,
        q: report.q,
        text: String::new(),
    };
    if report.radius == 0 || report.mu <= BigInt::zero() || report.n == report.k {
        st.text = "no multiple-covering certificate; no saturating-set statement".into();
        return st;
    }
    st.certified = true;
    let (kind, label) =
        if report.is_apmcf { (SaturatingKind::Optimal, "OS") } else { (SaturatingKind::Multiple, "saturating") };
    st.kind = Some(kind);
    st.text = format!(
        "the {} columns of the parity-check matrix form a ({}, {})-{} {}-set in PG({}, {})",
        report.n, st.rho, report.mu, label, report.n, space_dim, report.q
    );
    st
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use crate::mds::Family;
    use std::sync::Arc;

    fn spec(family: Family, q: u64, d: usize, delta: usize) -> MdsSpec {
        let f = Arc::new(Field::from_order(q).unwrap());
        MdsSpec::new(family, f, d).unwrap().shortened_from_end(delta).unwrap()
    }

    fn classify(s: &MdsSpec) -> McfReport {
        let census = s.build().unwrap().coset_census(Budget::DEFAULT).unwrap();
        mcf_classify(&census, s.d).unwrap()
    }

    #[test]
    fn grs_q5_is_apmcf() {
        let r = classify(&spec(Family::Gdrs, 5, 4, 1));
        assert_eq!((r.radius, r.mu.clone(), r.is_apmcf, r.is_pmcf), (3, BigInt::from(10), true, false));
        assert_eq!(r.mu_density, BigRational::one());
        let st = saturating_set_report(&r);
        assert!(st.certified && st.kind == Some(SaturatingKind::Optimal));
        assert_eq!((st.rho, st.space_dim), (2, 2));
    }

    #[test]
    fn gtrs_q4_is_pmcf() {
        let r = classify(&spec(Family::Gtrs, 4, 4, 0));
        assert_eq!((r.radius, r.mu.clone(), r.is_pmcf), (2, BigInt::from(3), true));
    }

    #[test]
    fn gdrs_q5_density() {
        let r = classify(&spec(Family::Gdrs, 5, 4, 0));
        assert_eq!(r.mu, BigInt::from(2));
        assert!(!r.is_apmcf);
        assert_eq!(r.mu_density, BigRational::new(6.into(), 5.into()));
        assert_eq!(mu_density_closed_form(6, 3, 5, &r.mu).unwrap(), r.mu_density);
        assert_eq!(saturating_set_report(&r).kind, Some(SaturatingKind::Multiple));
    }

    #[test]
    fn deep_holes() {
        for (q, d, delta) in [(5, 4, 1), (7, 4, 2), (4, 4, 1)] {
            let s = spec(Family::Gdrs, q, d, delta);
            let census = s.build().unwrap().coset_census(Budget::DEFAULT).unwrap();
            let cert = count_deep_hole_cosets(&s, &census, Budget::DEFAULT).unwrap();
            assert!(cert.holds, "{cert:?}");
            if q == 4 {
                assert!(!cert.equality_applies);
            } else {
                assert_eq!(BigInt::from(cert.count), cert.exact);
            }
        }
        let s = spec(Family::Gdrs, 5, 4, 0);
        let census = s.build().unwrap().coset_census(Budget::DEFAULT).unwrap();
        assert!(count_deep_hole_cosets(&s, &census, Budget::DEFAULT).is_err());
    }
}
