//! Versioned JSON documents for every result the CLI emits, their
//! validating decoders, and CSV rendering.
//!
//! All counts travel as decimal strings so no consumer loses precision.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::code::{CosetCensus, WeightDistribution};
use crate::covering::{DeepHoleCertificate, McfReport, SaturatingStatement};
use crate::error::{Error, Result};
use crate::formulas::SymmetryReport;
use crate::geometry::{BridgeReport, PointCensus};
use crate::verify::CriterionOutcome;

pub const SCHEMA_VERSION: u32 = 1;
pub const DISTRIBUTION_SCHEMA: &str = "mdscoset/distribution";
pub const CENSUS_SCHEMA: &str = "mdscoset/coset-census";
pub const POINT_CENSUS_SCHEMA: &str = "mdscoset/point-census";
pub const MCF_SCHEMA: &str = "mdscoset/mcf-report";
pub const VERIFY_SCHEMA: &str = "mdscoset/verify";

/// Largest length a decoder accepts; keeps validation of hostile input cheap.
pub const MAX_DECODED_LENGTH: usize = 4096;

/// Serde adapter: integers as decimal strings.
pub mod decimal {
    use serde::{de, Deserialize, Deserializer, Serializer};
    use std::fmt::Display;
    use std::str::FromStr;

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T, D>(d: D) -> Result<T, D::Error>
    where
        T: FromStr,
        T::Err: Display,
        D: Deserializer<'de>,
    {
        let s = String::deserialize(d)?;
        let body = s.strip_prefix('-').unwrap_or(&s);
        if body.is_empty() || !body.bytes().all(|b| b.is_ascii_digit()) {
            return Err(de::Error::custom(format!("{s:?} is not a decimal integer")));
        }
        s.parse().map_err(de::Error::custom)
    }
}

fn rational_string(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn check_header(schema: &str, version: u32, want: &str) -> Result<()> {
    if schema != want {
        return Err(Error::parse(format!("schema {schema:?}, expected {want:?}")));
    }
    if version != SCHEMA_VERSION {
        return Err(Error::parse(format!("unsupported schema version {version}")));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributionDoc {
    pub schema: String,
    pub version: u32,
    pub n: usize,
    pub d: usize,
    pub q: u32,
    /// How the distribution was obtained, e.g. `transformed` or `closed-form:w1`.
    pub method: String,
    #[serde(with = "decimal")]
    pub total: BigInt,
    pub counts: WeightDistribution,
}

impl DistributionDoc {
    pub fn new(n: usize, d: usize, q: u32, method: impl Into<String>, counts: WeightDistribution) -> DistributionDoc {
        DistributionDoc {
            schema: DISTRIBUTION_SCHEMA.into(),
            version: SCHEMA_VERSION,
            n,
            d,
            q,
            method: method.into(),
            total: counts.total(),
            counts,
        }
    }
}

/// Parses and validates a distribution document.
pub fn decode_distribution(s: &str) -> Result<DistributionDoc> {
    let doc: DistributionDoc = serde_json::from_str(s)?;
    check_header(&doc.schema, doc.version, DISTRIBUTION_SCHEMA)?;
    if doc.n > MAX_DECODED_LENGTH {
        return Err(Error::parse(format!("length {} exceeds {MAX_DECODED_LENGTH}", doc.n)));
    }
    if doc.counts.len() != doc.n {
        return Err(Error::parse(format!("{} counts for length {}", doc.counts.len() + 1, doc.n)));
    }
    if doc.counts.total() != doc.total {
        return Err(Error::parse("total does not match the counts"));
    }
    Ok(doc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusClassDoc {
    pub index: usize,
    pub weight: usize,
    #[serde(with = "decimal")]
    pub cosets: u64,
    pub distribution: WeightDistribution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CensusDoc {
    pub schema: String,
    pub version: u32,
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub q: u32,
    /// `ambient` or `prefix`.
    pub route: String,
    #[serde(with = "decimal")]
    pub total_cosets: u64,
    pub covering_radius: usize,
    pub classes: Vec<CensusClassDoc>,
}

impl CensusDoc {
    pub fn new(code: impl Into<String>, census: &CosetCensus) -> CensusDoc {
        CensusDoc {
            schema: CENSUS_SCHEMA.into(),
            version: SCHEMA_VERSION,
            code: code.into(),
            n: census.n(),
            k: census.k(),
            q: census.q(),
            route: census.route().name().into(),
            total_cosets: census.total_cosets(),
            covering_radius: census.covering_radius(),
            classes: census
                .classes()
                .iter()
                .enumerate()
                .map(|(index, c)| CensusClassDoc {
                    index,
                    weight: c.weight,
                    cosets: c.cosets,
                    distribution: c.distribution.clone(),
                })
                .collect(),
        }
    }
}

/// Parses and validates a census document: class lengths, coset weights,
/// per-class totals `q^k`, and the coset total `q^(n-k)`.
pub fn decode_census(s: &str) -> Result<CensusDoc> {
    let doc: CensusDoc = serde_json::from_str(s)?;
    check_header(&doc.schema, doc.version, CENSUS_SCHEMA)?;
    if doc.n > MAX_DECODED_LENGTH || doc.k > doc.n {
        return Err(Error::parse(format!("invalid dimensions n = {}, k = {}", doc.n, doc.k)));
    }
    if doc.route != "ambient" && doc.route != "prefix" {
        return Err(Error::parse(format!("unknown route {:?}", doc.route)));
    }
    if doc.q < 2 {
        return Err(Error::parse("q must be at least 2"));
    }
    let per_coset = num_traits::pow(BigInt::from(doc.q), doc.k);
    let total_expected = num_traits::pow(BigInt::from(doc.q), doc.n - doc.k);
    let mut total: u128 = 0;
    for (i, c) in doc.classes.iter().enumerate() {
        if c.index != i {
            return Err(Error::parse(format!("class {i} carries index {}", c.index)));
        }
        if c.distribution.len() != doc.n {
            return Err(Error::parse(format!("class {i} has the wrong length")));
        }
        if c.distribution.min_weight() != Some(c.weight) {
            return Err(Error::parse(format!("class {i} weight does not match its distribution")));
        }
        if c.distribution.total() != per_coset {
            return Err(Error::parse(format!("class {i} does not sum to q^k")));
        }
        if c.cosets == 0 {
            return Err(Error::parse(format!("class {i} is empty")));
        }
        total += c.cosets as u128;
    }
    if BigInt::from(total) != total_expected || doc.total_cosets as u128 != total {
        return Err(Error::parse("coset counts do not add up to q^(n-k)"));
    }
    let radius = doc.classes.iter().map(|c| c.weight).max().unwrap_or(0);
    if radius != doc.covering_radius {
        return Err(Error::parse("covering radius does not match the classes"));
    }
    Ok(doc)
}

/// CSV with columns `class_index,weight_W,coset_count,B_0..B_n`.
pub fn census_csv(census: &CosetCensus) -> String {
    let mut out = String::from("class_index,weight_W,coset_count");
    for w in 0..=census.n() {
        out.push_str(&format!(",B_{w}"));
    }
    out.push('\n');
    for (i, c) in census.classes().iter().enumerate() {
        out.push_str(&format!("{i},{},{}", c.weight, c.cosets));
        for b in c.distribution.counts() {
            out.push_str(&format!(",{b}"));
        }
        out.push('\n');
    }
    out
}

/// CSV of one distribution: `w,B_w`.
pub fn distribution_csv(dist: &WeightDistribution) -> String {
    let mut out = String::from("w,B_w\n");
    for (w, b) in dist.counts().iter().enumerate() {
        out.push_str(&format!("{w},{b}\n"));
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointClassDoc {
    pub bisecants: usize,
    #[serde(with = "decimal")]
    pub points: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeRowDoc {
    pub bisecants: usize,
    #[serde(with = "decimal")]
    pub points: u64,
    #[serde(with = "decimal")]
    pub expected_cosets: u64,
    #[serde(with = "decimal")]
    pub census_cosets: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeDoc {
    pub matched: bool,
    pub rows: Vec<BridgeRowDoc>,
    pub pointwise_failures: Vec<String>,
}

impl From<&BridgeReport> for BridgeDoc {
    fn from(r: &BridgeReport) -> BridgeDoc {
        BridgeDoc {
            matched: r.matched,
            rows: r
                .rows
                .iter()
                .map(|r| BridgeRowDoc {
                    bisecants: r.bisecants,
                    points: r.points,
                    expected_cosets: r.expected_cosets,
                    census_cosets: r.census_cosets,
                })
                .collect(),
            pointwise_failures: r.pointwise_failures.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointCensusDoc {
    pub schema: String,
    pub version: u32,
    pub q: u32,
    pub arc: String,
    pub arc_size: usize,
    #[serde(with = "decimal")]
    pub covered: u64,
    pub classes: Vec<PointClassDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bridge: Option<BridgeDoc>,
}

impl PointCensusDoc {
    pub fn new(arc: impl Into<String>, census: &PointCensus, bridge: Option<&BridgeReport>) -> PointCensusDoc {
        PointCensusDoc {
            schema: POINT_CENSUS_SCHEMA.into(),
            version: SCHEMA_VERSION,
            q: census.q,
            arc: arc.into(),
            arc_size: census.arc_size,
            covered: census.covered,
            classes: census.classes.iter().map(|c| PointClassDoc { bisecants: c.bisecants, points: c.points }).collect(),
            bridge: bridge.map(BridgeDoc::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McfValueDoc {
    #[serde(with = "decimal")]
    pub b_r: BigInt,
    #[serde(with = "decimal")]
    pub cosets: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeepHoleDoc {
    #[serde(with = "decimal")]
    pub count: u64,
    pub delta: usize,
    pub parent_radius: usize,
    #[serde(with = "decimal")]
    pub exact: BigInt,
    #[serde(with = "decimal")]
    pub lower_bound: BigInt,
    pub equality_applies: bool,
    pub meets_bound: bool,
    pub holds: bool,
}

impl From<&DeepHoleCertificate> for DeepHoleDoc {
    fn from(c: &DeepHoleCertificate) -> DeepHoleDoc {
        DeepHoleDoc {
            count: c.count,
            delta: c.delta,
            parent_radius: c.parent_radius,
            exact: c.exact.clone(),
            lower_bound: c.lower_bound.clone(),
            equality_applies: c.equality_applies,
            meets_bound: c.meets_bound,
            holds: c.holds,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct McfDoc {
    pub schema: String,
    pub version: u32,
    pub code: String,
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub q: u32,
    pub covering_radius: usize,
    #[serde(with = "decimal")]
    pub mu: BigInt,
    pub is_apmcf: bool,
    pub is_pmcf: bool,
    /// Exact rational as `a/b` (or an integer).
    pub mu_density: String,
    #[serde(with = "decimal")]
    pub farthest_off_cosets: u64,
    pub values: Vec<McfValueDoc>,
    pub saturating: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deep_holes: Option<DeepHoleDoc>,
}

impl McfDoc {
    pub fn new(
        code: impl Into<String>,
        r: &McfReport,
        sat: &SaturatingStatement,
        deep: Option<&DeepHoleCertificate>,
    ) -> McfDoc {
        McfDoc {
            schema: MCF_SCHEMA.into(),
            version: SCHEMA_VERSION,
            code: code.into(),
            n: r.n,
            k: r.k,
            d: r.d,
            q: r.q,
            covering_radius: r.radius,
            mu: r.mu.clone(),
            is_apmcf: r.is_apmcf,
            is_pmcf: r.is_pmcf,
            mu_density: rational_string(&r.mu_density),
            farthest_off_cosets: r.farthest_off_cosets,
            values: r.values.iter().map(|(b, c)| McfValueDoc { b_r: b.clone(), cosets: *c }).collect(),
            saturating: sat.text.clone(),
            deep_holes: deep.map(DeepHoleDoc::from),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectDoc {
    pub w: usize,
    #[serde(with = "decimal")]
    pub a: BigInt,
    #[serde(with = "decimal")]
    pub b: BigInt,
}

pub fn defect_docs(r: &SymmetryReport) -> Vec<DefectDoc> {
    r.defects.iter().map(|(w, a, b)| DefectDoc { w: *w, a: a.clone(), b: b.clone() }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyDoc {
    pub schema: String,
    pub version: u32,
    /// No criterion failed.
    pub passed: bool,
    pub criteria: Vec<CriterionOutcome>,
}

impl VerifyDoc {
    pub fn new(criteria: Vec<CriterionOutcome>) -> VerifyDoc {
        VerifyDoc {
            schema: VERIFY_SCHEMA.into(),
            version: SCHEMA_VERSION,
            passed: criteria.iter().all(CriterionOutcome::passed),
            criteria,
        }
    }
}

/// Formats an exact rational as `a/b`, or `a` when integral.
pub fn format_rational(r: &BigRational) -> String {
    rational_string(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{Budget, LinearCode, Matrix};
    use crate::gf::Field;
    use std::sync::Arc;

    fn census() -> CosetCensus {
        let f = Arc::new(Field::from_order(5).unwrap());
        let h = Matrix::from_reprs(f, &[vec![1, 1, 1, 1, 1], vec![1, 2, 3, 4, 0], vec![1, 4, 4, 1, 0]]).unwrap();
        LinearCode::from_parity(h).unwrap().coset_census(Budget::DEFAULT).unwrap()
    }

    #[test]
    fn distribution_round_trip() {
        let doc = DistributionDoc::new(5, 4, 5, "transformed", WeightDistribution::from_u64(&[0, 0, 2, 4, 11, 8]));
        let s = serde_json::to_string(&doc).unwrap();
        assert!(s.contains(r#""counts":["0","0","2","4","11","8"]"#));
        assert!(s.contains(r#""total":"25""#));
        assert_eq!(decode_distribution(&s).unwrap(), doc);
        let bad = s.replace(r#""total":"25""#, r#""total":"24""#);
        assert!(decode_distribution(&bad).is_err());
        let bad = s.replace(DISTRIBUTION_SCHEMA, "other");
        assert!(decode_distribution(&bad).is_err());
    }

    #[test]
    fn census_round_trip() {
        let c = census();
        let doc = CensusDoc::new("grs q=5 d=4", &c);
        let s = serde_json::to_string_pretty(&doc).unwrap();
        assert_eq!(decode_census(&s).unwrap(), doc);
        let mut broken = doc.clone();
        broken.classes[1].cosets += 1;
        assert!(decode_census(&serde_json::to_string(&broken).unwrap()).is_err());
        let mut broken = doc;
        broken.covering_radius = 2;
        assert!(decode_census(&serde_json::to_string(&broken).unwrap()).is_err());
    }

    #[test]
    fn csv_layout() {
        let csv = census_csv(&census());
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "class_index,weight_W,coset_count,B_0,B_1,B_2,B_3,B_4,B_5");
        assert_eq!(lines.next().unwrap(), "0,0,1,1,0,0,0,20,4");
        assert_eq!(csv.lines().count(), 1 + census().classes().len());
    }
}
