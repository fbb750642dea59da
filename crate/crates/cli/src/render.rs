//! Plain-text tables and the CSV layouts that are not part of the library.

use std::fmt::Write;

use mdscoset::code::{CosetCensus, WeightDistribution};
use mdscoset::geometry::{BridgeReport, PointCensus};
use mdscoset::serial::{McfDoc, VerifyDoc};

fn join(dist: &WeightDistribution) -> String {
    dist.counts().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn distribution_table(n: usize, d: usize, q: u32, method: &str, dist: &WeightDistribution) -> String {
    let mut s = format!("n = {n}, d = {d}, q = {q} ({method}), total {}\n", dist.total());
    let width = dist.counts().iter().map(|c| c.to_string().len()).max().unwrap_or(1);
    for (w, b) in dist.counts().iter().enumerate() {
        let _ = writeln!(s, "B_{w:<3} {b:>width$}");
    }
    s
}

pub fn census_table(label: &str, census: &CosetCensus) -> String {
    let mut s = format!(
        "{label}: {} cosets in {} classes, covering radius {}, {} route\n",
        census.total_cosets(),
        census.classes().len(),
        census.covering_radius(),
        census.route().name()
    );
    let _ = writeln!(s, "{:>5} {:>3} {:>12}  B_0..B_{}", "class", "W", "cosets", census.n());
    for (i, c) in census.classes().iter().enumerate() {
        let _ = writeln!(s, "{i:>5} {:>3} {:>12}  {}", c.weight, c.cosets, join(&c.distribution));
    }
    s
}

pub fn point_census_csv(census: &PointCensus) -> String {
    let mut s = String::from("bisecants,points\n");
    for c in &census.classes {
        let _ = writeln!(s, "{},{}", c.bisecants, c.points);
    }
    s
}

pub fn point_census_table(label: &str, census: &PointCensus, bridge: Option<&BridgeReport>) -> String {
    let mut s = format!(
        "{label} in PG(2,{}): {} points on the arc, {} off it\n",
        census.q, census.arc_size, census.covered
    );
    let _ = writeln!(s, "{:>9} {:>8}", "bisecants", "points");
    for c in &census.classes {
        let _ = writeln!(s, "{:>9} {:>8}", c.bisecants, c.points);
    }
    if let Some(b) = bridge {
        let _ = writeln!(s, "coset census: {}", if b.matched { "matches" } else { "DISAGREES" });
        for r in &b.rows {
            let _ = writeln!(
                s,
                "  {} bisecants: {} points -> {} cosets expected, {} in census",
                r.bisecants, r.points, r.expected_cosets, r.census_cosets
            );
        }
        for f in &b.pointwise_failures {
            let _ = writeln!(s, "  {f}");
        }
    }
    s
}

pub fn mcf_csv(doc: &McfDoc) -> String {
    let mut s = String::from("b_r,cosets\n");
    for v in &doc.values {
        let _ = writeln!(s, "{},{}", v.b_r, v.cosets);
    }
    s
}

pub fn mcf_table(doc: &McfDoc) -> String {
    let kind = if doc.is_pmcf {
        "PMCF"
    } else if doc.is_apmcf {
        "APMCF"
    } else {
        "MCF"
    };
    let mut s = format!(
        "{}: ({}, {})-{kind}, density {}\n",
        doc.code, doc.covering_radius, doc.mu, doc.mu_density
    );
    for v in &doc.values {
        let _ = writeln!(s, "  B_{} = {} on {} cosets", doc.covering_radius, v.b_r, v.cosets);
    }
    let _ = writeln!(s, "{}", doc.saturating);
    if let Some(h) = &doc.deep_holes {
        let claim = if h.equality_applies {
            format!("(q-1)Δ = {}", h.exact)
        } else {
            format!("at least {}", h.lower_bound)
        };
        let _ = writeln!(
            s,
            "deep-hole cosets: {} (Δ = {}, parent R = {}; expected {claim}): {}",
            h.count,
            h.delta,
            h.parent_radius,
            if h.holds { "holds" } else { "FAILS" }
        );
    }
    s
}

pub fn verify_csv(doc: &VerifyDoc) -> String {
    let mut s = String::from("id,theorem,status,checks,failures\n");
    for c in &doc.criteria {
        let _ = writeln!(s, "{},{},{},{},{}", c.id, c.theorem, c.status, c.checks, c.failure_count);
    }
    s
}

pub fn verify_table(doc: &VerifyDoc) -> String {
    let mut s = String::new();
    for c in &doc.criteria {
        let _ = writeln!(s, "{}", c.summary());
        for f in &c.failures {
            let _ = writeln!(s, "    mismatch: {f}");
        }
        if c.failure_count > c.failures.len() as u64 {
            let _ = writeln!(s, "    ... {} more", c.failure_count - c.failures.len() as u64);
        }
        for n in &c.notes {
            let _ = writeln!(s, "    {n}");
        }
    }
    let _ = writeln!(s, "{}", if doc.passed { "all criteria passed" } else { "some criteria FAILED" });
    s
}
