//! Incidence in the projective plane PG(2, q): arcs, bisecant censuses of
//! the points off an arc, and the bridge to coset censuses of the code whose
//! parity-check columns are the arc.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::code::{CosetCensus, LinearCode, Matrix};
use crate::combinat::binom;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::mds::{default_alphas, gdrs_parity, gtrs_parity};

/// A point (or, read dually, a line) with its first nonzero coordinate 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: [Elem; 3],
}

impl ProjPoint {
    pub fn new(field: &Field, coords: [Elem; 3]) -> Result<ProjPoint> {
        if coords.iter().any(|&c| !field.owns(c)) {
            return Err(Error::FieldMismatch);
        }
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or_else(|| Error::domain("the zero vector is not a projective point"))?;
        let inv = field.inv(*lead)?;
        Ok(ProjPoint { coords: coords.map(|c| field.mul(c, inv)) })
    }

    pub fn from_reprs(field: &Field, r: [u32; 3]) -> Result<ProjPoint> {
        ProjPoint::new(field, [field.elem(r[0])?, field.elem(r[1])?, field.elem(r[2])?])
    }

    pub fn coords(&self) -> [Elem; 3] {
        self.coords
    }

    /// Position in the canonical listing of all `q^2 + q + 1` points.
    pub fn index(&self, q: u32) -> usize {
        let q = q as usize;
        let [x, y, z] = self.coords.map(|c| c.repr() as usize);
        if x != 0 {
            y * q + z
        } else if y != 0 {
            q * q + z
        } else {
            q * q + q
        }
    }
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [x, y, z] = self.coords.map(|c| c.repr());
        write!(f, "({x},{y},{z})")
    }
}

/// All points of PG(2, q) in canonical index order.
pub fn all_points(field: &Field) -> Vec<ProjPoint> {
    let one = field.one();
    let zero = field.zero();
    let mut out = Vec::with_capacity((field.order() as usize).pow(2) + field.order() as usize + 1);
    for y in field.elements() {
        for z in field.elements() {
            out.push(ProjPoint { coords: [one, y, z] });
        }
    }
    for z in field.elements() {
        out.push(ProjPoint { coords: [zero, one, z] });
    }
    out.push(ProjPoint { coords: [zero, zero, one] });
    out
}

/// The line through two distinct points, in dual coordinates.
pub fn line_through(field: &Field, a: &ProjPoint, b: &ProjPoint) -> Result<ProjPoint> {
    let [a0, a1, a2] = a.coords;
    let [b0, b1, b2] = b.coords;
    let m = |x, y| field.mul(x, y);
    let cross = [
        field.sub(m(a1, b2), m(a2, b1)),
        field.sub(m(a2, b0), m(a0, b2)),
        field.sub(m(a0, b1), m(a1, b0)),
    ];
    ProjPoint::new(field, cross).map_err(|_| Error::domain("a line needs two distinct points"))
}

pub fn incident(field: &Field, line: &ProjPoint, p: &ProjPoint) -> bool {
    line.coords
        .iter()
        .zip(&p.coords)
        .fold(field.zero(), |acc, (&l, &x)| field.add(acc, field.mul(l, x)))
        .is_zero()
}

/// Determinant of the 3x3 matrix with the given columns.
pub fn det3(field: &Field, a: &ProjPoint, b: &ProjPoint, c: &ProjPoint) -> Elem {
    let [a0, a1, a2] = a.coords;
    let [b0, b1, b2] = b.coords;
    let [c0, c1, c2] = c.coords;
    let m = |x, y, z| field.mul(field.mul(x, y), z);
    let pos = field.add(field.add(m(a0, b1, c2), m(b0, c1, a2)), m(c0, a1, b2));
    let neg = field.add(field.add(m(c0, b1, a2), m(a0, c1, b2)), m(b0, a1, c2));
    field.sub(pos, neg)
}

/// A set of points in PG(2, q), no three collinear.
#[derive(Clone, Debug)]
pub struct PlaneArc {
    field: Arc<Field>,
    points: Vec<ProjPoint>,
}

impl PlaneArc {
    pub fn new(field: Arc<Field>, points: Vec<ProjPoint>) -> Result<PlaneArc> {
        let n = points.len();
        for i in 0..n {
            for j in i + 1..n {
                if points[i] == points[j] {
                    return Err(Error::construction(format!("arc point {:?} repeated", points[i])));
                }
                for k in j + 1..n {
                    if det3(&field, &points[i], &points[j], &points[k]).is_zero() {
                        return Err(Error::construction(format!(
                            "points {:?}, {:?}, {:?} are collinear",
                            points[i], points[j], points[k]
                        )));
                    }
                }
            }
        }
        Ok(PlaneArc { field, points })
    }

    /// Normalized columns of a 3-row matrix.
    pub fn from_columns(h: &Matrix) -> Result<PlaneArc> {
        if h.rows() != 3 {
            return Err(Error::DimensionMismatch { expected: 3, got: h.rows() });
        }
        let f = h.field().clone();
        let points = h
            .columns()
            .into_iter()
            .map(|c| ProjPoint::new(&f, [c[0], c[1], c[2]]))
            .collect::<Result<Vec<_>>>()?;
        PlaneArc::new(f, points)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn without(&self, idxs: &[usize]) -> Result<PlaneArc> {
        if let Some(&bad) = idxs.iter().find(|&&i| i >= self.len()) {
            return Err(Error::domain(format!("arc point index {bad} out of range 0..{}", self.len())));
        }
        let points = (0..self.len()).filter(|i| !idxs.contains(i)).map(|i| self.points[i]).collect();
        Ok(PlaneArc { field: self.field.clone(), points })
    }

    /// Parity-check matrix with the arc points as columns.
    pub fn parity_matrix(&self) -> Result<Matrix> {
        let cols: Vec<Vec<Elem>> = self.points.iter().map(|p| p.coords.to_vec()).collect();
        Matrix::from_columns(self.field.clone(), &cols)
    }

    pub fn code(&self) -> Result<LinearCode> {
        LinearCode::from_parity(self.parity_matrix()?)
    }

    /// Number of bisecants through each point of the plane, indexed by
    /// [`ProjPoint::index`]; `None` on the arc.
    pub fn bisecants_per_point(&self) -> Vec<Option<usize>> {
        let f = &self.field;
        let q = self.q();
        let total = (q as usize).pow(2) + q as usize + 1;
        let mut counts: Vec<Option<usize>> = vec![Some(0); total];
        for p in &self.points {
            counts[p.index(q)] = None;
        }
        let n = self.len();
        for i in 0..n {
            for j in i + 1..n {
                let [a, b] = [self.points[i].coords, self.points[j].coords];
                // The off-arc points of the bisecant are b + t a, t != 0.
                for t in f.nonzero() {
                    let c = [0, 1, 2].map(|r| f.add(b[r], f.mul(t, a[r])));
                    let p = ProjPoint::new(f, c).expect("distinct points span a line");
                    if let Some(c) = counts[p.index(q)].as_mut() {
                        *c += 1;
                    }
                }
            }
        }
        counts
    }
}

/// Which standard arc to build.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArcChoice {
    Conic,
    Hyperoval,
    /// The conic without this many points; by default its last ones in
    /// column order.
    ConicMinus(usize),
}

impl fmt::Display for ArcChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArcChoice::Conic => f.write_str("conic"),
            ArcChoice::Hyperoval => f.write_str("hyperoval"),
            ArcChoice::ConicMinus(k) => write!(f, "conic-minus:{k}"),
        }
    }
}

pub fn build_arc(field: &Arc<Field>, choice: &ArcChoice) -> Result<PlaneArc> {
    build_arc_with(field, choice, None)
}

/// Like [`build_arc`], with the removed conic points (0-based) given
/// explicitly for `ConicMinus`.
pub fn build_arc_with(field: &Arc<Field>, choice: &ArcChoice, removed: Option<&[usize]>) -> Result<PlaneArc> {
    match (choice, removed) {
        (ArcChoice::Conic, None) => conic_points(field),
        (ArcChoice::Hyperoval, None) => hyperoval_points(field),
        (ArcChoice::ConicMinus(k), removed) => {
            let conic = conic_points(field)?;
            let idx: Vec<usize> = match removed {
                Some(r) => r.to_vec(),
                None => (conic.len().saturating_sub(*k)..conic.len()).collect(),
            };
            let mut sorted = idx.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != idx.len() {
                return Err(Error::domain("repeated conic point index"));
            }
            if sorted.len() != *k || *k >= conic.len() {
                return Err(Error::domain(format!(
                    "conic-minus:{k} needs {k} distinct indices below {}",
                    conic.len()
                )));
            }
            conic.without(&sorted)
        }
        (_, Some(_)) => Err(Error::domain("explicit removals apply to conic-minus only")),
    }
}

/// The `q + 1` normalized columns of the `d = 4` GDRS matrix.
pub fn conic_points(field: &Arc<Field>) -> Result<PlaneArc> {
    if field.order() < 4 {
        return Err(Error::domain(format!("conic censuses need q >= 4, got {}", field.order())));
    }
    let q = field.order() as usize;
    let h = gdrs_parity(field, 4, &default_alphas(field), &vec![field.one(); q + 1])?;
    PlaneArc::from_columns(&h)
}

/// The conic plus its nucleus `(0, 1, 0)`, q even.
pub fn hyperoval_points(field: &Arc<Field>) -> Result<PlaneArc> {
    if field.order() < 4 {
        return Err(Error::domain(format!("hyperovals need q >= 4, got {}", field.order())));
    }
    let q = field.order() as usize;
    let h = gtrs_parity(field, &vec![field.one(); q + 2])?;
    PlaneArc::from_columns(&h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointClass {
    /// Bisecants through each point of the class.
    pub bisecants: usize,
    /// Number of points off the arc in the class.
    pub points: u64,
}

/// Points off an arc grouped by the number of bisecants through them,
/// largest count first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointCensus {
    pub q: u32,
    pub arc_size: usize,
    pub classes: Vec<PointClass>,
    /// Total points off the arc.
    pub covered: u64,
}

impl PointCensus {
    pub fn from_classes(q: u32, arc_size: usize, mut classes: Vec<PointClass>) -> PointCensus {
        classes.sort_by_key(|c| std::cmp::Reverse(c.bisecants));
        let covered = classes.iter().map(|c| c.points).sum();
        PointCensus { q, arc_size, classes, covered }
    }

    pub fn points_with(&self, bisecants: usize) -> u64 {
        self.classes.iter().filter(|c| c.bisecants == bisecants).map(|c| c.points).sum()
    }

    /// `sum_j N_j B_j`.
    pub fn incidence_total(&self) -> u64 {
        self.classes.iter().map(|c| c.points * c.bisecants as u64).sum()
    }
}

pub fn bisecant_census(arc: &PlaneArc) -> PointCensus {
    let mut by: BTreeMap<usize, u64> = BTreeMap::new();
    for b in arc.bisecants_per_point().into_iter().flatten() {
        *by.entry(b).or_default() += 1;
    }
    let classes = by.into_iter().map(|(bisecants, points)| PointClass { bisecants, points }).collect();
    PointCensus::from_classes(arc.q(), arc.len(), classes)
}

/// Lines of the plane by how many arc points they contain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LineProfile {
    pub bisecants: u64,
    pub unisecants: u64,
    pub external: u64,
    /// Unisecants through each arc point, in arc order.
    pub unisecants_per_point: Vec<u64>,
}

pub fn line_profile(arc: &PlaneArc) -> LineProfile {
    let f = &arc.field;
    let mut prof = LineProfile { bisecants: 0, unisecants: 0, external: 0, unisecants_per_point: vec![0; arc.len()] };
    for line in all_points(f) {
        let on: Vec<usize> = (0..arc.len()).filter(|&i| incident(f, &line, &arc.points[i])).collect();
        match on.len() {
            0 => prof.external += 1,
            1 => {
                prof.unisecants += 1;
                prof.unisecants_per_point[on[0]] += 1;
            }
            2 => prof.bisecants += 1,
            _ => unreachable!("arc invariant: no three collinear"),
        }
    }
    prof
}

fn classes(pairs: &[(usize, u64)]) -> Vec<PointClass> {
    pairs.iter().map(|&(bisecants, points)| PointClass { bisecants, points }).collect()
}

/// Expected bisecant census of the conic.
pub fn expected_conic_census(q: u32) -> Result<PointCensus> {
    let qq = q as u64;
    let cls = if q % 2 == 1 {
        if q < 5 {
            return Err(Error::domain("odd-q conic formula needs q >= 5"));
        }
        classes(&[((qq as usize).div_ceil(2), (qq * qq - qq) / 2), ((qq as usize - 1) / 2, (qq * qq + qq) / 2)])
    } else {
        if q < 4 {
            return Err(Error::domain("even-q conic formula needs q >= 4"));
        }
        // All points off the conic except the nucleus, which is on none.
        classes(&[(qq as usize / 2, qq * qq - 1), (0, 1)])
    };
    Ok(PointCensus::from_classes(q, q as usize + 1, cls))
}

/// Expected census of the hyperoval: every point off it is on `(q+2)/2`
/// bisecants.
pub fn expected_hyperoval_census(q: u32) -> Result<PointCensus> {
    if q % 2 == 1 || q < 4 {
        return Err(Error::domain("hyperovals need q even, q >= 4"));
    }
    let qq = q as u64;
    Ok(PointCensus::from_classes(q, q as usize + 2, classes(&[((q as usize + 2) / 2, qq * qq - 1)])))
}

/// Expected census of the conic minus one point.
pub fn expected_shortened_conic_census(q: u32) -> Result<PointCensus> {
    let qq = q as u64;
    let qs = q as usize;
    let cls = if q % 2 == 1 {
        if q < 5 {
            return Err(Error::domain("odd-q shortened conic formula needs q >= 5"));
        }
        classes(&[((qs - 1) / 2, (qq * qq + qq) / 2), ((qs - 3) / 2, (qq * qq - qq) / 2), (0, 1)])
    } else {
        if q < 8 {
            return Err(Error::domain("even-q shortened conic formula needs q >= 8"));
        }
        classes(&[(qs / 2, qq - 1), ((qs - 2) / 2, qq * qq - qq), (0, 2)])
    };
    Ok(PointCensus::from_classes(q, qs, cls))
}

/// Expected census of the conic minus two points.
pub fn expected_doubly_shortened_conic_census(q: u32) -> Result<PointCensus> {
    if q < 7 {
        return Err(Error::domain("doubly shortened conic formula needs q >= 7"));
    }
    let qq = q as u64;
    let qs = q as usize;
    let cls = if q % 2 == 1 {
        classes(&[
            ((qs - 1) / 2, qq.div_ceil(2)),
            ((qs - 3) / 2, (qq - 1) * (qq + 4) / 2),
            ((qs - 5) / 2, (qq - 1) * (qq - 3) / 2),
            (0, 2),
        ])
    } else {
        classes(&[((qs - 2) / 2, 3 * (qq - 1)), ((qs - 4) / 2, (qq - 1) * (qq - 2)), (0, 3)])
    };
    Ok(PointCensus::from_classes(q, qs - 1, cls))
}

/// Bisecant and unisecant totals every `n`-arc must have.
pub fn expected_line_counts(n: usize, q: u32) -> (u64, u64) {
    let bis: u64 = binom(n as u64, 2).try_into().expect("small");
    (bis, n as u64 * (q as u64 + 2 - n as u64))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeRow {
    pub bisecants: usize,
    pub points: u64,
    /// `(q - 1)` times the number of points.
    pub expected_cosets: u64,
    /// Cosets of weight 2 with `B_2` equal to the bisecant count, or of
    /// weight 3 for points on no bisecant.
    pub census_cosets: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeReport {
    pub rows: Vec<BridgeRow>,
    /// Points whose syndromes landed in a coset with the wrong weight or
    /// `B_2`.
    pub pointwise_failures: Vec<String>,
    pub matched: bool,
}

/// Checks that each point off the arc on `b` bisecants gives `q - 1`
/// syndromes whose cosets have `B_2 = b` (weight 2) or weight 3 (`b = 0`),
/// against a census of the arc's code.
pub fn geometry_code_bridge(arc: &PlaneArc, code: &LinearCode, census: &CosetCensus) -> Result<BridgeReport> {
    let q = arc.q();
    if code.n() != arc.len() || code.q() != q || census.n() != arc.len() || code.redundancy() != 3 {
        return Err(Error::domain("census does not belong to the arc's code"));
    }
    let f = arc.field();
    let points = all_points(f);
    let per_point = arc.bisecants_per_point();
    let mut failures = Vec::new();
    for (idx, b) in per_point.iter().enumerate() {
        let Some(b) = *b else { continue };
        let p = points[idx];
        for lam in f.nonzero() {
            let s: Vec<Elem> = p.coords.iter().map(|&c| f.mul(lam, c)).collect();
            let class = census.class_of_syndrome(code.syndrome_index(&s));
            let ok = if b == 0 {
                class.weight == 3
            } else {
                class.weight == 2 && class.distribution.get(2) == b.into()
            };
            if !ok && failures.len() < 16 {
                failures.push(format!(
                    "point {p:?} on {b} bisecants: coset of weight {} with B_2 = {}",
                    class.weight,
                    class.distribution.get(2)
                ));
            }
        }
    }
    let pc = bisecant_census(arc);
    let rows: Vec<BridgeRow> = pc
        .classes
        .iter()
        .map(|c| {
            let census_cosets = if c.bisecants == 0 {
                census.cosets_of_weight(3)
            } else {
                census
                    .classes_of_weight(2)
                    .filter(|k| k.distribution.get(2) == c.bisecants.into())
                    .map(|k| k.cosets)
                    .sum()
            };
            BridgeRow {
                bisecants: c.bisecants,
                points: c.points,
                expected_cosets: (q as u64 - 1) * c.points,
                census_cosets,
            }
        })
        .collect();
    let matched = failures.is_empty() && rows.iter().all(|r| r.expected_cosets == r.census_cosets);
    Ok(BridgeReport { rows, pointwise_failures: failures, matched })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Budget;

    fn gf(q: u64) -> Arc<Field> {
        Arc::new(Field::from_order(q).unwrap())
    }

    fn pairs(c: &PointCensus) -> Vec<(usize, u64)> {
        c.classes.iter().map(|c| (c.bisecants, c.points)).collect()
    }

    #[test]
    fn points_and_lines() {
        let f = gf(5);
        let pts = all_points(&f);
        assert_eq!(pts.len(), 31);
        for (i, p) in pts.iter().enumerate() {
            assert_eq!(p.index(5), i);
        }
        let a = ProjPoint::from_reprs(&f, [1, 0, 0]).unwrap();
        let b = ProjPoint::from_reprs(&f, [0, 2, 0]).unwrap();
        let l = line_through(&f, &a, &b).unwrap();
        assert_eq!(pts.iter().filter(|p| incident(&f, &l, p)).count(), 6);
        assert!(line_through(&f, &a, &a).is_err());
        assert!(ProjPoint::from_reprs(&f, [0, 0, 0]).is_err());
        assert_eq!(ProjPoint::from_reprs(&f, [0, 3, 1]).unwrap(), ProjPoint::from_reprs(&f, [0, 1, 2]).unwrap());
    }

    #[test]
    fn standard_arcs() {
        assert_eq!(conic_points(&gf(5)).unwrap().len(), 6);
        assert_eq!(hyperoval_points(&gf(4)).unwrap().len(), 6);
        assert!(hyperoval_points(&gf(5)).is_err());
        let f = gf(5);
        let collinear = vec![
            ProjPoint::from_reprs(&f, [1, 0, 0]).unwrap(),
            ProjPoint::from_reprs(&f, [0, 1, 0]).unwrap(),
            ProjPoint::from_reprs(&f, [1, 1, 0]).unwrap(),
        ];
        assert!(PlaneArc::new(f, collinear).is_err());
    }

    #[test]
    fn conic_q4_is_incomplete() {
        let f = gf(4);
        let conic = conic_points(&f).unwrap();
        let nucleus = ProjPoint::from_reprs(&f, [0, 1, 0]).unwrap();
        let mut pts = conic.points().to_vec();
        pts.push(nucleus);
        assert!(PlaneArc::new(f, pts).is_ok());
        assert_eq!(conic.bisecants_per_point()[nucleus.index(4)], Some(0));
    }

    #[test]
    fn censuses() {
        assert_eq!(pairs(&bisecant_census(&conic_points(&gf(5)).unwrap())), vec![(3, 10), (2, 15)]);
        let ks = build_arc(&gf(5), &ArcChoice::ConicMinus(1)).unwrap();
        assert_eq!(pairs(&bisecant_census(&ks)), vec![(2, 15), (1, 10), (0, 1)]);
        let kss = build_arc_with(&gf(7), &ArcChoice::ConicMinus(2), Some(&[6, 7])).unwrap();
        assert_eq!(pairs(&bisecant_census(&kss)), vec![(3, 4), (2, 33), (1, 12), (0, 2)]);
    }

    #[test]
    fn line_counts() {
        for q in [4u64, 5, 7, 8] {
            let arc = conic_points(&gf(q)).unwrap();
            let prof = line_profile(&arc);
            let (b, u) = expected_line_counts(arc.len(), q as u32);
            assert_eq!((prof.bisecants, prof.unisecants), (b, u));
            assert!(prof.unisecants_per_point.iter().all(|&x| x == q + 2 - arc.len() as u64));
        }
    }

    #[test]
    fn bridge_q5_conic() {
        let arc = conic_points(&gf(5)).unwrap();
        let code = arc.code().unwrap();
        let census = code.coset_census(Budget::DEFAULT).unwrap();
        let r = geometry_code_bridge(&arc, &code, &census).unwrap();
        assert!(r.matched, "{r:?}");
        let rows: Vec<(usize, u64)> = r.rows.iter().map(|r| (r.bisecants, r.census_cosets)).collect();
        assert_eq!(rows, vec![(3, 40), (2, 60)]);
    }
}
