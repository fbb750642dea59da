//! Linear codes given by parity-check matrices, and the exhaustive oracles
//! used as ground truth: codeword enumeration, the ambient-space coset
//! census, and a breadth-first coset-weight profile over syndrome space.

mod census;
mod matrix;

use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

pub use census::{CensusClass, CensusRoute, CosetCensus, SyndromeTable};
pub use matrix::Matrix;

/// Explicit cap on enumeration work. Oracles refuse rather than sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_visits: u64,
}

impl Budget {
    pub const DEFAULT: Budget = Budget { max_visits: 200_000_000 };

    pub fn new(max_visits: u64) -> Budget {
        Budget { max_visits }
    }

    pub fn unlimited() -> Budget {
        Budget { max_visits: u64::MAX }
    }

    pub(crate) fn check(&self, needed: u128) -> Result<()> {
        if needed > self.max_visits as u128 {
            Err(Error::BudgetExceeded { needed, budget: self.max_visits })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

pub(crate) fn upow(base: u64, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

/// Exact counts `B_0..B_n` of vectors of each Hamming weight in a code or a
/// coset.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightDistribution {
    counts: Vec<BigInt>,
}

impl WeightDistribution {
    pub fn new(counts: Vec<BigInt>) -> Result<WeightDistribution> {
        if counts.is_empty() {
            return Err(Error::domain("a weight distribution needs at least B_0"));
        }
        if let Some((w, c)) = counts.iter().enumerate().find(|(_, c)| c.is_negative()) {
            return Err(Error::InconsistentPrefix { weight: w, value: c.to_string() });
        }
        Ok(WeightDistribution { counts })
    }

    pub fn from_u64(counts: &[u64]) -> WeightDistribution {
        WeightDistribution { counts: counts.iter().map(|&c| BigInt::from(c)).collect() }
    }

    /// Code length `n`.
    pub fn len(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.counts.iter().all(Zero::is_zero)
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    /// `B_w`, zero beyond the length.
    pub fn get(&self, w: usize) -> BigInt {
        self.counts.get(w).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// Smallest weight with a nonzero count.
    pub fn min_weight(&self) -> Option<usize> {
        self.counts.iter().position(|c| !c.is_zero())
    }

    /// Number of nonzero weights `w > 0` that occur.
    pub fn nonzero_weights(&self) -> usize {
        self.counts.iter().skip(1).filter(|c| !c.is_zero()).count()
    }

    /// `B_0..=B_upto`.
    pub fn prefix(&self, upto: usize) -> Vec<BigInt> {
        (0..=upto).map(|w| self.get(w)).collect()
    }
}

impl fmt::Debug for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, c) in self.counts.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

// Counts travel as decimal strings so no JSON consumer loses precision.
impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let strs: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        strs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for WeightDistribution {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let strs = Vec::<String>::deserialize(d)?;
        let mut counts = Vec::with_capacity(strs.len());
        for s in &strs {
            let valid = !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
            if !valid {
                return Err(serde::de::Error::custom(format!("count {s:?} is not a decimal integer")));
            }
            counts.push(s.parse::<BigInt>().map_err(serde::de::Error::custom)?);
        }
        WeightDistribution::new(counts).map_err(serde::de::Error::custom)
    }
}

/// Coset counts by weight, from a breadth-first search over syndromes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetWeightProfile {
    /// `cosets_by_weight[W]` = number of cosets of weight `W`.
    pub cosets_by_weight: Vec<u64>,
}

impl CosetWeightProfile {
    pub fn covering_radius(&self) -> usize {
        self.cosets_by_weight.iter().rposition(|&c| c > 0).unwrap_or(0)
    }
}

/// An `[n, k]` code over GF(q) defined by a full-rank parity-check matrix.
#[derive(Clone)]
pub struct LinearCode {
    h: Matrix,
    n: usize,
    k: usize,
    generator: Vec<Vec<Elem>>,
    info_positions: Vec<usize>,
    distance: OnceLock<usize>,
    radius: OnceLock<usize>,
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]_{} code", self.n, self.k, self.q())
    }
}

impl LinearCode {
    /// Rejects rank-deficient matrices, reporting the computed rank.
    pub fn from_parity(h: Matrix) -> Result<LinearCode> {
        let rref = h.rref();
        let rank = rref.pivots.len();
        if rank != h.rows() {
            return Err(Error::RankDeficient { rank, rows: h.rows() });
        }
        let n = h.cols();
        let r = h.rows();
        let f = h.field().clone();
        // Information positions are the non-pivot columns; each gives a
        // generator row with a 1 there and the pivot coordinates solved for.
        let info_positions: Vec<usize> = (0..n).filter(|c| !rref.pivots.contains(c)).collect();
        let generator = info_positions
            .iter()
            .map(|&free| {
                let mut row = vec![f.zero(); n];
                row[free] = f.one();
                for (i, &p) in rref.pivots.iter().enumerate() {
                    let v = rref.data[i * rref.cols + free];
                    row[p] = f.elem(f.neg_repr(v) as u32).expect("in range");
                }
                row
            })
            .collect();
        Ok(LinearCode {
            h,
            n,
            k: n - r,
            generator,
            info_positions,
            distance: OnceLock::new(),
            radius: OnceLock::new(),
        })
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.h
    }

    pub fn field(&self) -> &Arc<Field> {
        self.h.field()
    }

    pub fn q(&self) -> u32 {
        self.field().order()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Redundancy `n - k`.
    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    pub fn generator_rows(&self) -> &[Vec<Elem>] {
        &self.generator
    }

    pub fn info_positions(&self) -> &[usize] {
        &self.info_positions
    }

    pub fn syndrome_space_size(&self) -> u128 {
        upow(self.q() as u64, self.redundancy())
    }

    pub fn syndrome(&self, x: &[Elem]) -> Result<Vec<Elem>> {
        self.h.mul_vec(x)
    }

    /// Packs a syndrome as `sum_i s_i q^i`.
    pub fn syndrome_index(&self, s: &[Elem]) -> usize {
        let q = self.q() as usize;
        s.iter().rev().fold(0, |acc, e| acc * q + e.repr() as usize)
    }

    pub fn syndrome_from_index(&self, mut idx: usize) -> Vec<Elem> {
        let q = self.q() as usize;
        let f = self.field();
        (0..self.redundancy())
            .map(|_| {
                let d = idx % q;
                idx /= q;
                f.elem(d as u32).expect("digit below q")
            })
            .collect()
    }

    /// Weight distribution of `x + C`, by enumerating all `q^k` codewords.
    /// For a vector `x` this is also the distance profile `f_delta(x, C)`.
    pub fn coset_distribution(&self, x: &[Elem], budget: Budget) -> Result<WeightDistribution> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: x.len() });
        }
        budget.check(upow(self.q() as u64, self.k))?;
        let f = self.field();
        let q = f.order() as usize;
        let n = self.n;
        let k = self.k;
        let mut counts = vec![0u64; n + 1];
        let start: Vec<u16> = x.iter().map(|e| e.repr() as u16).collect();
        if k == 0 {
            counts[start.iter().filter(|&&v| v != 0).count()] += 1;
            return Ok(WeightDistribution::from_u64(&counts));
        }
        // scaled[i][a] = a * g_i
        let scaled: Vec<Vec<Vec<u16>>> = self
            .generator
            .iter()
            .map(|g| {
                (0..q as u16)
                    .map(|a| g.iter().map(|e| f.mul_repr(a, e.repr() as u16)).collect())
                    .collect()
            })
            .collect();
        let mut stack = vec![start; k + 1];
        walk_codewords(f, &scaled, 0, &mut stack, &mut counts);
        Ok(WeightDistribution::from_u64(&counts))
    }

    /// Exhaustive weight distribution of the code itself.
    pub fn brute_weight_distribution(&self, budget: Budget) -> Result<WeightDistribution> {
        let zero = vec![self.field().zero(); self.n];
        self.coset_distribution(&zero, budget)
    }

    /// Minimum nonzero codeword weight (by enumeration; cached). A code with
    /// `k = 0` reports `n + 1`.
    pub fn min_distance(&self, budget: Budget) -> Result<usize> {
        if let Some(&d) = self.distance.get() {
            return Ok(d);
        }
        let dist = self.brute_weight_distribution(budget)?;
        let d = (1..=self.n).find(|&w| !dist.get(w).is_zero()).unwrap_or(self.n + 1);
        let _ = self.distance.set(d);
        Ok(d)
    }

    /// Largest coset weight, from the ambient census (cached).
    pub fn covering_radius(&self, budget: Budget) -> Result<usize> {
        if let Some(&r) = self.radius.get() {
            return Ok(r);
        }
        let census = self.coset_census(budget)?;
        let r = census.covering_radius();
        let _ = self.radius.set(r);
        Ok(r)
    }

    pub fn is_mds(&self, budget: Budget) -> Result<bool> {
        Ok(self.min_distance(budget)? == self.redundancy() + 1)
    }

    /// MDS test without codeword enumeration: every `n - k` columns of the
    /// parity-check matrix must be independent.
    pub fn is_mds_by_columns(&self, budget: Budget) -> Result<bool> {
        let r = self.redundancy();
        budget.check(crate::combinat::binom_u(self.n as u64, r as i64).try_into().unwrap_or(u128::MAX))?;
        let cols = self.h.columns();
        let mut chosen: Vec<usize> = (0..r).collect();
        if r == 0 {
            return Ok(true);
        }
        loop {
            let sub: Vec<Vec<Elem>> = chosen.iter().map(|&j| cols[j].clone()).collect();
            let m = Matrix::from_columns(self.field().clone(), &sub)?;
            if m.rank() < r {
                return Ok(false);
            }
            // next combination
            let mut i = r;
            loop {
                if i == 0 {
                    return Ok(true);
                }
                i -= 1;
                if chosen[i] < self.n - r + i {
                    chosen[i] += 1;
                    for j in i + 1..r {
                        chosen[j] = chosen[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Coset weights by breadth-first search over the `q^(n-k)` syndromes:
    /// one step adds a nonzero multiple of one column.
    pub fn coset_weight_profile(&self, budget: Budget) -> Result<CosetWeightProfile> {
        let q = self.q() as usize;
        let r = self.redundancy();
        let space = self.syndrome_space_size();
        budget.check(space.saturating_mul((self.n * q.saturating_sub(1)).max(1) as u128))?;
        let space = space as usize;
        let f = self.field();
        let steps: Vec<Vec<u16>> = (0..self.n)
            .flat_map(|j| {
                let col = self.h.column(j);
                (1..q as u16).map(move |a| col.iter().map(|e| f.mul_repr(a, e.repr() as u16)).collect())
            })
            .collect();
        let mut dist = vec![u8::MAX; space];
        dist[0] = 0;
        let mut frontier = vec![0usize];
        let mut by_weight = vec![1u64];
        let mut digits = vec![0u16; r];
        while !frontier.is_empty() {
            let level = by_weight.len() as u8;
            let mut next = Vec::new();
            for &s in &frontier {
                unpack(s, q, &mut digits);
                for step in &steps {
                    let t = pack_sum(f, &digits, step, q);
                    if dist[t] == u8::MAX {
                        dist[t] = level;
                        next.push(t);
                    }
                }
            }
            if next.is_empty() {
                break;
            }
            by_weight.push(next.len() as u64);
            frontier = next;
        }
        Ok(CosetWeightProfile { cosets_by_weight: by_weight })
    }
}

fn unpack(mut idx: usize, q: usize, out: &mut [u16]) {
    for d in out.iter_mut() {
        *d = (idx % q) as u16;
        idx /= q;
    }
}

#[inline]
fn pack_sum(f: &Field, a: &[u16], b: &[u16], q: usize) -> usize {
    a.iter()
        .zip(b)
        .rev()
        .fold(0, |acc, (&x, &y)| acc * q + f.add_repr(x, y) as usize)
}

fn walk_codewords(f: &Field, scaled: &[Vec<Vec<u16>>], level: usize, stack: &mut [Vec<u16>], counts: &mut [u64]) {
    let last = level + 1 == scaled.len();
    for add in &scaled[level] {
        let mut weight = 0;
        let (head, tail) = stack.split_at_mut(level + 1);
        for ((c, &p), &a) in tail[0].iter_mut().zip(head[level].iter()).zip(add.iter()) {
            *c = f.add_repr(p, a);
            weight += (*c != 0) as usize;
        }
        if last {
            counts[weight] += 1;
        } else {
            walk_codewords(f, scaled, level + 1, stack, counts);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(q: u64) -> Arc<Field> {
        Arc::new(Field::from_order(q).unwrap())
    }

    /// H_4 over GF(5): columns (1, a, a^2) for a = 1..4, then (1,0,0), (0,0,1).
    pub(crate) fn h4_gf5() -> Matrix {
        Matrix::from_reprs(
            gf(5),
            &[vec![1, 1, 1, 1, 1, 0], vec![1, 2, 3, 4, 0, 0], vec![1, 4, 4, 1, 0, 1]],
        )
        .unwrap()
    }

    #[test]
    fn parity_of_h4_gf5() {
        let code = LinearCode::from_parity(h4_gf5()).unwrap();
        assert_eq!((code.n(), code.k()), (6, 3));
        let dist = code.brute_weight_distribution(Budget::DEFAULT).unwrap();
        assert_eq!(dist, WeightDistribution::from_u64(&[1, 0, 0, 0, 60, 24, 40]));
        assert_eq!(code.min_distance(Budget::DEFAULT).unwrap(), 4);
        assert!(code.is_mds_by_columns(Budget::DEFAULT).unwrap());
    }

    #[test]
    fn all_ones_parity_code() {
        let f = gf(2);
        let h = Matrix::from_reprs(f, &[vec![1; 5]]).unwrap();
        let code = LinearCode::from_parity(h).unwrap();
        assert_eq!((code.n(), code.k()), (5, 4));
        assert_eq!(code.min_distance(Budget::DEFAULT).unwrap(), 2);
    }

    #[test]
    fn rank_deficiency_is_reported() {
        let f = gf(3);
        let h = Matrix::from_reprs(f, &[vec![1, 2, 0], vec![0, 0, 0]]).unwrap();
        match LinearCode::from_parity(h) {
            Err(Error::RankDeficient { rank, rows }) => assert_eq!((rank, rows), (1, 2)),
            other => panic!("expected rank error, got {other:?}"),
        }
    }

    #[test]
    fn trivial_code() {
        let f = gf(3);
        let h = Matrix::from_reprs(f, &[vec![1, 0], vec![0, 1]]).unwrap();
        let code = LinearCode::from_parity(h).unwrap();
        assert_eq!(code.k(), 0);
        let dist = code.brute_weight_distribution(Budget::DEFAULT).unwrap();
        assert_eq!(dist, WeightDistribution::from_u64(&[1, 0, 0]));
    }

    #[test]
    fn syndromes_are_linear() {
        let code = LinearCode::from_parity(h4_gf5()).unwrap();
        let f = code.field().clone();
        for g in code.generator_rows() {
            assert!(code.syndrome(g).unwrap().iter().all(|e| e.is_zero()));
        }
        for i in 0..6 {
            let mut e = vec![f.zero(); 6];
            e[i] = f.one();
            assert_eq!(code.syndrome(&e).unwrap(), code.parity_check().column(i));
        }
        let x: Vec<Elem> = [1, 2, 3, 4, 0, 1].iter().map(|&r| f.elem(r).unwrap()).collect();
        let y: Vec<Elem> = [4, 4, 0, 1, 2, 3].iter().map(|&r| f.elem(r).unwrap()).collect();
        let xy: Vec<Elem> = x.iter().zip(&y).map(|(&a, &b)| f.add(a, b)).collect();
        let sx = code.syndrome(&x).unwrap();
        let sy = code.syndrome(&y).unwrap();
        let sum: Vec<Elem> = sx.iter().zip(&sy).map(|(&a, &b)| f.add(a, b)).collect();
        assert_eq!(code.syndrome(&xy).unwrap(), sum);
        assert!(code.syndrome(&x[..5]).is_err());
        let idx = code.syndrome_index(&sx);
        assert_eq!(code.syndrome_from_index(idx), sx);
    }

    #[test]
    fn budget_refusal_names_the_budget() {
        let code = LinearCode::from_parity(h4_gf5()).unwrap();
        match code.brute_weight_distribution(Budget::new(100)) {
            Err(Error::BudgetExceeded { needed, budget }) => assert_eq!((needed, budget), (125, 100)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bfs_profile_of_h4_gf5() {
        let code = LinearCode::from_parity(h4_gf5()).unwrap();
        let p = code.coset_weight_profile(Budget::DEFAULT).unwrap();
        assert_eq!(p.cosets_by_weight, vec![1, 24, 100]);
        assert_eq!(p.covering_radius(), 2);
    }

    #[test]
    fn weight_distribution_json_is_strings() {
        let d = WeightDistribution::from_u64(&[0, 1, 0, 10]);
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, r#"["0","1","0","10"]"#);
        let back: WeightDistribution = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<WeightDistribution>(r#"["-1"]"#).is_err());
        assert!(serde_json::from_str::<WeightDistribution>(r#"[]"#).is_err());
        assert!(serde_json::from_str::<WeightDistribution>(r#"["+3"]"#).is_err());
    }
}
