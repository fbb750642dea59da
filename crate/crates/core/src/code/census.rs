use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use super::{upow, Budget, LinearCode, WeightDistribution};
use crate::error::Result;
use crate::gf::Field;

/// Tables indexed by (syndrome, last coordinate) are used while they stay
/// below this many entries.
const INNER_TABLE_MAX: usize = 1 << 24;

/// Per-syndrome weight counts for the whole ambient space.
#[derive(Clone, Debug)]
pub struct SyndromeTable {
    n: usize,
    counts: Vec<u64>,
}

impl SyndromeTable {
    pub fn syndromes(&self) -> usize {
        self.counts.len() / (self.n + 1)
    }

    /// `B_0..B_n` of the coset with the given packed syndrome.
    pub fn row(&self, syndrome: usize) -> &[u64] {
        &self.counts[syndrome * (self.n + 1)..(syndrome + 1) * (self.n + 1)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusClass {
    /// Coset weight: the smallest weight present.
    pub weight: usize,
    pub distribution: WeightDistribution,
    /// Number of cosets with exactly this distribution.
    pub cosets: u64,
    /// Smallest packed syndrome in the class.
    pub representative: usize,
}

/// Where the full class distributions come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CensusRoute {
    /// Every vector of the ambient space was weighed.
    Ambient,
    /// Vectors of weight at most `d - 2` were enumerated exactly; the rest of
    /// each distribution follows from the MDS coset formula.
    Prefix,
}

impl CensusRoute {
    pub fn name(self) -> &'static str {
        match self {
            CensusRoute::Ambient => "ambient",
            CensusRoute::Prefix => "prefix",
        }
    }
}

/// All cosets of a code, grouped by identical weight distribution.
#[derive(Clone, Debug)]
pub struct CosetCensus {
    n: usize,
    k: usize,
    q: u32,
    route: CensusRoute,
    classes: Vec<CensusClass>,
    class_of: Vec<u32>,
}

impl CosetCensus {
    /// Groups per-syndrome distributions (indexed by packed syndrome) into
    /// classes sorted by (coset weight, distribution).
    pub fn from_distributions(n: usize, k: usize, q: u32, per_syndrome: Vec<WeightDistribution>) -> CosetCensus {
        let mut ids: HashMap<WeightDistribution, u32> = HashMap::new();
        let mut dists = Vec::new();
        let class_of = per_syndrome
            .into_iter()
            .map(|dist| {
                *ids.entry(dist).or_insert_with_key(|d| {
                    dists.push(d.clone());
                    dists.len() as u32 - 1
                })
            })
            .collect();
        CosetCensus::from_grouped(n, k, q, CensusRoute::Ambient, dists, class_of)
    }

    /// Builds a census from candidate class distributions and the class index
    /// of each packed syndrome. Equal candidates are merged.
    pub fn from_grouped(
        n: usize,
        k: usize,
        q: u32,
        route: CensusRoute,
        dists: Vec<WeightDistribution>,
        class_of: Vec<u32>,
    ) -> CosetCensus {
        let mut used = vec![false; dists.len()];
        for &c in &class_of {
            used[c as usize] = true;
        }
        let weight = |d: &WeightDistribution| d.min_weight().unwrap_or(0);
        let mut order: Vec<usize> = (0..dists.len()).filter(|&i| used[i]).collect();
        order.sort_by(|&a, &b| (weight(&dists[a]), dists[a].counts()).cmp(&(weight(&dists[b]), dists[b].counts())));
        let mut remap = vec![0u32; dists.len()];
        let mut classes: Vec<CensusClass> = Vec::new();
        for &old in &order {
            if classes.last().is_none_or(|c| c.distribution != dists[old]) {
                classes.push(CensusClass {
                    weight: weight(&dists[old]),
                    distribution: dists[old].clone(),
                    cosets: 0,
                    representative: usize::MAX,
                });
            }
            remap[old] = classes.len() as u32 - 1;
        }
        let class_of: Vec<u32> = class_of.into_iter().map(|c| remap[c as usize]).collect();
        for (s, &c) in class_of.iter().enumerate() {
            let class = &mut classes[c as usize];
            class.cosets += 1;
            class.representative = class.representative.min(s);
        }
        CosetCensus { n, k, q, route, classes, class_of }
    }

    /// How the class distributions were obtained.
    pub fn route(&self) -> CensusRoute {
        self.route
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn classes(&self) -> &[CensusClass] {
        &self.classes
    }

    pub fn total_cosets(&self) -> u64 {
        self.class_of.len() as u64
    }

    pub fn class_of_syndrome(&self, syndrome: usize) -> &CensusClass {
        &self.classes[self.class_of[syndrome] as usize]
    }

    pub fn classes_of_weight(&self, w: usize) -> impl Iterator<Item = &CensusClass> {
        self.classes.iter().filter(move |c| c.weight == w)
    }

    /// Number of cosets of weight `w`.
    pub fn cosets_of_weight(&self, w: usize) -> u64 {
        self.classes_of_weight(w).map(|c| c.cosets).sum()
    }

    pub fn covering_radius(&self) -> usize {
        self.classes.iter().map(|c| c.weight).max().unwrap_or(0)
    }

    /// Sum of `B_v` over all cosets of weight `w`.
    pub fn aggregate(&self, w: usize, v: usize) -> BigInt {
        self.classes_of_weight(w)
            .map(|c| c.distribution.get(v) * BigInt::from(c.cosets))
            .fold(BigInt::zero(), |a, b| a + b)
    }
}

impl LinearCode {
    /// Enumerates all `q^n` vectors once, bucketing Hamming weights by
    /// syndrome.
    pub fn syndrome_table(&self, budget: Budget) -> Result<SyndromeTable> {
        let n = self.n();
        let q = self.q() as usize;
        budget.check(upow(q as u64, n))?;
        let r = self.redundancy();
        let space = self.syndrome_space_size() as usize;
        let f: &Field = self.field();
        let h = self.parity_check();

        // contrib[j][a] = digits of a * h_j
        let contrib: Vec<Vec<Vec<u16>>> = (0..n)
            .map(|j| {
                let col = h.column(j);
                (0..q as u16)
                    .map(|a| col.iter().map(|e| f.mul_repr(a, e.repr() as u16)).collect())
                    .collect()
            })
            .collect();

        let width = n + 1;
        if n == 0 {
            let mut counts = vec![0u64; width * space];
            counts[0] = 1;
            return Ok(SyndromeTable { n, counts });
        }

        // Packed syndrome after adding a * h_{n-1} to a packed prefix
        // syndrome, when the table is small enough.
        let inner = (space * q <= INNER_TABLE_MAX).then(|| {
            let mut t = vec![0u32; space * q];
            let mut digits = vec![0u16; r];
            for s in 0..space {
                super::unpack(s, q, &mut digits);
                for a in 0..q {
                    t[s * q + a] = super::pack_sum(f, &digits, &contrib[n - 1][a], q) as u32;
                }
            }
            t
        });

        let walker = Walker { f, q, r, n, width, contrib: &contrib, inner: inner.as_deref() };
        let split = (n - 1).min(2);
        let tasks = upow(q as u64, split) as usize;
        let counts = (0..tasks)
            .into_par_iter()
            .fold(
                || vec![0u64; width * space],
                |mut acc, task| {
                    let mut digits = vec![0u16; r];
                    let mut weight = 0;
                    let mut t = task;
                    for j in 0..split {
                        let a = t % q;
                        t /= q;
                        for (d, &c) in digits.iter_mut().zip(&walker.contrib[j][a]) {
                            *d = f.add_repr(*d, c);
                        }
                        weight += (a != 0) as usize;
                    }
                    let mut stack = vec![vec![0u16; r]; n + 1];
                    stack[split] = digits;
                    walker.walk(split, weight, &mut stack, &mut acc);
                    acc
                },
            )
            .reduce(
                || vec![0u64; width * space],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x += y;
                    }
                    a
                },
            );
        Ok(SyndromeTable { n, counts })
    }

    /// Ambient-space census of all cosets.
    pub fn coset_census(&self, budget: Budget) -> Result<CosetCensus> {
        let table = self.syndrome_table(budget)?;
        let mut ids: HashMap<&[u64], u32> = HashMap::new();
        let mut dists = Vec::new();
        let class_of = (0..table.syndromes())
            .map(|s| {
                *ids.entry(table.row(s)).or_insert_with_key(|row| {
                    dists.push(WeightDistribution::from_u64(row));
                    dists.len() as u32 - 1
                })
            })
            .collect();
        Ok(CosetCensus::from_grouped(self.n(), self.k(), self.q(), CensusRoute::Ambient, dists, class_of))
    }
}

struct Walker<'a> {
    f: &'a Field,
    q: usize,
    r: usize,
    n: usize,
    width: usize,
    contrib: &'a [Vec<Vec<u16>>],
    inner: Option<&'a [u32]>,
}

impl Walker<'_> {
    fn walk(&self, level: usize, weight: usize, stack: &mut [Vec<u16>], acc: &mut [u64]) {
        if level == self.n - 1 {
            let digits = &stack[level];
            match self.inner {
                Some(t) => {
                    let packed = digits.iter().rev().fold(0usize, |a, &d| a * self.q + d as usize);
                    let row = &t[packed * self.q..(packed + 1) * self.q];
                    acc[row[0] as usize * self.width + weight] += 1;
                    for &s in &row[1..] {
                        acc[s as usize * self.width + weight + 1] += 1;
                    }
                }
                None => {
                    for a in 0..self.q {
                        let s = super::pack_sum(self.f, digits, &self.contrib[level][a], self.q);
                        acc[s * self.width + weight + (a != 0) as usize] += 1;
                    }
                }
            }
            return;
        }
        for a in 0..self.q {
            {
                let (head, tail) = stack.split_at_mut(level + 1);
                let child = &mut tail[0];
                for ((c, &p), &x) in child.iter_mut().zip(head[level].iter()).zip(&self.contrib[level][a]) {
                    *c = self.f.add_repr(p, x);
                }
                debug_assert_eq!(child.len(), self.r);
            }
            self.walk(level + 1, weight + (a != 0) as usize, stack, acc);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Matrix;
    use crate::gf::{Elem, Field};
    use std::sync::Arc;

    fn h4_gf5() -> Matrix {
        let f = Arc::new(Field::from_order(5).unwrap());
        Matrix::from_reprs(f, &[vec![1, 1, 1, 1, 1, 0], vec![1, 2, 3, 4, 0, 0], vec![1, 4, 4, 1, 0, 1]]).unwrap()
    }

    /// Naive oracle: for every vector compute the syndrome with field
    /// arithmetic and count weights per syndrome.
    fn naive_table(code: &LinearCode) -> Vec<Vec<u64>> {
        let f = code.field().clone();
        let n = code.n();
        let q = f.order() as usize;
        let mut out = vec![vec![0u64; n + 1]; code.syndrome_space_size() as usize];
        let total = q.pow(n as u32);
        for mut idx in 0..total {
            let x: Vec<Elem> = (0..n)
                .map(|_| {
                    let d = idx % q;
                    idx /= q;
                    f.elem(d as u32).unwrap()
                })
                .collect();
            let s = code.syndrome(&x).unwrap();
            let w = x.iter().filter(|e| !e.is_zero()).count();
            out[code.syndrome_index(&s)][w] += 1;
        }
        out
    }

    #[test]
    fn table_matches_naive_enumeration() {
        let code = LinearCode::from_parity(h4_gf5()).unwrap();
        let table = code.syndrome_table(Budget::DEFAULT).unwrap();
        let naive = naive_table(&code);
        for (s, row) in naive.iter().enumerate() {
            assert_eq!(table.row(s), &row[..]);
        }
        // GF(4), non-prime field, two-row parity check.
        let f4 = Arc::new(Field::from_order(4).unwrap());
        let h = Matrix::from_reprs(f4, &[vec![1, 1, 1, 1, 0], vec![1, 2, 3, 0, 1]]).unwrap();
        let code = LinearCode::from_parity(h).unwrap();
        let table = code.syndrome_table(Budget::DEFAULT).unwrap();
        for (s, row) in naive_table(&code).iter().enumerate() {
            assert_eq!(table.row(s), &row[..]);
        }
    }

    #[test]
    fn census_of_h4_gf5() {
        let code = LinearCode::from_parity(h4_gf5()).unwrap();
        let census = code.coset_census(Budget::DEFAULT).unwrap();
        assert_eq!(census.total_cosets(), 125);
        let summary: Vec<(usize, u64, String)> = census
            .classes()
            .iter()
            .map(|c| (c.weight, c.cosets, c.distribution.get(2).to_string()))
            .collect();
        assert_eq!(
            summary,
            vec![(0, 1, "0".into()), (1, 24, "0".into()), (2, 60, "2".into()), (2, 40, "3".into())]
        );
        assert_eq!(census.covering_radius(), 2);
        assert_eq!(
            census.classes()[1].distribution,
            WeightDistribution::from_u64(&[0, 1, 0, 10, 35, 45, 34])
        );
        assert_eq!(census.class_of_syndrome(0).weight, 0);
    }

    #[test]
    fn census_respects_budget() {
        let code = LinearCode::from_parity(h4_gf5()).unwrap();
        assert!(code.coset_census(Budget::new(15_624)).is_err());
        assert!(code.coset_census(Budget::new(15_625)).is_ok());
    }
}
