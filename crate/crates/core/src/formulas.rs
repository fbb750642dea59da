//! Coset weight distributions of MDS codes.
//!
//! For an `[n, k, d]_q` MDS code, the counts `B_0..B_{d-2}` of a coset
//! determine the whole coset distribution. Two evaluations of that map are
//! provided and kept independent: the original double-sum form, and the
//! transformed form
//!
//! ```text
//! B_w = A_w - Omega_w^(0) + sum_{v=0}^{d-2} Omega_w^(v) B_v,   w >= d-1,
//! ```
//!
//! along with the per-coset-weight closed forms, the symmetry defect of
//! non-identical classes, and the weight-2 aggregate and identity checks.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::code::{upow, Budget, CensusRoute, CosetCensus, LinearCode, WeightDistribution};
use crate::combinat::{binom, binom_i, binom_u, omega_unchecked, sign};
use crate::error::{Error, Result};
use crate::mds::mds_counts;

fn check_params(n: usize, d: usize, q: u32) -> Result<()> {
    if d < 2 || d > n {
        return Err(Error::domain(format!("need 2 <= d <= n, got n = {n}, d = {d}")));
    }
    if n > q as usize + 2 {
        return Err(Error::domain(format!("MDS coset formulas need n <= q + 2, got n = {n}, q = {q}")));
    }
    if q < 2 {
        return Err(Error::domain(format!("q must be at least 2, got {q}")));
    }
    Ok(())
}

fn signed(e: i64, x: BigInt) -> BigInt {
    if sign(e) < 0 {
        -x
    } else {
        x
    }
}

/// The counts `B_0..B_{d-2}` of one coset of an `[n, n-d+1, d]_q` MDS code.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LowWeightPrefix {
    n: usize,
    d: usize,
    q: u32,
    b: WeightDistribution,
}

impl LowWeightPrefix {
    pub fn new(n: usize, d: usize, q: u32, b: Vec<BigInt>) -> Result<LowWeightPrefix> {
        check_params(n, d, q)?;
        if b.len() != d - 1 {
            return Err(Error::DimensionMismatch { expected: d - 1, got: b.len() });
        }
        let b = WeightDistribution::new(b)?;
        if b.get(0) > BigInt::one() {
            return Err(Error::domain("B_0 must be 0 or 1"));
        }
        Ok(LowWeightPrefix { n, d, q, b })
    }

    pub fn from_u64(n: usize, d: usize, q: u32, b: &[u64]) -> Result<LowWeightPrefix> {
        LowWeightPrefix::new(n, d, q, b.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// The prefix of a full coset distribution.
    pub fn of(dist: &WeightDistribution, d: usize, q: u32) -> Result<LowWeightPrefix> {
        if d < 2 {
            return Err(Error::domain(format!("need d >= 2, got {d}")));
        }
        LowWeightPrefix::new(dist.len(), d, q, dist.prefix(d - 2))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> usize {
        self.n - self.d + 1
    }

    pub fn values(&self) -> &[BigInt] {
        self.b.counts()
    }
}

/// Precomputed coefficients of the transformed formula for one `(n, d, q)`.
#[derive(Clone, Debug)]
pub struct TransformedKernel {
    n: usize,
    d: usize,
    /// `A_w - Omega_w^(0)`, indexed by `w`.
    base: Vec<BigInt>,
    /// `omega[w][v] = Omega_w^(v)`.
    omega: Vec<Vec<BigInt>>,
}

impl TransformedKernel {
    pub fn new(n: usize, d: usize, q: u32) -> Result<TransformedKernel> {
        check_params(n, d, q)?;
        let a = mds_counts(n, d, q);
        let omega: Vec<Vec<BigInt>> =
            (0..=n).map(|w| (0..=d - 2).map(|v| omega_unchecked(n, d, w, v)).collect()).collect();
        let base = (0..=n).map(|w| &a[w] - &omega[w][0]).collect();
        Ok(TransformedKernel { n, d, base, omega })
    }

    /// Signed output for an arbitrary prefix of length `d - 1`; no
    /// realizability check.
    pub fn eval_raw(&self, prefix: &[BigInt]) -> Result<Vec<BigInt>> {
        if prefix.len() != self.d - 1 {
            return Err(Error::DimensionMismatch { expected: self.d - 1, got: prefix.len() });
        }
        let mut out: Vec<BigInt> = prefix.to_vec();
        for w in self.d - 1..=self.n {
            let mut b = self.base[w].clone();
            for (om, bv) in self.omega[w].iter().zip(prefix) {
                if !bv.is_zero() {
                    b += om * bv;
                }
            }
            out.push(b);
        }
        Ok(out)
    }
}

/// Precomputed pieces of the original formula `B_w = T1_w + T2_w` with
/// `T1_w = C(n,w) sum_{j=0}^{w-d+1} (-1)^j C(w,j) q^(w-d+1-j)` and
/// `T2_w = sum_{j=w-d+2}^{w} (-1)^j sum_{v=0}^{w-j} C(j+n-w, j) C(n-v, w-j-v) B_v`.
#[derive(Clone, Debug)]
pub struct OriginalKernel {
    n: usize,
    d: usize,
    t1: Vec<BigInt>,
    /// Pascal table up to `n`.
    pascal: Vec<Vec<BigInt>>,
}

impl OriginalKernel {
    pub fn new(n: usize, d: usize, q: u32) -> Result<OriginalKernel> {
        check_params(n, d, q)?;
        let mut pascal = vec![vec![BigInt::zero(); n + 1]; n + 1];
        for (i, row) in pascal.iter_mut().enumerate() {
            for (j, c) in row.iter_mut().enumerate().take(i + 1) {
                *c = binom(i as u64, j as i64);
            }
        }
        let t1 = (0..=n).map(|w| if w + 1 >= d { original_term1(n, d, q, w) } else { BigInt::zero() }).collect();
        Ok(OriginalKernel { n, d, t1, pascal })
    }

    fn c(&self, a: usize, b: usize) -> &BigInt {
        &self.pascal[a][b]
    }

    fn term2(&self, w: usize, prefix: &[BigInt]) -> BigInt {
        let (n, d) = (self.n, self.d);
        let mut total = BigInt::zero();
        for j in (w + 2 - d)..=w {
            let mut inner = BigInt::zero();
            for (v, bv) in prefix.iter().enumerate().take(w - j + 1) {
                if bv.is_zero() || w - j - v > n - v {
                    continue;
                }
                inner += self.c(j + n - w, j) * self.c(n - v, w - j - v) * bv;
            }
            total += signed(j as i64, inner);
        }
        total
    }

    pub fn eval_raw(&self, prefix: &[BigInt]) -> Result<Vec<BigInt>> {
        if prefix.len() != self.d - 1 {
            return Err(Error::DimensionMismatch { expected: self.d - 1, got: prefix.len() });
        }
        let mut out: Vec<BigInt> = prefix.to_vec();
        for w in self.d - 1..=self.n {
            out.push(&self.t1[w] + self.term2(w, prefix));
        }
        Ok(out)
    }
}

/// First term of the original formula at weight `w >= d - 1`.
pub fn original_term1(n: usize, d: usize, q: u32, w: usize) -> BigInt {
    assert!(w + 1 >= d, "term defined for w >= d - 1");
    let qb = BigInt::from(q);
    let top = w + 1 - d;
    let mut acc = BigInt::zero();
    for j in 0..=top {
        acc += signed(j as i64, binom(w as u64, j as i64) * num_traits::pow(qb.clone(), top - j));
    }
    binom(n as u64, w as i64) * acc
}

/// Second term of the original formula at weight `w >= d - 1`.
pub fn original_term2(prefix: &LowWeightPrefix, w: usize) -> Result<BigInt> {
    if w + 1 < prefix.d || w > prefix.n {
        return Err(Error::domain(format!("term defined for d - 1 <= w <= n, got w = {w}")));
    }
    let k = OriginalKernel::new(prefix.n, prefix.d, prefix.q)?;
    Ok(k.term2(w, prefix.values()))
}

/// Turns a signed formula output into a distribution, rejecting negative
/// counts and checking the `q^k` total.
fn finish(n: usize, d: usize, q: u32, raw: Vec<BigInt>) -> Result<WeightDistribution> {
    debug_assert_eq!(raw.len(), n + 1);
    if let Some((w, c)) = raw.iter().enumerate().find(|(_, c)| c.is_negative()) {
        return Err(Error::InconsistentPrefix { weight: w, value: c.to_string() });
    }
    let dist = WeightDistribution::new(raw)?;
    let expected = num_traits::pow(BigInt::from(q), n - d + 1);
    if dist.total() != expected {
        return Err(Error::Mismatch(format!("distribution {dist} sums to {} instead of q^k = {expected}", dist.total())));
    }
    Ok(dist)
}

pub fn bonneau_transformed_raw(prefix: &LowWeightPrefix) -> Vec<BigInt> {
    TransformedKernel::new(prefix.n, prefix.d, prefix.q)
        .and_then(|k| k.eval_raw(prefix.values()))
        .expect("prefix parameters were validated")
}

pub fn bonneau_original_raw(prefix: &LowWeightPrefix) -> Vec<BigInt> {
    OriginalKernel::new(prefix.n, prefix.d, prefix.q)
        .and_then(|k| k.eval_raw(prefix.values()))
        .expect("prefix parameters were validated")
}

/// Full coset distribution from its low-weight prefix (transformed form).
pub fn bonneau_transformed(prefix: &LowWeightPrefix) -> Result<WeightDistribution> {
    finish(prefix.n, prefix.d, prefix.q, bonneau_transformed_raw(prefix))
}

/// Full coset distribution from its low-weight prefix (original form).
pub fn bonneau_original(prefix: &LowWeightPrefix) -> Result<WeightDistribution> {
    finish(prefix.n, prefix.d, prefix.q, bonneau_original_raw(prefix))
}

fn need_d(d: usize, min: usize, what: &str) -> Result<()> {
    if d < min {
        Err(Error::domain(format!("{what} needs d >= {min}, got d = {d}")))
    } else {
        Ok(())
    }
}

fn a_minus_omega0(n: usize, d: usize, q: u32) -> Vec<BigInt> {
    let a = mds_counts(n, d, q);
    (0..=n).map(|w| &a[w] - omega_unchecked(n, d, w, 0)).collect()
}

/// Weight-1 cosets: `B_1 = 1`, `B_{d-1} = C(n-1, d-1)`, and
/// `B_w = A_w - Omega^(0) + Omega^(1)` for `w >= d`.
pub fn dist_weight1(n: usize, d: usize, q: u32) -> Result<WeightDistribution> {
    check_params(n, d, q)?;
    need_d(d, 3, "the weight-1 coset formula")?;
    let base = a_minus_omega0(n, d, q);
    let mut b = vec![BigInt::zero(); n + 1];
    b[1] = BigInt::one();
    b[d - 1] = binom((n - 1) as u64, (d - 1) as i64);
    for w in d..=n {
        b[w] = &base[w] + omega_unchecked(n, d, w, 1);
    }
    finish(n, d, q, b)
}

/// Weight-(d-1) cosets: `B_{d-1} = C(n, d-1)` and
/// `B_w = A_w - (-1)^(w-d) C(n,w) C(w-1,d-2)` for `w >= d`.
pub fn dist_weight_d1(n: usize, d: usize, q: u32) -> Result<WeightDistribution> {
    check_params(n, d, q)?;
    need_d(d, 3, "the weight-(d-1) coset formula")?;
    let a = mds_counts(n, d, q);
    let mut b = vec![BigInt::zero(); n + 1];
    b[d - 1] = binom(n as u64, (d - 1) as i64);
    for w in d..=n {
        let t = binom(n as u64, w as i64) * binom((w - 1) as u64, (d - 2) as i64);
        b[w] = &a[w] - signed(w as i64 - d as i64, t);
    }
    finish(n, d, q, b)
}

/// `(-1)^(w-d) C(n-d+2, n-w)`, the coefficient of `B_{d-2}`.
fn top_coefficient(n: usize, d: usize, w: usize) -> BigInt {
    signed(w as i64 - d as i64, binom_i((n + 2 - d) as i64, n as i64 - w as i64))
}

/// Weight-(d-2) cosets with `B_{d-2} = b`:
/// `B_w = A_w - Omega^(0) + (-1)^(w-d) C(n-d+2, n-w) b` for `w >= d-1`.
pub fn dist_weight_d2(n: usize, d: usize, q: u32, b_d2: &BigInt) -> Result<WeightDistribution> {
    check_params(n, d, q)?;
    need_d(d, 4, "the weight-(d-2) coset formula")?;
    if b_d2 < &BigInt::one() {
        return Err(Error::domain("a weight-(d-2) coset has B_{d-2} >= 1"));
    }
    let base = a_minus_omega0(n, d, q);
    let mut b = vec![BigInt::zero(); n + 1];
    b[d - 2] = b_d2.clone();
    for w in d - 1..=n {
        b[w] = &base[w] + top_coefficient(n, d, w) * b_d2;
    }
    finish(n, d, q, b)
}

/// Weight-2 cosets for `d >= 5` with `B_{d-2} = b`:
/// `B_w = A_w - Omega^(0) + Omega^(2) + (-1)^(w-d) C(n-d+2, n-w) b`.
pub fn dist_weight2(n: usize, d: usize, q: u32, b_d2: &BigInt) -> Result<WeightDistribution> {
    check_params(n, d, q)?;
    need_d(d, 5, "the weight-2 coset formula")?;
    if b_d2.is_negative() {
        return Err(Error::domain("B_{d-2} must be non-negative"));
    }
    let base = a_minus_omega0(n, d, q);
    let mut b = vec![BigInt::zero(); n + 1];
    b[2] = BigInt::one();
    b[d - 2] = b_d2.clone();
    for w in d - 1..=n {
        b[w] = &base[w] + omega_unchecked(n, d, w, 2) + top_coefficient(n, d, w) * b_d2;
    }
    finish(n, d, q, b)
}

/// Which closed form covers a coset weight `2 <= W <= d - 3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MidBranch {
    /// `W <= floor((d-1)/2)`: unique leader, `B_W = 1`.
    Low,
    /// `floor((d+1)/2) <= W`: no leader term.
    High,
}

pub fn mid_branch(d: usize, w: usize) -> Result<MidBranch> {
    if w < 2 || w + 3 > d {
        return Err(Error::domain(format!("coset weight W = {w} is outside 2..=d-3 for d = {d}")));
    }
    Ok(if w <= (d - 1) / 2 { MidBranch::Low } else { MidBranch::High })
}

/// Cosets of weight `2 <= W <= d-3` given `knowns = B_{d-W}..B_{d-2}`:
/// `B_w = A_w - Omega^(0) [+ Omega^(W)] + sum_{v=d-W}^{d-2} Omega^(v) B_v`,
/// the leader term present in the low branch only.
pub fn dist_weight_mid(n: usize, d: usize, q: u32, w_coset: usize, knowns: &[BigInt]) -> Result<WeightDistribution> {
    check_params(n, d, q)?;
    let branch = mid_branch(d, w_coset)?;
    match branch {
        MidBranch::Low => need_d(d, 5, "the low mid-weight branch")?,
        MidBranch::High => need_d(d, 6, "the high mid-weight branch")?,
    }
    if knowns.len() != w_coset - 1 {
        return Err(Error::DimensionMismatch { expected: w_coset - 1, got: knowns.len() });
    }
    if knowns.iter().any(Signed::is_negative) {
        return Err(Error::domain("known counts must be non-negative"));
    }
    let lo = d - w_coset;
    let base = a_minus_omega0(n, d, q);
    let mut b = vec![BigInt::zero(); n + 1];
    if branch == MidBranch::Low {
        b[w_coset] = BigInt::one();
    }
    for (i, kv) in knowns.iter().enumerate() {
        b[lo + i] += kv;
    }
    for w in d - 1..=n {
        let mut t = base[w].clone();
        if branch == MidBranch::Low {
            t += omega_unchecked(n, d, w, w_coset);
        }
        for (i, kv) in knowns.iter().enumerate() {
            if !kv.is_zero() {
                t += omega_unchecked(n, d, w, lo + i) * kv;
            }
        }
        b[w] = t;
    }
    finish(n, d, q, b)
}

/// Defects `D_w = (-1)^(n+d) B_w - B_{n+d-2-w}` for `w = d-1..=n`.
pub fn defect_vector(dist: &WeightDistribution, d: usize) -> Vec<(usize, BigInt)> {
    let n = dist.len();
    (d - 1..=n)
        .map(|w| {
            let mirror = n + d - 2 - w;
            debug_assert!(mirror <= n);
            (w, signed((n + d) as i64, dist.get(w)) - dist.get(mirror))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetryReport {
    /// Both cosets have weight `d-2`, or both weight 2 with `d >= 5`.
    pub comparable: bool,
    /// `(w, D_w(a), D_w(b))`.
    pub defects: Vec<(usize, BigInt, BigInt)>,
    pub matched: bool,
}

/// Compares the symmetry defects of two coset distributions of one code.
pub fn symmetry_defect(a: &WeightDistribution, b: &WeightDistribution, d: usize) -> Result<SymmetryReport> {
    let n = a.len();
    if b.len() != n {
        return Err(Error::DimensionMismatch { expected: n + 1, got: b.len() + 1 });
    }
    if d < 3 || d > n {
        return Err(Error::domain(format!("need 3 <= d <= n, got n = {n}, d = {d}")));
    }
    let (wa, wb) = (a.min_weight(), b.min_weight());
    let comparable = wa == wb && (wa == Some(d - 2) || (wa == Some(2) && d >= 5));
    let defects: Vec<(usize, BigInt, BigInt)> = defect_vector(a, d)
        .into_iter()
        .zip(defect_vector(b, d))
        .map(|((w, x), (_, y))| (w, x, y))
        .collect();
    let matched = comparable && defects.iter().all(|(_, x, y)| x == y);
    Ok(SymmetryReport { comparable, defects, matched })
}

/// Sum of `B_{d-2}` over all weight-2 cosets: `(q-1) C(n,2) C(n-2, d-2)`.
pub fn weight2_aggregate(n: usize, d: usize, q: u32) -> Result<BigInt> {
    check_params(n, d, q)?;
    need_d(d, 5, "the weight-2 aggregate")?;
    Ok(BigInt::from(q - 1) * binom(n as u64, 2) * binom((n - 2) as u64, (d - 2) as i64))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    /// `C(n-2, d-2) / (q-1)`, the common `B_{d-2}` if all weight-2 cosets
    /// share one distribution.
    pub value: BigRational,
    /// Whether `value` is an integer (necessary for identity).
    pub condition_holds: bool,
    /// `n = q+1` and `gcd(q-1, d-2) = 1`, which forces the condition.
    pub coprime_case: bool,
}

pub fn weight2_identical_check(n: usize, d: usize, q: u32) -> Result<IdentityCheck> {
    check_params(n, d, q)?;
    need_d(d, 5, "the weight-2 identity check")?;
    let value = BigRational::new(binom((n - 2) as u64, (d - 2) as i64), BigInt::from(q - 1));
    let condition_holds = value.is_integer();
    let coprime_case = n == q as usize + 1 && ((q - 1) as u64).gcd(&((d - 2) as u64)) == 1;
    Ok(IdentityCheck { value, condition_holds, coprime_case })
}

/// The common weight-2 distribution when the identity condition holds.
pub fn dist_weight2_identical(n: usize, d: usize, q: u32) -> Result<Option<WeightDistribution>> {
    let check = weight2_identical_check(n, d, q)?;
    if !check.condition_holds {
        return Ok(None);
    }
    dist_weight2(n, d, q, &check.value.to_integer()).map(Some)
}

/// Exact counts of vectors of weight at most `upto` per syndrome:
/// `table[s][v]`.
pub fn low_weight_table(code: &LinearCode, upto: usize, budget: Budget) -> Result<Vec<Vec<u64>>> {
    let n = code.n();
    let q = code.q() as u64;
    let space = code.syndrome_space_size();
    let visits: u128 = (0..=upto.min(n))
        .map(|w| binom_u(n as u64, w as i64).try_into().unwrap_or(u128::MAX).saturating_mul(upow(q - 1, w)))
        .fold(space, u128::saturating_add);
    budget.check(visits)?;
    let f = code.field();
    let r = code.redundancy();
    let h = code.parity_check();
    let cols: Vec<Vec<Vec<u16>>> = (0..n)
        .map(|j| {
            let c = h.column(j);
            (0..q as u16).map(|a| c.iter().map(|e| f.mul_repr(a, e.repr() as u16)).collect()).collect()
        })
        .collect();
    let mut table = vec![vec![0u64; upto + 1]; space as usize];
    table[0][0] = 1;
    if upto == 0 {
        return Ok(table);
    }
    let mut stack = vec![vec![0u16; r]; upto + 1];
    low_weight_walk(f, &cols, q as usize, 0, 0, upto, &mut stack, &mut table);
    Ok(table)
}

#[allow(clippy::too_many_arguments)]
fn low_weight_walk(
    f: &crate::gf::Field,
    cols: &[Vec<Vec<u16>>],
    q: usize,
    start: usize,
    depth: usize,
    upto: usize,
    stack: &mut [Vec<u16>],
    table: &mut [Vec<u64>],
) {
    for p in start..cols.len() {
        for a in 1..q {
            {
                let (head, tail) = stack.split_at_mut(depth + 1);
                for ((c, &x), &y) in tail[0].iter_mut().zip(head[depth].iter()).zip(&cols[p][a]) {
                    *c = f.add_repr(x, y);
                }
            }
            let s = stack[depth + 1].iter().rev().fold(0usize, |acc, &d| acc * q + d as usize);
            table[s][depth + 1] += 1;
            if depth + 1 < upto {
                low_weight_walk(f, cols, q, p + 1, depth + 1, upto, stack, table);
            }
        }
    }
}

/// Census of an MDS code without touching the ambient space: the counts
/// `B_0..B_{d-2}` of every coset are enumerated exactly and the remaining
/// counts follow from the transformed formula.
pub fn prefix_census(code: &LinearCode, budget: Budget) -> Result<CosetCensus> {
    let n = code.n();
    let d = code.redundancy() + 1;
    if d < 2 {
        return Err(Error::domain("prefix census needs n - k >= 1"));
    }
    if !code.is_mds_by_columns(budget)? {
        return Err(Error::domain("prefix census needs an MDS code"));
    }
    let q = code.q();
    let kernel = TransformedKernel::new(n, d, q)?;
    let table = low_weight_table(code, d - 2, budget)?;
    let mut ids: HashMap<&[u64], u32> = HashMap::new();
    let mut prefixes: Vec<&[u64]> = Vec::new();
    let class_of: Vec<u32> = table
        .iter()
        .map(|row| {
            *ids.entry(row.as_slice()).or_insert_with(|| {
                prefixes.push(row.as_slice());
                prefixes.len() as u32 - 1
            })
        })
        .collect();
    let dists = prefixes
        .iter()
        .map(|p| {
            let b: Vec<BigInt> = p.iter().map(|&x| BigInt::from(x)).collect();
            finish(n, d, q, kernel.eval_raw(&b)?)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CosetCensus::from_grouped(n, code.k(), q, CensusRoute::Prefix, dists, class_of))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wd(c: &[u64]) -> WeightDistribution {
        WeightDistribution::from_u64(c)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn transformed_examples() {
        let p = LowWeightPrefix::from_u64(6, 4, 5, &[0, 1, 0]).unwrap();
        assert_eq!(bonneau_transformed(&p).unwrap(), wd(&[0, 1, 0, 10, 35, 45, 34]));
        let p = LowWeightPrefix::from_u64(6, 4, 5, &[1, 0, 0]).unwrap();
        assert_eq!(bonneau_transformed(&p).unwrap(), wd(&[1, 0, 0, 0, 60, 24, 40]));
        let p = LowWeightPrefix::from_u64(5, 4, 5, &[0, 0, 2]).unwrap();
        assert_eq!(bonneau_transformed(&p).unwrap(), wd(&[0, 0, 2, 4, 11, 8]));
    }

    #[test]
    fn original_agrees_and_terms() {
        for (n, d, q, pre) in [(6, 4, 5, vec![0, 1, 0]), (6, 4, 5, vec![1, 0, 0]), (5, 4, 5, vec![0, 0, 2])] {
            let p = LowWeightPrefix::from_u64(n, d, q, &pre).unwrap();
            assert_eq!(bonneau_original(&p).unwrap(), bonneau_transformed(&p).unwrap());
        }
        assert_eq!(original_term1(6, 4, 5, 4), big(15));
        // At w = d-1 the first term is C(n, d-1).
        assert_eq!(original_term1(6, 4, 5, 3), big(20));
    }

    #[test]
    fn inconsistent_prefix_is_soft() {
        let p = LowWeightPrefix::from_u64(5, 4, 5, &[0, 0, 9]).unwrap();
        assert!(matches!(bonneau_transformed(&p), Err(Error::InconsistentPrefix { .. })));
        let raw = bonneau_transformed_raw(&p);
        assert_eq!(raw.iter().sum::<BigInt>(), big(25));
    }

    #[test]
    fn prefix_validation() {
        assert!(LowWeightPrefix::from_u64(6, 4, 5, &[0, 1]).is_err());
        assert!(LowWeightPrefix::from_u64(6, 4, 5, &[2, 0, 0]).is_err());
        assert!(LowWeightPrefix::new(6, 4, 5, vec![big(0), big(-1), big(0)]).is_err());
        assert!(LowWeightPrefix::from_u64(9, 4, 5, &[0, 0, 0]).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(dist_weight1(6, 4, 5).unwrap(), wd(&[0, 1, 0, 10, 35, 45, 34]));
        let w1 = dist_weight1(5, 4, 5).unwrap();
        assert_eq!(w1.get(3), big(4));
        assert_eq!(w1.total(), big(25));
        assert_eq!(dist_weight_d1(5, 4, 5).unwrap(), wd(&[0, 0, 0, 10, 5, 10]));
        assert_eq!(dist_weight_d1(9, 4, 8).unwrap().get(3), binom(9, 3));
        assert_eq!(dist_weight_d1(6, 3, 5).unwrap().get(2), big(15));
        assert_eq!(dist_weight_d2(5, 4, 5, &big(2)).unwrap(), wd(&[0, 0, 2, 4, 11, 8]));
        assert_eq!(dist_weight_d2(5, 4, 5, &big(1)).unwrap(), wd(&[0, 0, 1, 7, 8, 9]));
        assert!(dist_weight1(6, 2, 5).is_err());
        assert!(dist_weight_d2(5, 4, 5, &big(0)).is_err());
    }

    #[test]
    fn closed_forms_are_prefix_specializations() {
        for (n, d, q) in [(6, 4, 5), (8, 5, 7), (10, 6, 9), (12, 3, 11)] {
            let mut pre = vec![0u64; d - 1];
            pre[1] = 1;
            let p = LowWeightPrefix::from_u64(n, d, q, &pre).unwrap();
            assert_eq!(dist_weight1(n, d, q).unwrap(), bonneau_transformed(&p).unwrap());
            let p = LowWeightPrefix::from_u64(n, d, q, &vec![0; d - 1]).unwrap();
            assert_eq!(dist_weight_d1(n, d, q).unwrap(), bonneau_transformed(&p).unwrap());
        }
    }

    #[test]
    fn weight2_forms() {
        let b = dist_weight2(6, 5, 5, &big(1)).unwrap();
        assert_eq!(b.total(), big(25));
        assert_eq!(Some(b.clone()), dist_weight2_identical(6, 5, 5).unwrap());
        let p = LowWeightPrefix::from_u64(6, 5, 5, &[0, 0, 1, 1]).unwrap();
        assert_eq!(bonneau_transformed(&p).unwrap(), b);
        let mid = dist_weight_mid(6, 5, 5, 2, &[big(1)]).unwrap();
        assert_eq!(mid, b);
        assert!(dist_weight2(6, 4, 5, &big(1)).is_err());
    }

    #[test]
    fn mid_branches() {
        assert_eq!(mid_branch(5, 2).unwrap(), MidBranch::Low);
        assert_eq!(mid_branch(6, 2).unwrap(), MidBranch::Low);
        assert_eq!(mid_branch(6, 3).unwrap(), MidBranch::High);
        assert_eq!(mid_branch(7, 3).unwrap(), MidBranch::Low);
        assert_eq!(mid_branch(8, 4).unwrap(), MidBranch::High);
        assert!(mid_branch(5, 3).is_err());
        assert!(mid_branch(6, 1).is_err());
        // Low branch with zero knowns equals the transformed formula on the
        // matching prefix.
        let m = dist_weight_mid(9, 7, 8, 3, &[big(0), big(0)]);
        let p = LowWeightPrefix::from_u64(9, 7, 8, &[0, 0, 0, 1, 0, 0]).unwrap();
        match m {
            Ok(m) => assert_eq!(m, bonneau_transformed(&p).unwrap()),
            Err(e) => assert!(matches!(bonneau_transformed(&p), Err(ref f) if f.to_string() == e.to_string())),
        }
    }

    #[test]
    fn symmetry_examples() {
        let a = wd(&[0, 0, 2, 4, 11, 8]);
        let b = wd(&[0, 0, 1, 7, 8, 9]);
        let r = symmetry_defect(&a, &b, 4).unwrap();
        assert!(r.comparable && r.matched);
        let last = r.defects.last().unwrap();
        assert_eq!((last.0, &last.1, &last.2), (5, &big(-10), &big(-10)));
        assert!(symmetry_defect(&a, &a, 4).unwrap().matched);
        let w1 = wd(&[0, 1, 0, 4, 12, 8]);
        let r = symmetry_defect(&a, &w1, 4).unwrap();
        assert!(!r.comparable && !r.matched);
    }

    #[test]
    fn aggregate_and_identity() {
        assert_eq!(weight2_aggregate(6, 5, 5).unwrap(), big(240));
        assert_eq!(weight2_aggregate(7, 5, 7).unwrap(), big(1260));
        assert!(weight2_aggregate(4, 5, 5).is_err());
        let c = weight2_identical_check(6, 5, 5).unwrap();
        assert!(c.condition_holds && c.coprime_case);
        assert_eq!(c.value, BigRational::from_integer(big(1)));
        // q = 7, d = 5: C(6,3)/6 = 20/6 is not an integer.
        let c = weight2_identical_check(8, 5, 7).unwrap();
        assert!(!c.condition_holds && !c.coprime_case);
        assert_eq!(c.value, BigRational::new(big(10), big(3)));
        for q in [4u32, 5, 8, 9, 11, 13] {
            for d in 5..=6usize {
                if d > q as usize + 1 {
                    continue;
                }
                let c = weight2_identical_check(q as usize + 1, d, q).unwrap();
                if c.coprime_case {
                    assert!(c.condition_holds, "q={q} d={d}");
                }
            }
        }
    }

    #[test]
    fn prefix_census_matches_ambient_census() {
        use crate::gf::Field;
        use crate::mds::{Family, MdsSpec};
        use std::sync::Arc;
        for (family, q, d, delta) in [
            (Family::Gdrs, 5, 4, 0),
            (Family::Gdrs, 5, 4, 1),
            (Family::Gdrs, 4, 4, 0),
            (Family::Gtrs, 4, 4, 1),
            (Family::Gdrs, 7, 5, 1),
            (Family::Gdrs, 5, 3, 2),
        ] {
            let f = Arc::new(Field::from_order(q).unwrap());
            let spec = MdsSpec::new(family, f, d).unwrap().shortened_from_end(delta).unwrap();
            let code = spec.build().unwrap();
            let ambient = code.coset_census(Budget::DEFAULT).unwrap();
            let prefix = prefix_census(&code, Budget::DEFAULT).unwrap();
            assert_eq!(ambient.classes(), prefix.classes(), "{}", spec.label());
            assert_eq!(prefix.route(), CensusRoute::Prefix);
        }
    }
}
