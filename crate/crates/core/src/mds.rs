//! The explicit MDS families: doubly-extended (GDRS), triply-extended (GTRS,
//! q even, d = 4) and plain generalized Reed-Solomon codes, column removal,
//! and the closed-form MDS weight distribution.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::code::{LinearCode, Matrix, WeightDistribution};
use crate::combinat::{binom, sign};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Length q+1: the Vandermonde block plus both unit columns.
    Gdrs,
    /// Length q+2, q even, d = 4: the conic columns plus the nucleus.
    Gtrs,
    /// Length q: the GDRS matrix without its last unit column.
    Grs,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Gdrs => "gdrs",
            Family::Gtrs => "gtrs",
            Family::Grs => "grs",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Family> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gdrs" => Ok(Family::Gdrs),
            "gtrs" => Ok(Family::Gtrs),
            "grs" => Ok(Family::Grs),
            other => Err(Error::parse(format!("unknown family {other:?} (expected gdrs, gtrs or grs)"))),
        }
    }
}

/// Full description of one code of a family, enough to rebuild it exactly.
#[derive(Clone, Debug)]
pub struct MdsSpec {
    pub family: Family,
    pub field: Arc<Field>,
    pub d: usize,
    /// Distinct nonzero elements for the Vandermonde block, `q - 1` of them.
    pub alphas: Vec<Elem>,
    /// Nonzero column multipliers, one per column of the parent matrix.
    pub vs: Vec<Elem>,
    /// Sorted, 0-based indices of parent columns removed.
    pub removed: Vec<usize>,
}

impl MdsSpec {
    /// Default choices: alphas in ascending representation order, all
    /// multipliers 1, nothing removed.
    pub fn new(family: Family, field: Arc<Field>, d: usize) -> Result<MdsSpec> {
        let q = field.order() as usize;
        let parent_len = match family {
            Family::Gdrs | Family::Grs => q + 1,
            Family::Gtrs => q + 2,
        };
        let alphas = default_alphas(&field);
        let vs = vec![field.one(); parent_len];
        let spec = MdsSpec { family, field, d, alphas, vs, removed: Vec::new() };
        spec.family_matrix()?;
        Ok(spec)
    }

    /// Removes the given parent columns (0-based).
    pub fn with_removed(mut self, removed: &[usize]) -> Result<MdsSpec> {
        let mut r = removed.to_vec();
        r.sort_unstable();
        r.dedup();
        if r.len() != removed.len() {
            return Err(Error::domain("repeated column index in removal list"));
        }
        self.removed = r;
        self.parity()?;
        Ok(self)
    }

    /// Removes the last `delta` columns of the family matrix.
    pub fn shortened_from_end(self, delta: usize) -> Result<MdsSpec> {
        let len = self.family_len();
        if delta > len {
            return Err(Error::domain(format!("cannot remove {delta} of {len} columns")));
        }
        let idx: Vec<usize> = (len - delta..len).collect();
        self.with_removed(&idx)
    }

    pub fn q(&self) -> u32 {
        self.field.order()
    }

    /// Length of the family matrix before removals.
    pub fn family_len(&self) -> usize {
        let q = self.q() as usize;
        match self.family {
            Family::Gdrs => q + 1,
            Family::Gtrs => q + 2,
            Family::Grs => q,
        }
    }

    /// Length after removals.
    pub fn n(&self) -> usize {
        self.family_len() - self.removed.len()
    }

    pub fn k(&self) -> usize {
        self.n() + 1 - self.d
    }

    /// Number of removed columns.
    pub fn delta(&self) -> usize {
        self.removed.len()
    }

    /// Label such as `gdrs q=5 d=4 n=5 remove=[5]`.
    pub fn label(&self) -> String {
        let mut s = format!("{} q={} d={} [n={}, k={}]", self.family, self.q(), self.d, self.n(), self.k());
        if !self.removed.is_empty() {
            s.push_str(&format!(" remove={:?}", self.removed));
        }
        s
    }

    /// The family matrix before any removal.
    pub fn family_matrix(&self) -> Result<Matrix> {
        match self.family {
            Family::Gdrs => gdrs_parity(&self.field, self.d, &self.alphas, &self.vs),
            Family::Gtrs => {
                if self.d != 4 {
                    return Err(Error::domain(format!("GTRS codes have d = 4, got d = {}", self.d)));
                }
                gtrs_parity_with(&self.field, &self.alphas, &self.vs)
            }
            Family::Grs => {
                let h = gdrs_parity(&self.field, self.d, &self.alphas, &self.vs)?;
                h.without_columns(&[self.q() as usize])
            }
        }
    }

    pub fn parity(&self) -> Result<Matrix> {
        let h = self.family_matrix()?;
        if self.removed.is_empty() {
            Ok(h)
        } else {
            remove_columns(&h, self.d, &self.removed)
        }
    }

    pub fn build(&self) -> Result<LinearCode> {
        LinearCode::from_parity(self.parity()?)
    }
}

/// Nonzero elements in ascending representation order.
pub fn default_alphas(field: &Field) -> Vec<Elem> {
    field.nonzero().collect()
}

fn check_alphas_vs(field: &Field, alphas: &[Elem], vs: &[Elem], cols: usize) -> Result<()> {
    let q = field.order() as usize;
    if alphas.len() != q - 1 {
        return Err(Error::DimensionMismatch { expected: q - 1, got: alphas.len() });
    }
    if vs.len() != cols {
        return Err(Error::DimensionMismatch { expected: cols, got: vs.len() });
    }
    if alphas.iter().chain(vs).any(|&e| !field.owns(e)) {
        return Err(Error::FieldMismatch);
    }
    let mut sorted: Vec<u32> = alphas.iter().map(|a| a.repr()).collect();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::construction("alphas must be pairwise distinct"));
    }
    if alphas.iter().any(|a| a.is_zero()) {
        return Err(Error::construction("alphas must be nonzero"));
    }
    if vs.iter().any(|v| v.is_zero()) {
        return Err(Error::construction("column multipliers must be nonzero"));
    }
    Ok(())
}

/// The `(d-1) x (q+1)` matrix: column `j < q-1` is `v_j (1, a_j, ..., a_j^(d-2))`,
/// then `v (1, 0, ..., 0)` and `v (0, ..., 0, 1)`.
pub fn gdrs_parity(field: &Arc<Field>, d: usize, alphas: &[Elem], vs: &[Elem]) -> Result<Matrix> {
    let q = field.order() as usize;
    if d < 3 {
        return Err(Error::domain(format!("design distance must be at least 3, got {d}")));
    }
    if q < d {
        return Err(Error::domain(format!("need q >= d, got q = {q}, d = {d}")));
    }
    check_alphas_vs(field, alphas, vs, q + 1)?;
    let rows = d - 1;
    let mut cols: Vec<Vec<Elem>> = alphas
        .iter()
        .zip(vs)
        .map(|(&a, &v)| (0..rows).map(|i| field.mul(v, field.pow(a, i as u64))).collect())
        .collect();
    let unit = |i: usize, v: Elem| -> Vec<Elem> {
        (0..rows).map(|r| if r == i { v } else { field.zero() }).collect()
    };
    cols.push(unit(0, vs[q - 1]));
    cols.push(unit(rows - 1, vs[q]));
    Matrix::from_columns(field.clone(), &cols)
}

/// `3 x (q+2)` parity check of the [q+2, q-1, 4] code: the conic columns
/// followed by the nucleus column `(0, 1, 0)`.
pub fn gtrs_parity(field: &Arc<Field>, vs: &[Elem]) -> Result<Matrix> {
    gtrs_parity_with(field, &default_alphas(field), vs)
}

fn gtrs_parity_with(field: &Arc<Field>, alphas: &[Elem], vs: &[Elem]) -> Result<Matrix> {
    let q = field.order() as usize;
    if field.characteristic() != 2 {
        return Err(Error::domain(format!("GTRS codes need q even, got q = {q}")));
    }
    if vs.len() != q + 2 {
        return Err(Error::DimensionMismatch { expected: q + 2, got: vs.len() });
    }
    let conic = gdrs_parity(field, 4, alphas, &vs[..q + 1])?;
    let mut cols = conic.columns();
    if vs[q + 1].is_zero() {
        return Err(Error::construction("column multipliers must be nonzero"));
    }
    cols.push(vec![field.zero(), vs[q + 1], field.zero()]);
    Matrix::from_columns(field.clone(), &cols)
}

/// Drops columns `idxs` (0-based), keeping `1 <= delta <= n - d` and full rank.
pub fn remove_columns(h: &Matrix, d: usize, idxs: &[usize]) -> Result<Matrix> {
    let n = h.cols();
    let delta = idxs.len();
    if delta == 0 {
        return Err(Error::domain("removal needs at least one column"));
    }
    if n < d || delta > n - d {
        return Err(Error::domain(format!(
            "removing {delta} columns from length {n} leaves fewer than d = {d}"
        )));
    }
    let out = h.without_columns(idxs)?;
    let rank = out.rank();
    if rank != out.rows() {
        return Err(Error::RankDeficient { rank, rows: out.rows() });
    }
    Ok(out)
}

/// `A_w = C(n,w) sum_{j=0}^{w-d} (-1)^j C(w,j) (q^(w-d+1-j) - 1)` for `w >= d`,
/// `A_0 = 1`.
pub fn mds_weight_distribution(n: usize, d: usize, q: u32) -> Result<WeightDistribution> {
    if d == 0 || d > n {
        return Err(Error::domain(format!("need 1 <= d <= n, got n = {n}, d = {d}")));
    }
    if n > q as usize + 2 && d > 2 && d < n {
        return Err(Error::domain(format!("no [n={n}, d={d}] MDS code over GF({q}) with n > q + 2")));
    }
    Ok(WeightDistribution::new(mds_counts(n, d, q)).expect("MDS counts are non-negative"))
}

pub(crate) fn mds_counts(n: usize, d: usize, q: u32) -> Vec<BigInt> {
    let qb = BigInt::from(q);
    let mut counts = vec![BigInt::zero(); n + 1];
    counts[0] = BigInt::one();
    for (w, slot) in counts.iter_mut().enumerate().skip(d.max(1)) {
        let mut acc = BigInt::zero();
        for j in 0..=w - d {
            let term = binom(w as u64, j as i64) * (num_traits::pow(qb.clone(), w - d + 1 - j) - 1);
            if sign(j as i64) > 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        *slot = binom(n as u64, w as i64) * acc;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::Budget;

    fn gf(q: u64) -> Arc<Field> {
        Arc::new(Field::from_order(q).unwrap())
    }

    #[test]
    fn gdrs_q5_d4_matrix() {
        let spec = MdsSpec::new(Family::Gdrs, gf(5), 4).unwrap();
        let h = spec.parity().unwrap();
        assert_eq!(
            h.row_reprs(),
            vec![vec![1, 1, 1, 1, 1, 0], vec![1, 2, 3, 4, 0, 0], vec![1, 4, 4, 1, 0, 1]]
        );
        let code = spec.build().unwrap();
        assert_eq!((code.n(), code.k(), code.min_distance(Budget::DEFAULT).unwrap()), (6, 3, 4));
    }

    #[test]
    fn family_parameters_by_enumeration() {
        for (family, q, d, n, k) in [
            (Family::Gdrs, 5, 3, 6, 4),
            (Family::Gdrs, 4, 3, 5, 3),
            (Family::Grs, 5, 4, 5, 2),
            (Family::Gtrs, 4, 4, 6, 3),
            (Family::Gtrs, 8, 4, 10, 7),
        ] {
            let code = MdsSpec::new(family, gf(q), d).unwrap().build().unwrap();
            assert_eq!((code.n(), code.k()), (n, k), "{family} q={q}");
            assert_eq!(code.min_distance(Budget::DEFAULT).unwrap(), d, "{family} q={q}");
        }
    }

    #[test]
    fn gtrs_needs_even_q() {
        assert!(MdsSpec::new(Family::Gtrs, gf(5), 4).is_err());
        assert!(gtrs_parity(&gf(5), &[gf(5).one(); 7]).is_err());
    }

    #[test]
    fn removal_guards() {
        let spec = MdsSpec::new(Family::Gdrs, gf(5), 4).unwrap();
        let c = spec.clone().with_removed(&[5]).unwrap().build().unwrap();
        assert_eq!((c.n(), c.k()), (5, 2));
        // n - delta must stay >= d.
        assert!(spec.clone().with_removed(&[0, 1, 2]).is_err());
        assert!(spec.clone().with_removed(&[1, 1]).is_err());
        assert!(spec.clone().with_removed(&[9]).is_err());
        let h = spec.parity().unwrap();
        assert!(remove_columns(&h, 4, &[]).is_err());
    }

    #[test]
    fn invalid_multipliers_rejected() {
        let f = gf(5);
        let alphas = vec![f.elem(1).unwrap(), f.elem(1).unwrap(), f.elem(3).unwrap(), f.elem(4).unwrap()];
        assert!(gdrs_parity(&f, 4, &alphas, &[f.one(); 6]).is_err());
        let mut vs = vec![f.one(); 6];
        vs[2] = f.zero();
        assert!(gdrs_parity(&f, 4, &default_alphas(&f), &vs).is_err());
    }

    #[test]
    fn closed_form_distribution() {
        let d = mds_weight_distribution(6, 4, 5).unwrap();
        assert_eq!(d, WeightDistribution::from_u64(&[1, 0, 0, 0, 60, 24, 40]));
        let d = mds_weight_distribution(5, 4, 5).unwrap();
        assert_eq!(d, WeightDistribution::from_u64(&[1, 0, 0, 0, 20, 4]));
        let d = mds_weight_distribution(5, 5, 7).unwrap();
        assert_eq!(d, WeightDistribution::from_u64(&[1, 0, 0, 0, 0, 6]));
    }

    #[test]
    fn closed_form_matches_enumeration() {
        for (q, d) in [(4, 3), (5, 3), (5, 4), (5, 5), (7, 4), (7, 6), (8, 5)] {
            let spec = MdsSpec::new(Family::Gdrs, gf(q), d).unwrap();
            for delta in 0..=spec.family_len() - d {
                let s = spec.clone().shortened_from_end(delta).unwrap();
                let code = s.build().unwrap();
                if (q as u128).pow(code.k() as u32) > 1_000_000 {
                    continue;
                }
                let brute = code.brute_weight_distribution(Budget::DEFAULT).unwrap();
                assert_eq!(brute, mds_weight_distribution(code.n(), d, q as u32).unwrap(), "{}", s.label());
            }
        }
    }
}
