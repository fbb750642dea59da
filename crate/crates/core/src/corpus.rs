//! The desk corpus: every explicit MDS code small enough to census by full
//! enumeration of the ambient space.

use std::sync::Arc;

use crate::code::{upow, Budget, CosetCensus, LinearCode};
use crate::error::Result;
use crate::gf::Field;
use crate::mds::{Family, MdsSpec};

pub const CORPUS_FIELDS: [u32; 6] = [4, 5, 7, 8, 9, 11];
pub const CORPUS_DISTANCES: [usize; 4] = [3, 4, 5, 6];
/// Ambient-space limit `q^n` for corpus membership.
pub const CORPUS_AMBIENT_LIMIT: u64 = 200_000_000;

/// Restricts the corpus to the given fields and distances.
#[derive(Clone, Debug, Default)]
pub struct CorpusFilter {
    pub q: Option<u32>,
    pub d: Option<usize>,
}

impl CorpusFilter {
    pub fn admits(&self, q: u32, d: usize) -> bool {
        self.q.is_none_or(|x| x == q) && self.d.is_none_or(|x| x == d)
    }
}

/// GDRS codes for each `(q, d)` with `q >= d`, shortened from the end to
/// every length `d <= n <= q + 1` with `q^n` within the limit, plus the GTRS
/// codes for even `q` at `d = 4` under the same limit.
pub fn desk_corpus(filter: &CorpusFilter) -> Result<Vec<MdsSpec>> {
    let mut out = Vec::new();
    for &q in &CORPUS_FIELDS {
        let field = Arc::new(Field::from_order(q as u64)?);
        for &d in &CORPUS_DISTANCES {
            if d > q as usize || !filter.admits(q, d) {
                continue;
            }
            let mut families = vec![Family::Gdrs];
            if q % 2 == 0 && d == 4 {
                families.push(Family::Gtrs);
            }
            for family in families {
                let parent = MdsSpec::new(family, field.clone(), d)?;
                let len = parent.family_len();
                for n in (d..=len).rev() {
                    if upow(q as u64, n) > CORPUS_AMBIENT_LIMIT as u128 {
                        continue;
                    }
                    out.push(parent.clone().shortened_from_end(len - n)?);
                }
            }
        }
    }
    Ok(out)
}

/// A corpus code with its ambient census.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub spec: MdsSpec,
    pub code: LinearCode,
    pub census: CosetCensus,
}

impl CorpusEntry {
    pub fn build(spec: MdsSpec, budget: Budget) -> Result<CorpusEntry> {
        let code = spec.build()?;
        let census = code.coset_census(budget)?;
        Ok(CorpusEntry { spec, code, census })
    }

    pub fn label(&self) -> String {
        self.spec.label()
    }
}

/// Builds and censuses every code of the filtered corpus.
pub fn build_corpus(filter: &CorpusFilter) -> Result<Vec<CorpusEntry>> {
    desk_corpus(filter)?.into_iter().map(|s| CorpusEntry::build(s, Budget::new(CORPUS_AMBIENT_LIMIT))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let all = desk_corpus(&CorpusFilter::default()).unwrap();
        for s in &all {
            assert!(s.n() >= s.d && (s.q() as u128).pow(s.n() as u32) <= CORPUS_AMBIENT_LIMIT as u128);
        }
        let count = |q: u32, d: usize| all.iter().filter(|s| s.q() == q && s.d == d).count();
        // q = 5: n = 6 down to d.
        assert_eq!(count(5, 4), 3);
        // q = 4, d = 4: GDRS n = 5, 4 and GTRS n = 6, 5, 4.
        assert_eq!(count(4, 4), 5);
        // q = 11 stops at n = 7.
        assert_eq!(all.iter().filter(|s| s.q() == 11).map(|s| s.n()).max(), Some(7));
        let only = desk_corpus(&CorpusFilter { q: Some(7), d: Some(6) }).unwrap();
        assert!(only.iter().all(|s| s.q() == 7 && s.d == 6) && only.len() == 3);
    }
}
