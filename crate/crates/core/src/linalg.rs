//! Exact incremental row echelon form over `Q` with sparse vectors, keeping
//! track of how each basis row is built from the inserted vectors.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::coeff::Rational;

/// A sparse vector indexed by `K`.
pub type SparseVec<K> = BTreeMap<K, Rational>;

#[derive(Debug, Clone)]
struct Row<K> {
    vec: SparseVec<K>,
    comb: BTreeMap<usize, Rational>,
}

/// The span of the vectors inserted so far.
#[derive(Debug, Clone)]
pub struct Span<K: Ord + Clone> {
    rows: Vec<Row<K>>,
    pivots: BTreeMap<K, usize>,
}

impl<K: Ord + Clone> Default for Span<K> {
    fn default() -> Self {
        Span { rows: Vec::new(), pivots: BTreeMap::new() }
    }
}

fn axpy<K: Ord + Clone>(y: &mut BTreeMap<K, Rational>, a: &Rational, x: &BTreeMap<K, Rational>) {
    for (k, v) in x {
        let e = y.entry(k.clone()).or_insert_with(Rational::zero);
        *e += a * v;
        if e.is_zero() {
            y.remove(k);
        }
    }
}

impl<K: Ord + Clone> Span<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the rows. Returns the remainder and the
    /// combination `c` of rows with `v = remainder + Σ c_r row_r`, already
    /// expressed through the inserted vectors.
    fn reduce(&self, v: &SparseVec<K>) -> (SparseVec<K>, BTreeMap<usize, Rational>) {
        let mut rem = v.clone();
        let mut comb = BTreeMap::new();
        let mut cursor: Option<K> = None;
        loop {
            let next = rem
                .iter()
                .filter(|(k, _)| cursor.as_ref().is_none_or(|c| *k > c))
                .find(|(k, _)| self.pivots.contains_key(*k))
                .map(|(k, c)| (k.clone(), c.clone()));
            let Some((k, c)) = next else { break };
            let row = &self.rows[self.pivots[&k]];
            axpy(&mut rem, &-c.clone(), &row.vec);
            axpy(&mut comb, &c, &row.comb);
            cursor = Some(k);
        }
        (rem, comb)
    }

    pub fn contains(&self, v: &SparseVec<K>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Adds `v` under the label `tag`. Returns `false` (and changes nothing)
    /// when `v` already lies in the span.
    pub fn insert(&mut self, v: &SparseVec<K>, tag: usize) -> bool {
        let (rem, comb) = self.reduce(v);
        let Some((pivot, lead)) = rem.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        // rem = v - comb, normalized by the leading coefficient
        let inv = Rational::one() / lead;
        let mut row_comb: BTreeMap<usize, Rational> = BTreeMap::from([(tag, Rational::one())]);
        axpy(&mut row_comb, &-Rational::one(), &comb);
        let row = Row {
            vec: rem.into_iter().map(|(k, c)| (k, c * &inv)).collect(),
            comb: row_comb.into_iter().map(|(k, c)| (k, c * &inv)).collect(),
        };
        self.pivots.insert(pivot, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Coefficients `c_tag` with `v = Σ c_tag · inserted[tag]`, if `v` is in
    /// the span.
    pub fn express(&self, v: &SparseVec<K>) -> Option<BTreeMap<usize, Rational>> {
        let (rem, comb) = self.reduce(v);
        rem.is_empty().then_some(comb)
    }
}
