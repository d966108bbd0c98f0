use std::collections::{BTreeMap, HashMap};

use super::scalar::Scalar;
use super::vector::SparseVec;

/// Incremental row echelon form with optional provenance tracking.
///
/// Every stored row has leading coefficient 1 at a distinct pivot column.
/// Each row carries a `tag`: the linear combination of inserted input tags
/// that produced it. Reducing a vector reports both the residual and the tag
/// combination that was subtracted, which is how kernels and coordinates are
/// read off without a second elimination.
#[derive(Clone, Debug)]
pub(crate) struct Echelon {
    rows: Vec<(SparseVec, SparseVec)>,
    pivot_row: HashMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self {
            rows: Vec::new(),
            pivot_row: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Returns `(residual, combo)` with `v = residual + Σ c_k row_k` and
    /// `combo = tag - Σ c_k tag_k`.
    pub fn reduce(&self, v: &SparseVec, tag: SparseVec) -> (SparseVec, SparseVec) {
        let mut acc: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        let mut tag = tag;
        let mut cursor = 0usize;
        while let Some((&col, val)) = acc.range(cursor..).next() {
            if let Some(&r) = self.pivot_row.get(&col) {
                let c = val.clone();
                let (row, row_tag) = &self.rows[r];
                for (i, x) in row.iter() {
                    let delta = x.mul(&c);
                    match acc.get_mut(i) {
                        Some(cur) => {
                            *cur = cur.sub(&delta);
                            if cur.is_zero() {
                                acc.remove(i);
                            }
                        }
                        None => {
                            acc.insert(*i, delta.neg());
                        }
                    }
                }
                if !row_tag.is_zero() {
                    tag = tag.axpy(&c.neg(), row_tag);
                }
            }
            cursor = col + 1;
        }
        (SparseVec::from_map(acc), tag)
    }

    /// Inserts `v`. Returns `Err(relation)` when `v` is dependent, where
    /// `relation` is the tag combination that vanishes.
    pub fn insert(&mut self, v: &SparseVec, tag: SparseVec) -> Result<usize, SparseVec> {
        let (r, t) = self.reduce(v, tag);
        let Some((pivot, lead)) = r.leading().cloned() else {
            return Err(t);
        };
        let inv = lead.inv();
        self.pivot_row.insert(pivot, self.rows.len());
        self.rows.push((r.scale(&inv), t.scale(&inv)));
        Ok(pivot)
    }

    /// Fully reduced rows (RREF) sorted by pivot, tags dropped.
    pub fn into_rref(self) -> Vec<SparseVec> {
        let mut rows: Vec<SparseVec> = self.rows.into_iter().map(|(r, _)| r).collect();
        rows.sort_by_key(|r| r.leading().map(|(p, _)| *p));
        let pivots: Vec<usize> = rows.iter().map(|r| r.leading().unwrap().0).collect();
        for k in (0..rows.len()).rev() {
            let p = pivots[k];
            for j in 0..k {
                if let Some(c) = rows[j].get(p).cloned() {
                    let rk = rows[k].clone();
                    rows[j] = rows[j].axpy(&c.neg(), &rk);
                }
            }
        }
        rows
    }
}
