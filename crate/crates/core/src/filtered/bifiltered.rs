use super::tower::FilteredComplex;
use crate::complexes::{homology_of_pair, ChainComplex, Homology, Subcomplex};
use crate::error::{Error, Result};

/// A lattice `F^{s,t}` of strict subcomplexes decreasing in both indices.
/// Indices are clamped to `[0, s_max] × [0, t_max]`.
#[derive(Clone, Debug)]
pub struct BifilteredComplex {
    ambient: ChainComplex,
    /// `lattice[s][t]`.
    lattice: Vec<Vec<Subcomplex>>,
}

impl BifilteredComplex {
    pub fn new(ambient: ChainComplex, lattice: Vec<Vec<Subcomplex>>) -> Result<Self> {
        let t_len = lattice.first().map_or(0, Vec::len);
        if t_len == 0 || lattice.iter().any(|row| row.len() != t_len) {
            return Err(Error::Shape("bifiltration lattice must be a nonempty rectangle".into()));
        }
        for (s, row) in lattice.iter().enumerate() {
            for (t, f) in row.iter().enumerate() {
                if let Some((n, w)) = f.first_unclosed(&ambient) {
                    return Err(Error::NotClosed {
                        step: s * t_len + t,
                        degree: n,
                        weight: w,
                    });
                }
                let check = |prev: &Subcomplex, p: usize| match f.first_not_contained_in(prev) {
                    Some((n, w)) => Err(Error::NotDecreasing {
                        step: s * t_len + t,
                        prev: p,
                        degree: n,
                        weight: w,
                    }),
                    None => Ok(()),
                };
                if s > 0 {
                    check(&lattice[s - 1][t], (s - 1) * t_len + t)?;
                }
                if t > 0 {
                    check(&row[t - 1], s * t_len + t - 1)?;
                }
            }
        }
        Ok(Self { ambient, lattice })
    }

    pub fn ambient(&self) -> &ChainComplex {
        &self.ambient
    }

    pub fn caps(&self) -> (usize, usize) {
        (self.lattice.len() - 1, self.lattice[0].len() - 1)
    }

    pub fn step(&self, s: i64, t: i64) -> &Subcomplex {
        let (sm, tm) = self.caps();
        let s = s.clamp(0, sm as i64) as usize;
        let t = t.clamp(0, tm as i64) as usize;
        &self.lattice[s][t]
    }

    /// Homology of `gr^t gr^s = F^{s,t} / (F^{s+1,t} + F^{s,t+1})` at `(m, w)`.
    pub fn graded_homology(&self, s: i64, t: i64, m: i64, w: u32) -> Result<Homology> {
        let lower = self.step(s + 1, t).sum(self.step(s, t + 1));
        homology_of_pair(&self.ambient, Some(self.step(s, t)), Some(&lower), m, w)
    }

    /// The one-parameter filtration `t ↦ F^{s,t}` at fixed `s`.
    pub fn row(&self, s: i64) -> FilteredComplex {
        let (_, tm) = self.caps();
        let steps = (0..=tm as i64).map(|t| self.step(s, t).clone()).collect();
        FilteredComplex::new_unchecked(self.ambient.clone(), steps, (i64::MIN, i64::MAX))
    }

    /// The one-parameter filtration `s ↦ F^{s,t}` at fixed `t`.
    pub fn column(&self, t: i64) -> FilteredComplex {
        let (sm, _) = self.caps();
        let steps = (0..=sm as i64).map(|s| self.step(s, t).clone()).collect();
        FilteredComplex::new_unchecked(self.ambient.clone(), steps, (i64::MIN, i64::MAX))
    }

    /// First `(s, t)` on the outer edges of the lattice where `F^{s,t}` is nonzero.
    pub fn bicompleteness_residual(&self) -> Option<(usize, usize)> {
        let (sm, tm) = self.caps();
        let edge = (0..=tm).map(|t| (sm, t)).chain((0..=sm).map(|s| (s, tm)));
        edge.into_iter().find(|&(s, t)| !self.lattice[s][t].is_zero())
    }
}
