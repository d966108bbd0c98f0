use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::tower::FilteredComplex;
use crate::error::Result;
use crate::exactlin::{Matrix, Quotient, Subspace};

/// One page `E_r` of the spectral sequence of a decreasing filtration.
///
/// Entries are keyed internally by `(p, m, w)`: filtration index, total
/// degree, weight. The displayed bigrading is `s = stride·p`,
/// `t = m + stride·p`, so the abutment sits on the diagonals `t - s = m`.
#[derive(Clone, Debug)]
pub struct SpectralPage {
    r: usize,
    stride: i64,
    entries: BTreeMap<(i64, i64, u32), usize>,
    /// `d_r : E_r^p(m) → E_r^{p+r}(m-1)`, keyed by source.
    differentials: BTreeMap<(i64, i64, u32), Matrix>,
}

#[derive(Serialize)]
struct PageJson {
    r: usize,
    entries: BTreeMap<String, usize>,
}

impl SpectralPage {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn stride(&self) -> i64 {
        self.stride
    }

    pub fn with_stride(mut self, stride: i64) -> Self {
        self.stride = stride;
        self
    }

    pub fn dim(&self, p: i64, m: i64, w: u32) -> usize {
        self.entries.get(&(p, m, w)).copied().unwrap_or(0)
    }

    /// Nonzero entries keyed by `(p, m, w)`.
    pub fn entries(&self) -> impl Iterator<Item = ((i64, i64, u32), usize)> + '_ {
        self.entries.iter().filter(|(_, &d)| d > 0).map(|(&k, &d)| (k, d))
    }

    /// Nonzero entries keyed by the displayed `(s, t, w)`.
    pub fn bigraded(&self) -> BTreeMap<(i64, i64, u32), usize> {
        self.entries()
            .map(|((p, m, w), d)| ((self.stride * p, m + self.stride * p, w), d))
            .collect()
    }

    pub fn differential(&self, p: i64, m: i64, w: u32) -> Option<&Matrix> {
        self.differentials.get(&(p, m, w))
    }

    /// Whether every `d_r` on this page is zero.
    pub fn degenerates(&self) -> bool {
        self.differentials.values().all(Matrix::is_zero)
    }

    /// Dimensions of the homology of `(E_r, d_r)`.
    pub fn homology_dims(&self) -> BTreeMap<(i64, i64, u32), usize> {
        let r = self.r as i64;
        self.entries
            .iter()
            .map(|(&(p, m, w), &dim)| {
                let out = self.differentials.get(&(p, m, w)).map_or(0, Matrix::rank);
                let inc = self.differentials.get(&(p - r, m + 1, w)).map_or(0, Matrix::rank);
                ((p, m, w), dim - out - inc)
            })
            .collect()
    }

    /// `d_r ∘ d_r = 0` on every entry.
    pub fn squares_to_zero(&self) -> bool {
        let r = self.r as i64;
        self.differentials.iter().all(|(&(p, m, w), d)| {
            match self.differentials.get(&(p + r, m - 1, w)) {
                Some(next) => next.mul(d).map(|x| x.is_zero()).unwrap_or(false),
                None => true,
            }
        })
    }

    /// Whether `next` has the dimensions of the homology of this page.
    pub fn is_followed_by(&self, next: &SpectralPage) -> bool {
        let h = self.homology_dims();
        let keys = h.keys().chain(next.entries.keys());
        keys.into_iter().all(|&(p, m, w)| {
            h.get(&(p, m, w)).copied().unwrap_or(0) == next.dim(p, m, w)
        })
    }

    /// Total dimension on the diagonal of total degree `m` at weight `w`.
    pub fn diagonal(&self, m: i64, w: u32) -> usize {
        self.entries
            .iter()
            .filter(|(&(_, mm, ww), _)| mm == m && ww == w)
            .map(|(_, &d)| d)
            .sum()
    }

    /// `{"r": r, "entries": {"(s,t,w)": dim}}` with zero entries omitted.
    pub fn to_json(&self) -> serde_json::Value {
        let entries = self
            .bigraded()
            .into_iter()
            .map(|((s, t, w), d)| (format!("({s},{t},{w})"), d))
            .collect();
        serde_json::to_value(PageJson { r: self.r, entries }).expect("page serializes")
    }
}

impl FilteredComplex {
    /// `Z_r^p(m) = {x ∈ F^p_m : d x ∈ F^{p+r}_{m-1}}`.
    fn almost_cycles(&self, r: i64, p: i64, m: i64, w: u32) -> Subspace {
        let c = self.ambient();
        self.step(p)
            .at(m, w, c.field())
            .restricted_preimage(&c.d(m, w), &self.step(p + r).at(m - 1, w, c.field()))
    }

    /// `E_r^p(m) = Z_r^p / (Z_{r-1}^{p+1} + d Z_{r-1}^{p-r+1})`.
    fn page_entry(&self, r: i64, p: i64, m: i64, w: u32) -> Result<Quotient> {
        let c = self.ambient();
        let z = self.almost_cycles(r, p, m, w);
        let b = self
            .almost_cycles(r - 1, p + 1, m, w)
            .sum(&self.almost_cycles(r - 1, p - r + 1, m + 1, w).image_under(&c.d(m + 1, w)));
        Quotient::new(&z, &b)
    }

    fn page(&self, r: usize) -> Result<SpectralPage> {
        let c = self.ambient();
        let ri = r as i64;
        let top = self.top() as i64;
        let keys: Vec<(i64, i64, u32)> = (0..=c.weight_cap())
            .flat_map(|w| (0..top).flat_map(move |p| c.degrees().map(move |m| (p, m, w))))
            .collect();
        let pieces: BTreeMap<(i64, i64, u32), Quotient> = keys
            .par_iter()
            .map(|&(p, m, w)| self.page_entry(ri, p, m, w).map(|q| ((p, m, w), q)))
            .collect::<Result<_>>()?;
        let mut differentials = BTreeMap::new();
        for (&(p, m, w), q) in &pieces {
            let Some(target) = pieces.get(&(p + ri, m - 1, w)) else {
                continue;
            };
            let d = c.d(m, w);
            let cols = q
                .representatives()
                .iter()
                .map(|x| target.coords(&d.mul_vec(x)).expect("d maps Z_r^p into Z_r^{p+r}"))
                .collect();
            differentials.insert((p, m, w), Matrix::from_columns(c.field(), target.dim(), cols)?);
        }
        Ok(SpectralPage {
            r,
            stride: 1,
            entries: pieces.iter().map(|(&k, q)| (k, q.dim())).collect(),
            differentials,
        })
    }

    /// Pages `E_1, …, E_{r_max}`.
    pub fn spectral_sequence(&self, r_max: usize) -> Result<Vec<SpectralPage>> {
        (1..=r_max.max(1)).map(|r| self.page(r)).collect()
    }

    /// The stable page; reached by `r = top + 1` for a tower of length `top`.
    pub fn e_infinity(&self) -> Result<SpectralPage> {
        self.page(self.top() + 1)
    }

    /// First `(m, w)` where the `E_∞` diagonal differs from `dim H_m(F^0)`.
    pub fn abutment_mismatch(&self) -> Result<Option<(i64, u32)>> {
        let e = self.e_infinity()?;
        let c = self.ambient();
        for w in 0..=c.weight_cap() {
            for m in c.degrees() {
                if e.diagonal(m, w) != self.step_homology(0, m, w)?.dim() {
                    return Ok(Some((m, w)));
                }
            }
        }
        Ok(None)
    }
}
