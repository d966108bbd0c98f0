use super::model::{totalize, CyclicModel, Variant};
use crate::complexes::{cone_sequence, mapping_cone, ChainComplex, ChainMap, Subcomplex};
use crate::error::Result;
use crate::exactlin::{Matrix, SparseVec, Subspace};
use crate::filtered::FilteredComplex;
use crate::hochschild::{HkrTower, MixedComplex};

/// Periodic homology as the cone of the norm map `N : HC[1] → HC⁻`,
/// `z ↦ B z_0` placed in column 0.
///
/// In degree `n` the cone is `HC⁻_n ⊕ HC_{n-2}`, which is the periodic
/// totalization with the cyclic columns moved one step to the left.
#[derive(Clone, Debug)]
pub struct PeriodicModel {
    negative: CyclicModel,
    cyclic: CyclicModel,
    norm: ChainMap,
    complex: ChainComplex,
    inclusion: ChainMap,
    projection: ChainMap,
    trusted: (i64, i64),
}

/// Builds `HP` in total degrees `window`, with `HC⁻` cut at the window's
/// lower end and `HC` at two below its upper end.
pub fn periodic_model(m: &MixedComplex, window: (i64, i64)) -> Result<PeriodicModel> {
    let (lo, hi) = window;
    let (clo, chi) = m.complex().window();
    let negative = totalize(m, Variant::Negative, (lo, hi.max(chi)))?;
    let cyclic = totalize(m, Variant::Cyclic, (clo.min(lo - 2), (hi - 2).max(clo.min(lo - 2))))?;
    let shifted = cyclic.complex().shift(1);
    let field = m.complex().field();
    let norm = ChainMap::new(&shifted, negative.complex(), |n, w| {
        let (src, tgt) = (cyclic.block(n - 1, w, 0)?, negative.block(n, w, 0)?);
        let big_b = m.big_b(n - 1, w);
        let cols = (0..shifted.dim(n, w))
            .map(|j| {
                if (src.offset..src.offset + src.len).contains(&j) {
                    big_b.column(j - src.offset).offset(tgt.offset)
                } else {
                    SparseVec::new()
                }
            })
            .collect();
        Some(Matrix::from_columns(field, negative.complex().dim(n, w), cols).unwrap())
    })?;
    let complex = mapping_cone(&norm)?;
    let (inclusion, projection) = cone_sequence(&norm, &complex)?;
    let (nt, ct) = (negative.trusted_degrees(), cyclic.trusted_degrees());
    let trusted = (
        nt.0.max(ct.0.saturating_add(2)),
        nt.1.min(ct.1.saturating_add(2)),
    );
    Ok(PeriodicModel {
        negative,
        cyclic,
        norm,
        complex,
        inclusion,
        projection,
        trusted,
    })
}

impl PeriodicModel {
    pub fn negative(&self) -> &CyclicModel {
        &self.negative
    }

    pub fn cyclic(&self) -> &CyclicModel {
        &self.cyclic
    }

    /// `N : HC[1] → HC⁻`.
    pub fn norm(&self) -> &ChainMap {
        &self.norm
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    /// `HC⁻ → HP`.
    pub fn inclusion(&self) -> &ChainMap {
        &self.inclusion
    }

    /// `HP → HC[2]`.
    pub fn projection(&self) -> &ChainMap {
        &self.projection
    }

    pub fn trusted_degrees(&self) -> (i64, i64) {
        self.trusted
    }

    /// Places `v ∈ C_{n+2s}` in periodic column `s` of total degree `n`.
    pub fn embed(&self, n: i64, w: u32, s: i64, v: &SparseVec) -> Option<SparseVec> {
        if s >= 0 {
            self.negative.embed(n, w, s, v)
        } else {
            let base = self.negative.complex().dim(n, w);
            self.cyclic.embed(n - 2, w, s + 1, v).map(|x| x.offset(base))
        }
    }

    /// HKR filtration on both summands of the cone.
    pub fn hkr_filtration(&self, tower: &HkrTower) -> Result<FilteredComplex> {
        let neg = self.negative.hkr_filtration(tower, 0)?;
        let cyc = self.cyclic.hkr_filtration(tower, i64::MIN)?;
        let field = self.complex.field();
        let top = neg.top().max(cyc.top()) as i64;
        let steps = (0..=top)
            .map(|t| {
                let (a, b) = (neg.step(t), cyc.step(t));
                Subcomplex::new_unchecked(&self.complex, |n, w| {
                    let total = self.complex.dim(n, w);
                    let base = self.negative.complex().dim(n, w);
                    let upper: Subspace = a.at(n, w, field).embed(total, 0);
                    upper.sum(&b.at(n - 2, w, field).embed(total, base))
                })
            })
            .collect();
        Ok(FilteredComplex::new(self.complex.clone(), steps)?.with_trusted_degrees(self.trusted))
    }
}
