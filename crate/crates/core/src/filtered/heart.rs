use rayon::prelude::*;

use super::tower::FilteredComplex;
use crate::complexes::{CochainComplex, Homology};
use crate::error::Result;
use crate::exactlin::{Matrix, SparseVec};

/// The cochain complex `H_n(gr^0) → H_{n-1}(gr^1) → ⋯` of a filtered complex,
/// with the homology data that fixes its bases.
#[derive(Clone, Debug)]
pub struct Heart {
    level: i64,
    complex: CochainComplex,
    /// `classes[w][i]` is `H_{n-i}(gr^i)` at weight `w`.
    classes: Vec<Vec<Homology>>,
    window_limited: bool,
}

impl Heart {
    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn into_complex(self) -> CochainComplex {
        self.complex
    }

    pub fn homology(&self, i: i64, w: u32) -> &Homology {
        &self.classes[w as usize][i as usize]
    }

    /// Coordinates in cochain degree `i` of the class of a relative cycle
    /// of `gr^i` in chain degree `n - i`.
    pub fn class_of(&self, i: i64, w: u32, v: &SparseVec) -> Option<SparseVec> {
        self.classes.get(w as usize)?.get(usize::try_from(i).ok()?)?.class_of(v)
    }

    /// Some module was read from degrees whose homology is not trusted.
    pub fn window_limited(&self) -> bool {
        self.window_limited
    }
}

impl FilteredComplex {
    /// `π^B_n`: cochain degree `i` is `H_{n-i}(gr^i)`, the differential is the
    /// boundary of `gr^{i+1} → F^i/F^{i+2} → gr^i`.
    pub fn beilinson_heart(&self, n: i64) -> Result<Heart> {
        let c = self.ambient();
        let field = c.field();
        let len = self.top().max(1) as i64;
        let classes: Vec<Vec<Homology>> = (0..=c.weight_cap())
            .into_par_iter()
            .map(|w| {
                (0..len)
                    .map(|i| self.graded_homology(i, n - i, w))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let complex = CochainComplex::new(
            field,
            (0, len - 1),
            c.weight_cap(),
            |i, w| classes[w as usize][i as usize].dim(),
            |i, w| {
                if i + 1 >= len {
                    return None;
                }
                let (src, tgt) = (&classes[w as usize][i as usize], &classes[w as usize][i as usize + 1]);
                let d = c.d(n - i, w);
                let cols = src
                    .representatives()
                    .iter()
                    .map(|z| tgt.class_of(&d.mul_vec(z)).expect("d of a relative cycle of gr^i lies in F^{i+1}"))
                    .collect();
                Some(Matrix::from_columns(field, tgt.dim(), cols).unwrap())
            },
        )?;
        let (tlo, thi) = self.trusted_degrees();
        let window_limited = (0..len).any(|i| n - i < tlo || n - i > thi);
        Ok(Heart {
            level: n,
            complex,
            classes,
            window_limited,
        })
    }
}

/// Matrix of the map induced on a heart module by a filtered chain map whose
/// block in `(degree, weight)` is `f(m, w)`.
pub fn induced_heart_map(
    source: &Heart,
    target: &Heart,
    i: i64,
    w: u32,
    f: impl Fn(i64, u32) -> Matrix,
) -> Matrix {
    let hs = source.homology(i, w);
    let ht = target.homology(i, w);
    let block = f(hs.degree(), w);
    let cols = hs
        .representatives()
        .iter()
        .map(|z| ht.class_of(&block.mul_vec(z)).expect("filtered maps preserve relative cycles"))
        .collect();
    Matrix::from_columns(source.complex().field(), ht.dim(), cols).unwrap()
}
