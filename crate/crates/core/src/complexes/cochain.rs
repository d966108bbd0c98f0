use std::borrow::Cow;

use super::chain::{ChainComplex, Homology};
use crate::error::Result;
use crate::exactlin::{Field, Matrix};

/// A cochain complex `C^i → C^{i+1}`, stored as the chain complex `C_{-i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainComplex {
    inner: ChainComplex,
}

impl CochainComplex {
    /// `diff(i, w)` is `d^i : C^i → C^{i+1}`; `None` means zero.
    pub fn new(
        field: Field,
        window: (i64, i64),
        weight_cap: u32,
        dims: impl Fn(i64, u32) -> usize,
        diff: impl Fn(i64, u32) -> Option<Matrix>,
    ) -> Result<Self> {
        let (lo, hi) = window;
        let inner = ChainComplex::new(
            field,
            (-hi, -lo),
            weight_cap,
            |n, w| dims(-n, w),
            |n, w| if n == -hi { None } else { diff(-n, w) },
        )?;
        Ok(Self { inner })
    }

    pub fn from_chain(inner: ChainComplex) -> Self {
        Self { inner }
    }

    pub fn as_chain(&self) -> &ChainComplex {
        &self.inner
    }

    pub fn into_chain(self) -> ChainComplex {
        self.inner
    }

    pub fn field(&self) -> Field {
        self.inner.field()
    }

    pub fn weight_cap(&self) -> u32 {
        self.inner.weight_cap()
    }

    /// Cochain degrees `[lo, hi]`.
    pub fn window(&self) -> (i64, i64) {
        let (lo, hi) = self.inner.window();
        (-hi, -lo)
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        let (lo, hi) = self.window();
        lo..=hi
    }

    pub fn dim(&self, i: i64, w: u32) -> usize {
        self.inner.dim(-i, w)
    }

    /// `d^i : C^i → C^{i+1}`.
    pub fn d(&self, i: i64, w: u32) -> Cow<'_, Matrix> {
        self.inner.d(-i, w)
    }

    pub fn cohomology(&self, i: i64, w: u32) -> Result<Homology> {
        self.inner.homology(-i, w)
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Stupid truncation keeping cochain degrees `≥ n` (Hodge truncation for de Rham complexes).
    pub fn truncate_below(&self, n: i64) -> CochainComplex {
        let (lo, hi) = self.window();
        CochainComplex::new(
            self.field(),
            (lo, hi),
            self.weight_cap(),
            |i, w| if i >= n { self.dim(i, w) } else { 0 },
            |i, w| (i >= n).then(|| self.d(i, w).into_owned()),
        )
        .expect("stupid truncation is a complex")
    }

    /// Stupid truncation keeping cochain degrees `≤ n`.
    pub fn truncate_above(&self, n: i64) -> CochainComplex {
        let (lo, hi) = self.window();
        CochainComplex::new(
            self.field(),
            (lo, hi),
            self.weight_cap(),
            |i, w| if i <= n { self.dim(i, w) } else { 0 },
            |i, w| (i < n).then(|| self.d(i, w).into_owned()),
        )
        .expect("stupid truncation is a complex")
    }
}
