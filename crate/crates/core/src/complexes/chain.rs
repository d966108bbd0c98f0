use std::borrow::Cow;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::{Field, Matrix, Quotient, SparseVec, Subspace};

/// A weight-graded chain complex concentrated in a finite degree window.
///
/// For every weight `w ≤ weight_cap` and degree `n` in `[lo, hi]` there is a
/// based module of dimension `dim(n, w)` and a differential
/// `d_n : C_n → C_{n-1}` preserving weight. Modules outside the window are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    field: Field,
    lo: i64,
    hi: i64,
    weight_cap: u32,
    slices: Vec<Slice>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Slice {
    dims: Vec<usize>,
    diffs: Vec<Matrix>,
}

impl ChainComplex {
    /// Builds a complex from per-slice data; `diff(n, w)` returning `None`
    /// means the zero map. Validates shapes and `d∘d = 0`.
    pub fn new(
        field: Field,
        window: (i64, i64),
        weight_cap: u32,
        dims: impl Fn(i64, u32) -> usize,
        diff: impl Fn(i64, u32) -> Option<Matrix>,
    ) -> Result<Self> {
        let (lo, hi) = window;
        if lo > hi + 1 {
            return Err(Error::Shape(format!("empty window [{lo}, {hi}]")));
        }
        let mut slices = Vec::with_capacity(weight_cap as usize + 1);
        for w in 0..=weight_cap {
            let ds: Vec<usize> = (lo..=hi).map(|n| dims(n, w)).collect();
            let mut diffs = Vec::with_capacity(ds.len());
            for (k, n) in (lo..=hi).enumerate() {
                let target = if k == 0 { 0 } else { ds[k - 1] };
                let m = match diff(n, w) {
                    Some(m) => {
                        if m.rows() != target || m.cols() != ds[k] || m.field() != field {
                            return Err(Error::Shape(format!(
                                "d at degree {n}, weight {w} is {}x{} over {}, expected {target}x{} over {field}",
                                m.rows(),
                                m.cols(),
                                m.field(),
                                ds[k]
                            )));
                        }
                        m
                    }
                    None => Matrix::zeros(field, target, ds[k]),
                };
                diffs.push(m);
            }
            slices.push(Slice { dims: ds, diffs });
        }
        let c = Self {
            field,
            lo,
            hi,
            weight_cap,
            slices,
        };
        c.check_d_squared()?;
        Ok(c)
    }

    pub fn zero(field: Field, window: (i64, i64), weight_cap: u32) -> Self {
        Self::new(field, window, weight_cap, |_, _| 0, |_, _| None).unwrap()
    }

    /// Builds from sparse maps keyed by `(degree, weight)`; missing keys are zero.
    pub fn from_maps(
        field: Field,
        window: (i64, i64),
        weight_cap: u32,
        dims: &BTreeMap<(i64, u32), usize>,
        diffs: &BTreeMap<(i64, u32), Matrix>,
    ) -> Result<Self> {
        for &(n, w) in dims.keys().chain(diffs.keys()) {
            if n < window.0 || n > window.1 {
                return Err(Error::Window {
                    degree: n,
                    lo: window.0,
                    hi: window.1,
                });
            }
            if w > weight_cap {
                return Err(Error::Shape(format!("weight {w} above cap {weight_cap}")));
            }
        }
        Self::new(
            field,
            window,
            weight_cap,
            |n, w| dims.get(&(n, w)).copied().unwrap_or(0),
            |n, w| diffs.get(&(n, w)).cloned(),
        )
    }

    fn check_d_squared(&self) -> Result<()> {
        for (w, s) in self.slices.iter().enumerate() {
            for k in 1..s.diffs.len() {
                let dd = s.diffs[k - 1].mul(&s.diffs[k])?;
                if !dd.is_zero() {
                    return Err(Error::NotAComplex {
                        degree: self.lo + k as i64,
                        weight: w as u32,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn weight_cap(&self) -> u32 {
        self.weight_cap
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi
    }

    pub fn in_window(&self, n: i64) -> bool {
        n >= self.lo && n <= self.hi
    }

    pub fn dim(&self, n: i64, w: u32) -> usize {
        if !self.in_window(n) || w > self.weight_cap {
            return 0;
        }
        self.slices[w as usize].dims[(n - self.lo) as usize]
    }

    /// The differential `d_n : C_n → C_{n-1}` at weight `w` (zero outside the window).
    pub fn d(&self, n: i64, w: u32) -> Cow<'_, Matrix> {
        if !self.in_window(n) || w > self.weight_cap {
            return Cow::Owned(Matrix::zeros(self.field, self.dim(n - 1, w), self.dim(n, w)));
        }
        Cow::Borrowed(&self.slices[w as usize].diffs[(n - self.lo) as usize])
    }

    pub fn check_degree(&self, n: i64) -> Result<()> {
        if self.in_window(n) {
            Ok(())
        } else {
            Err(Error::Window {
                degree: n,
                lo: self.lo,
                hi: self.hi,
            })
        }
    }

    pub fn is_zero(&self) -> bool {
        self.slices.iter().all(|s| s.dims.iter().all(|&d| d == 0))
    }

    pub fn total_dim(&self) -> usize {
        self.slices.iter().flat_map(|s| s.dims.iter()).sum()
    }

    /// `Σ (-1)^n dim C_n` at weight `w`.
    pub fn euler_characteristic(&self, w: u32) -> i64 {
        self.degrees()
            .map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.dim(n, w) as i64)
            .sum()
    }

    /// `H_n` at weight `w`.
    pub fn homology(&self, n: i64, w: u32) -> Result<Homology> {
        self.check_degree(n)?;
        homology_of_pair(self, None, None, n, w)
    }

    pub fn betti(&self, n: i64, w: u32) -> Result<usize> {
        Ok(self.homology(n, w)?.dim())
    }

    /// Degree `n` of the output is degree `n - k` of the input; `d` picks up `(-1)^k`.
    pub fn shift(&self, k: i64) -> ChainComplex {
        let sign = self.field.int(if k.rem_euclid(2) == 0 { 1 } else { -1 });
        ChainComplex::new(
            self.field,
            (self.lo + k, self.hi + k),
            self.weight_cap,
            |n, w| self.dim(n - k, w),
            |n, w| Some(self.d(n - k, w).scale(&sign)),
        )
        .expect("shift preserves d∘d = 0")
    }

    /// Same complex viewed in a larger (or smaller) window; modules cut off are dropped.
    pub fn rewindow(&self, window: (i64, i64)) -> ChainComplex {
        ChainComplex::new(
            self.field,
            window,
            self.weight_cap,
            |n, w| self.dim(n, w),
            |n, w| {
                if n == window.0 {
                    None
                } else {
                    Some(self.d(n, w).into_owned())
                }
            },
        )
        .expect("stupid truncation of a complex is a complex")
    }

    /// Good truncation `τ_{≥n}`: full modules above `n`, cycles in degree `n`,
    /// zero below; returned with its inclusion.
    pub fn good_truncate(&self, n: i64) -> (ChainComplex, super::ChainMap) {
        let cycles: Vec<Subspace> = (0..=self.weight_cap)
            .map(|w| {
                if self.in_window(n) {
                    crate::exactlin::kernel_basis(&self.d(n, w))
                } else {
                    Subspace::zero(self.field, 0)
                }
            })
            .collect();
        let lo = self.lo.max(n);
        let hi = self.hi.max(lo - 1);
        let dims = |m: i64, w: u32| {
            if m > n {
                self.dim(m, w)
            } else if m == n && self.in_window(n) {
                cycles[w as usize].dim()
            } else {
                0
            }
        };
        let trunc = ChainComplex::new(
            self.field,
            (lo, hi),
            self.weight_cap,
            dims,
            |m, w| {
                if m == n + 1 && self.in_window(n) {
                    let z = &cycles[w as usize];
                    let d = self.d(m, w);
                    let cols = d
                        .columns()
                        .iter()
                        .map(|c| z.coordinates(c).expect("boundaries are cycles"))
                        .collect();
                    Some(Matrix::from_columns(self.field, z.dim(), cols).unwrap())
                } else if m > n + 1 {
                    Some(self.d(m, w).into_owned())
                } else {
                    None
                }
            },
        )
        .expect("good truncation is a complex");
        let incl = super::ChainMap::new(&trunc, self, |m, w| {
            if m == n {
                Some(cycles[w as usize].basis())
            } else if m > n {
                Some(Matrix::identity(self.field, self.dim(m, w)))
            } else {
                None
            }
        })
        .expect("inclusion of a subcomplex is a chain map");
        (trunc, incl)
    }
}

/// A subcomplex given by one subspace per `(degree, weight)` slice of an ambient complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    lo: i64,
    spaces: Vec<Vec<Subspace>>,
}

impl Subcomplex {
    /// Builds from `space(n, w)`, checking closure under `d`.
    pub fn new(c: &ChainComplex, space: impl Fn(i64, u32) -> Subspace) -> Result<Self> {
        let s = Self::new_unchecked(c, space);
        if let Some((n, w)) = s.first_unclosed(c) {
            return Err(Error::NotClosed {
                step: 0,
                degree: n,
                weight: w,
            });
        }
        Ok(s)
    }

    pub(crate) fn new_unchecked(c: &ChainComplex, space: impl Fn(i64, u32) -> Subspace) -> Self {
        let spaces = (0..=c.weight_cap())
            .map(|w| {
                c.degrees()
                    .map(|n| {
                        let s = space(n, w);
                        assert_eq!(s.ambient_dim(), c.dim(n, w), "subspace ambient mismatch");
                        s
                    })
                    .collect()
            })
            .collect();
        Self {
            lo: c.window().0,
            spaces,
        }
    }

    pub fn full(c: &ChainComplex) -> Self {
        Self::new_unchecked(c, |n, w| Subspace::full(c.field(), c.dim(n, w)))
    }

    pub fn zero(c: &ChainComplex) -> Self {
        Self::new_unchecked(c, |n, w| Subspace::zero(c.field(), c.dim(n, w)))
    }

    /// The slice at `(n, w)`; `None` outside the ambient window.
    pub fn get(&self, n: i64, w: u32) -> Option<&Subspace> {
        let k = n - self.lo;
        if k < 0 {
            return None;
        }
        self.spaces.get(w as usize)?.get(k as usize)
    }

    /// Slice at `(n, w)`, or the zero subspace of a zero module outside the window.
    pub fn at(&self, n: i64, w: u32, field: Field) -> Cow<'_, Subspace> {
        match self.get(n, w) {
            Some(s) => Cow::Borrowed(s),
            None => Cow::Owned(Subspace::zero(field, 0)),
        }
    }

    pub fn first_unclosed(&self, c: &ChainComplex) -> Option<(i64, u32)> {
        for w in 0..=c.weight_cap() {
            for n in c.degrees() {
                let s = self.get(n, w).unwrap();
                let target = self.at(n - 1, w, c.field());
                let d = c.d(n, w);
                if s.vectors().iter().any(|v| !target.contains(&d.mul_vec(v))) {
                    return Some((n, w));
                }
            }
        }
        None
    }

    pub fn first_not_contained_in(&self, other: &Subcomplex) -> Option<(i64, u32)> {
        for (w, row) in self.spaces.iter().enumerate() {
            for (k, s) in row.iter().enumerate() {
                let n = self.lo + k as i64;
                if !s.is_subspace_of(other.get(n, w as u32).unwrap()) {
                    return Some((n, w as u32));
                }
            }
        }
        None
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().flatten().all(Subspace::is_zero)
    }

    pub fn sum(&self, other: &Subcomplex) -> Subcomplex {
        self.zip_with(other, Subspace::sum)
    }

    pub fn intersection(&self, other: &Subcomplex) -> Subcomplex {
        self.zip_with(other, Subspace::intersection)
    }

    fn zip_with(&self, other: &Subcomplex, f: impl Fn(&Subspace, &Subspace) -> Subspace) -> Subcomplex {
        Subcomplex {
            lo: self.lo,
            spaces: self
                .spaces
                .iter()
                .zip(&other.spaces)
                .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                .collect(),
        }
    }

    pub fn dim(&self, n: i64, w: u32) -> usize {
        self.get(n, w).map_or(0, Subspace::dim)
    }

    /// The subcomplex as a complex in its own (canonical) basis, with its inclusion.
    pub fn to_complex(&self, ambient: &ChainComplex) -> Result<(ChainComplex, super::ChainMap)> {
        let field = ambient.field();
        let sub = ChainComplex::new(
            field,
            ambient.window(),
            ambient.weight_cap(),
            |n, w| self.dim(n, w),
            |n, w| {
                let src = self.get(n, w)?;
                let tgt = self.at(n - 1, w, field);
                let d = ambient.d(n, w);
                let cols = src
                    .vectors()
                    .iter()
                    .map(|v| tgt.coordinates(&d.mul_vec(v)).expect("closed under d"))
                    .collect();
                Some(Matrix::from_columns(field, tgt.dim(), cols).unwrap())
            },
        )?;
        let incl = super::ChainMap::new(&sub, ambient, |n, w| self.get(n, w).map(Subspace::basis))?;
        Ok((sub, incl))
    }
}

/// Homology of a subquotient `A/B` of an ambient complex in one slice:
/// `{a ∈ A_n : d a ∈ B_{n-1}} / (d A_{n+1} + B_n)`.
#[derive(Clone, Debug)]
pub struct Homology {
    degree: i64,
    weight: u32,
    quotient: Quotient,
}

impl Homology {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    /// Cycle representatives of a basis, in ambient coordinates.
    pub fn representatives(&self) -> &[SparseVec] {
        self.quotient.representatives()
    }

    pub fn cycles(&self) -> &Subspace {
        self.quotient.space()
    }

    pub fn boundaries(&self) -> &Subspace {
        self.quotient.sub()
    }

    /// Coordinates of the class of a (relative) cycle; `None` if `v` is not one.
    pub fn class_of(&self, v: &SparseVec) -> Option<SparseVec> {
        self.quotient.coords(v)
    }

    pub fn projection(&self) -> Matrix {
        self.quotient.projection()
    }
}

/// Homology of the subquotient `upper / lower` at `(n, w)`.
/// `None` stands for the full complex (upper) or the zero subcomplex (lower).
pub fn homology_of_pair(
    c: &ChainComplex,
    upper: Option<&Subcomplex>,
    lower: Option<&Subcomplex>,
    n: i64,
    w: u32,
) -> Result<Homology> {
    let field = c.field();
    let full = |m: i64| Subspace::full(field, c.dim(m, w));
    let zero = |m: i64| Subspace::zero(field, c.dim(m, w));
    let a_n = upper.map_or_else(|| full(n), |u| u.at(n, w, field).into_owned());
    let a_up = upper.map_or_else(|| full(n + 1), |u| u.at(n + 1, w, field).into_owned());
    let b_n = lower.map_or_else(|| zero(n), |l| l.at(n, w, field).into_owned());
    let b_down = lower.map_or_else(|| zero(n - 1), |l| l.at(n - 1, w, field).into_owned());
    let cycles = a_n.restricted_preimage(&c.d(n, w), &b_down);
    let boundaries = a_up.image_under(&c.d(n + 1, w)).sum(&b_n);
    let quotient = Quotient::new(&cycles, &boundaries)?;
    Ok(Homology {
        degree: n,
        weight: w,
        quotient,
    })
}
