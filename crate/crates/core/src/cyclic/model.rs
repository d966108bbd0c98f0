use std::fmt;
use std::str::FromStr;

use crate::complexes::{ChainComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, SparseVec, Subspace};
use crate::filtered::{BifilteredComplex, FilteredComplex};
use crate::hochschild::{HkrTower, MixedComplex};

/// Which columns of the `(b, B)` bicomplex are kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Columns `s ≥ 0`: homotopy fixed points, `HC⁻`.
    Negative,
    /// All columns: Tate construction, `HP`.
    Periodic,
    /// Columns `s ≤ 0`: homotopy orbits, `HC`.
    Cyclic,
}

impl Variant {
    fn allows(self, s: i64) -> bool {
        match self {
            Variant::Negative => s >= 0,
            Variant::Periodic => true,
            Variant::Cyclic => s <= 0,
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Negative => "negative",
            Variant::Periodic => "periodic",
            Variant::Cyclic => "cyclic",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "negative" | "hc-" => Ok(Variant::Negative),
            "periodic" | "hp" => Ok(Variant::Periodic),
            "cyclic" | "hc" => Ok(Variant::Cyclic),
            _ => Err(Error::Parse {
                input: s.to_string(),
                position: 0,
                message: "expected negative, periodic or cyclic".into(),
            }),
        }
    }
}

/// Where column `s` sits inside a total slice.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Block {
    pub column: i64,
    pub offset: usize,
    pub len: usize,
}

/// Totalization of a mixed complex over a range of columns: total degree
/// `n` is `⊕_s C_{n+2s}` and `(dx)_s = b x_s + B x_{s-1}`.
#[derive(Clone, Debug)]
pub struct CyclicModel {
    variant: Variant,
    mixed: MixedComplex,
    complex: ChainComplex,
    /// `blocks[w][n - lo]`.
    blocks: Vec<Vec<Vec<Block>>>,
    columns: (i64, i64),
    trusted: (i64, i64),
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -(-a).div_euclid(b)
}

/// Columns of `variant` meeting total degree `n` for a mixed complex in chain degrees `[clo, chi]`.
fn columns_of(variant: Variant, (clo, chi): (i64, i64), n: i64) -> impl Iterator<Item = i64> {
    let a = div_ceil(clo - n, 2);
    let b = div_floor(chi - n, 2);
    (a..=b).filter(move |&s| variant.allows(s))
}

/// Builds the `variant` totalization in total degrees `window`.
pub fn totalize(m: &MixedComplex, variant: Variant, window: (i64, i64)) -> Result<CyclicModel> {
    let c = m.complex();
    let field = c.field();
    let (lo, hi) = window;
    let cw = c.window();
    let blocks: Vec<Vec<Vec<Block>>> = (0..=c.weight_cap())
        .map(|w| {
            (lo..=hi)
                .map(|n| {
                    let mut offset = 0;
                    columns_of(variant, cw, n)
                        .map(|s| {
                            let len = c.dim(n + 2 * s, w);
                            let b = Block { column: s, offset, len };
                            offset += len;
                            b
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let layout = |n: i64, w: u32| &blocks[w as usize][(n - lo) as usize];
    let complex = ChainComplex::new(
        field,
        window,
        c.weight_cap(),
        |n, w| layout(n, w).iter().map(|b| b.len).sum(),
        |n, w| {
            if n == lo {
                return None;
            }
            let (src, tgt) = (layout(n, w), layout(n - 1, w));
            let rows: Vec<usize> = tgt.iter().map(|b| b.len).collect();
            let cols: Vec<usize> = src.iter().map(|b| b.len).collect();
            let dm = Matrix::block(field, &rows, &cols, |i, j| {
                let (t, s) = (tgt[i].column, src[j].column);
                let k = n + 2 * s;
                if t == s {
                    Some(c.d(k, w).into_owned())
                } else if t == s + 1 {
                    Some(m.big_b(k, w))
                } else {
                    None
                }
            })
            .expect("column blocks have matching shapes");
            Some(dm)
        },
    )?;
    let mut columns = (i64::MAX, i64::MIN);
    for n in lo..=hi {
        for s in columns_of(variant, cw, n) {
            columns = (columns.0.min(s), columns.1.max(s));
        }
    }
    let nonzero = |k: i64| {
        (0..=c.weight_cap()).any(|w| columns_of(variant, cw, k).any(|s| c.dim(k + 2 * s, w) > 0))
    };
    let below_vanishes = variant == Variant::Cyclic && lo <= cw.0;
    let above_vanishes = variant == Variant::Negative && hi >= cw.1;
    let tlo = if below_vanishes {
        i64::MIN
    } else {
        lo + i64::from(nonzero(lo - 1))
    };
    let thi = if above_vanishes {
        i64::MAX
    } else {
        hi - i64::from(nonzero(hi + 1))
    };
    Ok(CyclicModel {
        variant,
        mixed: m.clone(),
        complex,
        blocks,
        columns,
        trusted: (tlo, thi),
    })
}

impl CyclicModel {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn mixed(&self) -> &MixedComplex {
        &self.mixed
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    /// Smallest and largest column meeting the window.
    pub fn column_range(&self) -> (i64, i64) {
        self.columns
    }

    /// Degrees in which the model's homology is the homology of the full bicomplex.
    pub fn trusted_degrees(&self) -> (i64, i64) {
        self.trusted
    }

    /// Whether homology in `[lo, hi]` is fully trusted.
    pub fn is_exact_on(&self, lo: i64, hi: i64) -> bool {
        self.trusted.0 <= lo && hi <= self.trusted.1
    }

    pub fn blocks(&self, n: i64, w: u32) -> &[Block] {
        if !self.complex.in_window(n) || w > self.complex.weight_cap() {
            return &[];
        }
        &self.blocks[w as usize][(n - self.complex.window().0) as usize]
    }

    pub fn block(&self, n: i64, w: u32, s: i64) -> Option<Block> {
        self.blocks(n, w).iter().find(|b| b.column == s).copied()
    }

    /// Places a chain `v ∈ C_{n+2s}` in column `s` of total degree `n`.
    pub fn embed(&self, n: i64, w: u32, s: i64, v: &SparseVec) -> Option<SparseVec> {
        self.block(n, w, s).map(|b| v.offset(b.offset))
    }

    /// The column-`s` component of a total chain of degree `n`.
    pub fn component(&self, n: i64, w: u32, s: i64, x: &SparseVec) -> SparseVec {
        match self.block(n, w, s) {
            Some(b) => x.slice(b.offset..b.offset + b.len),
            None => SparseVec::new(),
        }
    }

    /// Subcomplex whose column-`s` part in chain degree `k` is `space(s, k, w)`.
    pub fn column_subcomplex(&self, space: impl Fn(i64, i64, u32) -> Subspace) -> Subcomplex {
        let c = &self.complex;
        let field = c.field();
        Subcomplex::new_unchecked(c, |n, w| {
            let total = c.dim(n, w);
            self.blocks(n, w)
                .iter()
                .filter(|b| b.len > 0)
                .fold(Subspace::zero(field, total), |acc, b| {
                    let part = space(b.column, n + 2 * b.column, w);
                    if part.is_zero() {
                        acc
                    } else {
                        acc.sum(&part.embed(total, b.offset))
                    }
                })
        })
    }

    /// Columns `≥ s`.
    pub fn columns_from(&self, s: i64) -> Subcomplex {
        let c = self.mixed.complex();
        let field = c.field();
        self.column_subcomplex(|col, k, w| {
            if col >= s {
                Subspace::full(field, c.dim(k, w))
            } else {
                Subspace::zero(field, c.dim(k, w))
            }
        })
    }

    /// The CW filtration of a negative model: step `s` is columns `≥ s`,
    /// up to the first step that is zero in the window.
    pub fn cw_filtration(&self) -> Result<FilteredComplex> {
        if self.variant != Variant::Negative {
            return Err(Error::Unsupported(format!(
                "CW filtration of a {} model",
                self.variant
            )));
        }
        let top = self.columns.1.max(0) + 1;
        let steps = (0..=top).map(|s| self.columns_from(s)).collect();
        Ok(FilteredComplex::new(self.complex.clone(), steps)?.with_trusted_degrees(self.trusted))
    }

    /// HKR filtration of the column-`≥ s` part: step `t` is columns `≥ s`
    /// of the good truncation `τ_{≥t}`.
    pub fn hkr_filtration(&self, tower: &HkrTower, s: i64) -> Result<FilteredComplex> {
        let c = self.mixed.complex();
        let field = c.field();
        let top = tower.filtration().top() as i64;
        let steps = (0..=top)
            .map(|t| {
                self.column_subcomplex(|col, k, w| {
                    if col >= s {
                        tower.step(t, k, w)
                    } else {
                        Subspace::zero(field, c.dim(k, w))
                    }
                })
            })
            .collect();
        Ok(FilteredComplex::new(self.complex.clone(), steps)?.with_trusted_degrees(self.trusted))
    }

    /// `F^{s,t}` = columns `≥ s` of HKR step `t`, with caps one past the
    /// last nonzero column and HKR step.
    pub fn bifiltration(&self, tower: &HkrTower) -> Result<BifilteredComplex> {
        if self.variant != Variant::Negative {
            return Err(Error::Unsupported(format!(
                "bifiltration of a {} model",
                self.variant
            )));
        }
        let c = self.mixed.complex();
        let field = c.field();
        let s_top = self.columns.1.max(0) + 1;
        let t_top = tower.filtration().top() as i64;
        let lattice = (0..=s_top)
            .map(|s| {
                (0..=t_top)
                    .map(|t| {
                        self.column_subcomplex(|col, k, w| {
                            if col >= s {
                                tower.step(t, k, w)
                            } else {
                                Subspace::zero(field, c.dim(k, w))
                            }
                        })
                    })
                    .collect()
            })
            .collect();
        BifilteredComplex::new(self.complex.clone(), lattice)
    }
}
