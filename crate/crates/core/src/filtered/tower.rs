use rayon::prelude::*;

use crate::complexes::{homology_of_pair, ChainComplex, Homology, Subcomplex};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Quotient};

const UNBOUNDED: (i64, i64) = (i64::MIN, i64::MAX);

/// A decreasing tower `F^0 ⊇ F^1 ⊇ ⋯ ⊇ F^top` of strict subcomplexes of an
/// ambient complex. The tower is ℕ-indexed (`F^i = F^0` for `i < 0`) and
/// constant above `top` (`F^i = F^top`); it is complete when `F^top = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredComplex {
    ambient: ChainComplex,
    steps: Vec<Subcomplex>,
    trusted: (i64, i64),
}

impl FilteredComplex {
    pub fn new(ambient: ChainComplex, steps: Vec<Subcomplex>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Shape("a filtration needs at least one step".into()));
        }
        for (i, s) in steps.iter().enumerate() {
            if let Some((n, w)) = s.first_unclosed(&ambient) {
                return Err(Error::NotClosed {
                    step: i,
                    degree: n,
                    weight: w,
                });
            }
            if i > 0 {
                if let Some((n, w)) = s.first_not_contained_in(&steps[i - 1]) {
                    return Err(Error::NotDecreasing {
                        step: i,
                        prev: i - 1,
                        degree: n,
                        weight: w,
                    });
                }
            }
        }
        Ok(Self {
            ambient,
            steps,
            trusted: UNBOUNDED,
        })
    }

    pub(crate) fn new_unchecked(ambient: ChainComplex, steps: Vec<Subcomplex>, trusted: (i64, i64)) -> Self {
        Self {
            ambient,
            steps,
            trusted,
        }
    }

    /// Degrees in which homology of the ambient model equals the homology of
    /// the (possibly unbounded) complex it stands for. Unbounded unless set.
    pub fn trusted_degrees(&self) -> (i64, i64) {
        self.trusted
    }

    pub fn with_trusted_degrees(mut self, trusted: (i64, i64)) -> Self {
        self.trusted = trusted;
        self
    }

    pub fn ambient(&self) -> &ChainComplex {
        &self.ambient
    }

    pub fn top(&self) -> usize {
        self.steps.len() - 1
    }

    pub fn steps(&self) -> &[Subcomplex] {
        &self.steps
    }

    /// `F^i` for any integer `i`.
    pub fn step(&self, i: i64) -> &Subcomplex {
        let k = i.clamp(0, self.top() as i64) as usize;
        &self.steps[k]
    }

    /// The tower with `F^0` replaced by the whole ambient complex is not
    /// required; this reports whether it holds.
    pub fn is_exhaustive_on_ambient(&self) -> bool {
        self.steps[0] == Subcomplex::full(&self.ambient)
    }

    /// Homology of `gr^i = F^i / F^{i+1}` at `(m, w)`.
    pub fn graded_homology(&self, i: i64, m: i64, w: u32) -> Result<Homology> {
        homology_of_pair(&self.ambient, Some(self.step(i)), Some(self.step(i + 1)), m, w)
    }

    /// Homology of `F^i` at `(m, w)`.
    pub fn step_homology(&self, i: i64, m: i64, w: u32) -> Result<Homology> {
        homology_of_pair(&self.ambient, Some(self.step(i)), None, m, w)
    }

    /// The quotient complex `F^i / F^{i+1}` in canonical representative bases.
    pub fn graded_piece(&self, i: i64) -> Result<GradedPiece> {
        if i < 0 || i >= self.top() as i64 {
            return Err(Error::FiltrationIndex {
                index: i,
                top: self.top(),
            });
        }
        let c = &self.ambient;
        let field = c.field();
        let (upper, lower) = (self.step(i), self.step(i + 1));
        let quotients: Vec<Vec<Quotient>> = (0..=c.weight_cap())
            .map(|w| {
                c.degrees()
                    .map(|n| Quotient::new(upper.get(n, w).unwrap(), lower.get(n, w).unwrap()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let lo = c.window().0;
        let q = |n: i64, w: u32| &quotients[w as usize][(n - lo) as usize];
        let complex = ChainComplex::new(
            field,
            c.window(),
            c.weight_cap(),
            |n, w| q(n, w).dim(),
            |n, w| {
                if n == lo {
                    return None;
                }
                let d = c.d(n, w);
                let target = q(n - 1, w);
                let cols = q(n, w)
                    .representatives()
                    .iter()
                    .map(|r| target.coords(&d.mul_vec(r)).expect("steps are subcomplexes"))
                    .collect();
                Some(Matrix::from_columns(field, target.dim(), cols).unwrap())
            },
        )?;
        Ok(GradedPiece {
            index: i,
            complex,
            quotients,
            lo,
        })
    }

    /// First slice where `F^top` is nonzero, if any.
    pub fn completeness(&self) -> CompletenessReport {
        let top = &self.steps[self.top()];
        let mut residual = None;
        'outer: for w in 0..=self.ambient.weight_cap() {
            for n in self.ambient.degrees() {
                if top.dim(n, w) > 0 {
                    residual = Some((n, w));
                    break 'outer;
                }
            }
        }
        CompletenessReport {
            top: self.top(),
            residual,
        }
    }

    /// Shifts the ambient complex and every step by `k`.
    pub fn shift(&self, k: i64) -> FilteredComplex {
        let ambient = self.ambient.shift(k);
        let steps = self
            .steps
            .iter()
            .map(|s| {
                Subcomplex::new_unchecked(&ambient, |n, w| {
                    s.at(n - k, w, ambient.field()).into_owned()
                })
            })
            .collect();
        FilteredComplex {
            ambient,
            steps,
            trusted: (self.trusted.0.saturating_add(k), self.trusted.1.saturating_add(k)),
        }
    }

    /// Strict model of the Beilinson connective cover `τ^B_{≥n}`:
    /// step `i` in degree `m` is `{x ∈ F^{j(m)}_m : d x ∈ F^{j(m-1)}_{m-1}}`
    /// with `j(m) = max(i, n - m)`.
    pub fn beilinson_truncate(&self, n: i64) -> FilteredComplex {
        let c = &self.ambient;
        let field = c.field();
        let steps: Vec<Subcomplex> = (0..=self.top() as i64)
            .into_par_iter()
            .map(|i| {
                Subcomplex::new_unchecked(c, |m, w| {
                    let here = self.step(i.max(n - m)).get(m, w).unwrap();
                    let below = self.step(i.max(n - m + 1)).at(m - 1, w, field);
                    here.restricted_preimage(&c.d(m, w), &below)
                })
            })
            .collect();
        let truncated = FilteredComplex {
            ambient: c.clone(),
            steps,
            trusted: self.trusted,
        };
        debug_assert!(truncated.is_subtower_of(self));
        truncated
    }

    pub fn is_subtower_of(&self, other: &FilteredComplex) -> bool {
        (0..=self.top().max(other.top()) as i64)
            .all(|i| self.step(i).first_not_contained_in(other.step(i)).is_none())
    }

    /// Compares `H_m(gr^i τ^B_{≥n}F)` with `H_m(τ_{≥n-i} gr^i F)` in every slice.
    /// Returns the first `(i, m, w)` where the dimensions differ.
    pub fn check_beilinson_graded_pieces(
        &self,
        truncated: &FilteredComplex,
        n: i64,
    ) -> Result<Option<(i64, i64, u32)>> {
        let c = &self.ambient;
        for i in 0..self.top() as i64 {
            let gr = self.graded_piece(i)?;
            let (tr, _) = gr.complex().good_truncate(n - i);
            for w in 0..=c.weight_cap() {
                for m in c.degrees() {
                    let lhs = truncated.graded_homology(i, m, w)?.dim();
                    let rhs = if tr.in_window(m) { tr.betti(m, w)? } else { 0 };
                    if lhs != rhs {
                        return Ok(Some((i, m, w)));
                    }
                }
            }
        }
        Ok(None)
    }

    /// Checks that `H_i((τ^B_{≥n}F)(0)) → H_i(F(0))` is an isomorphism for
    /// every trusted degree `i ≥ n`.
    pub fn n_equivalence_check(&self, n: i64) -> Result<NEquivalenceReport> {
        let truncated = self.beilinson_truncate(n);
        let c = &self.ambient;
        let (tlo, thi) = self.trusted;
        let (wlo, whi) = c.window();
        let from = n.max(tlo).max(wlo);
        let to = thi.min(whi);
        let mut first_failure = None;
        'outer: for m in from..=to {
            for w in 0..=c.weight_cap() {
                let src = truncated.step_homology(0, m, w)?;
                let tgt = self.step_homology(0, m, w)?;
                let cols = src
                    .representatives()
                    .iter()
                    .map(|z| tgt.class_of(z).expect("subcomplex cycles are cycles"))
                    .collect();
                let map = Matrix::from_columns(c.field(), tgt.dim(), cols)?;
                let iso = src.dim() == tgt.dim() && map.rank() == tgt.dim();
                if !iso {
                    first_failure = Some((m, w));
                    break 'outer;
                }
            }
        }
        Ok(NEquivalenceReport {
            n,
            checked: (from, to),
            first_failure,
            window_limited: n < tlo,
        })
    }
}

/// `gr^i F = F^i / F^{i+1}` with the projection data used to build it.
#[derive(Clone, Debug)]
pub struct GradedPiece {
    index: i64,
    complex: ChainComplex,
    quotients: Vec<Vec<Quotient>>,
    lo: i64,
}

impl GradedPiece {
    pub fn index(&self) -> i64 {
        self.index
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    /// The quotient `F^i_n / F^{i+1}_n` used as basis in degree `n`.
    pub fn quotient(&self, n: i64, w: u32) -> &Quotient {
        &self.quotients[w as usize][(n - self.lo) as usize]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletenessReport {
    pub top: usize,
    /// First `(degree, weight)` where `F^top` is nonzero.
    pub residual: Option<(i64, u32)>,
}

impl CompletenessReport {
    pub fn is_complete(&self) -> bool {
        self.residual.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NEquivalenceReport {
    pub n: i64,
    /// Inclusive range of degrees compared.
    pub checked: (i64, i64),
    pub first_failure: Option<(i64, u32)>,
    /// `n` lies below the trusted degrees, so only part of the claim was checked.
    pub window_limited: bool,
}

impl NEquivalenceReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}
