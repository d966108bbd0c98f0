use super::complex::{Hochschild, Tensor};
use super::mixed::MixedComplex;
use crate::complexes::Subcomplex;
use crate::derham::{form_basis, Form, Monomial};
use crate::error::{Error, Result};
use crate::exactlin::{kernel_basis, Matrix, Scalar, SparseVec, Subspace};
use crate::filtered::FilteredComplex;

/// All permutations of `0..p` with their signs.
fn signed_permutations(p: usize) -> Vec<(Vec<usize>, i64)> {
    fn go(rest: &mut Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, i64)>) {
        if rest.is_empty() {
            let inversions = (0..cur.len())
                .flat_map(|i| (i + 1..cur.len()).map(move |j| (i, j)))
                .filter(|&(i, j)| cur[i] > cur[j])
                .count();
            out.push((cur.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (0..p).collect(), &mut Vec::new(), &mut out);
    out
}

impl Hochschild {
    fn require_polynomial(&self) -> Result<()> {
        if self.algebra().is_polynomial() {
            Ok(())
        } else {
            Err(Error::Unsupported(format!(
                "the HKR comparison for {} (only polynomial algebras are smooth here)",
                self.algebra().label()
            )))
        }
    }

    /// Image of a basis form under the antisymmetrization
    /// `a_0 da_1 ∧ ⋯ ∧ da_p ↦ Σ_σ sgn(σ) a_0 ⊗ a_{σ(1)} ⊗ ⋯ ⊗ a_{σ(p)}`.
    pub fn hkr_chain(&self, f: &Form, w: u32) -> SparseVec {
        let vars = self.algebra().vars();
        let field = self.algebra().field();
        let pairs = signed_permutations(f.degree()).into_iter().map(|(perm, sign)| {
            let mut t: Tensor = vec![f.coefficient.clone()];
            t.extend(perm.iter().map(|&k| Monomial::var(vars, f.wedge[k])));
            let i = self.index_of(&t, w).expect("antisymmetrized forms are normalized chains");
            (i, field.int(sign))
        });
        SparseVec::from_pairs(pairs)
    }

    /// `ε : Ω^p(w) → C_p(w)` in the basis of `form_basis`.
    pub fn hkr_map(&self, p: usize, w: u32) -> Result<Matrix> {
        self.require_polynomial()?;
        let forms = form_basis(self.algebra(), p, w);
        let cols = forms.iter().map(|f| self.hkr_chain(f, w)).collect();
        Matrix::from_columns(self.algebra().field(), self.complex().dim(p as i64, w), cols)
    }

    /// `Ω^p(w) → HH_p(w)` in the canonical homology basis.
    pub fn hkr_on_homology(&self, p: usize, w: u32) -> Result<Matrix> {
        let eps = self.hkr_map(p, w)?;
        let c = self.complex();
        if !c.in_window(p as i64) {
            return Ok(Matrix::zeros(c.field(), 0, eps.cols()));
        }
        let h = c.homology(p as i64, w)?;
        let cols = eps
            .columns()
            .iter()
            .map(|z| {
                h.class_of(z).ok_or_else(|| {
                    Error::Incompatible(format!("HKR image of a {p}-form at weight {w} is not a cycle"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(c.field(), h.dim(), cols)
    }

    /// `c` with `[B ε(ω)] = c [ε(dω)]`, read off from `B(x) = c·(1 ⊗ x)` in a
    /// one-variable polynomial ring.
    pub fn hkr_normalization(&self) -> Result<Scalar> {
        self.require_polynomial()?;
        let field = self.algebra().field();
        if self.algebra().vars() == 0 || self.complex().weight_cap() == 0 {
            return Ok(field.one());
        }
        let w = self.algebra().generators()[0].weight;
        if w > self.complex().weight_cap() {
            return Ok(field.one());
        }
        let x = Form {
            coefficient: Monomial::var(self.algebra().vars(), 0),
            wedge: vec![],
        };
        let dx = Form {
            coefficient: Monomial::one(self.algebra().vars()),
            wedge: vec![0],
        };
        let bx = self.mixed().big_b(0, w).mul_vec(&self.hkr_chain(&x, w));
        let edx = self.hkr_chain(&dx, w);
        let (i, e) = edx.leading().cloned().expect("ε(dx) is nonzero");
        Ok(bx.get(i).cloned().unwrap_or_else(|| field.zero()).div(&e))
    }
}

/// The HKR filtration: step `t` is the good truncation `τ_{≥t}`, closed under `b` and `B`.
#[derive(Clone, Debug)]
pub struct HkrTower {
    filtration: FilteredComplex,
}

impl HkrTower {
    pub fn filtration(&self) -> &FilteredComplex {
        &self.filtration
    }

    pub fn into_filtration(self) -> FilteredComplex {
        self.filtration
    }

    /// Subspace of step `t` in `(n, w)`.
    pub fn step(&self, t: i64, n: i64, w: u32) -> Subspace {
        let c = self.filtration.ambient();
        self.filtration.step(t).at(n, w, c.field()).into_owned()
    }
}

pub fn hkr_tower(m: &MixedComplex) -> Result<HkrTower> {
    let c = m.complex();
    let field = c.field();
    let (lo, hi) = c.window();
    let steps: Vec<Subcomplex> = (lo..=hi + 1)
        .map(|t| {
            Subcomplex::new(c, |n, w| {
                if n > t {
                    Subspace::full(field, c.dim(n, w))
                } else if n == t {
                    kernel_basis(&c.d(n, w))
                } else {
                    Subspace::zero(field, c.dim(n, w))
                }
            })
        })
        .collect::<Result<_>>()?;
    for (k, s) in steps.iter().enumerate() {
        for w in 0..=c.weight_cap() {
            for n in c.degrees() {
                let image = s.at(n, w, field).image_under(&m.big_b(n, w));
                if !image.is_subspace_of(&s.at(n + 1, w, field)) {
                    return Err(Error::NotClosed {
                        step: k,
                        degree: n,
                        weight: w,
                    });
                }
            }
        }
    }
    // steps below the window are all equal to the whole complex
    let mut all = vec![Subcomplex::full(c); lo.max(0) as usize];
    all.extend(steps);
    Ok(HkrTower {
        filtration: FilteredComplex::new(c.clone(), all)?,
    })
}
