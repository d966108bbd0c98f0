use std::cmp::Reverse;

use super::presentation::{AlgebraPresentation, Monomial};
use crate::complexes::{ChainMap, CochainComplex};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, SparseVec};

/// Basis form `m · dx_{j_1} ∧ ⋯ ∧ dx_{j_p}` with `j_1 < ⋯ < j_p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Form {
    pub coefficient: Monomial,
    pub wedge: Vec<usize>,
}

impl Form {
    pub fn degree(&self) -> usize {
        self.wedge.len()
    }
}

/// `Ω^p` of a polynomial algebra, one based module per weight, with the de
/// Rham differential into `Ω^{p+1}`.
#[derive(Clone, Debug)]
pub struct KahlerForms {
    p: usize,
    bases: Vec<Vec<Form>>,
    d: Vec<Matrix>,
}

impl KahlerForms {
    pub fn degree(&self) -> usize {
        self.p
    }

    pub fn basis(&self, w: u32) -> &[Form] {
        &self.bases[w as usize]
    }

    pub fn dim(&self, w: u32) -> usize {
        self.bases[w as usize].len()
    }

    /// `d : Ω^p(w) → Ω^{p+1}(w)`.
    pub fn d(&self, w: u32) -> &Matrix {
        &self.d[w as usize]
    }
}

fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            go(j + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, p, &mut Vec::new(), &mut out);
    out
}

/// Basis of `Ω^p` at weight `w`, ordered by coefficient monomial (descending
/// lexicographic) and then by wedge index set.
pub fn form_basis(r: &AlgebraPresentation, p: usize, w: u32) -> Vec<Form> {
    let mut out = Vec::new();
    for wedge in subsets(r.vars(), p) {
        let ww: u32 = wedge.iter().map(|&j| r.generators()[j].weight).sum();
        if ww > w {
            continue;
        }
        for coefficient in r.monomial_basis(w - ww) {
            out.push(Form {
                coefficient,
                wedge: wedge.clone(),
            });
        }
    }
    out.sort_by(|a, b| (Reverse(&a.coefficient), &a.wedge).cmp(&(Reverse(&b.coefficient), &b.wedge)));
    out
}

fn index_of(basis: &[Form], f: &Form) -> usize {
    basis
        .iter()
        .position(|g| g == f)
        .expect("basis is closed under the de Rham differential")
}

/// `d(m dx_S) = Σ_j e_j (m / x_j) dx_j ∧ dx_S`.
fn de_rham_matrix(r: &AlgebraPresentation, source: &[Form], target: &[Form]) -> Matrix {
    let field = r.field();
    let mut trips = Vec::new();
    for (col, f) in source.iter().enumerate() {
        for j in 0..r.vars() {
            if f.wedge.contains(&j) {
                continue;
            }
            let Some(m) = f.coefficient.div_var(j) else {
                continue;
            };
            let before = f.wedge.iter().filter(|&&k| k < j).count();
            let mut wedge = f.wedge.clone();
            wedge.insert(before, j);
            let e = f.coefficient.exponent(j) as i64;
            let c = if before % 2 == 0 { e } else { -e };
            let row = index_of(target, &Form { coefficient: m, wedge });
            trips.push((row, col, field.int(c)));
        }
    }
    Matrix::from_triplets(field, target.len(), source.len(), trips).unwrap()
}

fn require_polynomial(r: &AlgebraPresentation) -> Result<()> {
    if r.is_polynomial() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!(
            "Kähler forms of {} (only polynomial algebras are supported)",
            r.label()
        )))
    }
}

pub fn kahler_forms(r: &AlgebraPresentation, p: usize, w_cap: u32) -> Result<KahlerForms> {
    require_polynomial(r)?;
    let bases: Vec<Vec<Form>> = (0..=w_cap).map(|w| form_basis(r, p, w)).collect();
    let d = (0..=w_cap)
        .map(|w| de_rham_matrix(r, &bases[w as usize], &form_basis(r, p + 1, w)))
        .collect();
    Ok(KahlerForms { p, bases, d })
}

/// The de Rham complex `Ω^•` of a polynomial algebra, cochain degrees `0..=d`.
#[derive(Clone, Debug)]
pub struct DeRham {
    forms: Vec<KahlerForms>,
    complex: CochainComplex,
}

pub fn de_rham_complex(r: &AlgebraPresentation, w_cap: u32) -> Result<DeRham> {
    require_polynomial(r)?;
    let top = r.vars();
    let forms: Vec<KahlerForms> = (0..=top)
        .map(|p| kahler_forms(r, p, w_cap))
        .collect::<Result<_>>()?;
    let complex = CochainComplex::new(
        r.field(),
        (0, top as i64),
        w_cap,
        |i, w| forms[i as usize].dim(w),
        |i, w| Some(forms[i as usize].d(w).clone()),
    )?;
    Ok(DeRham { forms, complex })
}

impl DeRham {
    pub fn complex(&self) -> &CochainComplex {
        &self.complex
    }

    pub fn forms(&self, p: usize) -> &KahlerForms {
        &self.forms[p]
    }

    pub fn top_degree(&self) -> usize {
        self.forms.len() - 1
    }

    /// Coordinates of a basis form.
    pub fn coordinates(&self, f: &Form, w: u32) -> Option<SparseVec> {
        let basis = self.forms.get(f.degree())?.bases.get(w as usize)?;
        let i = basis.iter().position(|g| g == f)?;
        Some(SparseVec::unit(i, self.complex.field()))
    }

    /// `Ω^{≥n}`: forms of degree `≥ n` with the same differential.
    pub fn hodge_truncate(&self, n: i64) -> CochainComplex {
        self.complex.truncate_below(n)
    }

    /// `0 → Ω^{≥u} → Ω^• → Ω^{≤u-1} → 0` as chain maps between the
    /// underlying (degree-negated) chain complexes.
    pub fn stupid_sequence(&self, u: i64) -> Result<StupidSequence> {
        let field = self.complex.field();
        let sub = self.hodge_truncate(u);
        let quotient = self.complex.truncate_above(u - 1);
        let whole = self.complex.clone();
        let id = |n: i64, w: u32| Matrix::identity(field, whole.dim(-n, w));
        let inclusion = ChainMap::new(sub.as_chain(), whole.as_chain(), |n, w| (-n >= u).then(|| id(n, w)))?;
        let projection =
            ChainMap::new(whole.as_chain(), quotient.as_chain(), |n, w| (-n < u).then(|| id(n, w)))?;
        Ok(StupidSequence {
            sub,
            whole,
            quotient,
            inclusion,
            projection,
        })
    }
}

#[derive(Clone, Debug)]
pub struct StupidSequence {
    pub sub: CochainComplex,
    pub whole: CochainComplex,
    pub quotient: CochainComplex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
}

impl StupidSequence {
    /// Degreewise exactness: `inclusion` injective, `projection` surjective,
    /// and the composite zero with matching dimensions.
    pub fn is_short_exact(&self) -> bool {
        let c = self.whole.as_chain();
        (0..=c.weight_cap()).all(|w| {
            c.degrees().all(|n| {
                let i = self.inclusion.block(n, w);
                let p = self.projection.block(n, w);
                let composite = p.mul(&i).map(|m| m.is_zero()).unwrap_or(false);
                composite
                    && i.rank() == i.cols()
                    && p.rank() == p.rows()
                    && i.cols() + p.rows() == c.dim(n, w)
            })
        })
    }
}
