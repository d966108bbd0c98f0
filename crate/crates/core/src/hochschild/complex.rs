use std::collections::HashMap;

use rayon::prelude::*;

use super::mixed::MixedComplex;
use crate::complexes::ChainComplex;
use crate::derham::{AlgebraPresentation, Monomial};
use crate::error::Result;
use crate::exactlin::Matrix;

/// A normalized Hochschild chain `a_0 ⊗ a_1 ⊗ ⋯ ⊗ a_n` of monomials, with
/// `a_1, …, a_n` of positive weight.
pub type Tensor = Vec<Monomial>;

#[derive(Clone, Debug, Default)]
struct Slice {
    basis: Vec<Tensor>,
    index: HashMap<Tensor, usize>,
}

impl Slice {
    fn new(basis: Vec<Tensor>) -> Self {
        let index = basis.iter().cloned().enumerate().map(|(i, t)| (t, i)).collect();
        Self { basis, index }
    }
}

/// The normalized Hochschild complex `R ⊗ R̄^{⊗•}` of a monomial algebra,
/// weight by weight, with Connes' operator.
#[derive(Clone, Debug)]
pub struct Hochschild {
    algebra: AlgebraPresentation,
    /// `slices[w][n]`.
    slices: Vec<Vec<Slice>>,
    mixed: MixedComplex,
}

/// Largest chain degree reached below the weight cap.
pub fn degree_cap(r: &AlgebraPresentation, w_cap: u32) -> i64 {
    match r.generators().iter().map(|g| g.weight).min() {
        Some(m) => (w_cap / m) as i64,
        None => 0,
    }
}

fn tensors(monomials: &[Vec<Monomial>], n: usize, w: u32) -> Vec<Tensor> {
    fn fill(
        monomials: &[Vec<Monomial>],
        slots: usize,
        left: u32,
        cur: &mut Tensor,
        out: &mut Vec<Tensor>,
    ) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in (1..=left).rev() {
            for m in &monomials[k as usize] {
                cur.push(m.clone());
                fill(monomials, slots - 1, left - k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    for k0 in (0..=w).rev() {
        for a0 in &monomials[k0 as usize] {
            let mut cur = vec![a0.clone()];
            fill(monomials, n, w - k0, &mut cur, &mut out);
        }
    }
    out
}

impl Hochschild {
    pub fn new(algebra: &AlgebraPresentation, w_cap: u32) -> Result<Self> {
        let r = algebra.clone();
        let top = degree_cap(&r, w_cap);
        let monomials: Vec<Vec<Monomial>> = (0..=w_cap).map(|w| r.monomial_basis(w)).collect();
        let slices: Vec<Vec<Slice>> = (0..=w_cap)
            .into_par_iter()
            .map(|w| {
                (0..=top as usize)
                    .map(|n| Slice::new(tensors(&monomials, n, w)))
                    .collect()
            })
            .collect();
        let field = r.field();
        let slice = |n: i64, w: u32| &slices[w as usize][n as usize];
        let complex = ChainComplex::new(
            field,
            (0, top),
            w_cap,
            |n, w| slice(n, w).basis.len(),
            |n, w| {
                (n > 0).then(|| {
                    let (src, tgt) = (slice(n, w), slice(n - 1, w));
                    let trips = src.basis.iter().enumerate().flat_map(|(col, t)| {
                        hochschild_b(&r, t)
                            .into_iter()
                            .map(move |(u, c)| (tgt.index[&u], col, field.int(c)))
                    });
                    Matrix::from_triplets(field, tgt.basis.len(), src.basis.len(), trips).unwrap()
                })
            },
        )?;
        let mixed = MixedComplex::new(complex, |n, w| {
            (n < top).then(|| {
                let (src, tgt) = (slice(n, w), slice(n + 1, w));
                let trips = src.basis.iter().enumerate().flat_map(|(col, t)| {
                    connes_b_terms(t)
                        .into_iter()
                        .map(move |(u, c)| (tgt.index[&u], col, field.int(c)))
                });
                Matrix::from_triplets(field, tgt.basis.len(), src.basis.len(), trips).unwrap()
            })
        })?;
        Ok(Self {
            algebra: r,
            slices,
            mixed,
        })
    }

    pub fn algebra(&self) -> &AlgebraPresentation {
        &self.algebra
    }

    pub fn complex(&self) -> &ChainComplex {
        self.mixed.complex()
    }

    pub fn mixed(&self) -> &MixedComplex {
        &self.mixed
    }

    pub fn basis(&self, n: i64, w: u32) -> &[Tensor] {
        self.slices
            .get(w as usize)
            .and_then(|s| s.get(usize::try_from(n).ok()?))
            .map_or(&[], |s| &s.basis)
    }

    pub fn index_of(&self, t: &Tensor, w: u32) -> Option<usize> {
        let n = t.len().checked_sub(1)?;
        self.slices.get(w as usize)?.get(n)?.index.get(t).copied()
    }

    pub fn format_tensor(&self, t: &Tensor) -> String {
        let parts: Vec<String> = t.iter().map(|m| self.algebra.format_monomial(m)).collect();
        parts.join("⊗")
    }
}

/// `b(a_0 ⊗ ⋯ ⊗ a_n) = Σ_{i<n} (-1)^i ⋯ ⊗ a_i a_{i+1} ⊗ ⋯ + (-1)^n a_n a_0 ⊗ a_1 ⊗ ⋯ ⊗ a_{n-1}`.
fn hochschild_b(r: &AlgebraPresentation, t: &Tensor) -> Vec<(Tensor, i64)> {
    let n = t.len() - 1;
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    for i in 0..n {
        if let Some(p) = r.multiply(&t[i], &t[i + 1]) {
            let mut u = Vec::with_capacity(n);
            u.extend_from_slice(&t[..i]);
            u.push(p);
            u.extend_from_slice(&t[i + 2..]);
            out.push((u, if i % 2 == 0 { 1 } else { -1 }));
        }
    }
    if let Some(p) = r.multiply(&t[n], &t[0]) {
        let mut u = Vec::with_capacity(n);
        u.push(p);
        u.extend_from_slice(&t[1..n]);
        out.push((u, if n.is_multiple_of(2) { 1 } else { -1 }));
    }
    out
}

/// Normalized `B(a_0 ⊗ ⋯ ⊗ a_n) = Σ_i (-1)^{ni} 1 ⊗ a_i ⊗ ⋯ ⊗ a_n ⊗ a_0 ⊗ ⋯ ⊗ a_{i-1}`,
/// which vanishes when `a_0` is the unit.
fn connes_b_terms(t: &Tensor) -> Vec<(Tensor, i64)> {
    let n = t.len() - 1;
    if t[0].is_one() {
        return Vec::new();
    }
    let one = Monomial::one(t[0].0.len());
    (0..=n)
        .map(|i| {
            let mut u = Vec::with_capacity(n + 2);
            u.push(one.clone());
            u.extend_from_slice(&t[i..]);
            u.extend_from_slice(&t[..i]);
            (u, if (n * i).is_multiple_of(2) { 1 } else { -1 })
        })
        .collect()
}

/// The normalized Hochschild complex of `R` up to weight `w_cap`.
pub fn hochschild_complex(r: &AlgebraPresentation, w_cap: u32) -> Result<ChainComplex> {
    Ok(Hochschild::new(r, w_cap)?.complex().clone())
}

/// The normalized Hochschild complex with Connes' operator.
pub fn connes_b(r: &AlgebraPresentation, w_cap: u32) -> Result<MixedComplex> {
    Ok(Hochschild::new(r, w_cap)?.mixed().clone())
}
