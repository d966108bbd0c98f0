use super::chain::{homology_of_pair, ChainComplex, Subcomplex};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Subspace};

/// A degree-0, weight-preserving chain map given by one block per slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    blocks: Vec<Vec<Matrix>>,
}

impl ChainMap {
    /// `block(n, w)` is the map `source_n → target_n`; `None` means zero.
    /// Only degrees inside the source window are consulted.
    pub fn new(
        source: &ChainComplex,
        target: &ChainComplex,
        block: impl Fn(i64, u32) -> Option<Matrix>,
    ) -> Result<Self> {
        if source.field() != target.field() || source.weight_cap() != target.weight_cap() {
            return Err(Error::Incompatible(format!(
                "source over {} with weight cap {}, target over {} with weight cap {}",
                source.field(),
                source.weight_cap(),
                target.field(),
                target.weight_cap()
            )));
        }
        let field = source.field();
        let mut blocks = Vec::new();
        for w in 0..=source.weight_cap() {
            let mut row = Vec::new();
            for n in source.degrees() {
                let (r, c) = (target.dim(n, w), source.dim(n, w));
                let m = match block(n, w) {
                    Some(m) if m.rows() == r && m.cols() == c => m,
                    Some(m) => {
                        return Err(Error::Shape(format!(
                            "map block at degree {n}, weight {w} is {}x{}, expected {r}x{c}",
                            m.rows(),
                            m.cols()
                        )))
                    }
                    None => Matrix::zeros(field, r, c),
                };
                row.push(m);
            }
            blocks.push(row);
        }
        let f = Self {
            source: source.clone(),
            target: target.clone(),
            blocks,
        };
        f.check_commutes()?;
        Ok(f)
    }

    pub fn identity(c: &ChainComplex) -> Self {
        Self::new(c, c, |n, w| Some(Matrix::identity(c.field(), c.dim(n, w)))).unwrap()
    }

    pub fn zero(source: &ChainComplex, target: &ChainComplex) -> Result<Self> {
        Self::new(source, target, |_, _| None)
    }

    fn check_commutes(&self) -> Result<()> {
        for w in 0..=self.source.weight_cap() {
            for n in self.source.degrees() {
                let lhs = self.target.d(n, w).mul(&self.block(n, w))?;
                let rhs = self.block(n - 1, w).mul(&self.source.d(n, w))?;
                if lhs != rhs {
                    return Err(Error::NotAChainMap { degree: n, weight: w });
                }
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    /// The block `source_n → target_n` (zero outside the source window).
    pub fn block(&self, n: i64, w: u32) -> Matrix {
        if self.source.in_window(n) && w <= self.source.weight_cap() {
            self.blocks[w as usize][(n - self.source.window().0) as usize].clone()
        } else {
            Matrix::zeros(self.source.field(), self.target.dim(n, w), self.source.dim(n, w))
        }
    }

    pub fn compose(&self, after: &ChainMap) -> Result<ChainMap> {
        ChainMap::new(&self.source, &after.target, |n, w| {
            after.block(n, w).mul(&self.block(n, w)).ok()
        })
    }

    /// Induced map `H_n(source) → H_n(target)` in the canonical homology bases.
    pub fn on_homology(&self, n: i64, w: u32) -> Result<Matrix> {
        let hs = self.source.homology(n, w)?;
        let ht = self.target.homology(n, w)?;
        let f = self.block(n, w);
        let cols = hs
            .representatives()
            .iter()
            .map(|z| ht.class_of(&f.mul_vec(z)).expect("chain maps send cycles to cycles"))
            .collect();
        Matrix::from_columns(self.source.field(), ht.dim(), cols)
    }
}

/// Mapping cone of `f : X → Y`: `cone_n = Y_n ⊕ X_{n-1}` with
/// `d = [[d_Y, f], [0, -d_X]]`, together with the fiber `cone[-1]`.
pub fn cone_and_fiber(f: &ChainMap) -> Result<(ChainComplex, ChainComplex)> {
    let cone = mapping_cone(f)?;
    let fiber = cone.shift(-1);
    Ok((cone, fiber))
}

pub fn mapping_cone(f: &ChainMap) -> Result<ChainComplex> {
    let (x, y) = (f.source(), f.target());
    if x.field() != y.field() || x.weight_cap() != y.weight_cap() {
        return Err(Error::Incompatible("cone of maps between unlike complexes".into()));
    }
    let field = x.field();
    let (xlo, xhi) = x.window();
    let (ylo, yhi) = y.window();
    let lo = ylo.min(xlo + 1);
    let hi = yhi.max(xhi + 1);
    ChainComplex::new(
        field,
        (lo, hi),
        x.weight_cap(),
        |n, w| y.dim(n, w) + x.dim(n - 1, w),
        |n, w| {
            let rows = [y.dim(n - 1, w), x.dim(n - 2, w)];
            let cols = [y.dim(n, w), x.dim(n - 1, w)];
            let m = Matrix::block(field, &rows, &cols, |i, j| match (i, j) {
                (0, 0) => Some(y.d(n, w).into_owned()),
                (0, 1) => Some(f.block(n - 1, w)),
                (1, 1) => Some(x.d(n - 1, w).neg()),
                _ => None,
            })
            .expect("cone blocks have matching shapes");
            // the lowest degree maps to zero by convention
            (n > lo).then_some(m)
        },
    )
}

/// Inclusion `Y → cone(f)` and projection `cone(f) → X[1]`.
pub fn cone_sequence(f: &ChainMap, cone: &ChainComplex) -> Result<(ChainMap, ChainMap)> {
    let (x, y) = (f.source(), f.target());
    let field = x.field();
    let x1 = x.shift(1);
    let incl = ChainMap::new(y, cone, |n, w| {
        Some(
            Matrix::block(field, &[y.dim(n, w), x.dim(n - 1, w)], &[y.dim(n, w)], |i, _| {
                (i == 0).then(|| Matrix::identity(field, y.dim(n, w)))
            })
            .unwrap(),
        )
    })?;
    let proj = ChainMap::new(cone, &x1, |n, w| {
        Some(
            Matrix::block(field, &[x.dim(n - 1, w)], &[y.dim(n, w), x.dim(n - 1, w)], |_, j| {
                (j == 1).then(|| Matrix::identity(field, x.dim(n - 1, w)))
            })
            .unwrap(),
        )
    })?;
    Ok((incl, proj))
}

/// Boundary map `H_n(X/A) → H_{n-1}(A)` of a strict subcomplex `A ⊆ X`:
/// lift a relative cycle to `X`, apply `d`, and read the class in `A`.
pub fn connecting_map(x: &ChainComplex, a: &Subcomplex, n: i64, w: u32) -> Result<Matrix> {
    x.check_degree(n)?;
    let rel = homology_of_pair(x, None, Some(a), n, w)?;
    let sub = homology_of_pair(x, Some(a), None, n - 1, w)?;
    let d = x.d(n, w);
    let cols = rel
        .representatives()
        .iter()
        .map(|z| sub.class_of(&d.mul_vec(z)).expect("d of a relative cycle lies in A"))
        .collect();
    // independence of the lift: relative boundaries map to zero classes
    debug_assert!(rel.boundaries().vectors().iter().all(|b| sub
        .class_of(&d.mul_vec(b))
        .is_some_and(|c| c.is_zero())));
    Matrix::from_columns(x.field(), sub.dim(), cols)
}

/// Dimension data of the long exact sequence of `A ⊆ X` at `(n, w)`:
/// ranks of `H_n(A) → H_n(X)`, `H_n(X) → H_n(X/A)` and `δ : H_n(X/A) → H_{n-1}(A)`.
pub fn pair_sequence_ranks(
    x: &ChainComplex,
    a: &Subcomplex,
    n: i64,
    w: u32,
) -> Result<(usize, usize, usize)> {
    let ha = homology_of_pair(x, Some(a), None, n, w)?;
    let hx = homology_of_pair(x, None, None, n, w)?;
    let hq = homology_of_pair(x, None, Some(a), n, w)?;
    let field = x.field();
    let i_star = Matrix::from_columns(
        field,
        hx.dim(),
        ha.representatives()
            .iter()
            .map(|z| hx.class_of(z).unwrap())
            .collect(),
    )?;
    let p_star = Matrix::from_columns(
        field,
        hq.dim(),
        hx.representatives()
            .iter()
            .map(|z| hq.class_of(z).unwrap())
            .collect(),
    )?;
    let delta = connecting_map(x, a, n, w)?;
    Ok((i_star.rank(), p_star.rank(), delta.rank()))
}

/// Pushes a subcomplex forward along an injective chain map.
pub fn image_subcomplex(f: &ChainMap, s: &Subcomplex) -> Result<Subcomplex> {
    let t = f.target();
    Subcomplex::new(t, |n, w| match s.get(n, w) {
        Some(sp) => sp.image_under(&f.block(n, w)),
        None => Subspace::zero(t.field(), t.dim(n, w)),
    })
}
