use super::echelon::Echelon;
use super::matrix::Matrix;
use super::scalar::{Field, Scalar};
use super::vector::SparseVec;
use crate::error::{Error, Result};

/// A linear subspace of `field^ambient_dim`, held in reduced row echelon form.
///
/// The basis is canonical: two subspaces are equal iff their bases are equal.
/// Each basis vector has a 1 at its pivot and every other basis vector
/// vanishes there, so coordinates of a member vector are read off at the
/// pivot positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient_dim: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Self {
        Self {
            field,
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Self {
        Self {
            field,
            ambient_dim,
            rows: (0..ambient_dim).map(|i| SparseVec::unit(i, field)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn from_vectors<'a>(
        field: Field,
        ambient_dim: usize,
        vectors: impl IntoIterator<Item = &'a SparseVec>,
    ) -> Self {
        let mut ech = Echelon::new();
        for v in vectors {
            debug_assert!(v.max_index().is_none_or(|i| i < ambient_dim));
            let _ = ech.insert(v, SparseVec::new());
        }
        let rows = ech.into_rref();
        let pivots = rows.iter().map(|r| r.leading().unwrap().0).collect();
        Self {
            field,
            ambient_dim,
            rows,
            pivots,
        }
    }

    /// Column span of `m`.
    pub fn from_columns(m: &Matrix) -> Self {
        Self::from_vectors(m.field(), m.rows(), m.columns())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.rows.len() == self.ambient_dim
    }

    pub fn vectors(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis vectors as the columns of a matrix.
    pub fn basis(&self) -> Matrix {
        Matrix::from_columns(self.field, self.ambient_dim, self.rows.clone()).unwrap()
    }

    /// Canonical normal form of `v` modulo this subspace; zero iff `v` is a member.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut pairs: Vec<(usize, Scalar)> = v.iter().cloned().collect();
        for (k, &p) in self.pivots.iter().enumerate() {
            if let Some(c) = v.get(p) {
                let c = c.neg();
                pairs.extend(self.rows[k].iter().map(|(i, x)| (*i, x.mul(&c))));
            }
        }
        SparseVec::from_pairs(pairs)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is not a member.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        if !self.contains(v) {
            return None;
        }
        Some(SparseVec::from_pairs(
            self.pivots
                .iter()
                .enumerate()
                .filter_map(|(k, p)| v.get(*p).map(|c| (k, c.clone()))),
        ))
    }

    /// `Σ c_k b_k` for coordinates `c`.
    pub fn combine(&self, coords: &SparseVec) -> SparseVec {
        let mut pairs = Vec::new();
        for (k, c) in coords.iter() {
            pairs.extend(self.rows[*k].iter().map(|(i, x)| (*i, x.mul(c))));
        }
        SparseVec::from_pairs(pairs)
    }

    /// First basis vector of `self` not contained in `other`.
    pub fn witness_outside(&self, other: &Subspace) -> Option<&SparseVec> {
        self.rows.iter().find(|v| !other.contains(v))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.witness_outside(other).is_none()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        debug_assert_eq!(self.ambient_dim, other.ambient_dim);
        if other.is_zero() || self.is_full() {
            return self.clone();
        }
        if self.is_zero() || other.is_full() {
            return other.clone();
        }
        Subspace::from_vectors(
            self.field,
            self.ambient_dim,
            self.rows.iter().chain(other.rows.iter()),
        )
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        debug_assert_eq!(self.ambient_dim, other.ambient_dim);
        if self.is_zero() || other.is_full() {
            return self.clone();
        }
        if other.is_zero() || self.is_full() {
            return other.clone();
        }
        // {y : other.reduce(B y) = 0}, pushed forward through B
        let residues: Vec<SparseVec> = self.rows.iter().map(|r| other.reduce(r)).collect();
        let r = Matrix::from_columns(self.field, self.ambient_dim, residues).unwrap();
        let ker = kernel_basis(&r);
        let pushed: Vec<SparseVec> = ker.rows.iter().map(|y| self.combine(y)).collect();
        Subspace::from_vectors(self.field, self.ambient_dim, &pushed)
    }

    /// Image of this subspace under `m`.
    pub fn image_under(&self, m: &Matrix) -> Subspace {
        debug_assert_eq!(m.cols(), self.ambient_dim);
        let imgs: Vec<SparseVec> = self.rows.iter().map(|v| m.mul_vec(v)).collect();
        Subspace::from_vectors(self.field, m.rows(), &imgs)
    }

    /// `{x ∈ self : m x ∈ w}`.
    pub fn restricted_preimage(&self, m: &Matrix, w: &Subspace) -> Subspace {
        if self.is_zero() {
            return self.clone();
        }
        let residues: Vec<SparseVec> = self.rows.iter().map(|v| w.reduce(&m.mul_vec(v))).collect();
        let r = Matrix::from_columns(self.field, m.rows(), residues).unwrap();
        let ker = kernel_basis(&r);
        let pushed: Vec<SparseVec> = ker.rows.iter().map(|y| self.combine(y)).collect();
        Subspace::from_vectors(self.field, self.ambient_dim, &pushed)
    }

    /// Re-embeds into a larger ambient space at coordinate `offset`.
    pub fn embed(&self, ambient_dim: usize, offset: usize) -> Subspace {
        debug_assert!(offset + self.ambient_dim <= ambient_dim);
        Subspace {
            field: self.field,
            ambient_dim,
            rows: self.rows.iter().map(|r| r.offset(offset)).collect(),
            pivots: self.pivots.iter().map(|p| p + offset).collect(),
        }
    }
}

/// Basis of `{v : m v = 0}`.
pub fn kernel_basis(m: &Matrix) -> Subspace {
    let field = m.field();
    let n = m.cols();
    if m.is_zero() {
        return Subspace::full(field, n);
    }
    let mut ech = Echelon::new();
    for row in m.transpose().columns() {
        let _ = ech.insert(row, SparseVec::new());
    }
    let rows = ech.into_rref();
    let mut is_pivot = vec![false; n];
    let pivots: Vec<usize> = rows.iter().map(|r| r.leading().unwrap().0).collect();
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut kernel = Vec::new();
    for f in (0..n).filter(|&f| !is_pivot[f]) {
        let mut pairs = vec![(f, field.one())];
        for (k, r) in rows.iter().enumerate() {
            if let Some(c) = r.get(f) {
                pairs.push((pivots[k], c.neg()));
            }
        }
        kernel.push(SparseVec::from_pairs(pairs));
    }
    Subspace::from_vectors(field, n, &kernel)
}

/// Basis of the column space of `m`.
pub fn image_basis(m: &Matrix) -> Subspace {
    Subspace::from_columns(m)
}

/// `{x : m x ∈ span(w)}`.
pub fn preimage_subspace(m: &Matrix, w: &Subspace) -> Result<Subspace> {
    if w.ambient_dim() != m.rows() {
        return Err(Error::Shape(format!(
            "target subspace lives in dimension {}, matrix has {} rows",
            w.ambient_dim(),
            m.rows()
        )));
    }
    let residues: Vec<SparseVec> = m.columns().iter().map(|c| w.reduce(c)).collect();
    Ok(kernel_basis(&Matrix::from_columns(m.field(), m.rows(), residues)?))
}

pub fn rank(m: &Matrix) -> usize {
    let mut ech = Echelon::new();
    for c in m.columns() {
        let _ = ech.insert(c, SparseVec::new());
    }
    ech.rank()
}

/// A quotient `V / W` with canonical representatives.
///
/// Representatives are the reduced basis of the normal forms of `V` modulo
/// `W`; they span a complement of `W` inside `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    space: Subspace,
    sub: Subspace,
    complement: Subspace,
}

impl Quotient {
    pub fn new(space: &Subspace, sub: &Subspace) -> Result<Self> {
        if space.ambient_dim() != sub.ambient_dim() {
            return Err(Error::Shape("quotient of subspaces of different spaces".into()));
        }
        if let Some(w) = sub.witness_outside(space) {
            return Err(Error::NotContained {
                witness: format!("{w:?}"),
            });
        }
        let residues: Vec<SparseVec> = space.vectors().iter().map(|v| sub.reduce(v)).collect();
        let complement = Subspace::from_vectors(space.field(), space.ambient_dim(), &residues);
        Ok(Self {
            space: space.clone(),
            sub: sub.clone(),
            complement,
        })
    }

    pub fn dim(&self) -> usize {
        self.complement.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    pub fn sub(&self) -> &Subspace {
        &self.sub
    }

    /// Representatives of a basis of the quotient, as vectors of the ambient space.
    pub fn representatives(&self) -> &[SparseVec] {
        self.complement.vectors()
    }

    pub fn complement(&self) -> &Subspace {
        &self.complement
    }

    /// Quotient coordinates of `x ∈ V`; `None` if `x` is not in `V`.
    pub fn coords(&self, x: &SparseVec) -> Option<SparseVec> {
        self.complement.coordinates(&self.sub.reduce(x))
    }

    /// Matrix of the projection `V → V/W` in the canonical bases.
    pub fn projection(&self) -> Matrix {
        let cols = self
            .space
            .vectors()
            .iter()
            .map(|v| self.coords(v).expect("basis vector of V"))
            .collect();
        Matrix::from_columns(self.space.field(), self.dim(), cols).unwrap()
    }
}

/// Representatives of `V/W` and the projection `V → V/W`.
pub fn quotient_basis(v: &Subspace, w: &Subspace) -> Result<(Subspace, Matrix)> {
    let q = Quotient::new(v, w)?;
    let p = q.projection();
    Ok((q.complement, p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> Field {
        Field::Rationals
    }

    fn vecq(vals: &[i64]) -> SparseVec {
        SparseVec::from_dense(&vals.iter().map(|&v| q().int(v)).collect::<Vec<_>>())
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert!(kernel_basis(&Matrix::identity(q(), 2)).is_zero());
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = Matrix::from_rows_i64(q(), &[&[1, 2], &[2, 4]]);
        let k = kernel_basis(&m);
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&vecq(&[2, -1])));
        assert_eq!(image_basis(&m).dim(), 1);
    }

    #[test]
    fn image_extremes() {
        assert!(image_basis(&Matrix::zeros(q(), 3, 2)).is_zero());
        assert!(image_basis(&Matrix::identity(q(), 3)).is_full());
    }

    #[test]
    fn preimage_degenerations() {
        let m = Matrix::from_rows_i64(q(), &[&[1, 2, 0], &[0, 0, 1]]);
        assert!(preimage_subspace(&m, &Subspace::full(q(), 2)).unwrap().is_full());
        assert_eq!(
            preimage_subspace(&m, &Subspace::zero(q(), 2)).unwrap(),
            kernel_basis(&m)
        );
        let id = Matrix::identity(q(), 2);
        let w = Subspace::from_vectors(q(), 2, &[vecq(&[1, 0])]);
        assert_eq!(preimage_subspace(&id, &w).unwrap(), w);
        assert!(preimage_subspace(&id, &Subspace::zero(q(), 3)).is_err());
    }

    #[test]
    fn quotient_examples() {
        let full = Subspace::full(q(), 2);
        let (c, p) = quotient_basis(&full, &full).unwrap();
        assert_eq!((c.dim(), p.rows()), (0, 0));
        let (c, p) = quotient_basis(&full, &Subspace::zero(q(), 2)).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(p, Matrix::identity(q(), 2));
        let diag = Subspace::from_vectors(q(), 2, &[vecq(&[1, 1])]);
        let (c, _) = quotient_basis(&full, &diag).unwrap();
        assert_eq!(c.dim(), 1);
    }

    #[test]
    fn quotient_rejects_non_subspace() {
        let a = Subspace::from_vectors(q(), 2, &[vecq(&[1, 0])]);
        let b = Subspace::from_vectors(q(), 2, &[vecq(&[0, 1])]);
        assert!(matches!(
            Quotient::new(&a, &b),
            Err(Error::NotContained { .. })
        ));
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::from_vectors(q(), 3, &[vecq(&[1, 0, 0]), vecq(&[0, 1, 0])]);
        let b = Subspace::from_vectors(q(), 3, &[vecq(&[0, 1, 0]), vecq(&[0, 0, 1])]);
        let i = a.intersection(&b);
        assert_eq!(i, Subspace::from_vectors(q(), 3, &[vecq(&[0, 1, 0])]));
        assert!(a.sum(&b).is_full());
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-2i64..=2, r * c).prop_map(move |vals| {
                let rows: Vec<&[i64]> = vals.chunks(c).collect();
                Matrix::from_rows_i64(Field::Rationals, &rows)
            })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in small_matrix()) {
            let k = kernel_basis(&m);
            prop_assert_eq!(k.dim() + image_basis(&m).dim(), m.cols());
            for v in k.vectors() {
                prop_assert!(m.mul_vec(v).is_zero());
            }
        }

        #[test]
        fn quotient_dimension(m in small_matrix()) {
            let v = Subspace::full(m.field(), m.cols());
            let w = kernel_basis(&m);
            let qt = Quotient::new(&v, &w).unwrap();
            prop_assert_eq!(qt.dim(), v.dim() - w.dim());
            // canonical bases: recomputation is identical
            prop_assert_eq!(kernel_basis(&m), w);
        }

        #[test]
        fn quotient_coords_split(m in small_matrix()) {
            let v = Subspace::full(m.field(), m.cols());
            let w = kernel_basis(&m);
            let qt = Quotient::new(&v, &w).unwrap();
            for x in v.vectors() {
                let c = qt.coords(x).unwrap();
                let back = qt.complement().combine(&c);
                prop_assert!(w.contains(&x.sub(&back, m.field())));
            }
        }
    }
}
