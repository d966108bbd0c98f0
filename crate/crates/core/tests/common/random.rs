//! Seeded random filtered and mixed complexes with known decompositions.
//!
//! Both are assembled from small indecomposable pieces in a standard basis
//! and then conjugated by a random unipotent change of basis in each degree,
//! so the library never sees coordinate-aligned subspaces.

use std::collections::BTreeMap;

use beilinson::complexes::{ChainComplex, Subcomplex};
use beilinson::exactlin::{Field, Matrix, SparseVec, Subspace};
use beilinson::filtered::FilteredComplex;
use beilinson::hochschild::MixedComplex;
use rand::Rng;

use super::dense::Dense;

/// Random unipotent upper-triangular matrix with small entries, and its inverse.
pub fn unipotent(rng: &mut impl Rng, n: usize) -> (Dense, Dense) {
    let mut u = Dense::zeros(n, n);
    for i in 0..n {
        for j in i + 1..n {
            u.a[i][j] = super::dense::q(rng.gen_range(-2..=2));
        }
    }
    let g = Dense::identity(n).add(&u);
    // (I + U)^{-1} = Σ (-U)^k since U is nilpotent
    let mut minus_u = u.clone();
    for row in minus_u.a.iter_mut() {
        for x in row.iter_mut() {
            *x = -x.clone();
        }
    }
    let mut inv = Dense::identity(n);
    let mut power = Dense::identity(n);
    for _ in 1..n.max(1) {
        power = power.mul(&minus_u);
        inv = inv.add(&power);
    }
    (g, inv)
}

pub fn to_matrix(d: &Dense) -> Matrix {
    let rows = d.to_i64_rows();
    if d.rows == 0 || d.cols == 0 {
        return Matrix::zeros(Field::Rationals, d.rows, d.cols);
    }
    let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Matrix::from_rows_i64(Field::Rationals, &refs)
}

fn column_vec(d: &Dense, j: usize) -> SparseVec {
    let col: Vec<i64> = d.to_i64_rows().iter().map(|r| r[j]).collect();
    SparseVec::from_pairs(
        col.into_iter()
            .enumerate()
            .filter(|&(_, v)| v != 0)
            .map(|(i, v)| (i, Field::Rationals.int(v))),
    )
}

/// One cell of a filtered complex: a lone cycle, or a pair `x ↦ c·y`.
#[derive(Clone, Copy, Debug)]
pub enum Piece {
    Cycle { degree: i64, level: usize },
    Pair { degree: i64, source: usize, target: usize, coefficient: i64 },
}

#[derive(Clone, Debug)]
pub struct RandomFiltered {
    pub window: (i64, i64),
    pub top: usize,
    pub pieces: Vec<Piece>,
    /// Basis in each degree: `(piece index, level)`.
    pub basis: BTreeMap<i64, Vec<(usize, usize)>>,
    /// `d_n` in the conjugated basis.
    pub d: BTreeMap<i64, Dense>,
    /// Change of basis in each degree.
    pub g: BTreeMap<i64, Dense>,
}

impl RandomFiltered {
    /// At most `top_max` steps, at most 4 basis vectors per degree, degrees inside `[-3, 3]`.
    pub fn generate(rng: &mut impl Rng, top_max: usize) -> Self {
        let lo = rng.gen_range(-3..=2);
        let hi = rng.gen_range(lo..=3);
        let top = rng.gen_range(1..=top_max);
        let mut dims: BTreeMap<i64, usize> = (lo..=hi).map(|n| (n, 0)).collect();
        let mut pieces = Vec::new();
        let mut basis: BTreeMap<i64, Vec<(usize, usize)>> = (lo..=hi).map(|n| (n, Vec::new())).collect();
        for _ in 0..rng.gen_range(1..=10) {
            let degree = rng.gen_range(lo..=hi);
            let pair = degree > lo && rng.gen_bool(0.6);
            if pair {
                if dims[&degree] >= 4 || dims[&(degree - 1)] >= 4 {
                    continue;
                }
                let source = rng.gen_range(0..top);
                let target = rng.gen_range(source..top);
                let coefficient = [1, -1, 2, 3][rng.gen_range(0..4)];
                let k = pieces.len();
                pieces.push(Piece::Pair { degree, source, target, coefficient });
                basis.get_mut(&degree).unwrap().push((k, source));
                basis.get_mut(&(degree - 1)).unwrap().push((k, target));
                *dims.get_mut(&degree).unwrap() += 1;
                *dims.get_mut(&(degree - 1)).unwrap() += 1;
            } else {
                if dims[&degree] >= 4 {
                    continue;
                }
                let level = rng.gen_range(0..top);
                basis.get_mut(&degree).unwrap().push((pieces.len(), level));
                pieces.push(Piece::Cycle { degree, level });
                *dims.get_mut(&degree).unwrap() += 1;
            }
        }
        let g: BTreeMap<i64, (Dense, Dense)> = (lo..=hi).map(|n| (n, unipotent(rng, dims[&n]))).collect();
        let mut d = BTreeMap::new();
        for n in lo..=hi {
            let rows = if n > lo { dims[&(n - 1)] } else { 0 };
            let mut d0 = Dense::zeros(rows, dims[&n]);
            if n > lo {
                for (j, &(k, _)) in basis[&n].iter().enumerate() {
                    if let Piece::Pair { degree, coefficient, .. } = pieces[k] {
                        if degree == n {
                            let i = basis[&(n - 1)].iter().position(|&(kk, _)| kk == k).unwrap();
                            d0.a[i][j] = super::dense::q(coefficient);
                        }
                    }
                }
            }
            let conj = if n > lo { g[&(n - 1)].0.mul(&d0).mul(&g[&n].1) } else { d0 };
            d.insert(n, conj);
        }
        Self {
            window: (lo, hi),
            top,
            pieces,
            basis,
            d,
            g: g.into_iter().map(|(n, (a, _))| (n, a)).collect(),
        }
    }

    pub fn dim(&self, n: i64) -> usize {
        self.basis.get(&n).map_or(0, Vec::len)
    }

    pub fn complex(&self) -> ChainComplex {
        ChainComplex::new(
            Field::Rationals,
            self.window,
            0,
            |n, _| self.dim(n),
            |n, _| Some(to_matrix(&self.d[&n])),
        )
        .expect("conjugated pieces square to zero")
    }

    /// Step `i`: the images of basis vectors of level `≥ i`.
    pub fn step(&self, c: &ChainComplex, i: usize) -> Subcomplex {
        Subcomplex::new(c, |n, _| {
            let vecs: Vec<SparseVec> = self.basis[&n]
                .iter()
                .enumerate()
                .filter(|&(_, &(_, level))| level >= i)
                .map(|(j, _)| column_vec(&self.g[&n], j))
                .collect();
            Subspace::from_vectors(Field::Rationals, self.dim(n), vecs.iter())
        })
        .expect("steps are subcomplexes")
    }

    pub fn filtered(&self) -> FilteredComplex {
        let c = self.complex();
        let steps = (0..=self.top).map(|i| self.step(&c, i)).collect();
        FilteredComplex::new(c, steps).expect("random towers are valid")
    }

    /// `dim H_m(gr^i)` read off the pieces.
    pub fn graded_homology(&self, i: usize, m: i64) -> usize {
        self.pieces
            .iter()
            .filter(|p| match **p {
                Piece::Cycle { degree, level } => degree == m && level == i,
                Piece::Pair { degree, source, target, .. } => {
                    (degree == m && source == i && target > i) || (degree - 1 == m && target == i && source < i)
                }
            })
            .count()
    }

    /// `dim H_m(F^i)` read off the pieces.
    pub fn step_homology(&self, i: usize, m: i64) -> usize {
        self.pieces
            .iter()
            .filter(|p| match **p {
                Piece::Cycle { degree, level } => degree == m && level >= i,
                Piece::Pair { degree, source, target, .. } => degree - 1 == m && target >= i && source < i,
            })
            .count()
    }
}

/// A mixed complex in degrees `[0, 2]` with `b` and `B` given densely.
#[derive(Clone, Debug)]
pub struct RandomMixed {
    pub dims: [usize; 3],
    /// `b[n] : C_n → C_{n-1}`.
    pub b: Vec<Dense>,
    /// `big_b[n] : C_n → C_{n+1}`.
    pub big_b: Vec<Dense>,
}

impl RandomMixed {
    /// Sums of points, `b`-pairs, `B`-pairs, squares and staircases, conjugated.
    pub fn generate(rng: &mut impl Rng) -> Self {
        // each piece: cells as degrees, b-edges and B-edges between cell indices
        type Shape = (&'static [usize], &'static [(usize, usize, i64)], &'static [(usize, usize, i64)]);
        let shapes: [Shape; 9] = [
            (&[0], &[], &[]),
            (&[1], &[], &[]),
            (&[2], &[], &[]),
            (&[1, 0], &[(0, 1, 1)], &[]),
            (&[2, 1], &[(0, 1, 1)], &[]),
            (&[0, 1], &[], &[(0, 1, 1)]),
            (&[1, 2], &[], &[(0, 1, 1)]),
            // x (1), y = bx (0), z = Bx (2), w = By (1), bz = -w
            (&[1, 0, 2, 1], &[(0, 1, 1), (2, 3, -1)], &[(0, 2, 1), (1, 3, 1)]),
            // y (0), z = By (1), u (2) with bu = z
            (&[0, 1, 2], &[(2, 1, 1)], &[(0, 1, 1)]),
        ];
        let mut dims = [0usize; 3];
        let mut cells: Vec<usize> = Vec::new();
        let mut b_edges = Vec::new();
        let mut big_b_edges = Vec::new();
        for _ in 0..rng.gen_range(1..=6) {
            let (degs, bs, bbs) = shapes[rng.gen_range(0..shapes.len())];
            let mut extra = [0usize; 3];
            for &d in degs {
                extra[d] += 1;
            }
            if (0..3).any(|n| dims[n] + extra[n] > 4) {
                continue;
            }
            let base = cells.len();
            for &d in degs {
                cells.push(d);
                dims[d] += 1;
            }
            let scale = [1, -1, 2][rng.gen_range(0..3)];
            b_edges.extend(bs.iter().map(|&(s, t, c)| (base + s, base + t, c * scale)));
            big_b_edges.extend(bbs.iter().map(|&(s, t, c)| (base + s, base + t, c)));
        }
        // position of each cell inside its degree
        let mut pos = vec![0; cells.len()];
        let mut seen = [0usize; 3];
        for (k, &d) in cells.iter().enumerate() {
            pos[k] = seen[d];
            seen[d] += 1;
        }
        let g: Vec<(Dense, Dense)> = (0..3).map(|n| unipotent(rng, dims[n])).collect();
        let mut b: Vec<Dense> = (0..3).map(|n| Dense::zeros(if n > 0 { dims[n - 1] } else { 0 }, dims[n])).collect();
        let mut big_b: Vec<Dense> =
            (0..3).map(|n| Dense::zeros(if n < 2 { dims[n + 1] } else { 0 }, dims[n])).collect();
        for &(s, t, c) in &b_edges {
            b[cells[s]].a[pos[t]][pos[s]] = super::dense::q(c);
        }
        for &(s, t, c) in &big_b_edges {
            big_b[cells[s]].a[pos[t]][pos[s]] = super::dense::q(c);
        }
        for n in 0..3 {
            if n > 0 {
                b[n] = g[n - 1].0.mul(&b[n]).mul(&g[n].1);
            }
            if n < 2 {
                big_b[n] = g[n + 1].0.mul(&big_b[n]).mul(&g[n].1);
            }
        }
        Self { dims, b, big_b }
    }

    pub fn mixed(&self) -> MixedComplex {
        let c = ChainComplex::new(
            Field::Rationals,
            (0, 2),
            0,
            |n, _| self.dims[n as usize],
            |n, _| (n > 0).then(|| to_matrix(&self.b[n as usize])),
        )
        .expect("b squares to zero");
        MixedComplex::new(c, |n, _| (n < 2).then(|| to_matrix(&self.big_b[n as usize])))
            .expect("mixed identities hold")
    }

    fn b_at(&self, n: i64) -> Dense {
        match n {
            1 | 2 => self.b[n as usize].clone(),
            0 => Dense::zeros(0, self.dims[0]),
            3 => Dense::zeros(self.dims[2], 0),
            _ => Dense::zeros(0, 0),
        }
    }

    fn dim(&self, n: i64) -> usize {
        if (0..3).contains(&n) {
            self.dims[n as usize]
        } else {
            0
        }
    }

    /// `dim H_n(C, b)`.
    pub fn homology(&self, n: i64) -> usize {
        super::dense::homology_dim(self.dim(n), &self.b_at(n + 1), &self.b_at(n))
    }

    /// Rank of `B_* : H_n → H_{n+1}`: `dim(B(Z_n) + im b_{n+2}) - dim(im b_{n+2})`.
    pub fn b_rank_on_homology(&self, n: i64) -> usize {
        if !(0..2).contains(&n) {
            return 0;
        }
        let z = self.b_at(n).kernel();
        let bz = self.big_b[n as usize].mul(&Dense::from_columns(self.dim(n), &z));
        let boundaries = self.b_at(n + 2);
        boundaries.hcat(&bz).rank() - boundaries.rank()
    }
}
