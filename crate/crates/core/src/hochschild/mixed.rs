use crate::complexes::ChainComplex;
use crate::error::{Error, Result};
use crate::exactlin::Matrix;

/// A chain complex `(C, b)` with a degree +1 operator `B` such that
/// `B² = 0` and `bB + Bb = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedComplex {
    complex: ChainComplex,
    /// `ops[w][n - lo]` is `B : C_n → C_{n+1}`.
    ops: Vec<Vec<Matrix>>,
}

impl MixedComplex {
    /// `big_b(n, w)` is `B : C_n → C_{n+1}`; `None` means zero.
    pub fn new(complex: ChainComplex, big_b: impl Fn(i64, u32) -> Option<Matrix>) -> Result<Self> {
        let field = complex.field();
        let mut ops = Vec::new();
        for w in 0..=complex.weight_cap() {
            let mut row = Vec::new();
            for n in complex.degrees() {
                let (r, c) = (complex.dim(n + 1, w), complex.dim(n, w));
                let m = match big_b(n, w) {
                    Some(m) if m.rows() == r && m.cols() == c => m,
                    Some(m) => {
                        return Err(Error::Shape(format!(
                            "B at degree {n}, weight {w} is {}x{}, expected {r}x{c}",
                            m.rows(),
                            m.cols()
                        )))
                    }
                    None => Matrix::zeros(field, r, c),
                };
                row.push(m);
            }
            ops.push(row);
        }
        let mc = Self { complex, ops };
        mc.check_identities()?;
        Ok(mc)
    }

    fn check_identities(&self) -> Result<()> {
        let c = &self.complex;
        for w in 0..=c.weight_cap() {
            for n in c.degrees() {
                let bb = self.big_b(n + 1, w).mul(&self.big_b(n, w))?;
                if !bb.is_zero() {
                    return Err(Error::MixedIdentity {
                        identity: "B∘B = 0",
                        degree: n,
                        weight: w,
                    });
                }
                let lhs = c.d(n + 1, w).mul(&self.big_b(n, w))?;
                let rhs = self.big_b(n - 1, w).mul(&c.d(n, w))?;
                if !lhs.add(&rhs)?.is_zero() {
                    return Err(Error::MixedIdentity {
                        identity: "bB + Bb = 0",
                        degree: n,
                        weight: w,
                    });
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    /// `B : C_n → C_{n+1}`, zero outside the window.
    pub fn big_b(&self, n: i64, w: u32) -> Matrix {
        let c = &self.complex;
        if c.in_window(n) && w <= c.weight_cap() {
            self.ops[w as usize][(n - c.window().0) as usize].clone()
        } else {
            Matrix::zeros(c.field(), c.dim(n + 1, w), c.dim(n, w))
        }
    }

    /// The operator `H_n → H_{n+1}` induced by `B`.
    pub fn b_on_homology(&self, n: i64, w: u32) -> Result<Matrix> {
        let c = &self.complex;
        let hs = c.homology(n, w)?;
        if !c.in_window(n + 1) {
            return Ok(Matrix::zeros(c.field(), 0, hs.dim()));
        }
        let ht = c.homology(n + 1, w)?;
        let b = self.big_b(n, w);
        let cols = hs
            .representatives()
            .iter()
            .map(|z| ht.class_of(&b.mul_vec(z)).expect("B maps cycles to cycles"))
            .collect();
        Matrix::from_columns(c.field(), ht.dim(), cols)
    }
}
