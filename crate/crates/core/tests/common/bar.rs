//! Unnormalized Hochschild and Connes complexes of a monomial algebra,
//! built from scratch and reduced with the dense routines.

use std::collections::HashMap;

use super::dense::{q, Dense};

/// `k[x_1..x_d] / (monomials)` with every generator of weight one.
#[derive(Clone, Debug)]
pub struct MonomialAlgebra {
    pub vars: usize,
    pub relations: Vec<Vec<u32>>,
}

type Mono = Vec<u32>;

impl MonomialAlgebra {
    pub fn polynomial(vars: usize) -> Self {
        Self { vars, relations: Vec::new() }
    }

    pub fn truncated(m: u32) -> Self {
        Self { vars: 1, relations: vec![vec![m]] }
    }

    fn vanishes(&self, a: &[u32]) -> bool {
        self.relations.iter().any(|r| r.iter().zip(a).all(|(x, y)| x <= y))
    }

    /// Standard monomials of weight `w`.
    pub fn basis(&self, w: u32) -> Vec<Mono> {
        fn go(vars: usize, left: u32, cur: &mut Mono, out: &mut Vec<Mono>) {
            if cur.len() + 1 == vars {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
                return;
            }
            for e in 0..=left {
                cur.push(e);
                go(vars, left - e, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        if self.vars == 0 {
            if w == 0 {
                out.push(Vec::new());
            }
            return out;
        }
        go(self.vars, w, &mut Vec::new(), &mut out);
        out.retain(|m| !self.vanishes(m));
        out
    }

    fn mul(&self, a: &Mono, b: &Mono) -> Option<Mono> {
        let c: Mono = a.iter().zip(b).map(|(x, y)| x + y).collect();
        (!self.vanishes(&c)).then_some(c)
    }
}

/// Chains `a_0 ⊗ … ⊗ a_n` of total weight `w`, for one fixed weight.
pub struct Bar {
    algebra: MonomialAlgebra,
    by_weight: Vec<Vec<Mono>>,
    bases: HashMap<i64, Vec<Vec<Mono>>>,
    w: u32,
}

impl Bar {
    pub fn new(algebra: MonomialAlgebra, w: u32) -> Self {
        let by_weight = (0..=w).map(|k| algebra.basis(k)).collect();
        Self {
            algebra,
            by_weight,
            bases: HashMap::new(),
            w,
        }
    }

    fn basis(&mut self, n: i64) -> &Vec<Vec<Mono>> {
        if !self.bases.contains_key(&n) {
            let mut out = Vec::new();
            if n >= 0 {
                let mut cur = Vec::new();
                self.fill(n as usize + 1, self.w, &mut cur, &mut out);
            }
            self.bases.insert(n, out);
        }
        &self.bases[&n]
    }

    fn fill(&self, slots: usize, left: u32, cur: &mut Vec<Mono>, out: &mut Vec<Vec<Mono>>) {
        if slots == 0 {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=left {
            for m in &self.by_weight[k as usize] {
                cur.push(m.clone());
                self.fill(slots - 1, left - k, cur, out);
                cur.pop();
            }
        }
    }

    pub fn dim(&mut self, n: i64) -> usize {
        self.basis(n).len()
    }

    /// `b : C_n → C_{n-1}`, including the cyclic face `a_n a_0 ⊗ a_1 ⊗ …`.
    pub fn b(&mut self, n: i64) -> Dense {
        let src = self.basis(n).clone();
        let tgt = self.basis(n - 1).clone();
        let index: HashMap<&Vec<Mono>, usize> = tgt.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut m = Dense::zeros(tgt.len(), src.len());
        if n <= 0 {
            return m;
        }
        let n = n as usize;
        for (j, chain) in src.iter().enumerate() {
            for i in 0..=n {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                let face = if i < n {
                    self.algebra.mul(&chain[i], &chain[i + 1]).map(|p| {
                        let mut f = chain[..i].to_vec();
                        f.push(p);
                        f.extend_from_slice(&chain[i + 2..]);
                        f
                    })
                } else {
                    self.algebra.mul(&chain[n], &chain[0]).map(|p| {
                        let mut f = vec![p];
                        f.extend_from_slice(&chain[1..n]);
                        f
                    })
                };
                if let Some(f) = face {
                    m.a[index[&f]][j] += q(sign);
                }
            }
        }
        m
    }

    /// `1 - t` on `C_n` with `t(a_0 ⊗ … ⊗ a_n) = (-1)^n a_n ⊗ a_0 ⊗ … ⊗ a_{n-1}`.
    pub fn one_minus_t(&mut self, n: i64) -> Dense {
        let src = self.basis(n).clone();
        let index: HashMap<&Vec<Mono>, usize> = src.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut m = Dense::identity(src.len());
        let sign = if n % 2 == 0 { 1 } else { -1 };
        for (j, chain) in src.iter().enumerate() {
            let mut rotated = vec![chain[chain.len() - 1].clone()];
            rotated.extend_from_slice(&chain[..chain.len() - 1]);
            m.a[index[&rotated]][j] -= q(sign);
        }
        m
    }

    /// `dim HH_n` in this weight.
    pub fn hh(&mut self, n: i64) -> usize {
        let d = self.dim(n);
        let out = self.b(n);
        let inc = self.b(n + 1);
        super::dense::homology_dim(d, &inc, &out)
    }

    /// `dim HC_n` from the Connes complex `C_* / (1 - t)`.
    pub fn hc(&mut self, n: i64) -> usize {
        if n < 0 {
            return 0;
        }
        let d = self.dim(n);
        let b_out = self.b(n);
        let b_in = self.b(n + 1);
        let i_here = self.one_minus_t(n);
        let i_below = if n > 0 { self.one_minus_t(n - 1) } else { Dense::zeros(0, 0) };
        // cycles mod (1 - t): kernel of C_n → C_{n-1} / I_{n-1}
        let rank_out = b_out.hcat(&i_below).rank() - i_below.rank();
        let cycles = d - rank_out;
        cycles - i_here.hcat(&b_in).rank()
    }
}

/// `HP_n` in weight `w`: a line in each even degree for `w = 0`, zero otherwise.
pub fn hp(n: i64, w: u32) -> usize {
    usize::from(w == 0 && n % 2 == 0)
}

/// `HC⁻_n` in weight `w`, from `HC_{n-1} → HC⁻_n → HP_n → HC_{n-2}`.
pub fn hc_minus(bar: &mut Bar, n: i64) -> usize {
    if bar.w == 0 {
        usize::from(n <= 0 && n % 2 == 0)
    } else {
        bar.hc(n - 1)
    }
}

