//! Closed-form dimensions for polynomial rings.

pub fn binomial(n: i64, k: i64) -> usize {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r as usize
}

/// `dim Ω^p(w)` of `k[x_1..x_d]`: a choice of `p` differentials times a
/// monomial of weight `w - p`.
pub fn omega(d: usize, p: i64, w: u32) -> usize {
    let rest = w as i64 - p;
    if p < 0 || rest < 0 {
        return 0;
    }
    if d == 0 {
        return usize::from(p == 0 && rest == 0);
    }
    binomial(d as i64, p) * binomial(rest + d as i64 - 1, d as i64 - 1)
}
