use serde_json::{json, Value};

use crate::filtered::SpectralPage;

/// Regions of the `(s, t)` plane to mark on a chart.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overlay {
    /// `τ^B_{≥r}` of the HKR filtration: cells with `2t - s ≥ r`.
    pub beilinson: Option<i64>,
    /// `F^t_HKR`: rows `≥ t`.
    pub hkr: Option<i64>,
    /// `F^s_CW`: CW index `≥ s`, i.e. columns `≥ 2s`.
    pub cw: Option<i64>,
}

impl Overlay {
    pub fn is_empty(&self) -> bool {
        self.beilinson.is_none() && self.hkr.is_none() && self.cw.is_none()
    }

    pub fn in_beilinson(&self, s: i64, t: i64) -> bool {
        self.beilinson.is_some_and(|r| 2 * t - s >= r)
    }

    pub fn in_hkr(&self, t: i64) -> bool {
        self.hkr.is_some_and(|k| t >= k)
    }

    pub fn in_cw(&self, s: i64) -> bool {
        self.cw.is_some_and(|k| s >= 2 * k)
    }

    /// `b`, `h` and `c` for the three regions.
    pub fn marks(&self, s: i64, t: i64) -> String {
        let mut out = String::new();
        if self.in_beilinson(s, t) {
            out.push('b');
        }
        if self.in_hkr(t) {
            out.push('h');
        }
        if self.in_cw(s) {
            out.push('c');
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({ "beilinson": self.beilinson, "hkr": self.hkr, "cw": self.cw })
    }
}

/// Total dimension at `(s, t)` over `weights`.
pub fn cell(page: &SpectralPage, s: i64, t: i64, weights: &[u32]) -> usize {
    let stride = page.stride();
    if s.rem_euclid(stride) != 0 {
        return 0;
    }
    let p = s / stride;
    weights.iter().map(|&w| page.dim(p, t - s, w)).sum()
}

/// Chart with `s` horizontal (even columns only) and `t` vertical, top row first.
pub fn render(page: &SpectralPage, title: &str, weights: &[u32], s_max: i64, t_max: i64, overlay: &Overlay) -> String {
    let columns: Vec<i64> = (0..=s_max).step_by(page.stride().max(1) as usize).collect();
    let text = |s: i64, t: i64| {
        let d = cell(page, s, t, weights);
        let base = if d == 0 { ".".to_string() } else { d.to_string() };
        base + &overlay.marks(s, t)
    };
    let width = columns
        .iter()
        .flat_map(|&s| (0..=t_max).map(move |t| (s, t)))
        .map(|(s, t)| text(s, t).len())
        .chain(columns.iter().map(|s| s.to_string().len()))
        .max()
        .unwrap_or(1);
    let label = t_max.to_string().len().max(1);
    let mut out = format!("{title}\n{:>label$}\n", "t");
    for t in (0..=t_max).rev() {
        let cells: Vec<String> = columns.iter().map(|&s| format!("{:>width$}", text(s, t))).collect();
        out.push_str(&format!("{t:>label$} | {}\n", cells.join(" ")));
    }
    let rule = "-".repeat(columns.len() * (width + 1));
    out.push_str(&format!("{:>label$} +{rule}\n", ""));
    let heads: Vec<String> = columns.iter().map(|s| format!("{s:>width$}")).collect();
    out.push_str(&format!("{:>label$}   {}  s\n", "", heads.join(" ")));
    if !overlay.is_empty() {
        let mut legend = Vec::new();
        if let Some(r) = overlay.beilinson {
            legend.push(format!("b: tau^B >= {r} (2t - s >= {r})"));
        }
        if let Some(k) = overlay.hkr {
            legend.push(format!("h: F^{k}_HKR (t >= {k})"));
        }
        if let Some(k) = overlay.cw {
            legend.push(format!("c: F^{k}_CW (s >= {})", 2 * k));
        }
        out.push_str(&legend.join("; "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overlay_regions() {
        let o = Overlay {
            beilinson: Some(2),
            hkr: Some(1),
            cw: Some(1),
        };
        assert_eq!(o.marks(0, 1), "bh");
        assert_eq!(o.marks(2, 1), "hc");
        assert_eq!(o.marks(0, 0), "");
        // the Beilinson region in row t is exactly the columns 2p with 2t - 2p ≥ r
        for t in 0..4 {
            for p in 0..4 {
                assert_eq!(o.in_beilinson(2 * p, t), 2 <= 2 * t - 2 * p);
            }
        }
    }
}
