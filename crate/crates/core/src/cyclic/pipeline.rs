use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::model::{totalize, CyclicModel, Variant};
use super::periodic::{periodic_model, PeriodicModel};
use crate::complexes::{slice_key, ChainComplex, ChainMap, CochainComplex};
use crate::derham::{de_rham_complex, AlgebraPresentation, DeRham};
use crate::error::{Error, Result};
use crate::exactlin::{Matrix, Scalar, SparseVec};
use crate::filtered::{induced_heart_map, BifilteredComplex, FilteredComplex, Heart, SpectralPage};
use crate::hochschild::{degree_cap, hkr_tower, Hochschild, HkrTower, MixedComplex};

/// Slice-by-slice comparison of a heart with a cochain complex along a
/// comparison map `Φ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeartComparison {
    /// Nonzero heart dimensions by `(degree, weight)`.
    pub heart: BTreeMap<(i64, u32), usize>,
    /// Nonzero target dimensions by `(degree, weight)`.
    pub target: BTreeMap<(i64, u32), usize>,
    pub phi_invertible: bool,
    /// `δ Φ_i = c Φ_{i+1} d_i` for every `i`.
    pub differential_match: bool,
    pub first_mismatch: Option<(i64, u32)>,
}

impl HeartComparison {
    pub fn passed(&self) -> bool {
        self.heart == self.target && self.phi_invertible && self.differential_match
    }
}

fn dims_json(dims: &BTreeMap<(i64, u32), usize>) -> Value {
    dims.iter()
        .map(|(&(i, w), &d)| (slice_key(i, w), Value::from(d)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn scalar_json(c: &Scalar) -> Value {
    c.to_i64().map_or_else(|| Value::from(c.to_string()), Value::from)
}

/// Per-weight flags: dimensions agree, `Φ` invertible, differentials match.
type SliceChecks = (u32, Vec<bool>, Vec<bool>, Vec<bool>);

/// `phi(i, w)` is `Φ_i : target^i(w) → heart^i(w)`.
fn compare_heart(
    heart: &Heart,
    target: &CochainComplex,
    c: &Scalar,
    phi: impl Fn(i64, u32) -> Result<Matrix> + Sync,
) -> Result<HeartComparison> {
    let hc = heart.complex();
    let (hlo, hhi) = hc.window();
    let (tlo, thi) = target.window();
    let (lo, hi) = (hlo.min(tlo), hhi.max(thi));
    let per_weight: Vec<SliceChecks> = (0..=hc.weight_cap())
        .into_par_iter()
        .map(|w| {
            let phis: Vec<Matrix> = (lo..=hi + 1).map(|i| phi(i, w)).collect::<Result<_>>()?;
            let mut dims_ok = Vec::new();
            let mut inv_ok = Vec::new();
            let mut diff_ok = Vec::new();
            for i in lo..=hi {
                let k = (i - lo) as usize;
                let p = &phis[k];
                dims_ok.push(hc.dim(i, w) == target.dim(i, w));
                inv_ok.push(p.rows() == p.cols() && p.rank() == p.rows());
                let lhs = hc.d(i, w).mul(p)?;
                let rhs = phis[k + 1].mul(&target.d(i, w).scale(c))?;
                diff_ok.push(lhs == rhs);
            }
            Ok((w, dims_ok, inv_ok, diff_ok))
        })
        .collect::<Result<_>>()?;
    let mut out = HeartComparison {
        heart: BTreeMap::new(),
        target: BTreeMap::new(),
        phi_invertible: true,
        differential_match: true,
        first_mismatch: None,
    };
    for (w, dims_ok, inv_ok, diff_ok) in per_weight {
        for i in lo..=hi {
            let k = (i - lo) as usize;
            for (dims, key) in [(&mut out.heart, hc.dim(i, w)), (&mut out.target, target.dim(i, w))] {
                if key > 0 {
                    dims.insert((i, w), key);
                }
            }
            out.phi_invertible &= inv_ok[k];
            out.differential_match &= diff_ok[k];
            if !(dims_ok[k] && inv_ok[k] && diff_ok[k]) {
                out.first_mismatch = Some(out.first_mismatch.map_or((i, w), |f| f.min((i, w))));
            }
        }
    }
    Ok(out)
}

/// Comparison of `π^B_{2u}` of the HKR filtration on `F^s_CW HC⁻` with `Ω^{≥u+s}`.
#[derive(Clone, Debug)]
pub struct PipelineReport {
    pub algebra: String,
    pub weight: u32,
    pub u: i64,
    pub s: i64,
    pub comparison: HeartComparison,
    pub normalization: Scalar,
    pub window_limited: bool,
}

impl PipelineReport {
    pub fn passed(&self) -> bool {
        self.comparison.passed()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "algebra": self.algebra,
            "weight": self.weight,
            "u": self.u,
            "s": self.s,
            "heart": dims_json(&self.comparison.heart),
            "de_rham": dims_json(&self.comparison.target),
            "phi_invertible": self.comparison.phi_invertible,
            "differential_match": self.comparison.differential_match,
            "first_mismatch": self.comparison.first_mismatch.map(|(i, w)| slice_key(i, w)),
            "normalization": scalar_json(&self.normalization),
            "window_limited": self.window_limited,
        })
    }
}

/// `gr^u_B HP ≅ Ω^•[2u]` through the cofiber sequence `HC[1] → HC⁻ → HP`,
/// with the hearts of `HC⁻`, `HP` and `HC[2]` compared with the stupid sequence
/// `Ω^{≥u} → Ω^• → Ω^{≤u-1}`.
#[derive(Clone, Debug)]
pub struct HpReport {
    pub algebra: String,
    pub weight: u32,
    pub u: i64,
    pub negative: HeartComparison,
    pub periodic: HeartComparison,
    pub quotient: HeartComparison,
    /// The induced sequence of hearts is short exact and agrees with the stupid sequence under `Φ`.
    pub three_term_exact: bool,
    /// Degrees where the long exact sequence of the cone was checked.
    pub les_degrees: (i64, i64),
    pub les_exact: bool,
    pub normalization: Scalar,
    pub window_limited: bool,
}

impl HpReport {
    pub fn passed(&self) -> bool {
        self.negative.passed()
            && self.periodic.passed()
            && self.quotient.passed()
            && self.three_term_exact
            && self.les_exact
    }

    pub fn to_json(&self) -> Value {
        let part = |c: &HeartComparison| {
            json!({
                "heart": dims_json(&c.heart),
                "de_rham": dims_json(&c.target),
                "phi_invertible": c.phi_invertible,
                "differential_match": c.differential_match,
                "first_mismatch": c.first_mismatch.map(|(i, w)| slice_key(i, w)),
            })
        };
        json!({
            "algebra": self.algebra,
            "weight": self.weight,
            "u": self.u,
            "heart": dims_json(&self.periodic.heart),
            "de_rham": dims_json(&self.periodic.target),
            "differential_match": self.periodic.differential_match,
            "negative": part(&self.negative),
            "periodic": part(&self.periodic),
            "quotient": part(&self.quotient),
            "three_term_exact": self.three_term_exact,
            "les_degrees": [self.les_degrees.0, self.les_degrees.1],
            "les_exact": self.les_exact,
            "normalization": scalar_json(&self.normalization),
            "window_limited": self.window_limited,
        })
    }
}

fn betti_or_zero(c: &ChainComplex, n: i64, w: u32) -> Result<usize> {
    if c.in_window(n) {
        c.betti(n, w)
    } else {
        Ok(0)
    }
}

fn homology_rank(f: &ChainMap, n: i64, w: u32) -> Result<usize> {
    if f.source().in_window(n) && f.target().in_window(n) {
        Ok(f.on_homology(n, w)?.rank())
    } else {
        Ok(0)
    }
}

/// Slot exactness of `H(HC[1]) → H(HC⁻) → H(HP) → H(HC[2])` by ranks in
/// degrees `[lo, hi]`.
pub fn les_is_exact(p: &PeriodicModel, lo: i64, hi: i64) -> Result<bool> {
    let shifted = p.norm().source();
    for w in 0..=p.complex().weight_cap() {
        for n in lo..=hi {
            let r_norm = homology_rank(p.norm(), n, w)?;
            let r_norm_below = homology_rank(p.norm(), n - 1, w)?;
            let r_incl = homology_rank(p.inclusion(), n, w)?;
            let r_proj = homology_rank(p.projection(), n, w)?;
            let exact = betti_or_zero(p.negative().complex(), n, w)? == r_norm + r_incl
                && betti_or_zero(p.complex(), n, w)? == r_incl + r_proj
                && betti_or_zero(shifted, n - 1, w)? == r_proj + r_norm_below;
            if !exact {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Hochschild data of one algebra up to a weight cap, shared by the pipelines.
#[derive(Clone, Debug)]
pub struct CyclicPipeline {
    hochschild: Hochschild,
    tower: HkrTower,
    de_rham: Option<DeRham>,
    top: i64,
}

impl CyclicPipeline {
    pub fn new(r: &AlgebraPresentation, w_cap: u32) -> Result<Self> {
        let hochschild = Hochschild::new(r, w_cap)?;
        let tower = hkr_tower(hochschild.mixed())?;
        let de_rham = if r.is_polynomial() {
            Some(de_rham_complex(r, w_cap)?)
        } else {
            None
        };
        Ok(Self {
            top: degree_cap(r, w_cap),
            hochschild,
            tower,
            de_rham,
        })
    }

    pub fn hochschild(&self) -> &Hochschild {
        &self.hochschild
    }

    pub fn tower(&self) -> &HkrTower {
        &self.tower
    }

    pub fn weight_cap(&self) -> u32 {
        self.hochschild.complex().weight_cap()
    }

    /// Largest Hochschild degree.
    pub fn degree_cap(&self) -> i64 {
        self.top
    }

    fn de_rham(&self) -> Result<&DeRham> {
        self.de_rham.as_ref().ok_or_else(|| {
            Error::Unsupported(format!(
                "de Rham comparison for {} (only polynomial algebras are smooth here)",
                self.hochschild.algebra().label()
            ))
        })
    }

    /// Negative model exact for homology in `[lo, hi]`.
    pub fn negative(&self, lo: i64, hi: i64) -> Result<CyclicModel> {
        totalize(self.hochschild.mixed(), Variant::Negative, (lo - 1, hi.max(self.top)))
    }

    /// Model of `variant` exact for homology in `[lo, hi]`.
    pub fn model(&self, variant: Variant, lo: i64, hi: i64) -> Result<CyclicModel> {
        match variant {
            Variant::Negative => self.negative(lo, hi),
            _ => totalize(self.hochschild.mixed(), variant, (lo - 1, hi + 1)),
        }
    }

    /// `HP` exact for homology in `[lo, hi]`.
    pub fn periodic(&self, lo: i64, hi: i64) -> Result<PeriodicModel> {
        periodic_model(self.hochschild.mixed(), (lo - 1, hi + 1))
    }

    /// Negative model in which a heart at `level` reads only exact slices.
    fn model_for_level(&self, level: i64) -> Result<CyclicModel> {
        self.negative(level - self.top - 1, level + 1)
    }

    /// HKR filtration of `F^s_CW HC⁻` on a model.
    pub fn filtration(&self, model: &CyclicModel, s: i64) -> Result<FilteredComplex> {
        model.hkr_filtration(&self.tower, s)
    }

    /// `π^B_{2u} F^⋆_HKR F^s_CW HC⁻`, for any algebra.
    pub fn heart(&self, u: i64, s: i64) -> Result<Heart> {
        let model = self.model_for_level(2 * u)?;
        self.filtration(&model, s)?.beilinson_heart(2 * u)
    }

    /// `Φ_i : Ω^i(w) → heart^i(w)`, `ω ↦ [ε(ω)]` placed by `place(n, w, s, chain)`
    /// in column `i - u` of total degree `2u - i`.
    fn phi(
        &self,
        heart: &Heart,
        target: &CochainComplex,
        u: i64,
        place: impl Fn(i64, u32, i64, &SparseVec) -> Option<SparseVec>,
        i: i64,
        w: u32,
    ) -> Result<Matrix> {
        let field = self.hochschild.algebra().field();
        let rows = heart.complex().dim(i, w);
        if target.dim(i, w) == 0 {
            return Ok(Matrix::zeros(field, rows, 0));
        }
        let forms = self.de_rham()?.forms(i as usize).basis(w);
        let cols = forms
            .iter()
            .map(|f| {
                let chain = self.hochschild.hkr_chain(f, w);
                let x = place(2 * u - i, w, i - u, &chain)
                    .ok_or_else(|| Error::Incompatible(format!("column {} missing at degree {}", i - u, 2 * u - i)))?;
                heart.class_of(i, w, &x).ok_or_else(|| {
                    Error::Incompatible(format!("HKR image of an {i}-form at weight {w} is not a relative cycle"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(field, rows, cols)
    }

    /// The heart together with its comparison with `Ω^{≥u+s}`.
    pub fn beilinson(&self, u: i64, s: i64) -> Result<(CochainComplex, PipelineReport)> {
        let omega = self.de_rham()?;
        let c = self.hochschild.hkr_normalization()?;
        let model = self.model_for_level(2 * u)?;
        let heart = self.filtration(&model, s)?.beilinson_heart(2 * u)?;
        let target = omega.hodge_truncate(u + s);
        let comparison = compare_heart(&heart, &target, &c, |i, w| {
            self.phi(&heart, &target, u, |n, w, col, v| model.embed(n, w, col, v), i, w)
        })?;
        let report = PipelineReport {
            algebra: self.hochschild.algebra().label().to_string(),
            weight: self.weight_cap(),
            u,
            s,
            comparison,
            normalization: c,
            window_limited: heart.window_limited(),
        };
        Ok((heart.into_complex(), report))
    }

    /// `gr^u_B HP` from the cone of the norm map, compared with `Ω^•`.
    pub fn hp(&self, u: i64) -> Result<(CochainComplex, HpReport)> {
        let omega = self.de_rham()?;
        let c = self.hochschild.hkr_normalization()?;
        let level = 2 * u;
        let p = self.periodic(level - self.top - 1, level + 1)?;
        let neg_heart = self.filtration(p.negative(), 0)?.beilinson_heart(level)?;
        let hp_heart = p.hkr_filtration(&self.tower)?.beilinson_heart(level)?;
        let hc2_heart = p
            .cyclic()
            .hkr_filtration(&self.tower, i64::MIN)?
            .shift(2)
            .beilinson_heart(level)?;
        let stupid = omega.stupid_sequence(u)?;
        let place_neg = |n: i64, w: u32, s: i64, v: &SparseVec| p.negative().embed(n, w, s, v);
        let place_hp = |n: i64, w: u32, s: i64, v: &SparseVec| p.embed(n, w, s, v);
        let place_hc2 = |n: i64, w: u32, s: i64, v: &SparseVec| p.cyclic().embed(n - 2, w, s + 1, v);
        let negative = compare_heart(&neg_heart, &stupid.sub, &c, |i, w| {
            self.phi(&neg_heart, &stupid.sub, u, place_neg, i, w)
        })?;
        let periodic = compare_heart(&hp_heart, &stupid.whole, &c, |i, w| {
            self.phi(&hp_heart, &stupid.whole, u, place_hp, i, w)
        })?;
        let quotient = compare_heart(&hc2_heart, &stupid.quotient, &c, |i, w| {
            self.phi(&hc2_heart, &stupid.quotient, u, place_hc2, i, w)
        })?;

        let mut three_term_exact = true;
        for w in 0..=self.weight_cap() {
            for i in hp_heart.complex().degrees() {
                let a = induced_heart_map(&neg_heart, &hp_heart, i, w, |m, w| p.inclusion().block(m, w));
                let q = induced_heart_map(&hp_heart, &hc2_heart, i, w, |m, w| p.projection().block(m, w));
                let exact = q.mul(&a)?.is_zero()
                    && a.rank() == a.cols()
                    && q.rank() == q.rows()
                    && a.cols() + q.rows() == a.rows();
                let phi_neg = self.phi(&neg_heart, &stupid.sub, u, place_neg, i, w)?;
                let phi_hp = self.phi(&hp_heart, &stupid.whole, u, place_hp, i, w)?;
                let phi_hc2 = self.phi(&hc2_heart, &stupid.quotient, u, place_hc2, i, w)?;
                let compatible = a.mul(&phi_neg)? == phi_hp.mul(&stupid.inclusion.block(-i, w))?
                    && q.mul(&phi_hp)? == phi_hc2.mul(&stupid.projection.block(-i, w))?;
                three_term_exact &= exact && compatible;
            }
        }

        let (tlo, thi) = p.trusted_degrees();
        let les_degrees = (tlo.max(level - self.top), thi.min(level + 1));
        let les_exact = les_is_exact(&p, les_degrees.0, les_degrees.1)?;

        let window_limited = neg_heart.window_limited() || hp_heart.window_limited() || hc2_heart.window_limited();
        let report = HpReport {
            algebra: self.hochschild.algebra().label().to_string(),
            weight: self.weight_cap(),
            u,
            negative,
            periodic,
            quotient,
            three_term_exact,
            les_degrees,
            les_exact,
            normalization: c,
            window_limited,
        };
        Ok((hp_heart.into_complex(), report))
    }

    /// Dimensions of `gr^t π^B_r` of the HKR filtration on `F^s_CW HC⁻`,
    /// read as the homology of `G_r^t / (G_r^{t+1} + G_{r+1}^t)` with
    /// `G_r = τ^B_{≥r}`, keyed by `(r, t, degree, weight)`.
    pub fn beilinson_pieces(&self, s: i64, r_lo: i64, r_hi: i64) -> Result<BeilinsonPieces> {
        let model = self.negative(r_lo - self.top - 2, r_hi + 2)?;
        let f = self.filtration(&model, s)?;
        let c = f.ambient();
        let covers: Vec<FilteredComplex> = (r_lo..=r_hi + 1)
            .into_par_iter()
            .map(|r| f.beilinson_truncate(r))
            .collect();
        let degrees = (r_lo - self.top - 1, r_hi + 1);
        let mut dims = BTreeMap::new();
        for r in r_lo..=r_hi {
            let (g, g_next) = (&covers[(r - r_lo) as usize], &covers[(r - r_lo + 1) as usize]);
            for t in 0..f.top() as i64 {
                let lower = g.step(t + 1).sum(g_next.step(t));
                for w in 0..=c.weight_cap() {
                    for m in degrees.0..=degrees.1 {
                        let h = crate::complexes::homology_of_pair(c, Some(g.step(t)), Some(&lower), m, w)?;
                        if h.dim() > 0 {
                            dims.insert((r, t, m, w), h.dim());
                        }
                    }
                }
            }
        }
        Ok(BeilinsonPieces {
            s,
            r_range: (r_lo, r_hi),
            t_range: (0, f.top() as i64 - 1),
            degrees,
            dims,
            window_limited: !model.is_exact_on(degrees.0, degrees.1),
        })
    }

    /// `F^{s,t}`: columns `≥ s` of HKR step `t` on a negative model exact in `[lo, hi]`.
    pub fn bifiltration(&self, lo: i64, hi: i64) -> Result<(CyclicModel, BifilteredComplex)> {
        let model = self.negative(lo, hi)?;
        let bi = model.bifiltration(&self.tower)?;
        Ok((model, bi))
    }

    /// CW spectral sequence of `HC⁻` in degrees `[lo, hi]`, pages `1..=r_max`
    /// of the column filtration drawn with stride 2 (so page `r` is `E_{2r}`
    /// in the cohomological indexing by `(s, t)`).
    pub fn cw_spectral_sequence(&self, lo: i64, hi: i64, r_max: usize) -> Result<Vec<SpectralPage>> {
        let model = self.negative(lo, hi)?;
        let f = model.cw_filtration()?;
        Ok(f.spectral_sequence(r_max)?.into_iter().map(|p| p.with_stride(2)).collect())
    }
}

/// Output of [`CyclicPipeline::beilinson_pieces`].
#[derive(Clone, Debug)]
pub struct BeilinsonPieces {
    pub s: i64,
    pub r_range: (i64, i64),
    pub t_range: (i64, i64),
    pub degrees: (i64, i64),
    /// Nonzero dimensions keyed by `(r, t, degree, weight)`.
    pub dims: BTreeMap<(i64, i64, i64, u32), usize>,
    pub window_limited: bool,
}

impl BeilinsonPieces {
    pub fn dim(&self, r: i64, t: i64, m: i64, w: u32) -> usize {
        self.dims.get(&(r, t, m, w)).copied().unwrap_or(0)
    }
}

/// `beilinson_pipeline(R, w, u)` at CW level `s`.
pub fn beilinson_pipeline(
    r: &AlgebraPresentation,
    w_cap: u32,
    u: i64,
    s: i64,
) -> Result<(CochainComplex, PipelineReport)> {
    CyclicPipeline::new(r, w_cap)?.beilinson(u, s)
}

pub fn hp_pipeline(r: &AlgebraPresentation, w_cap: u32, u: i64) -> Result<(CochainComplex, HpReport)> {
    CyclicPipeline::new(r, w_cap)?.hp(u)
}

fn require_connective(m: &MixedComplex) -> Result<()> {
    if m.complex().window().0 < 0 {
        return Err(Error::Unsupported(
            "circle hearts of mixed complexes with negative degrees".into(),
        ));
    }
    Ok(())
}

/// The heart at `2n` of the Postnikov filtration of `M^{hS¹}`, together with
/// the negative model and heart it was read from.
fn circle_heart_data(m: &MixedComplex, n: i64) -> Result<(CyclicModel, Heart)> {
    require_connective(m)?;
    let hi = m.complex().window().1;
    let tower = hkr_tower(m)?;
    let model = totalize(m, Variant::Negative, (2 * n - hi - 2, hi.max(2 * n + 1)))?;
    let heart = model.hkr_filtration(&tower, 0)?.beilinson_heart(2 * n)?;
    Ok((model, heart))
}

/// `π^B_{2n}` of the Postnikov filtration of `M^{hS¹}`.
pub fn circle_heart(m: &MixedComplex, n: i64) -> Result<CochainComplex> {
    Ok(circle_heart_data(m, n)?.1.into_complex())
}

/// `(H_{•≥n}(M), B)` as a cochain complex in degrees `[0, top]`.
pub fn homology_with_b(m: &MixedComplex, n: i64) -> Result<CochainComplex> {
    let c = m.complex();
    let hi = c.window().1.max(0);
    let keep = |i: i64| i >= n && c.in_window(i);
    CochainComplex::new(
        c.field(),
        (0, hi),
        c.weight_cap(),
        |i, w| if keep(i) { c.betti(i, w).unwrap() } else { 0 },
        |i, w| (keep(i) && keep(i + 1)).then(|| m.b_on_homology(i, w).unwrap()),
    )
}

/// The extracted circle heart against `(H_{•≥n}, B)`, along the map sending a
/// homology class of `M` in degree `i` to its representative in column `i - n`.
pub fn compare_circle_heart(m: &MixedComplex, n: i64) -> Result<HeartComparison> {
    let (model, heart) = circle_heart_data(m, n)?;
    let target = homology_with_b(m, n)?;
    let c = m.complex();
    let one = c.field().one();
    compare_heart(&heart, &target, &one, |i, w| {
        let rows = heart.complex().dim(i, w);
        if target.dim(i, w) == 0 {
            return Ok(Matrix::zeros(c.field(), rows, 0));
        }
        let h = c.homology(i, w)?;
        let cols = h
            .representatives()
            .iter()
            .map(|z| {
                let x = model
                    .embed(2 * n - i, w, i - n, z)
                    .ok_or_else(|| Error::Incompatible(format!("column {} missing", i - n)))?;
                heart
                    .class_of(i, w, &x)
                    .ok_or_else(|| Error::Incompatible(format!("cycle of degree {i} is not a relative cycle")))
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_columns(c.field(), rows, cols)
    })
}
