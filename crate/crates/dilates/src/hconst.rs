//! The sharp sum-of-dilates constant H(λ1,...,λk): the ideal norm of the
//! denominator ideal times the archimedean product over all complex
//! embeddings. Reported as a certified interval, never a bare float; for
//! rational dilates the value is exact.

use crate::embed::dyadic::{Dir, Dyadic};
use crate::embed::{archimedean_product, certified_roots};
use crate::error::{Error, Result};
use crate::numfield::{denominator_norm, DilateSystem};
use crate::rat::Rat;
use num_bigint::BigInt;
use num_traits::Signed;

#[derive(Clone, Debug, serde::Serialize)]
pub struct HResult {
    /// N(D): the ideal norm of the denominator ideal
    pub ideal_norm_factor: String,
    pub archimedean_lo: f64,
    pub archimedean_hi: f64,
    pub h_lo: f64,
    pub h_hi: f64,
    /// exact value when the field is Q
    pub exact_rational: Option<String>,
}

impl HResult {
    pub fn width(&self) -> f64 {
        self.h_hi - self.h_lo
    }

    pub fn norm_factor_bigint(&self) -> BigInt {
        self.ideal_norm_factor.parse().expect("stored integer")
    }

    pub fn exact(&self) -> Option<Rat> {
        self.exact_rational
            .as_ref()
            .map(|s| parse_rat(s).expect("stored rational"))
    }

    pub fn contains(&self, v: f64) -> bool {
        self.h_lo <= v && v <= self.h_hi
    }
}

fn parse_rat(s: &str) -> Option<Rat> {
    match s.split_once('/') {
        Some((n, d)) => Some(Rat::new(n.parse().ok()?, d.parse().ok()?)),
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

fn format_rat(r: &Rat) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Certified H(λ1,...,λk) with interval width at most `width`.
pub fn h_constant(sys: &DilateSystem, width: f64, seed: u64) -> Result<HResult> {
    if !sys.generates_field(seed) {
        return Err(Error::ProperSubfield);
    }
    let d = sys.field.degree();
    let norm_factor = denominator_norm(sys)?;
    if d == 1 {
        let mut arch = Rat::from_integer(BigInt::from(1));
        for l in &sys.dilates {
            arch += l.as_rational().expect("degree-1 element").abs();
        }
        let h = Rat::from_integer(norm_factor.clone()) * &arch;
        let (alo, ahi) = rat_to_interval(&arch);
        let (hlo, hhi) = rat_to_interval(&h);
        return Ok(HResult {
            ideal_norm_factor: norm_factor.to_string(),
            archimedean_lo: alo,
            archimedean_hi: ahi,
            h_lo: hlo,
            h_hi: hhi,
            exact_rational: Some(format_rat(&h)),
        });
    }
    let norm_dy = Dyadic::from_bigint(norm_factor.clone());
    let mut target = 1e-8f64;
    for _ in 0..8 {
        let e = certified_roots(sys.field.poly(), target)?;
        let (alo, ahi) = archimedean_product(sys, &e);
        let hlo = norm_dy.mul(&alo);
        let hhi = norm_dy.mul(&ahi);
        let lo = hlo.to_f64_dir(Dir::Down);
        let hi = hhi.to_f64_dir(Dir::Up);
        if hi - lo <= width {
            return Ok(HResult {
                ideal_norm_factor: norm_factor.to_string(),
                archimedean_lo: alo.to_f64_dir(Dir::Down),
                archimedean_hi: ahi.to_f64_dir(Dir::Up),
                h_lo: lo,
                h_hi: hi,
                exact_rational: None,
            });
        }
        target *= 1e-4;
        if target < 1e-300 {
            break;
        }
    }
    Err(Error::PrecisionExhausted(0))
}

fn rat_to_interval(r: &Rat) -> (f64, f64) {
    // exact when the rational is dyadic and in f64 range
    let approx = crate::rat::rat_to_f64(r);
    if let Some(back) = Rat::from_float(approx) {
        if &back == r {
            return (approx, approx);
        }
    }
    (approx.next_down(), approx.next_up())
}

/// The lower-bound witness: the extremal set A = nA' ∩ D together with the
/// measured growth ratio |A + λ1 A + ... + λk A| / |A|.
pub fn h_lower_witness(
    sys: &DilateSystem,
    basis: &crate::numfield::IntegralBasis,
    n: u32,
) -> Result<(crate::sumset::PointSet, Rat)> {
    let ex = crate::sumset::extremal_set(sys, basis, n, None)?;
    let maps = crate::sumset::coordinate_maps(sys, basis)?;
    let sum = crate::sumset::dilate_sumset_size(&ex.points, &maps, crate::sumset::DEFAULT_POINT_CAP)?;
    let ratio = Rat::new(BigInt::from(sum), BigInt::from(ex.points.len().max(1)));
    Ok((ex.points, ratio))
}

/// Exact rational H for systems over Q (Bukh's bound |p1|+...+|pk|+q).
pub fn h_exact_rational(sys: &DilateSystem) -> Result<Rat> {
    if sys.field.degree() != 1 {
        return Err(Error::Invalid("exact H requires the rational field".into()));
    }
    let r = h_constant(sys, 1.0, 0)?;
    Ok(r.exact().expect("degree 1 gives exact value"))
}
