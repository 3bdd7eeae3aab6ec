//! Certified complex embeddings of a number field.
//!
//! Root isolation: Durand-Kerner seeds in f64, Newton refinement in exact
//! dyadic arithmetic, and the a posteriori bound d*|f(z)|/|f'(z)| (every
//! approximation has a true root within that distance, since f'/f is the sum
//! of the reciprocals z - root). d pairwise disjoint certified disks isolate
//! all d roots. The precision ladder doubles from 64 bits up to a hard cap
//! of 4096.

pub mod dyadic;

use crate::error::{Error, Result};
use crate::numfield::{DilateSystem, FieldElement};
use crate::poly::UPoly;
use crate::rat::Rat;
use dyadic::{CDyadic, Dir, Dyadic};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};

pub const PREC_START: u32 = 64;
pub const PREC_CAP: u32 = 4096;

/// A disk certified to contain one value: center (re, im) and radius.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CertifiedComplex {
    pub re: f64,
    pub im: f64,
    pub radius: f64,
}

/// A complex ball with exact dyadic center.
#[derive(Clone, Debug)]
pub struct Ball {
    pub c: CDyadic,
    pub r: Dyadic,
}

impl Ball {
    pub fn exact(c: CDyadic) -> Self {
        Ball {
            c,
            r: Dyadic::zero(),
        }
    }

    pub fn from_rat(re: &Rat, prec: u32) -> Self {
        // c = floor(re * 2^prec) / 2^prec, radius covers the truncation
        let scaled = re * Rat::from_integer(BigInt::one() << prec);
        let floor = scaled.floor();
        let exact = floor == scaled;
        let c = Dyadic::new(floor.to_integer(), -(prec as i64));
        let r = if exact {
            Dyadic::zero()
        } else {
            Dyadic::new(BigInt::one(), -(prec as i64))
        };
        Ball {
            c: CDyadic::new(c, Dyadic::zero()),
            r,
        }
    }

    pub fn add(&self, o: &Ball, prec: u32) -> Ball {
        let c = self.c.add(&o.c);
        let rounded = c.round(prec);
        let slack = c.sub(&rounded).abs_up(32);
        Ball {
            c: rounded,
            r: self.r.add(&o.r).add(&slack).round(32, Dir::Up),
        }
    }

    pub fn mul(&self, o: &Ball, prec: u32) -> Ball {
        let c = self.c.mul(&o.c);
        let rounded = c.round(prec);
        let slack = c.sub(&rounded).abs_up(32);
        let a = self.c.abs_up(32);
        let b = o.c.abs_up(32);
        let r = a
            .mul(&o.r)
            .add(&b.mul(&self.r))
            .add(&self.r.mul(&o.r))
            .add(&slack)
            .round(32, Dir::Up);
        Ball { c: rounded, r }
    }

    pub fn scale_int(&self, k: i64, prec: u32) -> Ball {
        self.mul(&Ball::exact(CDyadic::new(Dyadic::from_i64(k), Dyadic::zero())), prec)
    }

    /// Interval guaranteed to contain |z| for every z in the ball.
    pub fn abs_interval(&self, prec: u32) -> (Dyadic, Dyadic) {
        let lo = self.c.abs_down(prec).sub(&self.r);
        let lo = if lo.is_negative() { Dyadic::zero() } else { lo };
        let hi = self.c.abs_up(prec).add(&self.r);
        (lo, hi)
    }

    pub fn to_certified(&self) -> CertifiedComplex {
        let re = self.c.re.to_f64_dir(Dir::Down);
        let im = self.c.im.to_f64_dir(Dir::Down);
        // account for the f64 rounding of the center in the exported radius
        let centre_err = self
            .c
            .sub(&CDyadic::from_f64(re, im))
            .abs_up(32);
        CertifiedComplex {
            re,
            im,
            radius: self.r.add(&centre_err).to_f64_dir(Dir::Up),
        }
    }

    /// Evaluate a polynomial with rational coefficients on the ball.
    pub fn eval_poly(coeffs: &[Rat], z: &Ball, prec: u32) -> Ball {
        let mut acc = Ball::exact(CDyadic::zero());
        for c in coeffs.iter().rev() {
            acc = acc.mul(z, prec).add(&Ball::from_rat(c, prec), prec);
        }
        acc
    }
}

/// Certified root data of a defining polynomial.
#[derive(Clone, Debug)]
pub struct EmbeddingData {
    pub poly: UPoly,
    pub roots: Vec<Ball>,
    /// involution matching conjugate disks; fixed points are real roots
    pub pairing: Vec<usize>,
    pub real_mask: Vec<bool>,
    pub prec: u32,
}

impl EmbeddingData {
    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    pub fn certified_roots(&self) -> Vec<CertifiedComplex> {
        self.roots.iter().map(Ball::to_certified).collect()
    }

    pub fn max_radius(&self) -> f64 {
        self.roots
            .iter()
            .map(|b| b.r.to_f64_dir(Dir::Up))
            .fold(0.0, f64::max)
    }
}

// ---------- f64 complex scratch arithmetic for seeds ----------

#[derive(Clone, Copy, Debug)]
struct C64 {
    re: f64,
    im: f64,
}

impl C64 {
    fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }
    fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
    fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }
    fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
    fn div(self, o: C64) -> C64 {
        let d = o.re * o.re + o.im * o.im;
        C64::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
    fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }
}

fn durand_kerner(coeffs: &[f64]) -> Vec<C64> {
    let d = coeffs.len() - 1;
    let lead = coeffs[d];
    let radius = 1.0
        + coeffs[..d]
            .iter()
            .map(|c| (c / lead).abs())
            .fold(0.0, f64::max);
    let mut roots: Vec<C64> = (0..d)
        .map(|j| {
            let ang = 2.0 * std::f64::consts::PI * j as f64 / d as f64 + 0.4;
            C64::new(radius * ang.cos(), radius * ang.sin())
        })
        .collect();
    let eval = |z: C64| -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc.mul(z).add(C64::new(*c, 0.0));
        }
        acc
    };
    for _ in 0..500 {
        let mut moved: f64 = 0.0;
        for j in 0..d {
            let mut denom = C64::new(lead, 0.0);
            for m in 0..d {
                if m != j {
                    denom = denom.mul(roots[j].sub(roots[m]));
                }
            }
            if denom.abs() == 0.0 {
                continue;
            }
            let delta = eval(roots[j]).div(denom);
            roots[j] = roots[j].sub(delta);
            moved = moved.max(delta.abs());
        }
        if moved < 1e-14 {
            break;
        }
    }
    roots
}

// ---------- certified isolation ----------

fn eval_int_poly(coeffs: &[BigInt], z: &CDyadic) -> CDyadic {
    let mut acc = CDyadic::zero();
    for c in coeffs.iter().rev() {
        acc = acc
            .mul(z)
            .add(&CDyadic::new(Dyadic::from_bigint(c.clone()), Dyadic::zero()));
    }
    acc
}

fn derivative_int(coeffs: &[BigInt]) -> Vec<BigInt> {
    coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigInt::from(i))
        .collect()
}

/// Isolate all complex roots of a squarefree polynomial in pairwise disjoint
/// certified disks of radius at most `target_radius`.
pub fn certified_roots(f: &UPoly, target_radius: f64) -> Result<EmbeddingData> {
    let Some(d) = f.degree() else {
        return Err(Error::Invalid("zero polynomial".into()));
    };
    if d == 0 {
        return Err(Error::Invalid("constant polynomial".into()));
    }
    if !f.is_squarefree() {
        return Err(Error::RepeatedRoots);
    }
    let ints = f.primitive_integer();
    let poly = UPoly::from_big_coeffs(ints.clone());
    if d == 1 {
        let root = -poly.coeff(0) / poly.coeff(1);
        let prec = 64.max((-target_radius.log2()).ceil() as u32 + 16).min(PREC_CAP);
        let ball = Ball::from_rat(&root, prec);
        return Ok(EmbeddingData {
            poly,
            roots: vec![ball],
            pairing: vec![0],
            real_mask: vec![true],
            prec,
        });
    }
    let coeffs_f64: Vec<f64> = ints
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::INFINITY))
        .collect();
    if coeffs_f64.iter().any(|c| !c.is_finite()) {
        return Err(Error::Invalid("coefficients exceed f64 seeding range".into()));
    }
    let seeds = durand_kerner(&coeffs_f64);
    let target = Dyadic::from_f64(target_radius);
    let deriv = derivative_int(&ints);
    let dd = Dyadic::from_i64(d as i64);

    let mut prec = PREC_START;
    let mut achieved = f64::INFINITY;
    while prec <= PREC_CAP {
        let mut roots: Vec<Ball> = Vec::with_capacity(d);
        let mut ok = true;
        for seed in &seeds {
            let mut z = CDyadic::from_f64(seed.re, seed.im);
            // Newton iterations; quadratic convergence from an f64 seed
            let steps = (32 - prec.leading_zeros()) + 6;
            for _ in 0..steps {
                let fv = eval_int_poly(&ints, &z);
                if fv.is_zero() {
                    break;
                }
                let fd = eval_int_poly(&deriv, &z);
                if fd.is_zero() {
                    break;
                }
                let delta = fv.div_approx(&fd, prec);
                z = z.sub(&delta).round(prec);
            }
            let fv = eval_int_poly(&ints, &z);
            let fd = eval_int_poly(&deriv, &z);
            let fd_lo = fd.abs_down(prec);
            if !fd_lo.is_zero() && !fd_lo.is_negative() {
                let r = dd
                    .mul(&fv.abs_up(prec))
                    .div(&fd_lo, 64, Dir::Up)
                    .round(32, Dir::Up);
                roots.push(Ball { c: z, r });
            } else {
                ok = false;
                break;
            }
        }
        if ok {
            achieved = roots
                .iter()
                .map(|b| b.r.to_f64_dir(Dir::Up))
                .fold(0.0, f64::max);
            let radii_ok = roots.iter().all(|b| b.r.le(&target));
            let disjoint = (0..d).all(|i| {
                (i + 1..d).all(|j| {
                    let dist = roots[i].c.sub(&roots[j].c).abs_down(prec);
                    roots[i].r.add(&roots[j].r).lt(&dist)
                })
            });
            if radii_ok && disjoint {
                if let Some((pairing, real_mask)) = certify_pairing(&roots, prec) {
                    return Ok(EmbeddingData {
                        poly,
                        roots,
                        pairing,
                        real_mask,
                        prec,
                    });
                }
            }
        }
        prec *= 2;
    }
    Err(Error::CertificationFailed {
        achieved,
        requested: target_radius,
    })
}

/// Match each disk with the unique disk meeting its conjugate; fails (None)
/// when any match is ambiguous at this precision.
fn certify_pairing(roots: &[Ball], prec: u32) -> Option<(Vec<usize>, Vec<bool>)> {
    let d = roots.len();
    let mut pairing = vec![usize::MAX; d];
    for i in 0..d {
        let conj_c = roots[i].c.conj();
        let mut candidates = vec![];
        for (j, rj) in roots.iter().enumerate() {
            let dist_lo = conj_c.sub(&rj.c).abs_down(prec);
            let sum = roots[i].r.add(&rj.r);
            if !sum.lt(&dist_lo) {
                candidates.push(j);
            }
        }
        if candidates.len() != 1 {
            return None;
        }
        pairing[i] = candidates[0];
    }
    // involution check
    for i in 0..d {
        if pairing[pairing[i]] != i {
            return None;
        }
    }
    let real_mask = (0..d).map(|i| pairing[i] == i).collect();
    Some((pairing, real_mask))
}

/// Images of a field element under all embeddings, as certified balls.
pub fn embed(x: &FieldElement, e: &EmbeddingData) -> Vec<Ball> {
    e.roots
        .iter()
        .map(|root| Ball::eval_poly(&x.coeffs, root, e.prec))
        .collect()
}

/// Certified interval for prod_i (1 + sum_l |sigma_i(lambda_l)|).
pub fn archimedean_product(sys: &DilateSystem, e: &EmbeddingData) -> (Dyadic, Dyadic) {
    let prec = e.prec;
    let embedded: Vec<Vec<Ball>> = sys.dilates.iter().map(|l| embed(l, e)).collect();
    let mut lo = Dyadic::one();
    let mut hi = Dyadic::one();
    for i in 0..e.degree() {
        let mut s_lo = Dyadic::one();
        let mut s_hi = Dyadic::one();
        for balls in &embedded {
            let (alo, ahi) = balls[i].abs_interval(prec);
            s_lo = s_lo.add(&alo);
            s_hi = s_hi.add(&ahi);
        }
        lo = lo.mul(&s_lo).round(prec, Dir::Down);
        hi = hi.mul(&s_hi).round(prec, Dir::Up);
    }
    (lo, hi)
}

/// f64 view of the archimedean product interval.
pub fn archimedean_product_f64(sys: &DilateSystem, e: &EmbeddingData) -> (f64, f64) {
    let (lo, hi) = archimedean_product(sys, e);
    (lo.to_f64_dir(Dir::Down), hi.to_f64_dir(Dir::Up))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::NumberField;
    use crate::rat::{rat, rat_int};
    use num_traits::Signed;
    use rand::Rng;

    #[test]
    fn isolates_sqrt2() {
        let f = UPoly::from_int_coeffs(&[-2, 0, 1]);
        let e = certified_roots(&f, 1e-12).unwrap();
        assert_eq!(e.degree(), 2);
        assert!(e.real_mask.iter().all(|&b| b));
        let certs = e.certified_roots();
        let mut res: Vec<f64> = certs.iter().map(|c| c.re).collect();
        res.sort_by(f64::total_cmp);
        assert!((res[0] + 2f64.sqrt()).abs() < 1e-11);
        assert!((res[1] - 2f64.sqrt()).abs() < 1e-11);
        assert!(e.max_radius() <= 1e-12);
    }

    #[test]
    fn isolates_gaussian_pair() {
        let f = UPoly::from_int_coeffs(&[1, 0, 1]);
        let e = certified_roots(&f, 1e-10).unwrap();
        assert_eq!(e.real_mask, vec![false, false]);
        assert_eq!(e.pairing[0], 1);
        assert_eq!(e.pairing[1], 0);
    }

    #[test]
    fn linear_is_exact() {
        let f = UPoly::from_int_coeffs(&[-7, 1]);
        let e = certified_roots(&f, 1e-12).unwrap();
        let c = &e.certified_roots()[0];
        assert_eq!(c.re, 7.0);
        assert_eq!(c.radius, 0.0);
    }

    #[test]
    fn rejects_repeated_roots() {
        let f = UPoly::from_int_coeffs(&[1, 2, 1]);
        assert!(matches!(certified_roots(&f, 1e-6), Err(Error::RepeatedRoots)));
    }

    #[test]
    fn embed_theta_gives_roots() {
        let field = NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 1])).unwrap();
        let e = certified_roots(field.poly(), 1e-12).unwrap();
        let balls = embed(&field.theta(), &e);
        for (b, r) in balls.iter().zip(&e.roots) {
            let diff = b.c.sub(&r.c).abs_up(64).to_f64_dir(Dir::Up);
            assert!(diff <= b.r.to_f64_dir(Dir::Up) + r.r.to_f64_dir(Dir::Up) + 1e-12);
        }
    }

    #[test]
    fn embed_rational_exact() {
        let field = NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 1])).unwrap();
        let e = certified_roots(field.poly(), 1e-12).unwrap();
        let balls = embed(&field.rational(rat_int(4)), &e);
        for b in balls {
            assert_eq!(b.c.re.to_rat(), rat_int(4));
            assert!(b.r.is_zero());
        }
    }

    #[test]
    fn archimedean_sqrt2() {
        // (1 + sqrt2)^2 = 3 + 2 sqrt2 = 5.82842712474619...
        let field = NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 1])).unwrap();
        let sys = DilateSystem::new(field.clone(), vec![field.theta()]).unwrap();
        let e = certified_roots(field.poly(), 1e-13).unwrap();
        let (lo, hi) = archimedean_product_f64(&sys, &e);
        let exact = 3.0 + 2.0 * 2f64.sqrt();
        assert!(lo <= exact && exact <= hi);
        assert!(hi - lo < 1e-9);
    }

    #[test]
    fn archimedean_rational_d1() {
        let field = NumberField::rationals();
        let sys = DilateSystem::new(field.clone(), vec![field.rational(rat(3, 2))]).unwrap();
        let e = certified_roots(field.poly(), 1e-15).unwrap();
        let (lo, hi) = archimedean_product(&sys, &e);
        assert_eq!(lo.to_rat(), rat(5, 2));
        assert_eq!(hi.to_rat(), rat(5, 2));
    }

    #[test]
    fn vieta_sum_of_roots() {
        let mut rng = crate::seeded_rng(17);
        let mut done = 0;
        while done < 100 {
            let d = rng.gen_range(2..=6usize);
            let mut coeffs: Vec<i64> = (0..=d).map(|_| rng.gen_range(-8..=8)).collect();
            if coeffs[d] == 0 {
                coeffs[d] = 1;
            }
            let f = UPoly::from_int_coeffs(&coeffs);
            if f.degree() != Some(d) || !f.is_squarefree() {
                continue;
            }
            let Ok(e) = certified_roots(&f, 1e-9) else {
                continue;
            };
            let mut centre = CDyadic::zero();
            let mut rad = Dyadic::zero();
            for b in &e.roots {
                centre = centre.add(&b.c);
                rad = rad.add(&b.r);
            }
            // sum of roots = -a_{d-1}/a_d exactly
            let expect = -f.coeff(d - 1) / f.coeff(d);
            let diff_re = (centre.re.to_rat() - &expect).abs();
            let diff_im = centre.im.to_rat().abs();
            let rad_rat = rad.to_rat() + rat(1, 1_000_000_000);
            assert!(diff_re <= rad_rat, "vieta failed for {:?}", coeffs);
            assert!(diff_im <= rad_rat);
            done += 1;
        }
    }

    #[test]
    fn conjugate_symmetry_of_disks() {
        let f = UPoly::from_int_coeffs(&[3, -1, 0, 2, 1]);
        let e = certified_roots(&f, 1e-10).unwrap();
        for i in 0..e.degree() {
            let j = e.pairing[i];
            assert_eq!(e.pairing[j], i);
            let dist = e.roots[i]
                .c
                .conj()
                .sub(&e.roots[j].c)
                .abs_up(64)
                .to_f64_dir(Dir::Up);
            assert!(dist <= e.roots[i].r.to_f64_dir(Dir::Up) + e.roots[j].r.to_f64_dir(Dir::Up) + 1e-9);
        }
    }

    #[test]
    fn width_monotone_in_target_radius() {
        let field = NumberField::new(UPoly::from_int_coeffs(&[-2, 0, 0, 1])).unwrap(); // 2^(1/3)
        let sys = DilateSystem::new(field.clone(), vec![field.theta()]).unwrap();
        let e1 = certified_roots(field.poly(), 1e-6).unwrap();
        let e2 = certified_roots(field.poly(), 1e-14).unwrap();
        let (l1, h1) = archimedean_product_f64(&sys, &e1);
        let (l2, h2) = archimedean_product_f64(&sys, &e2);
        assert!(h2 - l2 <= h1 - l1);
        // cube-root case: (1 + 2^(1/3))^3 = 11.5418784563...; the f64
        // reference itself carries rounding error, hence the slack
        let reference = (1.0 + 2f64.powf(1.0 / 3.0)).powi(3);
        assert!(l2 <= reference + 1e-12 && reference - 1e-12 <= h2);
    }
}
