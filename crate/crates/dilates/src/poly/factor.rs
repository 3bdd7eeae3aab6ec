//! Irreducibility certification and factorization of integer polynomials.
//!
//! The primary route is a mod-p certificate: a primitive polynomial that stays
//! squarefree and irreducible modulo some prime (with no degree drop) is
//! irreducible over the rationals. Polynomials irreducible over Q but
//! reducible modulo every prime exist (x^4 + 1), so exact Zassenhaus
//! factorization is available as a fallback for degree <= 6.

use crate::poly::upoly::UPoly;
use crate::rat::big;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const ZASSENHAUS_MAX_DEG: usize = 6;

const CERT_PRIMES: &[u64] = &[
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
    97, 101, 103, 107, 109, 113,
];

// ---------- dense polynomials over Z/m (coefficients reduced into [0, m)) ----------

fn zp_norm(mut v: Vec<BigInt>, m: &BigInt) -> Vec<BigInt> {
    for c in v.iter_mut() {
        *c = c.mod_floor(m);
    }
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zp_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zp_norm(out, m)
}

fn zp_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero));
    }
    zp_norm(out, m)
}

fn inv_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// Remainder of a by b mod m; the leading coefficient of b must be invertible.
fn zp_rem(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut r = zp_norm(a.to_vec(), m);
    let db = b.len() - 1;
    let lci = inv_mod(b.last().unwrap(), m).expect("leading coefficient not invertible");
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = (r.last().unwrap() * &lci).mod_floor(m);
        if !c.is_zero() {
            for (j, bc) in b.iter().enumerate() {
                let t = (&c * bc).mod_floor(m);
                r[k + j] = (&r[k + j] - t).mod_floor(m);
            }
        }
        r.pop();
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

fn zp_divrem(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    let mut r = zp_norm(a.to_vec(), m);
    let db = b.len() - 1;
    let lci = inv_mod(b.last().unwrap(), m).expect("leading coefficient not invertible");
    let mut q = vec![BigInt::zero(); r.len().saturating_sub(db)];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = (r.last().unwrap() * &lci).mod_floor(m);
        q[k] = c.clone();
        for (j, bc) in b.iter().enumerate() {
            let t = (&c * bc).mod_floor(m);
            r[k + j] = (&r[k + j] - t).mod_floor(m);
        }
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
    }
    (zp_norm(q, m), r)
}

fn zp_gcd(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut x = zp_norm(a.to_vec(), p);
    let mut y = zp_norm(b.to_vec(), p);
    while !y.is_empty() {
        let r = zp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    if let Some(lc) = x.last().cloned() {
        let inv = inv_mod(&lc, p).unwrap();
        x = zp_norm(x.iter().map(|c| c * &inv).collect(), p);
    }
    x
}

fn zp_deriv(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    if a.len() <= 1 {
        return vec![];
    }
    zp_norm(
        a[1..]
            .iter()
            .enumerate()
            .map(|(i, c)| c * big(i as i64 + 1))
            .collect(),
        m,
    )
}

/// x^e mod f over Z/p via binary exponentiation.
fn zp_pow_x(e: &BigInt, f: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut base = zp_rem(&[BigInt::zero(), BigInt::one()], f, p);
    let mut acc = vec![BigInt::one()];
    let mut e = e.clone();
    while e.is_positive() {
        if e.is_odd() {
            acc = zp_rem(&zp_mul(&acc, &base, p), f, p);
        }
        base = zp_rem(&zp_mul(&base, &base, p), f, p);
        e >>= 1;
    }
    acc
}

fn zp_pow_poly(g: &[BigInt], e: &BigInt, f: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    let mut base = zp_rem(g, f, p);
    let mut acc = vec![BigInt::one()];
    let mut e = e.clone();
    while e.is_positive() {
        if e.is_odd() {
            acc = zp_rem(&zp_mul(&acc, &base, p), f, p);
        }
        base = zp_rem(&zp_mul(&base, &base, p), f, p);
        e >>= 1;
    }
    acc
}

/// Irreducibility of a squarefree polynomial of degree n over F_p:
/// x^(p^n) == x mod f and gcd(x^(p^(n/q)) - x, f) = 1 for primes q | n.
fn zp_irreducible(f: &[BigInt], p: &BigInt) -> bool {
    let n = f.len() - 1;
    if n == 1 {
        return true;
    }
    let x = vec![BigInt::zero(), BigInt::one()];
    let pn = p.pow(n as u32);
    let xpn = zp_pow_x(&pn, f, p);
    if zp_sub(&xpn, &x, p) != Vec::<BigInt>::new() {
        return false;
    }
    let mut primes_of_n = vec![];
    let mut nn = n;
    let mut q = 2;
    while q * q <= nn {
        if nn % q == 0 {
            primes_of_n.push(q);
            while nn % q == 0 {
                nn /= q;
            }
        }
        q += 1;
    }
    if nn > 1 {
        primes_of_n.push(nn);
    }
    for q in primes_of_n {
        let e = p.pow((n / q) as u32);
        let xe = zp_pow_x(&e, f, p);
        let g = zp_gcd(&zp_sub(&xe, &x, p), f, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

// ---------- Berlekamp factorization over F_p (monic squarefree input) ----------

fn berlekamp(f: &[BigInt], p: &BigInt) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Q[i][j] = coeff of x^i in x^(jp) mod f
    let mut q = vec![vec![BigInt::zero(); n]; n];
    for j in 0..n {
        let e = p * big(j as i64);
        let col = zp_pow_x(&e, f, p);
        for (i, c) in col.iter().enumerate() {
            q[i][j] = c.clone();
        }
    }
    for (i, row) in q.iter_mut().enumerate() {
        row[i] = (&row[i] - BigInt::one()).mod_floor(p);
    }
    // kernel of Q - I by Gaussian elimination on columns of unknowns
    let kernel = fp_kernel(&q, p);
    if kernel.len() <= 1 {
        return vec![f.to_vec()];
    }
    let target = kernel.len();
    let mut factors: Vec<Vec<BigInt>> = vec![f.to_vec()];
    for v in kernel.iter() {
        if factors.len() >= target {
            break;
        }
        let vpoly = zp_norm(v.clone(), p);
        if vpoly.len() <= 1 {
            continue;
        }
        let mut next = vec![];
        for g in factors.drain(..) {
            if g.len() - 1 <= 1 {
                next.push(g);
                continue;
            }
            let mut g_remaining = g.clone();
            let mut c = BigInt::zero();
            let mut pieces = vec![];
            while &c < p && g_remaining.len() > 1 {
                let shifted = zp_sub(&vpoly, &[c.clone()], p);
                let h = zp_gcd(&shifted, &g_remaining, p);
                if h.len() > 1 && h.len() < g_remaining.len() {
                    let (quot, _) = zp_divrem(&g_remaining, &h, p);
                    pieces.push(h);
                    g_remaining = quot;
                }
                c += BigInt::one();
            }
            pieces.push(g_remaining);
            next.extend(pieces);
        }
        factors = next;
    }
    // make monic
    factors
        .into_iter()
        .map(|g| {
            let inv = inv_mod(g.last().unwrap(), p).unwrap();
            zp_norm(g.iter().map(|c| c * &inv).collect(), p)
        })
        .collect()
}

fn fp_kernel(mat: &[Vec<BigInt>], p: &BigInt) -> Vec<Vec<BigInt>> {
    let n = mat.len();
    let mut a: Vec<Vec<BigInt>> = mat.to_vec();
    let mut pivot_col_of_row = vec![];
    let mut row = 0;
    for col in 0..n {
        let Some(r) = (row..n).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, r);
        let inv = inv_mod(&a[row][col], p).unwrap();
        for c in 0..n {
            a[row][c] = (&a[row][c] * &inv).mod_floor(p);
        }
        for r2 in 0..n {
            if r2 != row && !a[r2][col].is_zero() {
                let t = a[r2][col].clone();
                for c in 0..n {
                    let sub = (&t * &a[row][c]).mod_floor(p);
                    a[r2][c] = (&a[r2][c] - sub).mod_floor(p);
                }
            }
        }
        pivot_col_of_row.push(col);
        row += 1;
        if row == n {
            break;
        }
    }
    let pivots: std::collections::HashSet<usize> = pivot_col_of_row.iter().cloned().collect();
    let mut basis = vec![];
    for free in (0..n).filter(|c| !pivots.contains(c)) {
        let mut v = vec![BigInt::zero(); n];
        v[free] = BigInt::one();
        for (r, &pc) in pivot_col_of_row.iter().enumerate() {
            v[pc] = (-&a[r][free]).mod_floor(p);
        }
        basis.push(v);
    }
    basis
}

// ---------- Hensel lifting (monic factors) ----------

/// Lift f == g*h (mod p) to mod p^e, all monic, via iterated linear steps.
fn hensel_pair(f: &[BigInt], g0: &[BigInt], h0: &[BigInt], p: &BigInt, e: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    // Bezout: s*g + t*h == 1 mod p
    let (s, t) = bezout_mod_p(g0, h0, p);
    let mut g = g0.to_vec();
    let mut h = h0.to_vec();
    let mut modulus = p.clone();
    for _ in 1..e {
        let next = &modulus * p;
        // c = (f - g*h)/modulus mod p
        let prod = int_poly_mul(&g, &h);
        let diff = int_poly_sub(f, &prod);
        let c: Vec<BigInt> = diff.iter().map(|x| (x / &modulus).mod_floor(p)).collect();
        let c = zp_norm(c, p);
        // u = t*c mod g ; v = (c - u*h)/g  over F_p
        let u = zp_rem(&zp_mul(&t, &c, p), &g, p);
        let uh = zp_mul(&u, &h, p);
        let (v, rem) = zp_divrem(&zp_sub(&c, &uh, p), &g, p);
        debug_assert!(rem.is_empty());
        let _ = &s;
        g = int_poly_add_scaled(&g, &u, &modulus);
        h = int_poly_add_scaled(&h, &v, &modulus);
        modulus = next;
    }
    (g, h)
}

fn bezout_mod_p(g: &[BigInt], h: &[BigInt], p: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    // extended euclid over F_p[x]
    let (mut r0, mut r1) = (zp_norm(g.to_vec(), p), zp_norm(h.to_vec(), p));
    let (mut s0, mut s1) = (vec![BigInt::one()], vec![]);
    let (mut t0, mut t1) = (vec![], vec![BigInt::one()]);
    while !r1.is_empty() {
        let (q, r) = zp_divrem(&r0, &r1, p);
        let s = zp_sub(&s0, &zp_mul(&q, &s1, p), p);
        let t = zp_sub(&t0, &zp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
        t0 = t1;
        t1 = t;
    }
    assert_eq!(r0.len(), 1, "factors not coprime mod p");
    let inv = inv_mod(&r0[0], p).unwrap();
    let s = zp_norm(s0.iter().map(|c| c * &inv).collect(), p);
    let t = zp_norm(t0.iter().map(|c| c * &inv).collect(), p);
    (s, t)
}

fn int_poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn int_poly_sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect()
}

fn int_poly_add_scaled(a: &[BigInt], u: &[BigInt], scale: &BigInt) -> Vec<BigInt> {
    let n = a.len().max(u.len());
    let zero = BigInt::zero();
    (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) + u.get(i).unwrap_or(&zero) * scale)
        .collect()
}

/// Multifactor Hensel lifting by splitting the factor list in half.
fn hensel_tree(f: &[BigInt], factors: &[Vec<BigInt>], p: &BigInt, e: u32) -> Vec<Vec<BigInt>> {
    if factors.len() == 1 {
        return vec![f.to_vec()];
    }
    let mid = factors.len() / 2;
    let mut g0 = vec![BigInt::one()];
    for fac in &factors[..mid] {
        g0 = zp_rem_free_mul(&g0, fac, p);
    }
    let mut h0 = vec![BigInt::one()];
    for fac in &factors[mid..] {
        h0 = zp_rem_free_mul(&h0, fac, p);
    }
    let (g, h) = hensel_pair(f, &g0, &h0, p, e);
    let mut out = hensel_tree(&g, &factors[..mid], p, e);
    out.extend(hensel_tree(&h, &factors[mid..], p, e));
    out
}

fn zp_rem_free_mul(a: &[BigInt], b: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    zp_norm(int_poly_mul(a, b), p)
}

// ---------- Zassenhaus over Z (monic) ----------

fn symmetric_rep(v: &BigInt, m: &BigInt) -> BigInt {
    let r = v.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

/// Exact division of integer polynomials when the divisor is monic.
fn int_poly_div_monic(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let mut r: Vec<BigInt> = a.to_vec();
    while r.last().map_or(false, |c| c.is_zero()) {
        r.pop();
    }
    let db = b.len() - 1;
    if r.is_empty() {
        return Some(vec![]);
    }
    if r.len() - 1 < db {
        return None;
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db {
        let k = r.len() - 1 - db;
        let c = r.last().unwrap().clone();
        q[k] = c.clone();
        for (j, bc) in b.iter().enumerate() {
            r[k + j] -= &c * bc;
        }
        while r.last().map_or(false, |c| c.is_zero()) {
            r.pop();
        }
    }
    if r.is_empty() {
        Some(q)
    } else {
        None
    }
}

/// Factor a monic squarefree integer polynomial into monic irreducibles.
fn zassenhaus_monic(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // find a prime keeping f squarefree
    let p = CERT_PRIMES
        .iter()
        .map(|&p| big(p as i64))
        .find(|p| {
            let fp = zp_norm(f.to_vec(), p);
            if fp.len() != f.len() {
                return false;
            }
            let g = zp_gcd(&fp, &zp_deriv(&fp, p), p);
            g.len() == 1
        })
        .expect("no good prime for factorization");
    let fp = zp_norm(f.to_vec(), &p);
    let modular = berlekamp(&fp, &p);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    // coefficient bound: 2^n * ||f||_2, lift modulus beyond twice that
    let norm2: BigInt = f.iter().map(|c| c * c).sum::<BigInt>().sqrt() + 1;
    let bound: BigInt = (BigInt::one() << n) * norm2;
    let mut e = 1u32;
    let mut m = p.clone();
    while m <= &bound * 2 {
        m *= &p;
        e += 1;
    }
    let lifted = hensel_tree(f, &modular, &p, e);
    let modulus = m;

    // subset recombination
    let mut remaining: Vec<Vec<BigInt>> = lifted;
    let mut f_cur: Vec<BigInt> = f.to_vec();
    let mut out = vec![];
    let mut size = 1usize;
    'outer: while 2 * size <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&idxs, size) {
            let mut cand = vec![BigInt::one()];
            for &i in &combo {
                cand = int_poly_mul(&cand, &remaining[i]);
                for c in cand.iter_mut() {
                    *c = c.mod_floor(&modulus);
                }
            }
            let cand: Vec<BigInt> = cand.iter().map(|c| symmetric_rep(c, &modulus)).collect();
            if let Some(quot) = int_poly_div_monic(&f_cur, &cand) {
                out.push(cand);
                f_cur = quot;
                let keep: Vec<Vec<BigInt>> = remaining
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !combo.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                remaining = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if f_cur.len() > 1 {
        out.push(f_cur);
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![];
    let mut combo: Vec<usize> = (0..k).collect();
    if k > items.len() {
        return out;
    }
    loop {
        out.push(combo.iter().map(|&i| items[i]).collect());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if combo[i] != i + items.len() - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        combo[i] += 1;
        for j in i + 1..k {
            combo[j] = combo[j - 1] + 1;
        }
    }
}

// ---------- public interface over UPoly ----------

/// Irreducible factors of the squarefree part, primitive with positive lc.
/// Returns None when the degree exceeds the Zassenhaus fallback and no
/// factorization is attempted.
pub fn factor_squarefree_part(f: &UPoly) -> Option<Vec<UPoly>> {
    let d = f.degree()?;
    if d == 0 {
        return Some(vec![]);
    }
    let sqf = f.div_exact(&f.gcd(&f.derivative()));
    let ints = sqf.primitive_integer();
    let n = ints.len() - 1;
    if n > ZASSENHAUS_MAX_DEG {
        return None;
    }
    if n == 1 {
        return Some(vec![UPoly::from_big_coeffs(ints)]);
    }
    // monic reduction: fhat(y) = lc^(n-1) f(y/lc)
    let lc = ints.last().unwrap().clone();
    let mut monic = vec![BigInt::zero(); n + 1];
    for (i, c) in ints.iter().enumerate() {
        // coefficient of y^i is c * lc^(n-1-i)
        monic[i] = c * lc.pow((n - 1 - i.min(n - 1)) as u32);
    }
    monic[n] = BigInt::one();
    let factors = zassenhaus_monic(&monic);
    // map back: g(y) -> primitive part of g(lc * x)
    let out: Vec<UPoly> = factors
        .into_iter()
        .map(|g| {
            let dg = g.len() - 1;
            let coeffs: Vec<BigInt> = g
                .iter()
                .enumerate()
                .map(|(i, c)| c * lc.pow(i as u32))
                .collect();
            let _ = dg;
            let u = UPoly::from_big_coeffs(coeffs);
            UPoly::from_big_coeffs(u.primitive_integer())
        })
        .collect();
    Some(out)
}

/// Decide irreducibility over Q. None means inconclusive (degree above the
/// Zassenhaus fallback with no mod-p certificate found).
pub fn is_irreducible_rational(f: &UPoly) -> Option<bool> {
    let d = f.degree()?;
    if d == 0 {
        return Some(false);
    }
    if d == 1 {
        return Some(true);
    }
    if !f.is_squarefree() {
        return Some(false);
    }
    let ints = f.primitive_integer();
    for &pr in CERT_PRIMES {
        let p = big(pr as i64);
        let fp = zp_norm(ints.clone(), &p);
        if fp.len() != ints.len() {
            continue; // degree drop
        }
        let g = zp_gcd(&fp, &zp_deriv(&fp, &p), &p);
        if g.len() != 1 {
            continue; // not squarefree mod p
        }
        if zp_irreducible(&fp, &p) {
            return Some(true);
        }
        // reducible mod a good prime is not a certificate over Q; keep looking
        if d <= ZASSENHAUS_MAX_DEG {
            break;
        }
    }
    if d <= ZASSENHAUS_MAX_DEG {
        let factors = factor_squarefree_part(f)?;
        return Some(factors.len() == 1);
    }
    None
}

/// Compute x^q mod f over F_p (used by tests).
#[allow(dead_code)]
pub(crate) fn pow_x_mod(e: u64, f: &[BigInt], p: u64) -> Vec<BigInt> {
    zp_pow_x(&big(e as i64), f, &big(p as i64))
}

#[allow(dead_code)]
pub(crate) fn zp_pow_poly_pub(g: &[BigInt], e: &BigInt, f: &[BigInt], p: &BigInt) -> Vec<BigInt> {
    zp_pow_poly(g, e, f, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> UPoly {
        UPoly::from_int_coeffs(coeffs)
    }

    #[test]
    fn certifies_x2_minus_2() {
        assert_eq!(is_irreducible_rational(&p(&[-2, 0, 1])), Some(true));
    }

    #[test]
    fn x4_plus_1_needs_zassenhaus() {
        // irreducible over Q but reducible mod every prime
        assert_eq!(is_irreducible_rational(&p(&[1, 0, 0, 0, 1])), Some(true));
    }

    #[test]
    fn factors_product_of_linears() {
        let f = p(&[-2, 1]).mul(&p(&[-3, 1])); // (x-2)(x-3)
        let fac = factor_squarefree_part(&f).unwrap();
        assert_eq!(fac.len(), 2);
        assert_eq!(is_irreducible_rational(&f), Some(false));
    }

    #[test]
    fn factors_mixed_quartic() {
        // (x^2 - 2)(x^2 + 1)
        let f = p(&[-2, 0, 1]).mul(&p(&[1, 0, 1]));
        let fac = factor_squarefree_part(&f).unwrap();
        assert_eq!(fac.len(), 2);
        let mut degs: Vec<usize> = fac.iter().map(|g| g.deg()).collect();
        degs.sort();
        assert_eq!(degs, vec![2, 2]);
    }

    #[test]
    fn nonmonic_factorization() {
        // (2x - 1)(3x + 5)
        let f = p(&[-1, 2]).mul(&p(&[5, 3]));
        let fac = factor_squarefree_part(&f).unwrap();
        assert_eq!(fac.len(), 2);
        let prod = fac[0].mul(&fac[1]);
        let fp = UPoly::from_big_coeffs(f.primitive_integer());
        let pp = UPoly::from_big_coeffs(prod.primitive_integer());
        assert_eq!(fp, pp);
    }

    #[test]
    fn square_detected_reducible() {
        let f = p(&[1, 2, 1]); // (x+1)^2
        assert_eq!(is_irreducible_rational(&f), Some(false));
    }
}
