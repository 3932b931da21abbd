//! Finite field arithmetic and p-adic lifting, used to find the roots of a
//! polynomial that lie in Z[ζₙ].
//!
//! The idea: reduce modulo a prime p of maximal order in (Z/n)^×, so Φₙ
//! splits into as few factors as possible, find roots in every residue field
//! F_{p^m} by equal-degree splitting, glue them with CRT, lift by Newton
//! iteration in (Z/p^k)[x]/Φₙ and verify every candidate exactly.

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub(crate) trait Field {
    type E: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn from_u64(&self, k: u64) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn add(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    /// Panics on zero.
    fn inv(&self, a: &Self::E) -> Self::E;
    fn random(&self, rng: &mut ChaCha8Rng) -> Self::E;
    fn size(&self) -> BigUint;
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Fp {
    pub p: u64,
}

pub(crate) fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

impl Fp {
    /// Residue of an integer.
    pub fn reduce(&self, x: &BigInt) -> u64 {
        let r = x.mod_floor(&BigInt::from(self.p));
        r.to_u64().unwrap()
    }
}

impl Field for Fp {
    type E = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_u64(&self, k: u64) -> u64 {
        k % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero in F_p");
        pow_mod(*a, self.p - 2, self.p)
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> u64 {
        rng.random_range(0..self.p)
    }
    fn size(&self) -> BigUint {
        BigUint::from(self.p)
    }
}

/// F_p[x]/(f) for an irreducible monic f.
#[derive(Clone, Debug)]
pub(crate) struct Fq {
    pub fp: Fp,
    pub modulus: Vec<u64>,
}

impl Fq {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn reduce(&self, a: &[u64]) -> Vec<u64> {
        prem(&self.fp, a, &self.modulus)
    }
}

impl Field for Fq {
    type E = Vec<u64>;
    fn zero(&self) -> Vec<u64> {
        Vec::new()
    }
    fn one(&self) -> Vec<u64> {
        vec![1]
    }
    fn from_u64(&self, k: u64) -> Vec<u64> {
        let mut v = vec![k % self.fp.p];
        ptrim(&self.fp, &mut v);
        v
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.is_empty()
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        padd(&self.fp, a, b)
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        psub(&self.fp, a, b)
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        prem(&self.fp, &pmul(&self.fp, a, b), &self.modulus)
    }
    fn inv(&self, a: &Vec<u64>) -> Vec<u64> {
        pinv_mod(&self.fp, a, &self.modulus).expect("inverse of zero in F_q")
    }
    fn random(&self, rng: &mut ChaCha8Rng) -> Vec<u64> {
        let mut v: Vec<u64> = (0..self.degree()).map(|_| self.fp.random(rng)).collect();
        ptrim(&self.fp, &mut v);
        v
    }
    fn size(&self) -> BigUint {
        BigUint::from(self.fp.p).pow(self.degree() as u32)
    }
}

// Dense polynomials over a field, ascending coefficients, trimmed.

pub(crate) fn ptrim<F: Field>(f: &F, a: &mut Vec<F::E>) {
    while a.last().is_some_and(|c| f.is_zero(c)) {
        a.pop();
    }
}

pub(crate) fn padd<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let mut out: Vec<F::E> = (0..n)
        .map(|i| f.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    ptrim(f, &mut out);
    out
}

pub(crate) fn psub<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let n = a.len().max(b.len());
    let z = f.zero();
    let mut out: Vec<F::E> = (0..n)
        .map(|i| f.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    ptrim(f, &mut out);
    out
}

pub(crate) fn pmul<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = f.add(&out[i + j], &f.mul(x, y));
        }
    }
    ptrim(f, &mut out);
    out
}

pub(crate) fn pdivrem<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> (Vec<F::E>, Vec<F::E>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut r = a.to_vec();
    ptrim(f, &mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = f.inv(&b[db]);
    let mut q = vec![f.zero(); r.len() - db];
    while r.len() >= b.len() {
        let k = r.len() - 1 - db;
        let c = f.mul(r.last().unwrap(), &lead_inv);
        for (i, bi) in b.iter().enumerate() {
            r[k + i] = f.sub(&r[k + i], &f.mul(&c, bi));
        }
        q[k] = c;
        r.pop();
        ptrim(f, &mut r);
    }
    ptrim(f, &mut q);
    (q, r)
}

pub(crate) fn prem<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    pdivrem(f, a, b).1
}

pub(crate) fn pmonic<F: Field>(f: &F, a: &[F::E]) -> Vec<F::E> {
    match a.last() {
        None => Vec::new(),
        Some(l) => {
            let li = f.inv(l);
            a.iter().map(|c| f.mul(c, &li)).collect()
        }
    }
}

pub(crate) fn pgcd<F: Field>(f: &F, a: &[F::E], b: &[F::E]) -> Vec<F::E> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    ptrim(f, &mut x);
    ptrim(f, &mut y);
    while !y.is_empty() {
        let r = prem(f, &x, &y);
        x = std::mem::replace(&mut y, r);
    }
    pmonic(f, &x)
}

pub(crate) fn pderiv<F: Field>(f: &F, a: &[F::E]) -> Vec<F::E> {
    let mut out: Vec<F::E> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| f.mul(&f.from_u64(i as u64), c))
        .collect();
    ptrim(f, &mut out);
    out
}

/// Inverse of `a` modulo `m`, if coprime.
pub(crate) fn pinv_mod<F: Field>(f: &F, a: &[F::E], m: &[F::E]) -> Option<Vec<F::E>> {
    let mut r0 = m.to_vec();
    let mut r1 = prem(f, a, m);
    let mut s0: Vec<F::E> = Vec::new();
    let mut s1: Vec<F::E> = vec![f.one()];
    while !r1.is_empty() {
        let (q, r) = pdivrem(f, &r0, &r1);
        let s2 = psub(f, &s0, &pmul(f, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = f.inv(&r0[0]);
    Some(s0.iter().map(|x| f.mul(x, &c)).collect())
}

pub(crate) fn ppowmod<F: Field>(f: &F, base: &[F::E], exp: &BigUint, m: &[F::E]) -> Vec<F::E> {
    let mut acc = prem(f, &[f.one()], m);
    let b = prem(f, base, m);
    for i in (0..exp.bits()).rev() {
        acc = prem(f, &pmul(f, &acc, &acc), m);
        if exp.bit(i) {
            acc = prem(f, &pmul(f, &acc, &b), m);
        }
    }
    acc
}

/// Splits a monic squarefree `g` whose irreducible factors all have degree
/// `k` (Cantor–Zassenhaus, odd characteristic).
pub(crate) fn equal_degree_split<F: Field>(
    f: &F,
    g: &[F::E],
    k: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<Vec<F::E>> {
    let deg = g.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    if deg == k {
        return vec![g.to_vec()];
    }
    let e = (f.size().pow(k as u32) - 1u32) / 2u32;
    loop {
        let mut a: Vec<F::E> = (0..deg).map(|_| f.random(rng)).collect();
        ptrim(f, &mut a);
        if a.len() < 2 {
            continue;
        }
        let b = psub(f, &ppowmod(f, &a, &e, g), &[f.one()]);
        let d = pgcd(f, g, &b);
        let dd = d.len().saturating_sub(1);
        if dd > 0 && dd < deg {
            let (q, _) = pdivrem(f, g, &d);
            let mut out = equal_degree_split(f, &d, k, rng);
            out.extend(equal_degree_split(f, &pmonic(f, &q), k, rng));
            return out;
        }
    }
}

/// Distinct roots of a monic polynomial in the field itself.
pub(crate) fn roots<F: Field>(f: &F, h: &[F::E], rng: &mut ChaCha8Rng) -> Vec<F::E> {
    let x = vec![f.zero(), f.one()];
    let xq = ppowmod(f, &x, &f.size(), h);
    let r = pgcd(f, h, &psub(f, &xq, &x));
    equal_degree_split(f, &r, 1, rng)
        .into_iter()
        .map(|lin| f.sub(&f.zero(), &lin[0]))
        .collect()
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn multiplicative_order(a: u64, n: u64) -> u64 {
    if n <= 2 {
        return 1;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = x * a % n;
        k += 1;
    }
    k
}

/// Exponent of the group (Z/n)^×.
pub(crate) fn carmichael(n: u64) -> u64 {
    let mut n = n;
    let mut lam = 1u64;
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            let mut k = 0;
            let mut pk = 1;
            while n.is_multiple_of(p) {
                n /= p;
                k += 1;
                pk *= p;
            }
            let l = if p == 2 && k >= 3 {
                pk / 4
            } else {
                pk / p * (p - 1)
            };
            lam = lam.lcm(&l);
        }
        p += 1;
    }
    lam
}

// Arithmetic in Z[x]/(Φ), optionally modulo an integer.

fn zreduce(a: &mut Vec<BigInt>, phi: &[i64], modulus: Option<&BigInt>) {
    let deg = phi.len() - 1;
    for k in (deg..a.len()).rev() {
        if a[k].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut a[k]);
        for (i, &m) in phi.iter().take(deg).enumerate() {
            if m != 0 {
                a[k - deg + i] -= &c * m;
            }
        }
    }
    a.resize(deg, BigInt::zero());
    if let Some(m) = modulus {
        for c in a.iter_mut() {
            *c = c.mod_floor(m);
        }
    }
}

fn zmul(a: &[BigInt], b: &[BigInt], phi: &[i64], modulus: Option<&BigInt>) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    zreduce(&mut out, phi, modulus);
    out
}

fn zadd(a: &[BigInt], b: &[BigInt], modulus: Option<&BigInt>) -> Vec<BigInt> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let s = x + y;
            match modulus {
                Some(m) => s.mod_floor(m),
                None => s,
            }
        })
        .collect()
}

fn zeval(h: &[Vec<BigInt>], y: &[BigInt], phi: &[i64], modulus: Option<&BigInt>) -> Vec<BigInt> {
    let mut acc = h.last().unwrap().clone();
    for c in h.iter().rev().skip(1) {
        acc = zmul(&acc, y, phi, modulus);
        acc = zadd(&acc, c, modulus);
    }
    acc
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half: BigInt = m >> 1;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

/// Upper bound for the absolute value of the power-basis coordinates of any
/// root of the monic integral `h`. `None` when the floating point estimate
/// overflows.
fn coordinate_bound(n: u32, h: &[Vec<BigInt>]) -> Option<f64> {
    let phi = h[0].len();
    let embeddings: Vec<Complex64> = (0..n.max(1))
        .filter(|j| j.gcd(&n) == 1)
        .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / n as f64))
        .collect();
    let d = h.len() - 1;
    let mut cmax = 0.0f64;
    for coeff in &h[..d] {
        let fl: Vec<f64> = coeff.iter().map(|c| c.to_f64().unwrap_or(f64::INFINITY)).collect();
        for z in &embeddings {
            let mut s = Complex64::new(0.0, 0.0);
            let mut zp = Complex64::new(1.0, 0.0);
            for c in &fl {
                s += zp * c;
                zp *= z;
            }
            cmax = cmax.max(s.norm());
        }
    }
    let cauchy = 1.0 + cmax;
    let norm = vandermonde_inverse_norm(&embeddings[..phi])?;
    let b = 2.0 * norm * cauchy + 1.0;
    b.is_finite().then_some(b)
}

/// Row-sum norm of the inverse of the Vandermonde matrix on `nodes`.
fn vandermonde_inverse_norm(nodes: &[Complex64]) -> Option<f64> {
    let k = nodes.len();
    let mut a: Vec<Vec<Complex64>> = nodes
        .iter()
        .enumerate()
        .map(|(j, z)| {
            let mut row: Vec<Complex64> = (0..k).map(|i| z.powu(i as u32)).collect();
            row.extend((0..k).map(|i| Complex64::new(if i == j { 1.0 } else { 0.0 }, 0.0)));
            row
        })
        .collect();
    for col in 0..k {
        let piv = (col..k).max_by(|&r, &s| a[r][col].norm().total_cmp(&a[s][col].norm()))?;
        if a[piv][col].norm() < 1e-12 {
            return None;
        }
        a.swap(col, piv);
        let inv = a[col][col].inv();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..k {
            if r != col {
                let factor = a[r][col];
                if factor.norm() != 0.0 {
                    for c in 0..2 * k {
                        let v = a[col][c];
                        a[r][c] -= factor * v;
                    }
                }
            }
        }
    }
    // the inverse now sits in the right block; rows are coordinate indices
    let norm = (0..k)
        .map(|i| (0..k).map(|j| a[i][k + j].norm()).sum::<f64>())
        .fold(0.0, f64::max);
    Some(norm)
}

const START_PRIME: u64 = 32771;
const MAX_PRIMES: usize = 30;
const MAX_COMBINATIONS: usize = 4096;
const MAX_LIFT_BITS: u64 = 1 << 16;

enum Lift {
    Root(Vec<BigInt>),
    NotRoot,
    Undecided,
}

/// Roots in Z[ζₙ] of a monic, squarefree `h` with coefficients in Z[ζₙ]
/// (power-basis coordinate vectors, ascending degree).
///
/// Returns the verified roots and whether the search was exhaustive. Every
/// returned root satisfies `h(r) = 0` exactly.
pub(crate) fn integral_roots(n: u32, phi_poly: &[i64], h: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, bool) {
    let d = h.len() - 1;
    let phi = phi_poly.len() - 1;
    assert!(d >= 1 && h.iter().all(|c| c.len() == phi));
    let lambda = carmichael(n as u64) as usize;
    let bound = coordinate_bound(n, h)
        .and_then(|b| BigInt::from_f64(b.ceil()))
        .map(|b| b * 2 + 2);
    let mut rng = ChaCha8Rng::seed_from_u64(0x00f2_1801);
    let mut p = START_PRIME;
    let mut tried = 0;
    'primes: loop {
        p += 2;
        if !is_prime(p) || (n as u64).is_multiple_of(p) {
            continue;
        }
        if multiplicative_order(p % n as u64, n as u64) as usize != lambda {
            continue;
        }
        tried += 1;
        if tried > MAX_PRIMES {
            return (Vec::new(), false);
        }
        let fp = Fp { p };
        let mut phibar: Vec<u64> = phi_poly.iter().map(|&c| fp.reduce(&BigInt::from(c))).collect();
        ptrim(&fp, &mut phibar);
        let comps = equal_degree_split(&fp, &phibar, lambda, &mut rng);
        let mut fields = Vec::new();
        let mut comp_roots = Vec::new();
        for comp in &comps {
            let fq = Fq {
                fp,
                modulus: comp.clone(),
            };
            let mut hbar: Vec<Vec<u64>> = h
                .iter()
                .map(|c| fq.reduce(&c.iter().map(|x| fp.reduce(x)).collect::<Vec<_>>()))
                .collect();
            ptrim(&fq, &mut hbar);
            if hbar.len() != d + 1 {
                continue 'primes;
            }
            let g = pgcd(&fq, &hbar, &pderiv(&fq, &hbar));
            if g.len() != 1 {
                continue 'primes;
            }
            let rs = roots(&fq, &hbar, &mut rng);
            let dh = pderiv(&fq, &hbar);
            let with_inv: Vec<(Vec<u64>, Vec<u64>)> = rs
                .into_iter()
                .map(|r| {
                    let v = peval(&fq, &dh, &r);
                    let vi = fq.inv(&v);
                    (r, vi)
                })
                .collect();
            comp_roots.push(with_inv);
            fields.push(fq);
        }
        let total: usize = comp_roots.iter().map(|r| r.len()).product();
        if total == 0 {
            return (Vec::new(), true);
        }
        if total > MAX_COMBINATIONS {
            return (Vec::new(), false);
        }
        let idem = idempotents(&fp, &phibar, &fields);
        let pb = BigInt::from(p);
        let mut found = Vec::new();
        let mut decided = true;
        let mut index = vec![0usize; comp_roots.len()];
        loop {
            let mut rho: Vec<u64> = Vec::new();
            let mut winv: Vec<u64> = Vec::new();
            for (j, &ix) in index.iter().enumerate() {
                let (r, ri) = &comp_roots[j][ix];
                rho = padd(&fp, &rho, &pmul(&fp, r, &idem[j]));
                winv = padd(&fp, &winv, &pmul(&fp, ri, &idem[j]));
            }
            let rho = prem(&fp, &rho, &phibar);
            let winv = prem(&fp, &winv, &phibar);
            let to_big = |v: &[u64]| {
                let mut out: Vec<BigInt> = v.iter().map(|&c| BigInt::from(c)).collect();
                out.resize(phi, BigInt::zero());
                out
            };
            match lift(h, phi_poly, to_big(&rho), to_big(&winv), &pb, bound.as_ref()) {
                Lift::Root(r) => found.push(r),
                Lift::NotRoot => {}
                Lift::Undecided => decided = false,
            }
            // next combination
            let mut j = 0;
            loop {
                if j == index.len() {
                    found.sort();
                    found.dedup();
                    return (found, decided);
                }
                index[j] += 1;
                if index[j] < comp_roots[j].len() {
                    break;
                }
                index[j] = 0;
                j += 1;
            }
        }
    }
}

fn peval<F: Field>(f: &F, a: &[F::E], x: &F::E) -> F::E {
    let mut acc = f.zero();
    for c in a.iter().rev() {
        acc = f.add(&f.mul(&acc, x), c);
    }
    acc
}

/// CRT idempotents e_j of F_p[x]/(Φ) for the factorization into `fields`.
fn idempotents(fp: &Fp, phibar: &[u64], fields: &[Fq]) -> Vec<Vec<u64>> {
    fields
        .iter()
        .map(|fq| {
            let (cof, _) = pdivrem(fp, phibar, &fq.modulus);
            let inv = fq.inv(&fq.reduce(&cof));
            pmul(fp, &cof, &inv)
        })
        .collect()
}

fn lift(
    h: &[Vec<BigInt>],
    phi: &[i64],
    mut y: Vec<BigInt>,
    mut w: Vec<BigInt>,
    p: &BigInt,
    bound: Option<&BigInt>,
) -> Lift {
    let dh: Vec<Vec<BigInt>> = h
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.iter().map(|x| x * i).collect())
        .collect();
    let mut m = p.clone();
    loop {
        let cand = symmetric(&y, &m);
        if zeval(h, &cand, phi, None).iter().all(|c| c.is_zero()) {
            return Lift::Root(cand);
        }
        if let Some(b) = bound {
            if &m > b {
                return Lift::NotRoot;
            }
        }
        if m.bits() > MAX_LIFT_BITS {
            return Lift::Undecided;
        }
        let m2 = &m * &m;
        let hy = zeval(h, &y, phi, Some(&m2));
        let corr = zmul(&hy, &w, phi, Some(&m2));
        y = y
            .iter()
            .zip(&corr)
            .map(|(a, b)| (a - b).mod_floor(&m2))
            .collect();
        let dy = zeval(&dh, &y, phi, Some(&m2));
        let t = zmul(&dy, &w, phi, Some(&m2));
        let mut two_minus: Vec<BigInt> = t.iter().map(|c| (-c).mod_floor(&m2)).collect();
        two_minus[0] = (&two_minus[0] + 2u32).mod_floor(&m2);
        w = zmul(&w, &two_minus, phi, Some(&m2));
        m = m2;
    }
}
