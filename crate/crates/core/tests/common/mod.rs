//! Shared test support. `Fp` does arithmetic modulo a prime p ≡ 1 (mod n),
//! with ζₙ sent to a fixed primitive n-th root of unity, and serves as an
//! independent oracle: reductions of exact results must agree with
//! brute-force computations over F_p. `props` holds the property suites.
#![allow(dead_code)]

pub mod props;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use f218::poly::MPoly;
use f218::CycNum;

#[derive(Clone, Copy, Debug)]
pub struct Fp {
    pub p: u64,
    pub n: u32,
    pub zeta: u64,
}

impl Fp {
    pub fn new(p: u64, n: u32) -> Self {
        assert_eq!((p - 1) % n as u64, 0, "p must be 1 mod n");
        let n64 = n as u64;
        let zeta = (2..p)
            .map(|g| pow_mod(g, (p - 1) / n64, p))
            .find(|&z| (1..n64).all(|k| !n64.is_multiple_of(k) || pow_mod(z, k, p) != 1))
            .unwrap_or(1);
        Fp { p, n, zeta }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p));
        pow_mod(a, self.p - 2, self.p)
    }

    fn int(&self, z: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((z % &p) + &p) % &p;
        r.to_u64().unwrap()
    }

    /// Image of an element of Q(ζₙ); panics if a denominator is divisible by p.
    pub fn cyc(&self, c: &CycNum) -> u64 {
        assert_eq!(c.order(), self.n);
        let mut acc = 0;
        for (k, r) in c.coords().iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let v = self.mul(self.int(r.numer()), self.inv(self.int(r.denom())));
            acc = self.add(acc, self.mul(v, self.pow(self.zeta, k as u64)));
        }
        acc
    }

    /// f(x, y, z) for a polynomial in x, y, z only.
    pub fn eval(&self, f: &MPoly, x: [u64; 3]) -> u64 {
        let mut acc = 0;
        for (m, c) in f.terms() {
            let e = m.exps();
            assert!(e[0] == 0 && e[1] == 0);
            let mut t = self.cyc(c);
            for i in 0..3 {
                t = self.mul(t, self.pow(x[i], e[i + 2] as u64));
            }
            acc = self.add(acc, t);
        }
        acc
    }

    /// P²(F_p), first nonzero coordinate 1.
    pub fn plane_points(&self) -> Vec<[u64; 3]> {
        let p = self.p;
        let mut out = Vec::new();
        for a in 0..p {
            for b in 0..p {
                out.push([1, a, b]);
            }
        }
        for b in 0..p {
            out.push([0, 1, b]);
        }
        out.push([0, 0, 1]);
        out
    }

    pub fn normalize(&self, v: [u64; 3]) -> [u64; 3] {
        let i = v.iter().position(|&c| c % self.p != 0).expect("zero vector");
        let inv = self.inv(v[i]);
        v.map(|c| self.mul(c % self.p, inv))
    }

    pub fn point(&self, v: &[CycNum]) -> [u64; 3] {
        self.normalize([self.cyc(&v[0]), self.cyc(&v[1]), self.cyc(&v[2])])
    }

    /// Common zeros over P²(F_p).
    pub fn zeros(&self, fs: &[MPoly]) -> Vec<[u64; 3]> {
        self.plane_points()
            .into_iter()
            .filter(|&x| fs.iter().all(|f| self.eval(f, x) == 0))
            .collect()
    }

    /// Rank of a matrix over F_p.
    pub fn rank(&self, mut rows: Vec<Vec<u64>>) -> usize {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
                continue;
            };
            rows.swap(rank, piv);
            let inv = self.inv(rows[rank][c]);
            for v in rows[rank].iter_mut() {
                *v = self.mul(*v, inv);
            }
            for r in 0..rows.len() {
                if r != rank && rows[r][c] != 0 {
                    let f = rows[r][c];
                    for k in 0..cols {
                        let d = self.mul(f, rows[rank][k]);
                        rows[r][k] = self.sub(rows[r][k], d);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Whether the forms span every monomial of degree `d` (Macaulay matrix
    /// of full rank). For forms of degree at most e in three variables this
    /// holds at d = 3e − 2 exactly when the common zero locus over the
    /// algebraic closure is empty.
    pub fn macaulay_full(&self, fs: &[MPoly], d: u32) -> bool {
        let mons = monomials(d);
        let mut rows = Vec::new();
        for f in fs {
            let Some(df) = f.homogeneous_degree() else { continue };
            if df > d {
                continue;
            }
            for m in monomials(d - df) {
                let mut row = vec![0; mons.len()];
                for (fm, c) in f.terms() {
                    let e = fm.exps();
                    let target = [e[2] + m[0], e[3] + m[1], e[4] + m[2]];
                    let k = mons.iter().position(|x| *x == target).unwrap();
                    row[k] = self.add(row[k], self.cyc(c));
                }
                rows.push(row);
            }
        }
        !rows.is_empty() && self.rank(rows) == mons.len()
    }
}

/// Exponent vectors of the monomials of degree d in x, y, z.
pub fn monomials(d: u32) -> Vec<[u16; 3]> {
    let d = d as u16;
    let mut out = Vec::new();
    for a in (0..=d).rev() {
        for b in (0..=d - a).rev() {
            out.push([a, b, d - a - b]);
        }
    }
    out
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}
