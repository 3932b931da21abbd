//! Exact scalars: rationals, cyclotomic fields Q(ζₙ) and one quadratic
//! extension on top of them.

mod cyclo;
mod ext;
pub(crate) mod modp;

pub use cyclo::{cyclotomic_poly, euler_phi, CycNum, MAX_PHI};
pub use ext::{adjoin_sqrt, ExtNum, QuadExt};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// `"p/q"` or `"p"` in lowest terms.
pub fn format_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat> {
    let bad = || Error::Validation(format!("malformed rational `{s}`"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Rat::new(n, d))
}

/// Dense polynomials over Q, ascending coefficients, trimmed.
pub(crate) mod qpoly {
    use super::*;

    pub fn trim(p: &mut Vec<Rat>) {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
    }

    pub fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let db = b.len() - 1;
        let lead = b[db].clone();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![Rat::zero(); r.len() - db];
        while r.len() >= b.len() {
            let k = r.len() - 1 - db;
            let c = r.last().unwrap() / &lead;
            for (i, bi) in b.iter().enumerate() {
                if !bi.is_zero() {
                    r[k + i] -= &c * bi;
                }
            }
            q[k] = c;
            r.pop();
            trim(&mut r);
        }
        (q, r)
    }

    pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
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
        trim(&mut out);
        out
    }

    pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let n = a.len().max(b.len());
        let mut out: Vec<Rat> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_else(Rat::zero);
                match b.get(i) {
                    Some(y) => x - y,
                    None => x,
                }
            })
            .collect();
        trim(&mut out);
        out
    }

    /// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
    pub fn inverse_mod(a: &[Rat], m: &[Rat]) -> Option<Vec<Rat>> {
        // extended Euclid tracking only the cofactor of `a`
        let mut r0 = m.to_vec();
        let mut r1 = a.to_vec();
        trim(&mut r1);
        let mut s0: Vec<Rat> = Vec::new();
        let mut s1: Vec<Rat> = vec![Rat::one()];
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        if r0.len() != 1 {
            return None;
        }
        let c = r0[0].clone();
        Some(s0.into_iter().map(|x| x / &c).collect())
    }
}

pub(crate) fn rat_is_neg(r: &Rat) -> bool {
    r.is_negative()
}
