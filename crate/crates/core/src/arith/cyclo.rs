use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{format_rat, parse_rat, qpoly, Rat};
use crate::error::{Error, Result};

/// Largest supported extension degree φ(n).
pub const MAX_PHI: usize = 64;

pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

fn mobius(n: u32) -> i32 {
    let mut n = n;
    let mut k = 0;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            k += 1;
        }
        p += 1;
    }
    if n > 1 {
        k += 1;
    }
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The n-th cyclotomic polynomial Φₙ, ascending integer coefficients.
pub fn cyclotomic_poly(n: u32) -> Arc<Vec<i64>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<i64>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    // Φₙ = Π_{d | n} (x^d - 1)^{μ(n/d)}
    let divisors: Vec<u32> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut p: Vec<i128> = vec![1];
    for &d in &divisors {
        if mobius(n / d) == 1 {
            let mut out = vec![0i128; p.len() + d as usize];
            for (i, c) in p.iter().enumerate() {
                out[i + d as usize] += c;
                out[i] -= c;
            }
            p = out;
        }
    }
    for &d in &divisors {
        if mobius(n / d) == -1 {
            let d = d as usize;
            let deg = p.len() - 1;
            let mut q = vec![0i128; deg - d + 1];
            for k in (d..=deg).rev() {
                let above = if k <= deg - d { q[k] } else { 0 };
                q[k - d] = p[k] + above;
            }
            p = q;
        }
    }
    let out: Arc<Vec<i64>> = Arc::new(p.into_iter().map(|c| c as i64).collect());
    cache.lock().unwrap().insert(n, out.clone());
    out
}

/// An exact element of the cyclotomic field Q(ζₙ).
///
/// Stored as coordinates in the power basis `1, ζ, …, ζ^{φ(n)-1}`, always
/// reduced modulo Φₙ, so structural equality is field equality.
///
/// The binary operators panic when the two operands carry different
/// orders; use the `try_*` methods where that can happen.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycNum {
    order: u32,
    coords: Vec<Rat>,
}

fn check_order(order: u32) -> Result<usize> {
    if order == 0 {
        return Err(Error::Validation("cyclotomic order must be >= 1".into()));
    }
    let phi = euler_phi(order);
    if phi > MAX_PHI {
        return Err(Error::Unsupported(format!(
            "cyclotomic order {order} has degree {phi} > {MAX_PHI}"
        )));
    }
    Ok(phi)
}

impl CycNum {
    /// Builds an element from its power-basis coordinates.
    pub fn new(order: u32, coords: Vec<Rat>) -> Result<Self> {
        let phi = check_order(order)?;
        if coords.len() != phi {
            return Err(Error::LengthMismatch {
                expected: phi,
                got: coords.len(),
            });
        }
        Ok(CycNum { order, coords })
    }

    /// Reduces an arbitrary polynomial in ζ modulo Φₙ.
    pub fn from_poly(order: u32, poly: &[Rat]) -> Result<Self> {
        let phi = check_order(order)?;
        Ok(Self::reduce(order, phi, poly.to_vec()))
    }

    fn reduce(order: u32, phi: usize, mut p: Vec<Rat>) -> Self {
        if p.len() > phi {
            let cyc = cyclotomic_poly(order);
            for k in (phi..p.len()).rev() {
                if p[k].is_zero() {
                    continue;
                }
                let c = std::mem::take(&mut p[k]);
                for (i, &m) in cyc.iter().take(phi).enumerate() {
                    if m != 0 {
                        p[k - phi + i] -= &c * BigInt::from(m);
                    }
                }
            }
        }
        p.resize(phi, Rat::zero());
        CycNum { order, coords: p }
    }

    pub fn zero(order: u32) -> Self {
        let phi = euler_phi(order);
        CycNum {
            order,
            coords: vec![Rat::zero(); phi],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rat(order, Rat::one())
    }

    pub fn from_rat(order: u32, r: Rat) -> Self {
        let mut z = Self::zero(order);
        z.coords[0] = r;
        z
    }

    pub fn from_int(order: u32, n: i64) -> Self {
        Self::from_rat(order, super::rat(n))
    }

    /// ζₙᵏ for any integer k.
    pub fn zeta_pow(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut p = vec![Rat::zero(); e + 1];
        p[e] = Rat::one();
        Self::reduce(order, euler_phi(order), p)
    }

    pub fn zeta(order: u32) -> Self {
        Self::zeta_pow(order, 1)
    }

    /// √-1 in Q(ζₙ); requires 4 | n.
    pub fn imag_unit(order: u32) -> Result<Self> {
        if !order.is_multiple_of(4) {
            return Err(Error::Unsupported(format!("Q(zeta_{order}) does not contain i")));
        }
        Ok(Self::zeta_pow(order, (order / 4) as i64))
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(|c| c.is_zero())
    }

    /// The value as a rational number, if it lies in Q.
    pub fn as_rat(&self) -> Option<&Rat> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coords[0])
        } else {
            None
        }
    }

    /// Sign of the first nonzero coordinate (0 for zero).
    pub fn leading_sign(&self) -> i32 {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => -1,
            Some(_) => 1,
            None => 0,
        }
    }

    /// Re-applies the reduction map. Values built through the public API are
    /// already reduced, so this is the identity on them.
    pub fn normalized(&self) -> Self {
        Self::reduce(self.order, self.coords.len(), self.coords.clone())
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            Err(Error::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(CycNum {
            order: self.order,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(CycNum {
            order: self.order,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        if let Some(r) = self.as_rat() {
            return Ok(other.scale(r));
        }
        if let Some(r) = other.as_rat() {
            return Ok(self.scale(r));
        }
        let phi = self.coords.len();
        let mut p = vec![Rat::zero(); 2 * phi - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    p[i + j] += a * b;
                }
            }
        }
        Ok(Self::reduce(self.order, phi, p))
    }

    pub fn scale(&self, r: &Rat) -> Self {
        CycNum {
            order: self.order,
            coords: self.coords.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rat() {
            return Some(Self::from_rat(self.order, r.recip()));
        }
        let modulus: Vec<Rat> = cyclotomic_poly(self.order)
            .iter()
            .map(|&c| Rat::from_integer(BigInt::from(c)))
            .collect();
        let inv = qpoly::inverse_mod(&self.coords, &modulus)?;
        Some(Self::reduce(self.order, self.coords.len(), inv))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        let inv = other.inv().ok_or(Error::DivideByZero)?;
        self.try_mul(&inv)
    }

    pub fn pow(&self, k: i64) -> Result<Self> {
        let mut base = if k < 0 {
            self.inv().ok_or(Error::DivideByZero)?
        } else {
            self.clone()
        };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.order);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Image under ζₙ ↦ ζₘ^{m/n}, for n | m.
    pub fn embed(&self, to_order: u32) -> Result<Self> {
        if !to_order.is_multiple_of(self.order) {
            return Err(Error::OrderMismatch(self.order, to_order));
        }
        let phi = check_order(to_order)?;
        let step = (to_order / self.order) as usize;
        let mut p = vec![Rat::zero(); (self.coords.len().max(1) - 1) * step + 1];
        for (i, c) in self.coords.iter().enumerate() {
            p[i * step] = c.clone();
        }
        Ok(Self::reduce(to_order, phi, p))
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(format_rat).collect()
    }

    pub fn from_strings<S: AsRef<str>>(order: u32, items: &[S]) -> Result<Self> {
        let coords = items
            .iter()
            .map(|s| parse_rat(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Self::new(order, coords)
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let body = format_rat(&a);
            match i {
                0 => write!(f, "{body}")?,
                _ => {
                    if !a.is_one() {
                        write!(f, "{body}*")?;
                    }
                    write!(f, "z{}", self.order)?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycNum> for &CycNum {
            type Output = CycNum;
            fn $m(self, rhs: &CycNum) -> CycNum {
                self.$checked(rhs).expect("cyclotomic order mismatch")
            }
        }
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $m(self, rhs: CycNum) -> CycNum {
                (&self).$m(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}
