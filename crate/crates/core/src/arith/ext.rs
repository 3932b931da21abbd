use std::fmt;

use super::CycNum;
use crate::error::{Error, Result};
use crate::poly::univariate::{roots_in_field, UPoly};

/// An element u + v·√d of Q(ζₙ)(√d).
///
/// Elements of the base field carry `d = 0` and `v = 0`, so they combine
/// with elements of any extension. Two elements with different nonzero
/// radicands cannot be combined.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtNum {
    u: CycNum,
    v: CycNum,
    d: CycNum,
}

/// Q(ζₙ)(√d) for a fixed radicand d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadExt {
    d: CycNum,
    /// The canonical root when d is already a square in Q(ζₙ).
    base_root: Option<CycNum>,
}

/// Builds the extension by √d, detecting whether d is already a square.
///
/// When it is, the returned square root is the one whose first nonzero
/// power-basis coordinate is positive.
pub fn adjoin_sqrt(d: &CycNum) -> Result<QuadExt> {
    if d.is_zero() {
        return Err(Error::ZeroRadicand);
    }
    let n = d.order();
    let p = UPoly::new(n, vec![-d, CycNum::zero(n), CycNum::one(n)]);
    let rep = roots_in_field(&p);
    let base_root = rep.roots.into_iter().find(|r| r.leading_sign() > 0);
    Ok(QuadExt {
        d: d.clone(),
        base_root,
    })
}

impl QuadExt {
    pub fn radicand(&self) -> &CycNum {
        &self.d
    }

    /// True when d is a square in the base field.
    pub fn is_degenerate(&self) -> bool {
        self.base_root.is_some()
    }

    /// √d as an element of the extension.
    pub fn sqrt(&self) -> ExtNum {
        match &self.base_root {
            Some(r) => ExtNum::from_base(r.clone()),
            None => {
                let n = self.d.order();
                ExtNum {
                    u: CycNum::zero(n),
                    v: CycNum::one(n),
                    d: self.d.clone(),
                }
            }
        }
    }

    /// u + v·√d, collapsed into the base field when d is a square.
    pub fn make(&self, u: CycNum, v: CycNum) -> ExtNum {
        match &self.base_root {
            Some(r) => ExtNum::from_base(&u + &(&v * r)),
            None => ExtNum::normalized(u, v, self.d.clone()),
        }
    }
}

impl ExtNum {
    pub fn from_base(u: CycNum) -> Self {
        let n = u.order();
        ExtNum {
            u,
            v: CycNum::zero(n),
            d: CycNum::zero(n),
        }
    }

    fn normalized(u: CycNum, v: CycNum, d: CycNum) -> Self {
        if v.is_zero() {
            ExtNum::from_base(u)
        } else {
            ExtNum { u, v, d }
        }
    }

    pub fn order(&self) -> u32 {
        self.u.order()
    }

    /// Rational part u.
    pub fn u(&self) -> &CycNum {
        &self.u
    }

    /// Coefficient v of √d.
    pub fn v(&self) -> &CycNum {
        &self.v
    }

    /// The radicand, zero for base-field values.
    pub fn radicand(&self) -> &CycNum {
        &self.d
    }

    pub fn as_base(&self) -> Option<&CycNum> {
        self.v.is_zero().then_some(&self.u)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    fn common_radicand(&self, other: &Self) -> Result<CycNum> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch(self.order(), other.order()));
        }
        match (self.d.is_zero(), other.d.is_zero()) {
            (true, _) => Ok(other.d.clone()),
            (_, true) => Ok(self.d.clone()),
            _ if self.d == other.d => Ok(self.d.clone()),
            _ => Err(Error::RadicandMismatch),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::normalized(&self.u + &other.u, &self.v + &other.v, d))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        Ok(Self::normalized(&self.u - &other.u, &self.v - &other.v, d))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        let d = self.common_radicand(other)?;
        let u = &(&self.u * &other.u) + &(&(&self.v * &other.v) * &d);
        let v = &(&self.u * &other.v) + &(&self.v * &other.u);
        Ok(Self::normalized(u, v, d))
    }

    pub fn neg(&self) -> Self {
        ExtNum {
            u: -&self.u,
            v: -&self.v,
            d: self.d.clone(),
        }
    }

    pub fn conj(&self) -> Self {
        ExtNum {
            u: self.u.clone(),
            v: -&self.v,
            d: self.d.clone(),
        }
    }

    /// u² − v²d.
    pub fn norm(&self) -> CycNum {
        &(&self.u * &self.u) - &(&(&self.v * &self.v) * &self.d)
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Self::normalized(&self.u * c, &self.v * c, self.d.clone())
    }

    /// Inverse; fails with `DivideByZero` on zero. A zero norm with a
    /// nonzero value means d was a square in disguise, which
    /// [`adjoin_sqrt`] rules out.
    pub fn inv(&self) -> Result<Self> {
        let nrm = self.norm();
        let ni = nrm.inv().ok_or(Error::DivideByZero)?;
        Ok(self.conj().scale(&ni))
    }

    pub fn try_div(&self, other: &Self) -> Result<Self> {
        self.try_mul(&other.inv()?)
    }
}

impl fmt::Debug for ExtNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExtNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            write!(f, "{}", self.u)
        } else {
            write!(f, "({}) + ({})*sqrt({})", self.u, self.v, self.d)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_square_collapses() {
        let e = adjoin_sqrt(&CycNum::from_int(1, 4)).unwrap();
        assert!(e.is_degenerate());
        assert_eq!(e.sqrt(), ExtNum::from_base(CycNum::from_int(1, 2)));
    }

    #[test]
    fn minus_one_over_q() {
        let e = adjoin_sqrt(&CycNum::from_int(1, -1)).unwrap();
        assert!(!e.is_degenerate());
        let s = e.sqrt();
        assert_eq!(s.try_mul(&s).unwrap(), ExtNum::from_base(CycNum::from_int(1, -1)));
    }

    #[test]
    fn zeta8_squared_has_root_zeta8() {
        let e = adjoin_sqrt(&CycNum::zeta_pow(8, 2)).unwrap();
        assert!(e.is_degenerate());
        assert_eq!(e.sqrt(), ExtNum::from_base(CycNum::zeta(8)));
    }

    #[test]
    fn zero_radicand() {
        assert_eq!(adjoin_sqrt(&CycNum::zero(3)), Err(Error::ZeroRadicand));
    }

    #[test]
    fn inverse_and_mismatch() {
        let e = adjoin_sqrt(&CycNum::from_int(1, 2)).unwrap();
        let x = e.make(CycNum::from_int(1, 1), CycNum::from_int(1, 3));
        let y = x.inv().unwrap();
        assert_eq!(x.try_mul(&y).unwrap(), ExtNum::from_base(CycNum::one(1)));
        let f = adjoin_sqrt(&CycNum::from_int(1, 3)).unwrap();
        assert_eq!(x.try_add(&f.sqrt()), Err(Error::RadicandMismatch));
    }
}
