//! Univariate polynomials over Q(ζₙ), in-field root finding, and binary
//! forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::arith::{cyclotomic_poly, modp, CycNum, Rat};
use crate::error::{Error, Result};

/// Dense univariate polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly {
    order: u32,
    coeffs: Vec<CycNum>,
}

impl UPoly {
    pub fn new(order: u32, mut coeffs: Vec<CycNum>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|c| c.order() == order));
        UPoly { order, coeffs }
    }

    pub fn from_ints(order: u32, coeffs: &[i64]) -> Self {
        Self::new(order, coeffs.iter().map(|&c| CycNum::from_int(order, c)).collect())
    }

    pub fn zero(order: u32) -> Self {
        UPoly {
            order,
            coeffs: Vec::new(),
        }
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&CycNum> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &CycNum) -> CycNum {
        let mut acc = CycNum::zero(self.order);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn deriv(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.scale(&Rat::from_integer(BigInt::from(i))))
            .collect();
        Self::new(self.order, coeffs)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = CycNum::zero(self.order);
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&z) + other.coeffs.get(i).unwrap_or(&z))
            .collect();
        Self::new(self.order, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&CycNum::from_int(self.order, -1)))
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Self::new(self.order, self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.order);
        }
        let mut out = vec![CycNum::zero(self.order); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Self::new(self.order, out)
    }

    /// Quotient and remainder; `other` must be nonzero.
    pub fn divrem(&self, other: &Self) -> (Self, Self) {
        let lead_inv = other.leading().expect("division by zero polynomial").inv().unwrap();
        let db = other.coeffs.len() - 1;
        let mut r = self.coeffs.clone();
        if r.len() < other.coeffs.len() {
            return (Self::zero(self.order), self.clone());
        }
        let mut q = vec![CycNum::zero(self.order); r.len() - db];
        while r.len() >= other.coeffs.len() {
            let k = r.len() - 1 - db;
            let c = r.last().unwrap() * &lead_inv;
            for (i, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    r[k + i] = &r[k + i] - &(&c * b);
                }
            }
            q[k] = c;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        (Self::new(self.order, q), Self::new(self.order, r))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }
}

/// Roots of a univariate polynomial that lie in the working field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootReport {
    /// Distinct roots, sorted.
    pub roots: Vec<CycNum>,
    /// Multiplicity of each root, parallel to `roots`.
    pub multiplicities: Vec<usize>,
    /// True iff the roots (with multiplicity) account for the full degree.
    pub complete: bool,
}

/// Finds every root of `p` in Q(ζₙ).
///
/// Works on the squarefree part, scaled to a monic polynomial with
/// coefficients in Z[ζₙ]; its roots are then integral and are recovered by
/// reduction modulo a suitable prime, Hensel lifting, and exact verification.
/// Returned roots are always exact roots.
pub fn roots_in_field(p: &UPoly) -> RootReport {
    let deg = p.degree().expect("roots of the zero polynomial");
    let n = p.order;
    if deg == 0 {
        return RootReport {
            roots: Vec::new(),
            multiplicities: Vec::new(),
            complete: true,
        };
    }
    let sqf = p.divrem(&p.gcd(&p.deriv())).0.monic();
    let d = sqf.degree().unwrap();
    let mut roots = if d == 1 {
        vec![-&sqf.coeffs[0]]
    } else {
        let mut den = BigInt::one();
        for c in &sqf.coeffs {
            for x in c.coords() {
                den = den.lcm(x.denom());
            }
        }
        let h: Vec<Vec<BigInt>> = sqf
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let s = Rat::from_integer(num_traits::pow(den.clone(), d - i));
                c.scale(&s).coords().iter().map(|x| x.to_integer()).collect()
            })
            .collect();
        let (ys, _) = modp::integral_roots(n, &cyclotomic_poly(n), &h);
        let inv_den = Rat::new(BigInt::one(), den);
        ys.into_iter()
            .map(|y| {
                let coords = y.into_iter().map(|c| Rat::from_integer(c) * &inv_den).collect();
                CycNum::new(n, coords).expect("coordinate length")
            })
            .collect()
    };
    roots.sort();
    roots.dedup();
    let mut multiplicities = Vec::with_capacity(roots.len());
    for r in &roots {
        debug_assert!(p.eval(r).is_zero());
        let lin = UPoly::new(n, vec![-r, CycNum::one(n)]);
        let mut q = p.clone();
        let mut m = 0;
        loop {
            let (qq, rem) = q.divrem(&lin);
            if !rem.is_zero() {
                break;
            }
            q = qq;
            m += 1;
        }
        multiplicities.push(m);
    }
    let complete = multiplicities.iter().sum::<usize>() == deg;
    RootReport {
        roots,
        multiplicities,
        complete,
    }
}

/// Scales a projective point so its first nonzero coordinate is 1.
pub fn normalize_point(p: &[CycNum]) -> Vec<CycNum> {
    match p.iter().find(|c| !c.is_zero()) {
        None => p.to_vec(),
        Some(lead) => {
            let inv = lead.inv().unwrap();
            p.iter().map(|c| c * &inv).collect()
        }
    }
}

/// Roots on P¹ of the binary form Σ cⱼ t₀ʲ t₁^{k-j}, normalized.
///
/// Returns the distinct points `[t₀:t₁]` and whether all roots were found.
pub fn binary_form_roots(coeffs: &[CycNum]) -> Result<(Vec<[CycNum; 2]>, bool)> {
    let order = coeffs
        .first()
        .map(|c| c.order())
        .ok_or(Error::ZeroForm)?;
    let k = coeffs.len() - 1;
    let f = UPoly::new(order, coeffs.to_vec());
    let deg = f.degree().ok_or(Error::ZeroForm)?;
    let rep = roots_in_field(&f);
    let mut pts: Vec<[CycNum; 2]> = rep
        .roots
        .iter()
        .map(|r| {
            let v = normalize_point(&[r.clone(), CycNum::one(order)]);
            [v[0].clone(), v[1].clone()]
        })
        .collect();
    if deg < k {
        pts.push([CycNum::one(order), CycNum::zero(order)]);
    }
    pts.sort();
    Ok((pts, rep.complete))
}

/// The binary quadratic c₀t₀² + 2c₁t₀t₁ + c₂t₁².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryQuadratic {
    pub c0: CycNum,
    pub c1: CycNum,
    pub c2: CycNum,
}

impl BinaryQuadratic {
    pub fn new(c0: CycNum, c1: CycNum, c2: CycNum) -> Self {
        BinaryQuadratic { c0, c1, c2 }
    }

    /// c₁² − c₀c₂.
    pub fn discriminant(&self) -> CycNum {
        &(&self.c1 * &self.c1) - &(&self.c0 * &self.c2)
    }

    pub fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero() && self.c2.is_zero()
    }

    pub fn eval(&self, t0: &CycNum, t1: &CycNum) -> CycNum {
        let two = CycNum::from_int(t0.order(), 2);
        &(&(&self.c0 * &(t0 * t0)) + &(&(&two * &self.c1) * &(t0 * t1))) + &(&self.c2 * &(t1 * t1))
    }
}

/// A linear form ℓ = l₀t₀ + l₁t₁ and scalar c with q = c·ℓ².
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleRoot {
    pub ell: [CycNum; 2],
    pub c: CycNum,
}

/// Writes a square binary quadratic as c·ℓ² with ℓ's first nonzero
/// coefficient equal to 1. The reconstruction is checked exactly.
pub fn binary_double_root(q: &BinaryQuadratic) -> Result<DoubleRoot> {
    if q.is_zero() {
        return Err(Error::ZeroForm);
    }
    if !q.discriminant().is_zero() {
        return Err(Error::NotDoubleRoot);
    }
    let n = q.c0.order();
    let out = if !q.c0.is_zero() {
        let l1 = q.c1.try_div(&q.c0)?;
        DoubleRoot {
            ell: [CycNum::one(n), l1],
            c: q.c0.clone(),
        }
    } else {
        DoubleRoot {
            ell: [CycNum::zero(n), CycNum::one(n)],
            c: q.c2.clone(),
        }
    };
    // c(l0 t0 + l1 t1)^2 = c l0^2 t0^2 + 2 c l0 l1 t0 t1 + c l1^2 t1^2
    let [l0, l1] = &out.ell;
    let back = BinaryQuadratic::new(&out.c * &(l0 * l0), &out.c * &(l0 * l1), &out.c * &(l1 * l1));
    if back != *q {
        return Err(Error::Invariant("double root reconstruction failed".into()));
    }
    Ok(out)
}
