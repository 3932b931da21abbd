//! Sparse polynomials over Q(ζₙ) in the variables t₀, t₁ (the P¹ block) and
//! x, y, z (the P² block).

pub mod groebner;
pub mod points;
pub mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arith::{CycNum, Rat};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

pub use univariate::{
    binary_double_root, binary_form_roots, normalize_point, roots_in_field, BinaryQuadratic,
    DoubleRoot, RootReport, UPoly,
};

/// Variable indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    T0 = 0,
    T1 = 1,
    X = 2,
    Y = 3,
    Z = 4,
}

impl Var {
    pub const ALL: [Var; 5] = [Var::T0, Var::T1, Var::X, Var::Y, Var::Z];
    pub const T_BLOCK: [Var; 2] = [Var::T0, Var::T1];
    pub const X_BLOCK: [Var; 3] = [Var::X, Var::Y, Var::Z];

    pub fn name(self) -> &'static str {
        ["t0", "t1", "x", "y", "z"][self as usize]
    }
}

/// Which block of variables to differentiate in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Block {
    T,
    X,
}

impl Block {
    pub fn vars(self) -> &'static [Var] {
        match self {
            Block::T => &Var::T_BLOCK,
            Block::X => &Var::X_BLOCK,
        }
    }
}

/// Exponent vector (t₀, t₁, x, y, z), ordered graded reverse
/// lexicographically with t₀ > t₁ > x > y > z.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(pub [u16; 5]);

impl Monomial {
    pub const ONE: Monomial = Monomial([0; 5]);

    pub fn var(v: Var) -> Self {
        let mut e = [0; 5];
        e[v as usize] = 1;
        Monomial(e)
    }

    pub fn exps(&self) -> &[u16; 5] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn bidegree(&self) -> (u32, u32) {
        (
            self.0[0] as u32 + self.0[1] as u32,
            self.0[2] as u32 + self.0[3] as u32 + self.0[4] as u32,
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a += b;
        }
        Monomial(e)
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a <= b)
    }

    /// other / self, assuming divisibility.
    pub fn quotient(&self, other: &Self) -> Self {
        let mut e = other.0;
        for (a, b) in e.iter_mut().zip(self.0) {
            *a -= b;
        }
        Monomial(e)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut e = self.0;
        for (a, b) in e.iter_mut().zip(other.0) {
            *a = (*a).max(b);
        }
        Monomial(e)
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(other.0).all(|(a, b)| *a == 0 || b == 0)
    }

    /// The variable if this is a pure power vᵏ with k ≥ 1.
    pub fn pure_power_of(&self) -> Option<Var> {
        let nz: Vec<usize> = (0..5).filter(|&i| self.0[i] > 0).collect();
        (nz.len() == 1).then(|| Var::ALL[nz[0]])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for i in (0..5).rev() {
            match self.0[i].cmp(&other.0[i]) {
                Ordering::Equal => continue,
                // a smaller exponent in the last differing variable wins
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for v in Var::ALL {
            match self.0[v as usize] {
                0 => {}
                1 => parts.push(v.name().to_string()),
                e => parts.push(format!("{}^{e}", v.name())),
            }
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("*"))
        }
    }
}

/// A sparse polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MPoly {
    order: u32,
    terms: BTreeMap<Monomial, CycNum>,
}

impl MPoly {
    pub fn zero(order: u32) -> Self {
        MPoly {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: CycNum) -> Self {
        Self::term(Monomial::ONE, c)
    }

    pub fn term(m: Monomial, c: CycNum) -> Self {
        let mut p = Self::zero(c.order());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn var(order: u32, v: Var) -> Self {
        Self::term(Monomial::var(v), CycNum::one(order))
    }

    pub fn from_terms(order: u32, terms: impl IntoIterator<Item = (Monomial, CycNum)>) -> Self {
        let mut p = Self::zero(order);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycNum)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> CycNum {
        self.terms.get(m).cloned().unwrap_or_else(|| CycNum::zero(self.order))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &CycNum)> {
        self.terms.iter().next_back()
    }

    pub fn leading_monomial(&self) -> Option<Monomial> {
        self.leading_term().map(|(m, _)| *m)
    }

    pub fn add_term(&mut self, m: Monomial, c: &CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e = &*e + c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.order != other.order {
            Err(Error::OrderMismatch(self.order, other.order))
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut p = self.clone();
        for (m, c) in &other.terms {
            p.add_term(*m, c);
        }
        Ok(p)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut p = Self::zero(self.order);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                p.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        Ok(p)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("cyclotomic order mismatch")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).expect("cyclotomic order mismatch")
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("cyclotomic order mismatch")
    }

    pub fn neg(&self) -> Self {
        MPoly {
            order: self.order,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        MPoly {
            order: self.order,
            terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&CycNum::from_int(self.order, k))
    }

    /// Multiplies by c·m.
    pub fn mul_term(&self, m: &Monomial, c: &CycNum) -> Self {
        if c.is_zero() {
            return Self::zero(self.order);
        }
        MPoly {
            order: self.order,
            terms: self.terms.iter().map(|(k, x)| (k.mul(m), x * c)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(CycNum::one(self.order));
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.inv().unwrap()),
        }
    }

    /// Some λ with self = λ·other, if the polynomials are proportional.
    pub fn proportionality(&self, other: &Self) -> Option<CycNum> {
        let (m, c) = other.leading_term()?;
        let lam = self.coeff(m).try_div(c).ok()?;
        (!lam.is_zero() && *self == other.scale(&lam)).then_some(lam)
    }

    /// The (t, x) bidegree if the polynomial is bihomogeneous and nonzero.
    pub fn bidegree(&self) -> Option<(u32, u32)> {
        let mut it = self.terms.keys();
        let d = it.next()?.bidegree();
        it.all(|m| m.bidegree() == d).then_some(d)
    }

    /// Total degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let d = it.next()?.degree();
        it.all(|m| m.degree() == d).then_some(d)
    }

    /// True when every term only involves the variables in `vars`.
    pub fn uses_only(&self, vars: &[Var]) -> bool {
        self.terms
            .keys()
            .all(|m| Var::ALL.iter().all(|v| vars.contains(v) || m.0[*v as usize] == 0))
    }

    pub fn partial(&self, v: Var) -> Self {
        let mut p = Self::zero(self.order);
        for (m, c) in &self.terms {
            let e = m.0[v as usize];
            if e > 0 {
                let mut k = *m;
                k.0[v as usize] -= 1;
                p.add_term(k, &c.scale(&Rat::from_integer(BigInt::from(e))));
            }
        }
        p
    }

    /// Partial derivatives with respect to the block, in variable order.
    pub fn partials(&self, block: Block) -> Vec<Self> {
        block.vars().iter().map(|&v| self.partial(v)).collect()
    }

    /// Evaluation at a point given for all five variables.
    pub fn eval(&self, point: &[CycNum; 5]) -> CycNum {
        let mut acc = CycNum::zero(self.order);
        let mut powers: Vec<Vec<CycNum>> = point.iter().map(|p| vec![CycNum::one(p.order()), p.clone()]).collect();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..5 {
                let e = m.0[i] as usize;
                while powers[i].len() <= e {
                    let next = powers[i].last().unwrap() * &point[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Evaluation at a point of P² (the t-variables must be absent).
    pub fn eval_x(&self, p: &[CycNum]) -> CycNum {
        let z = CycNum::zero(self.order);
        self.eval(&[z.clone(), z, p[0].clone(), p[1].clone(), p[2].clone()])
    }

    /// Replaces some variables by polynomials.
    pub fn substitute(&self, images: &[(Var, MPoly)]) -> Self {
        let mut cache: Vec<Vec<MPoly>> = vec![Vec::new(); 5];
        let mut out = Self::zero(self.order);
        for (m, c) in &self.terms {
            let mut t = Self::constant(c.clone());
            let mut rest = *m;
            for (v, img) in images {
                let i = *v as usize;
                let e = m.0[i] as usize;
                rest.0[i] = 0;
                if e == 0 {
                    continue;
                }
                let pw = &mut cache[i];
                if pw.is_empty() {
                    pw.push(Self::constant(CycNum::one(self.order)));
                }
                while pw.len() <= e {
                    let next = pw.last().unwrap().mul(img);
                    pw.push(next);
                }
                t = t.mul(&pw[e]);
            }
            out = out.add(&t.mul_term(&rest, &CycNum::one(self.order)));
        }
        out
    }

    /// Substitutes t ↦ M·t and (x,y,z) ↦ N·(x,y,z).
    pub fn substitute_linear(&self, m: Option<&Matrix>, n: Option<&Matrix>) -> Result<Self> {
        let mut images = Vec::new();
        for (mat, vars) in [(m, &Var::T_BLOCK[..]), (n, &Var::X_BLOCK[..])] {
            let Some(mat) = mat else { continue };
            if mat.rows() != vars.len() || mat.cols() != vars.len() {
                return Err(Error::LengthMismatch {
                    expected: vars.len(),
                    got: mat.rows(),
                });
            }
            if mat.order() != self.order {
                return Err(Error::OrderMismatch(self.order, mat.order()));
            }
            if mat.det().is_zero() {
                return Err(Error::SingularMatrix);
            }
            for (i, &v) in vars.iter().enumerate() {
                let img = Self::from_terms(
                    self.order,
                    vars.iter()
                        .enumerate()
                        .map(|(j, &w)| (Monomial::var(w), mat.get(i, j).clone())),
                );
                images.push((v, img));
            }
        }
        Ok(self.substitute(&images))
    }

    /// Parses expressions such as `2*x^2 - 3/4*z7^3*y*z + t0^2*x^2`.
    ///
    /// A factor `zN^k` (or `zN`) stands for ζ_N^k and must have N equal to
    /// `order`; `i` stands for ζ₄ (so needs `order` divisible by 4). No
    /// parentheses.
    pub fn parse(order: u32, s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Validation(format!("cannot parse polynomial `{s}`: {msg}"));
        let cleaned: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(bad("empty"));
        }
        let mut p = Self::zero(order);
        let mut chunks = Vec::new();
        let mut cur = String::new();
        for (k, ch) in cleaned.chars().enumerate() {
            if (ch == '+' || ch == '-') && k > 0 && !cur.ends_with('^') {
                chunks.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        chunks.push(cur);
        for chunk in chunks {
            let (sign, body) = match chunk.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, chunk.strip_prefix('+').unwrap_or(&chunk)),
            };
            if body.is_empty() {
                return Err(bad("dangling sign"));
            }
            let mut coeff = CycNum::from_int(order, sign);
            let mut mono = Monomial::ONE;
            for factor in body.split('*') {
                let (base, exp) = match factor.split_once('^') {
                    Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad("bad exponent"))?),
                    None => (factor, 1),
                };
                if let Some(v) = Var::ALL.iter().find(|v| v.name() == base) {
                    mono.0[*v as usize] += exp as u16;
                } else if base == "i" {
                    coeff = &coeff * &CycNum::imag_unit(order)?.pow(exp as i64)?;
                } else if let Some(n) = base.strip_prefix('z').and_then(|n| n.parse::<u32>().ok()) {
                    if n != order {
                        return Err(Error::OrderMismatch(order, n));
                    }
                    coeff = &coeff * &CycNum::zeta_pow(order, exp as i64);
                } else {
                    let r = crate::arith::parse_rat(base).map_err(|_| bad("unknown factor"))?;
                    let r = CycNum::from_rat(order, r).pow(exp as i64)?;
                    coeff = &coeff * &r;
                }
            }
            p.add_term(mono, &coeff);
        }
        Ok(p)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(m, c)| json!({"m": m.0, "c": c.to_strings()}))
            .collect();
        json!({"cyclotomic_order": self.order, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let order = v
            .get("cyclotomic_order")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Validation("missing cyclotomic_order".into()))? as u32;
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Validation("missing terms".into()))?;
        let mut p = Self::zero(order);
        for t in terms {
            let m = t
                .get("m")
                .and_then(Value::as_array)
                .filter(|a| a.len() == 5)
                .ok_or_else(|| Error::Validation("term exponent must have 5 entries".into()))?;
            let mut e = [0u16; 5];
            for (k, x) in m.iter().enumerate() {
                e[k] = x
                    .as_u64()
                    .and_then(|x| u16::try_from(x).ok())
                    .ok_or_else(|| Error::Validation("bad exponent".into()))?;
            }
            let c = crate::workbench::json::cyc_from_json(order, t.get("c").unwrap_or(&Value::Null))?;
            if c.is_zero() {
                return Err(Error::Validation("zero coefficient stored".into()));
            }
            if p.terms.contains_key(&Monomial(e)) {
                return Err(Error::Validation("repeated monomial".into()));
            }
            p.add_term(Monomial(e), &c);
        }
        Ok(p)
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let neg_rat = c.as_rat().is_some_and(crate::arith::rat_is_neg);
            let (sign, c) = if neg_rat { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let cs = c.to_string();
            let wrapped = if c.as_rat().is_some() { cs } else { format!("({cs})") };
            if *m == Monomial::ONE {
                write!(f, "{wrapped}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{wrapped}*{m}")?;
            }
        }
        Ok(())
    }
}

/// The six quadric monomials x², y², z², xy, xz, yz.
pub fn quadric_monomials() -> [Monomial; 6] {
    [
        Monomial([0, 0, 2, 0, 0]),
        Monomial([0, 0, 0, 2, 0]),
        Monomial([0, 0, 0, 0, 2]),
        Monomial([0, 0, 1, 1, 0]),
        Monomial([0, 0, 1, 0, 1]),
        Monomial([0, 0, 0, 1, 1]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(order: u32, s: &str) -> MPoly {
        MPoly::parse(order, s).unwrap()
    }

    #[test]
    fn grevlex_order() {
        let x = Monomial::var(Var::X);
        let y = Monomial::var(Var::Y);
        let z = Monomial::var(Var::Z);
        assert!(x > y && y > z);
        // x*z < y^2 in grevlex
        assert!(x.mul(&z) < y.mul(&y));
        assert!(x.mul(&x) > x.mul(&y));
        assert!(Monomial::var(Var::T0) > x);
    }

    #[test]
    fn products() {
        assert_eq!(p(1, "x+y").mul(&p(1, "x-y")), p(1, "x^2-y^2"));
        assert_eq!(p(1, "z^2").mul(&p(1, "z^2")), p(1, "z^4"));
        let a = p(1, "x^2+y*z");
        assert_eq!(a.mul(&a), p(1, "x^4+2*x^2*y*z+y^2*z^2"));
        assert_eq!(p(3, "x").try_mul(&p(4, "x")), Err(Error::OrderMismatch(3, 4)));
    }

    #[test]
    fn linear_substitution() {
        let f = p(1, "x^4+y^4+z^4");
        let n = Matrix::from_ints(1, &[&[1, 0, 0], &[0, -1, 0], &[0, 0, 1]]);
        assert_eq!(f.substitute_linear(None, Some(&n)).unwrap(), f);
        let k = p(7, "x^3*y+y^3*z+z^3*x");
        let z7 = |k| CycNum::zeta_pow(7, k);
        let n = Matrix::diag(&[CycNum::one(7), z7(3), z7(1)]);
        assert_eq!(k.substitute_linear(None, Some(&n)).unwrap(), k.scale(&z7(3)));
        let m = Matrix::from_ints(1, &[&[0, 1], &[1, 0]]);
        assert_eq!(p(1, "t0^2*x^2").substitute_linear(Some(&m), None).unwrap(), p(1, "t1^2*x^2"));
        let s = Matrix::from_ints(1, &[&[1, 1], &[1, 1]]);
        assert_eq!(p(1, "t0").substitute_linear(Some(&s), None), Err(Error::SingularMatrix));
    }

    #[test]
    fn derivatives() {
        assert_eq!(p(1, "x^4+y^4+z^4").partial(Var::X), p(1, "4*x^3"));
        assert_eq!(p(1, "x^3*y+y^3*z+z^3*x").partial(Var::Y), p(1, "x^3+3*y^2*z"));
        let f = p(1, "t0^2*x^2 + 2*t0*t1*y^2 + t1^2*z^2");
        assert_eq!(f.partials(Block::T)[0], p(1, "2*t0*x^2 + 2*t1*y^2"));
    }

    #[test]
    fn parse_and_display() {
        let f = p(8, "z8^2*x^2 - 3/4*y*z + i*t0*x");
        assert_eq!(f.coeff(&Monomial([0, 0, 2, 0, 0])), CycNum::zeta_pow(8, 2));
        assert_eq!(f.coeff(&Monomial([1, 0, 1, 0, 0])), CycNum::zeta_pow(8, 2));
        assert_eq!(p(1, "x^2 - 3*y*z + 1").to_string(), "x^2 - 3*y*z + 1");
        assert!(MPoly::parse(1, "x^").is_err());
        assert!(MPoly::parse(1, "w").is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = p(8, "z8^3*x^2 - 3/4*y*z + t0*t1*x^2");
        let v = f.to_json();
        let s = serde_json::to_string(&v).unwrap();
        let g = MPoly::from_json(&serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(f, g);
        assert_eq!(serde_json::to_string(&g.to_json()).unwrap(), s);
    }
}
