//! The (2,2)-surface Z ⊂ P¹×P² given by a triple of ternary quadrics, its
//! discriminant quartic Δ = Q₂² − Q₁Q₃, and smoothness tests for both.

use crate::arith::CycNum;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::groebner::projective_locus_empty;
use crate::poly::points::{projective_points, PointReport};
use crate::poly::{quadric_monomials, BinaryQuadratic, Block, MPoly, Monomial, UPoly, Var};

/// Z = {t₀²Q₁ + 2t₀t₁Q₂ + t₁²Q₃ = 0}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surface22 {
    q: [MPoly; 3],
}

impl Surface22 {
    /// Checks that every Qᵢ is zero or a quadric in x, y, z, that the orders
    /// agree, and that F is not identically zero.
    pub fn new(q1: MPoly, q2: MPoly, q3: MPoly) -> Result<Self> {
        let order = q1.order();
        for (i, q) in [&q1, &q2, &q3].into_iter().enumerate() {
            if q.order() != order {
                return Err(Error::OrderMismatch(order, q.order()));
            }
            if !q.is_zero() && q.bidegree() != Some((0, 2)) {
                return Err(Error::Validation(format!("Q{} = {q} is not a quadric in x, y, z", i + 1)));
            }
        }
        if q1.is_zero() && q2.is_zero() && q3.is_zero() {
            return Err(Error::Validation("F is the zero polynomial".into()));
        }
        Ok(Surface22 { q: [q1, q2, q3] })
    }

    /// Builds the quadrics from coefficient vectors in the monomial order
    /// x², y², z², xy, xz, yz.
    pub fn from_coeffs(coeffs: [[CycNum; 6]; 3]) -> Result<Self> {
        let order = coeffs[0][0].order();
        let mons = quadric_monomials();
        let [a, b, c] = coeffs.map(|cs| MPoly::from_terms(order, mons.iter().copied().zip(cs)));
        Self::new(a, b, c)
    }

    /// Convenience constructor from polynomial strings (see [`MPoly::parse`]).
    pub fn parse(order: u32, q1: &str, q2: &str, q3: &str) -> Result<Self> {
        Self::new(
            MPoly::parse(order, q1)?,
            MPoly::parse(order, q2)?,
            MPoly::parse(order, q3)?,
        )
    }

    pub fn order(&self) -> u32 {
        self.q[0].order()
    }

    /// Q₁, Q₂, Q₃.
    pub fn quadrics(&self) -> &[MPoly; 3] {
        &self.q
    }

    /// Coefficient vector of Qᵢ (i = 0, 1, 2) in the order x², y², z², xy, xz, yz.
    pub fn quadric_coeffs(&self, i: usize) -> [CycNum; 6] {
        quadric_monomials().map(|m| self.q[i].coeff(&m))
    }

    /// F = t₀²Q₁ + 2t₀t₁Q₂ + t₁²Q₃.
    pub fn equation(&self) -> MPoly {
        let n = self.order();
        let t = |e0: u16, e1: u16, c: i64| MPoly::term(Monomial([e0, e1, 0, 0, 0]), CycNum::from_int(n, c));
        self.q[0]
            .mul(&t(2, 0, 1))
            .add(&self.q[1].mul(&t(1, 1, 2)))
            .add(&self.q[2].mul(&t(0, 2, 1)))
    }

    /// The binary quadratic Q₁(p)t₀² + 2Q₂(p)t₀t₁ + Q₃(p)t₁² cutting out the
    /// fiber of Z over p.
    pub fn fiber_form(&self, p: &[CycNum]) -> BinaryQuadratic {
        let [a, b, c] = self.q.each_ref().map(|q| q.eval_x(p));
        BinaryQuadratic::new(a, b, c)
    }

    /// The triple (Q₁∘N, Q₂∘N, Q₃∘N).
    pub fn transform_x(&self, n: &Matrix) -> Result<Self> {
        let mut out = Vec::with_capacity(3);
        for q in &self.q {
            out.push(q.substitute_linear(None, Some(n))?);
        }
        let [a, b, c]: [MPoly; 3] = out.try_into().unwrap();
        Self::new(a, b, c)
    }
}

/// A plane quartic, homogeneous of degree 4 in x, y, z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuarticCurve {
    form: MPoly,
}

impl QuarticCurve {
    pub fn new(form: MPoly) -> Result<Self> {
        if form.bidegree() != Some((0, 4)) {
            return Err(Error::Validation(format!("{form} is not a plane quartic")));
        }
        Ok(QuarticCurve { form })
    }

    pub fn form(&self) -> &MPoly {
        &self.form
    }

    pub fn order(&self) -> u32 {
        self.form.order()
    }

    pub fn contains(&self, p: &[CycNum]) -> bool {
        self.form.eval_x(p).is_zero()
    }

    pub fn is_smooth(&self) -> Result<bool> {
        projective_locus_empty(&self.form.partials(Block::X))
    }

    /// Hessian matrix at p.
    pub fn hessian_at(&self, p: &[CycNum]) -> Matrix {
        let rows = Var::X_BLOCK
            .iter()
            .map(|&a| {
                let da = self.form.partial(a);
                Var::X_BLOCK.iter().map(|&b| da.partial(b).eval_x(p)).collect()
            })
            .collect();
        Matrix::from_rows(rows).expect("3x3")
    }

    /// Whether a singular point p is an ordinary node (Hessian of rank 2).
    pub fn is_node(&self, p: &[CycNum]) -> bool {
        self.hessian_at(p).rank() == 2
    }
}

/// Q₂² − Q₁Q₃.
pub fn discriminant(s: &Surface22) -> Result<QuarticCurve> {
    let [q1, q2, q3] = &s.q;
    let d = q2.mul(q2).sub(&q1.mul(q3));
    if d.is_zero() {
        return Err(Error::DegenerateDiscriminant);
    }
    QuarticCurve::new(d)
}

/// Whether Δ is a smooth plane quartic.
pub fn delta_smooth(s: &Surface22) -> Result<bool> {
    discriminant(s)?.is_smooth()
}

/// How the singular points of Δ are located.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularRoute {
    /// Common zeros of Q₁, Q₂, Q₃. These are exactly the singular points of
    /// Δ when Z is smooth.
    CommonZeros,
    /// Zeros of the Jacobian ideal of Δ; valid for any surface.
    Jacobian,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularPoint {
    pub point: [CycNum; 3],
    /// Ordinary node test on Δ; absent when Δ is not defined.
    pub node: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularReport {
    pub smooth: bool,
    pub points: Vec<SingularPoint>,
    /// Whether `points` is the whole singular locus.
    pub complete: bool,
}

/// Singular points of Δ.
///
/// Uses the common zeros of Q₁, Q₂, Q₃ when Z is smooth (or Δ vanishes
/// identically) and the Jacobian ideal of Δ otherwise, since a singular Z
/// can make Δ singular away from the common zeros.
pub fn delta_singular_points(s: &Surface22) -> Result<SingularReport> {
    let route = match z_smooth(s) {
        Ok(true) | Err(Error::DegenerateDiscriminant) => SingularRoute::CommonZeros,
        Ok(false) | Err(Error::IncompleteSingularLocus) => SingularRoute::Jacobian,
        Err(e) => return Err(e),
    };
    delta_singular_points_with(s, route)
}

pub fn delta_singular_points_with(s: &Surface22, route: SingularRoute) -> Result<SingularReport> {
    let delta = discriminant(s).ok();
    let rep: PointReport = match route {
        SingularRoute::CommonZeros => projective_points(&s.q)?,
        SingularRoute::Jacobian => {
            let d = delta.as_ref().ok_or(Error::DegenerateDiscriminant)?;
            projective_points(&d.form.partials(Block::X))?
        }
    };
    let smooth = rep.complete && rep.points.is_empty();
    let points = rep
        .points
        .into_iter()
        .map(|p| SingularPoint {
            node: delta.as_ref().map(|d| d.is_node(&p)),
            point: p,
        })
        .collect();
    Ok(SingularReport {
        smooth,
        points,
        complete: rep.complete,
    })
}

/// Whether Z is smooth.
///
/// Singular points of Z lie over singular points of Δ, so when Δ is smooth
/// the answer is immediate; otherwise each fiber over Sing(Δ) is inspected.
pub fn z_smooth(s: &Surface22) -> Result<bool> {
    let delta = discriminant(s)?;
    if delta.is_smooth()? {
        return Ok(true);
    }
    let rep = projective_points(&delta.form.partials(Block::X))?;
    if rep.dimension == crate::poly::groebner::ProjectiveDimension::Positive {
        // Δ has a multiple component, which forces Z to be singular
        return Ok(false);
    }
    for p in &rep.points {
        if z_singular_over(s, p)? {
            return Ok(false);
        }
    }
    if !rep.complete {
        return Err(Error::IncompleteSingularLocus);
    }
    Ok(true)
}

/// Whether Z has a singular point in the fiber P¹ × {p}, for p ∈ Δ.
fn z_singular_over(s: &Surface22, p: &[CycNum]) -> Result<bool> {
    let n = s.order();
    let vals = s.fiber_form(p);
    // ∂F/∂x_k at (t, p) as binary quadratics in t
    let grads: Vec<BinaryQuadratic> = Var::X_BLOCK
        .iter()
        .map(|&v| {
            let [a, b, c] = s.q.each_ref().map(|q| q.partial(v).eval_x(p));
            BinaryQuadratic::new(a, b, c)
        })
        .collect();
    if vals.is_zero() {
        // the whole line lies on Z; look for a common root of the three
        // x-derivatives
        let nonzero: Vec<&BinaryQuadratic> = grads.iter().filter(|g| !g.is_zero()).collect();
        if nonzero.is_empty() {
            return Ok(true);
        }
        if nonzero.iter().all(|g| g.c0.is_zero()) {
            return Ok(true); // common root [1:0]
        }
        let two = CycNum::from_int(n, 2);
        let mut g = UPoly::zero(n);
        for q in nonzero {
            // q(t0, 1) = c0 t0² + 2c1 t0 + c2
            let u = UPoly::new(n, vec![q.c2.clone(), &two * &q.c1, q.c0.clone()]);
            g = g.gcd(&u);
        }
        return Ok(g.degree().is_some_and(|d| d > 0));
    }
    let a = Matrix::from_rows(vec![
        vec![vals.c0.clone(), vals.c1.clone()],
        vec![vals.c1.clone(), vals.c2.clone()],
    ])?;
    let ker = a.kernel();
    if ker.len() != 1 {
        return Err(Error::Invariant("fiber matrix over a point of the discriminant is invertible".into()));
    }
    let t = &ker[0];
    Ok(grads.iter().all(|g| g.eval(&t[0], &t[1]).is_zero()))
}

/// Parameters of the reducible-discriminant family.
#[derive(Clone, Debug)]
pub struct ReducibleParams {
    pub a: CycNum,
    pub b: CycNum,
    pub alpha: CycNum,
    pub beta: CycNum,
    pub lambda: CycNum,
    pub s: CycNum,
}

impl ReducibleParams {
    pub fn from_ints(order: u32, v: [i64; 6]) -> Self {
        let [a, b, alpha, beta, lambda, s] = v.map(|x| CycNum::from_int(order, x));
        ReducibleParams {
            a,
            b,
            alpha,
            beta,
            lambda,
            s,
        }
    }
}

/// A surface whose discriminant is the product of the conics
/// yz + xz + xy and αyz + βxz + xy.
pub fn build_reducible_example(p: &ReducibleParams) -> Result<Surface22> {
    let n = p.a.order();
    let fail = |m: &str| Err(Error::ConstraintViolated(m.to_string()));
    let named = [
        ("a", &p.a),
        ("b", &p.b),
        ("alpha", &p.alpha),
        ("beta", &p.beta),
        ("lambda", &p.lambda),
        ("s", &p.s),
    ];
    for (name, v) in named {
        if v.order() != n {
            return Err(Error::OrderMismatch(n, v.order()));
        }
        if v.is_zero() {
            return fail(&format!("{name} must be nonzero"));
        }
    }
    let one = CycNum::one(n);
    let two = CycNum::from_int(n, 2);
    let ab = &p.a * &p.b;
    if ab == one {
        return fail("ab must differ from 1");
    }
    if ab == two {
        return fail("ab must differ from 2");
    }
    // s² + (2 − 4/(ab))s + 1 = 0
    let four_over_ab = CycNum::from_int(n, 4).try_div(&ab)?;
    let s2 = &p.s * &p.s;
    let eq = &(&s2 + &(&(&two - &four_over_ab) * &p.s)) + &one;
    if !eq.is_zero() {
        return fail("s must satisfy s^2 + (2 - 4/(ab))s + 1 = 0");
    }
    if (&p.alpha - &one).is_zero() {
        return fail("alpha must differ from 1");
    }
    if (&p.beta - &one).is_zero() {
        return fail("beta must differ from 1");
    }
    if p.alpha == p.beta {
        return fail("alpha must differ from beta");
    }
    if s2 == one {
        return fail("s^2 must differ from 1");
    }
    let c1 = MPoly::parse(n, "y*z + x*z + x*y")?;
    let c2 = MPoly::parse(n, "x*y")?
        .add(&MPoly::parse(n, "y*z")?.scale(&p.alpha))
        .add(&MPoly::parse(n, "x*z")?.scale(&p.beta));
    let lam2 = &p.lambda * &p.lambda;
    let k = (&p.lambda * &(&one - &s2)).inv().ok_or(Error::DivideByZero)?;
    let q1p = c1.scale(&lam2).sub(&c2.scale(&s2)).scale(&k);
    let q3p = c1.scale(&lam2).sub(&c2).scale(&(&p.s * &k));
    let q1 = q1p.scale(&two.try_div(&p.a)?);
    let q2 = q1p.add(&q3p);
    let q3 = q3p.scale(&two.try_div(&p.b)?);
    let surf = Surface22::new(q1, q2, q3)?;
    let d = discriminant(&surf)?;
    if *d.form() != c1.mul(&c2) {
        return Err(Error::Invariant("reducible example discriminant mismatch".into()));
    }
    Ok(surf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fermat() -> Surface22 {
        Surface22::parse(4, "i*x^2 + y^2", "z^2", "i*x^2 - y^2").unwrap()
    }

    fn pt(n: u32, v: [i64; 3]) -> [CycNum; 3] {
        v.map(|x| CycNum::from_int(n, x))
    }

    #[test]
    fn fermat_discriminant() {
        let d = discriminant(&fermat()).unwrap();
        assert_eq!(*d.form(), MPoly::parse(4, "x^4+y^4+z^4").unwrap());
        assert!(delta_smooth(&fermat()).unwrap());
        assert!(z_smooth(&fermat()).unwrap());
        let rep = delta_singular_points(&fermat()).unwrap();
        assert!(rep.smooth && rep.points.is_empty() && rep.complete);
    }

    #[test]
    fn s3_discriminant() {
        let s = Surface22::parse(4, "i*y^2 + i*x*z", "x^2 + y*z", "i*z^2 + i*x*y").unwrap();
        let d = discriminant(&s).unwrap();
        assert_eq!(
            *d.form(),
            MPoly::parse(4, "x^4 + x*y^3 + x*z^3 + 3*x^2*y*z + 2*y^2*z^2").unwrap()
        );
    }

    #[test]
    fn degenerate() {
        let s = Surface22::parse(1, "x^2", "x*y", "y^2").unwrap();
        assert_eq!(discriminant(&s), Err(Error::DegenerateDiscriminant));
        assert_eq!(z_smooth(&s), Err(Error::DegenerateDiscriminant));
    }

    #[test]
    fn klein_is_smooth() {
        let s = Surface22::parse(1, "x^2 - x*y + y^2 + x*z", "x^2 - x*y + y*z", "x^2 - x*z + y*z + z^2").unwrap();
        assert!(delta_smooth(&s).unwrap());
    }

    #[test]
    fn reducible_example() {
        let s = build_reducible_example(&ReducibleParams::from_ints(1, [2, -4, 2, 3, 1, -2])).unwrap();
        let d = discriminant(&s).unwrap();
        let expected = MPoly::parse(1, "y*z+x*z+x*y")
            .unwrap()
            .mul(&MPoly::parse(1, "2*y*z+3*x*z+x*y").unwrap());
        assert_eq!(*d.form(), expected);
        assert!(!delta_smooth(&s).unwrap());
        assert!(z_smooth(&s).unwrap());
        let rep = delta_singular_points(&s).unwrap();
        assert!(rep.complete && !rep.smooth);
        let pts: Vec<[CycNum; 3]> = rep.points.iter().map(|p| p.point.clone()).collect();
        let half = CycNum::from_rat(1, crate::arith::rat_frac(-1, 2));
        let p4 = [half.clone(), CycNum::one(1), CycNum::one(1)];
        let p4 = crate::poly::normalize_point(&p4);
        let mut expected = vec![pt(1, [1, 0, 0]), pt(1, [0, 1, 0]), pt(1, [0, 0, 1]), [p4[0].clone(), p4[1].clone(), p4[2].clone()]];
        expected.sort();
        assert_eq!(pts, expected);
        assert!(rep.points.iter().all(|p| p.node == Some(true)));
        let jac = delta_singular_points_with(&s, SingularRoute::Jacobian).unwrap();
        assert_eq!(jac.points, rep.points);
    }

    #[test]
    fn reducible_preconditions() {
        let bad = |v: [i64; 6]| build_reducible_example(&ReducibleParams::from_ints(1, v));
        assert!(matches!(bad([1, 1, 2, 3, 1, -2]), Err(Error::ConstraintViolated(_))));
        assert!(matches!(bad([2, -4, 2, 2, 1, -2]), Err(Error::ConstraintViolated(_))));
        assert!(matches!(bad([2, -4, 2, 3, 1, 3]), Err(Error::ConstraintViolated(_))));
    }

    #[test]
    fn conic_of_common_zeros() {
        let s = Surface22::parse(1, "y^2 - x*z", "y^2 - x*z", "y^2 - x*z").unwrap();
        let rep = delta_singular_points(&s).unwrap();
        assert!(!rep.complete && !rep.smooth);
    }

    #[test]
    fn singular_z_over_a_node() {
        // over p = [0:0:1] the fiber is t1² = 0 and every ∂Q1/∂x_k vanishes at p
        let s = Surface22::parse(1, "x^2 + y^2", "x*y", "z^2 + x^2").unwrap();
        let d = discriminant(&s).unwrap();
        assert!(!d.is_smooth().unwrap());
        assert!(!z_smooth(&s).unwrap());
    }

    #[test]
    fn singular_z_switches_to_the_jacobian_route() {
        // Q₁, Q₂, Q₃ have no common zero, yet Z and Δ are singular over [0:1:0]
        let s = Surface22::parse(1, "x^2", "y*z", "z^2 + y^2").unwrap();
        assert!(projective_points(s.quadrics()).unwrap().points.is_empty());
        assert!(!z_smooth(&s).unwrap());
        let rep = delta_singular_points(&s).unwrap();
        assert!(!rep.smooth);
        assert!(rep.points.iter().any(|p| p.point == pt(1, [0, 1, 0])));
    }
}
