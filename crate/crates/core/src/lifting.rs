//! Which automorphisms of the discriminant quartic lift to P¹×P² preserving
//! Z, involutions acting trivially on P², finite group closure, and the order
//! of the automorphism group of the double cover.
//!
//! Write c(x) = (Q₁(x), Q₂(x), Q₃(x)) for the coefficient vector of the fiber
//! form over x. If Qᵢ∘N = Σⱼ Tᵢⱼ Qⱼ then c(Nx) = T·c(x), and a matrix M with
//! F∘(M×N) ∝ F exists exactly when T preserves the conic of squares
//! c₁² = c₀c₂, i.e. TᵀDT = μD.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::arith::{rat_frac, CycNum};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, ProjMat};
use crate::poly::MPoly;
use crate::surface::{delta_smooth, discriminant, QuarticCurve, Surface22};

/// Default cap on the size of a group closure.
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// Some λ with Δ∘N = λΔ.
pub fn preserves_delta(n: &Matrix, delta: &QuarticCurve) -> Result<Option<CycNum>> {
    let moved = delta.form().substitute_linear(None, Some(n))?;
    Ok(moved.proportionality(delta.form()))
}

/// The matrix of c₁² − c₀c₂ in the coordinates (c₀, c₁, c₂).
pub fn conic_matrix(order: u32) -> Matrix {
    let h = CycNum::from_rat(order, rat_frac(-1, 2));
    let z = CycNum::zero(order);
    Matrix::from_rows(vec![
        vec![z.clone(), z.clone(), h.clone()],
        vec![z.clone(), CycNum::one(order), z.clone()],
        vec![h, z.clone(), z],
    ])
    .unwrap()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum InvolutionCase {
    /// 2Q₂ = aQ₁ + bQ₃ with ab ≠ 1.
    #[serde(rename = "case-i")]
    LinearRelation,
    /// Q₃ = aQ₁ with a ≠ 0.
    #[serde(rename = "case-ii")]
    Proportional,
}

/// A verified involution σ × id of P¹×P² preserving Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvolutionCertificate {
    pub case: InvolutionCase,
    pub a: CycNum,
    /// Present in the linear-relation case.
    pub b: Option<CycNum>,
    /// The P¹ matrix, exactly as in the case description (not rescaled).
    pub sigma: Matrix,
    /// F∘(σ × id) = c·F.
    pub c: CycNum,
    /// Both cases apply; the proportional case was chosen.
    pub overlap: bool,
}

/// F with t replaced by σt.
fn f_under(s: &Surface22, m: Option<&Matrix>, n: Option<&Matrix>) -> Result<MPoly> {
    s.equation().substitute_linear(m, n)
}

/// (a, b) with 2Q₂ = aQ₁ + bQ₃ and ab ≠ 1, if any.
pub fn linear_relation(s: &Surface22) -> Result<Option<(CycNum, CycNum)>> {
    let n = s.order();
    let c1 = s.quadric_coeffs(0);
    let c2 = s.quadric_coeffs(1);
    let c3 = s.quadric_coeffs(2);
    let two = CycNum::from_int(n, 2);
    let a = Matrix::from_rows((0..6).map(|k| vec![c1[k].clone(), c3[k].clone()]).collect())?;
    let rhs: Vec<CycNum> = c2.iter().map(|c| c * &two).collect();
    let Some(x0) = a.solve(&rhs) else {
        return Ok(None);
    };
    let ker = a.kernel();
    let one = CycNum::one(n);
    let candidates: Vec<Vec<CycNum>> = match ker.len() {
        0 => vec![x0],
        1 => (0..3)
            .map(|k| {
                let s = CycNum::from_int(n, k);
                vec![&x0[0] + &(&s * &ker[0][0]), &x0[1] + &(&s * &ker[0][1])]
            })
            .collect(),
        // Q1 = Q3 = 0 forces Q2 = 0, excluded by construction
        _ => vec![x0, vec![CycNum::zero(n), CycNum::zero(n)]],
    };
    // ab is quadratic along a line of solutions, so three samples decide
    // whether it is identically 1
    Ok(candidates
        .into_iter()
        .find(|x| &x[0] * &x[1] != one)
        .map(|x| (x[0].clone(), x[1].clone())))
}

/// a ≠ 0 with Q₃ = aQ₁, if any.
pub fn proportional_relation(s: &Surface22) -> Option<CycNum> {
    let [q1, _, q3] = s.quadrics();
    if q1.is_zero() && q3.is_zero() {
        Some(CycNum::one(s.order()))
    } else {
        q3.proportionality(q1)
    }
}

/// Certificate for an involution acting on P¹ only, if one exists.
pub fn involution_trivial_p2_lift(s: &Surface22) -> Result<Option<InvolutionCertificate>> {
    discriminant(s)?;
    let n = s.order();
    let zero = CycNum::zero(n);
    let one = CycNum::one(n);
    let relation = linear_relation(s)?;
    let proportional = proportional_relation(s);
    let cert = if let Some(a) = proportional {
        let sigma = Matrix::from_rows(vec![vec![zero.clone(), a.clone()], vec![one.clone(), zero.clone()]])?;
        Some((InvolutionCase::Proportional, a, None, sigma, relation.is_some()))
    } else if let Some((a, b)) = relation {
        let sigma = Matrix::from_rows(vec![vec![one.clone(), a.clone()], vec![-&b, -&one]])?;
        Some((InvolutionCase::LinearRelation, a, Some(b), sigma, false))
    } else {
        None
    };
    let Some((case, a, b, sigma, overlap)) = cert else {
        return Ok(None);
    };
    let f = s.equation();
    let moved = f_under(s, Some(&sigma), None)?;
    let c = moved
        .proportionality(&f)
        .ok_or_else(|| Error::Invariant("involution certificate does not preserve F".into()))?;
    Ok(Some(InvolutionCertificate {
        case,
        a,
        b,
        sigma,
        c,
        overlap,
    }))
}

/// Outcome of the lifting test for one element of Aut(Δ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftDecision {
    pub exists: bool,
    /// Qᵢ∘N = Σⱼ Tᵢⱼ Qⱼ, when solvable.
    pub t: Option<Matrix>,
    /// TᵀDT = μD, when a lift exists.
    pub mu: Option<CycNum>,
    /// The P¹ part, canonically scaled.
    pub m: Option<ProjMat>,
    /// F∘(M×N) = c_g·F for the stored M and the N passed in.
    pub c_g: Option<CycNum>,
}

/// Decides whether N ∈ Aut(Δ) lifts, and reconstructs the P¹ part.
pub fn aut_lift_decision(s: &Surface22, n: &Matrix) -> Result<LiftDecision> {
    let order = s.order();
    let delta = discriminant(s)?;
    if preserves_delta(n, &delta)?.is_none() {
        return Err(Error::NotInAutDelta);
    }
    let basis = Matrix::from_rows(
        (0..6)
            .map(|k| (0..3).map(|j| s.quadric_coeffs(j)[k].clone()).collect())
            .collect(),
    )?;
    if basis.rank() < 3 {
        return Err(Error::Unsupported("Q1, Q2, Q3 are linearly dependent".into()));
    }
    let moved = s.transform_x(n)?;
    let mut rows = Vec::with_capacity(3);
    for i in 0..3 {
        match basis.solve(&moved.quadric_coeffs(i)) {
            Some(x) => rows.push(x),
            None => {
                return Ok(LiftDecision {
                    exists: false,
                    t: None,
                    mu: None,
                    m: None,
                    c_g: None,
                })
            }
        }
    }
    let t = Matrix::from_rows(rows)?;
    let d = conic_matrix(order);
    let tdt = t.transpose().mul(&d)?.mul(&t)?;
    let mu = tdt.get(1, 1).clone();
    if mu.is_zero() || tdt != d.scale(&mu) {
        return Ok(LiftDecision {
            exists: false,
            t: Some(t),
            mu: None,
            m: None,
            c_g: None,
        });
    }
    let m = reconstruct_m(&t)?;
    let f = s.equation();
    let c_g = f_under(s, Some(m.matrix()), Some(n))?.proportionality(&f);
    let (m, c_g) = match c_g {
        Some(c) => (Some(m), Some(c)),
        None => (None, None),
    };
    Ok(LiftDecision {
        exists: true,
        t: Some(t),
        mu: Some(mu),
        m,
        c_g,
    })
}

/// Point of P¹ whose square (a², 2ab, b²) is proportional to `v`.
fn square_root_point(v: &[CycNum]) -> Result<[CycNum; 2]> {
    let n = v[0].order();
    if !v[0].is_zero() {
        Ok([&v[0] * &CycNum::from_int(n, 2), v[1].clone()])
    } else if !v[2].is_zero() && v[1].is_zero() {
        Ok([CycNum::zero(n), CycNum::one(n)])
    } else {
        Err(Error::Invariant("column is not on the conic of squares".into()))
    }
}

fn ratio(num: &[CycNum], den: &[CycNum]) -> Result<CycNum> {
    let k = den
        .iter()
        .position(|x| !x.is_zero())
        .ok_or_else(|| Error::Invariant("zero column in symmetric square".into()))?;
    num[k].try_div(&den[k])
}

/// M with F∘(M×N) ∝ F from the conic-preserving T: the matrix
/// R = T^{-T} satisfies φ(Mt) ∝ R·φ(t) with φ(t) = (t₀², 2t₀t₁, t₁²),
/// which determines the columns of M from the columns of R without any
/// square roots.
fn reconstruct_m(t: &Matrix) -> Result<ProjMat> {
    let r = t.inverse()?.transpose();
    let [a, b] = square_root_point(&r.col(0))?;
    let [c, d] = square_root_point(&r.col(2))?;
    let sq0 = [&a * &a, &(&a * &b) * &CycNum::from_int(a.order(), 2), &b * &b];
    let mixed = [&a * &c, &(&a * &d) + &(&b * &c), &b * &d];
    let k1 = ratio(&r.col(0), &sq0)?;
    let k2 = ratio(&r.col(1), &mixed)?;
    let l = k1.try_div(&k2)?;
    let m = Matrix::from_rows(vec![vec![&l * &a, c], vec![&l * &b, d]])?;
    ProjMat::new(m)
}

/// All products of the generators, canonically scaled and sorted.
pub fn group_closure(gens: &[ProjMat], cap: usize) -> Result<Vec<ProjMat>> {
    let first = gens
        .first()
        .ok_or_else(|| Error::Validation("no generators".into()))?;
    let (order, dim) = (first.order(), first.dim());
    for g in gens {
        if g.order() != order {
            return Err(Error::OrderMismatch(order, g.order()));
        }
        if g.dim() != dim {
            return Err(Error::Validation("generators of different sizes".into()));
        }
    }
    let id = ProjMat::identity(order, dim);
    let mut seen: HashSet<ProjMat> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = x.compose(g)?;
            if !seen.contains(&y) {
                if seen.len() >= cap {
                    return Err(Error::CapExceeded(cap));
                }
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    let sorted: BTreeSet<ProjMat> = seen.into_iter().collect();
    Ok(sorted.into_iter().collect())
}

#[derive(Clone, Debug)]
pub struct AutOrder {
    /// 2·|liftable|.
    pub order_aut_x: usize,
    /// The closed group generated by the input.
    pub group: Vec<ProjMat>,
    /// Elements that lift, sorted.
    pub liftable: Vec<ProjMat>,
    /// (M, N) for each liftable N.
    pub lifted_pairs: Vec<(ProjMat, ProjMat)>,
}

/// Order of the automorphism group of the double cover restricted to the
/// subgroup of Aut(Δ) generated by `gens`.
pub fn aut_x_order(s: &Surface22, gens: &[ProjMat]) -> Result<AutOrder> {
    aut_x_order_with_cap(s, gens, DEFAULT_GROUP_CAP)
}

pub fn aut_x_order_with_cap(s: &Surface22, gens: &[ProjMat], cap: usize) -> Result<AutOrder> {
    if !delta_smooth(s)? {
        return Err(Error::DeltaNotSmooth);
    }
    let delta = discriminant(s)?;
    for g in gens {
        if preserves_delta(g.matrix(), &delta)?.is_none() {
            return Err(Error::NotInAutDelta);
        }
    }
    let group = group_closure(gens, cap)?;
    let mut liftable = Vec::new();
    let mut lifted_pairs = Vec::new();
    for g in &group {
        let dec = aut_lift_decision(s, g.matrix())?;
        if dec.exists {
            liftable.push(g.clone());
            if let Some(m) = dec.m {
                lifted_pairs.push((m, g.clone()));
            }
        }
    }
    check_subgroup(&liftable)?;
    Ok(AutOrder {
        order_aut_x: 2 * liftable.len(),
        group,
        liftable,
        lifted_pairs,
    })
}

/// Closure under products and inverses.
fn check_subgroup(h: &[ProjMat]) -> Result<()> {
    let set: HashSet<&ProjMat> = h.iter().collect();
    for a in h {
        if !set.contains(&a.inverse()) {
            return Err(Error::Invariant("liftable elements not closed under inverses".into()));
        }
        for b in h {
            if !set.contains(&a.compose(b)?) {
                return Err(Error::Invariant("liftable elements not closed under products".into()));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn fermat() -> Surface22 {
        Surface22::parse(4, "i*x^2 + y^2", "z^2", "i*x^2 - y^2").unwrap()
    }

    fn klein() -> Surface22 {
        Surface22::parse(7, "x^2 - x*y + y^2 + x*z", "x^2 - x*y + y*z", "x^2 - x*z + y*z + z^2").unwrap()
    }

    fn z(n: u32, k: i64) -> CycNum {
        CycNum::zeta_pow(n, k)
    }

    #[test]
    fn delta_scalars() {
        let d = discriminant(&fermat()).unwrap();
        assert_eq!(preserves_delta(&Matrix::identity(4, 3), &d).unwrap(), Some(CycNum::one(4)));
        let kq = QuarticCurve::new(MPoly::parse(7, "x^3*y + y^3*z + z^3*x").unwrap()).unwrap();
        let n = Matrix::diag(&[CycNum::one(7), z(7, 3), z(7, 1)]);
        assert_eq!(preserves_delta(&n, &kq).unwrap(), Some(z(7, 3)));
        let f = QuarticCurve::new(MPoly::parse(3, "x^4+y^4+z^4").unwrap()).unwrap();
        let n = Matrix::diag(&[CycNum::one(3), CycNum::one(3), z(3, 1)]);
        assert_eq!(preserves_delta(&n, &f).unwrap(), None);
    }

    #[test]
    fn identity_lifts_trivially() {
        let d = aut_lift_decision(&fermat(), &Matrix::identity(4, 3)).unwrap();
        assert!(d.exists);
        assert_eq!(d.t, Some(Matrix::identity(4, 3)));
        assert_eq!(d.mu, Some(CycNum::one(4)));
        assert_eq!(d.m, Some(ProjMat::identity(4, 2)));
        assert_eq!(d.c_g, Some(CycNum::one(4)));
    }

    #[test]
    fn fermat_swap_lifts() {
        let n = Matrix::from_ints(4, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        let d = aut_lift_decision(&fermat(), &n).unwrap();
        assert!(d.exists);
        let i = z(4, 1);
        let zero = CycNum::zero(4);
        let t = Matrix::from_rows(vec![
            vec![zero.clone(), zero.clone(), -&i],
            vec![zero.clone(), CycNum::one(4), zero.clone()],
            vec![i.clone(), zero.clone(), zero.clone()],
        ])
        .unwrap();
        assert_eq!(d.t, Some(t));
        assert_eq!(d.mu, Some(CycNum::one(4)));
        // [t0:t1] -> [i t1 : t0]
        let expected = ProjMat::new(Matrix::from_rows(vec![vec![zero.clone(), i], vec![CycNum::one(4), zero]]).unwrap()).unwrap();
        assert_eq!(d.m, Some(expected));
    }

    #[test]
    fn klein_order_seven_does_not_lift() {
        let n = Matrix::diag(&[CycNum::one(7), z(7, 3), z(7, 1)]);
        let s = klein();
        let delta = discriminant(&s).unwrap();
        assert_eq!(preserves_delta(&n, &delta).unwrap(), Some(z(7, 3)));
        let d = aut_lift_decision(&s, &n).unwrap();
        assert!(!d.exists && d.t.is_none());
    }

    #[test]
    fn involution_cases() {
        let r = crate::surface::build_reducible_example(&crate::surface::ReducibleParams::from_ints(1, [2, -4, 2, 3, 1, -2])).unwrap();
        let c = involution_trivial_p2_lift(&r).unwrap().unwrap();
        assert_eq!(c.case, InvolutionCase::LinearRelation);
        assert_eq!((c.a.clone(), c.b.clone()), (CycNum::from_int(1, 2), Some(CycNum::from_int(1, -4))));
        assert_eq!(c.sigma, Matrix::from_ints(1, &[&[1, 2], &[4, -1]]));
        assert!(involution_trivial_p2_lift(&fermat()).unwrap().is_none());
        let s = Surface22::parse(1, "x^2 + y*z", "y^2", "2*x^2 + 2*y*z").unwrap();
        let c = involution_trivial_p2_lift(&s).unwrap().unwrap();
        assert_eq!(c.case, InvolutionCase::Proportional);
        assert_eq!(c.a, CycNum::from_rat(1, rat(2)));
        assert_eq!(c.sigma, Matrix::from_ints(1, &[&[0, 2], &[1, 0]]));
    }

    #[test]
    fn closures() {
        let g = ProjMat::new(Matrix::diag(&[CycNum::one(3), z(3, 1), z(3, 2)])).unwrap();
        assert_eq!(group_closure(&[g], 100).unwrap().len(), 3);
        let g = ProjMat::new(Matrix::diag(&[CycNum::one(7), z(7, 3), z(7, 1)])).unwrap();
        assert_eq!(group_closure(std::slice::from_ref(&g), 100).unwrap().len(), 7);
        assert_eq!(group_closure(&[g], 3), Err(Error::CapExceeded(3)));
    }
}
