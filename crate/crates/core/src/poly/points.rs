//! Common zeros in P² of homogeneous polynomials, found by resultant
//! elimination and in-field root finding.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::CycNum;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

use super::groebner::{check_projective_input, groebner, projective_dimension, ProjectiveDimension};
use super::univariate::{binary_form_roots, normalize_point, roots_in_field, UPoly};
use super::{MPoly, Monomial, Var};

/// Points of a projective zero locus lying in the working field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointReport {
    /// Distinct points, first nonzero coordinate 1, sorted.
    pub points: Vec<[CycNum; 3]>,
    /// True iff `points` is the whole zero locus.
    pub complete: bool,
    pub dimension: ProjectiveDimension,
}

const ATTEMPTS: usize = 12;

/// Common zeros in P² of homogeneous polynomials in x, y, z.
///
/// Positive-dimensional loci are reported with no points and
/// `complete = false`.
pub fn projective_points(gens: &[MPoly]) -> Result<PointReport> {
    check_projective_input(gens)?;
    let gens: Vec<MPoly> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    let gb = groebner(&gens, &Var::X_BLOCK)?;
    let dimension = projective_dimension(&gb);
    let degree = match dimension {
        ProjectiveDimension::Empty => {
            return Ok(PointReport {
                points: Vec::new(),
                complete: true,
                dimension,
            })
        }
        ProjectiveDimension::Positive => {
            return Ok(PointReport {
                points: Vec::new(),
                complete: false,
                dimension,
            })
        }
        ProjectiveDimension::Points(d) => d,
    };
    let order = gens[0].order();
    let mut rng = ChaCha8Rng::seed_from_u64(0x0070_1e75);
    let mut best: Option<(Vec<[CycNum; 3]>, bool)> = None;
    for _ in 0..ATTEMPTS {
        let Some((pts, exhaustive)) = attempt(&gens, order, &mut rng)? else {
            continue;
        };
        let complete = exhaustive || pts.len() == degree;
        if pts.len() > degree {
            return Err(Error::Invariant(format!(
                "found {} points on a scheme of degree {degree}",
                pts.len()
            )));
        }
        if complete {
            return Ok(PointReport {
                points: pts,
                complete,
                dimension,
            });
        }
        if best.as_ref().is_none_or(|(b, _)| b.len() < pts.len()) {
            best = Some((pts, false));
        }
    }
    let (points, complete) = best.unwrap_or((Vec::new(), false));
    Ok(PointReport {
        points,
        complete,
        dimension,
    })
}

fn small(order: u32, rng: &mut ChaCha8Rng) -> CycNum {
    CycNum::from_int(order, rng.random_range(-3..=3))
}

/// One elimination pass with random combinations. Returns the verified
/// points and whether the pass provably found all of them, or `None` when
/// the random choices were degenerate.
fn attempt(gens: &[MPoly], order: u32, rng: &mut ChaCha8Rng) -> Result<Option<(Vec<[CycNum; 3]>, bool)>> {
    let top = gens.iter().map(|g| g.homogeneous_degree().unwrap()).max().unwrap();
    let lin = MPoly::from_terms(
        order,
        Var::X_BLOCK.iter().map(|&v| {
            let c = CycNum::from_int(order, rng.random_range(1..=5));
            (Monomial::var(v), c)
        }),
    );
    let mut combo = || -> MPoly {
        let mut h = MPoly::zero(order);
        for g in gens {
            let c = small(order, rng);
            let shift = top - g.homogeneous_degree().unwrap();
            h = h.add(&g.mul(&lin.pow(shift)).scale(&c));
        }
        h
    };
    let h1 = combo();
    let h2 = combo();
    if h1.is_zero() || h2.is_zero() {
        return Ok(None);
    }
    // move the projection centre [0:0:1] off both curves
    let (r, s) = (small(order, rng), small(order, rng));
    let one = CycNum::one(order);
    let zero = CycNum::zero(order);
    let a = Matrix::from_rows(vec![
        vec![one.clone(), zero.clone(), r.clone()],
        vec![zero.clone(), one.clone(), s.clone()],
        vec![zero.clone(), zero.clone(), one.clone()],
    ])?;
    let g1 = h1.substitute_linear(None, Some(&a))?;
    let g2 = h2.substitute_linear(None, Some(&a))?;
    let centre = [zero.clone(), zero.clone(), one.clone()];
    if g1.eval_x(&centre).is_zero() || g2.eval_x(&centre).is_zero() {
        return Ok(None);
    }
    let d1 = g1.homogeneous_degree().unwrap() as usize;
    let d2 = g2.homogeneous_degree().unwrap() as usize;
    let rdeg = d1 * d2;
    // R(x, 1) by evaluation at x = 0..=rdeg and interpolation
    let xs: Vec<CycNum> = (0..=rdeg as i64).map(|k| CycNum::from_int(order, k)).collect();
    let mut vals = Vec::with_capacity(xs.len());
    for x in &xs {
        let f1 = restrict(&g1, x, &one);
        let f2 = restrict(&g2, x, &one);
        vals.push(resultant(&f1, &f2));
    }
    let rx = interpolate(&xs, &vals);
    if rx.is_zero() {
        return Ok(None);
    }
    let mut coeffs = rx.coeffs().to_vec();
    coeffs.resize(rdeg + 1, zero.clone());
    let (lines, mut exhaustive) = binary_form_roots(&coeffs)?;
    let mut pts = Vec::new();
    for [u, v] in lines {
        let f1 = restrict(&g1, &u, &v);
        let f2 = restrict(&g2, &u, &v);
        let g = f1.gcd(&f2);
        if g.degree().unwrap_or(0) == 0 {
            continue;
        }
        let rep = roots_in_field(&g);
        exhaustive &= rep.complete;
        for w in rep.roots {
            let p = a.apply(&[u.clone(), v.clone(), w]);
            if gens.iter().all(|f| f.eval_x(&p).is_zero()) {
                let q = normalize_point(&p);
                pts.push([q[0].clone(), q[1].clone(), q[2].clone()]);
            }
        }
    }
    pts.sort();
    pts.dedup();
    Ok(Some((pts, exhaustive)))
}

/// f(u, v, z) as a polynomial in z.
fn restrict(f: &MPoly, u: &CycNum, v: &CycNum) -> UPoly {
    let order = f.order();
    let d = f.homogeneous_degree().unwrap() as usize;
    let mut c = vec![CycNum::zero(order); d + 1];
    for (m, a) in f.terms() {
        let e = m.exps();
        let t = &(a * &u.pow(e[2] as i64).unwrap()) * &v.pow(e[3] as i64).unwrap();
        let k = e[4] as usize;
        c[k] = &c[k] + &t;
    }
    UPoly::new(order, c)
}

/// Resultant of two univariate polynomials over a field.
pub fn resultant(f: &UPoly, g: &UPoly) -> CycNum {
    let order = f.order();
    let (Some(mut m), Some(mut n)) = (f.degree(), g.degree()) else {
        return CycNum::zero(order);
    };
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = CycNum::one(order);
    loop {
        if n == 0 {
            return &acc * &b.leading().unwrap().pow(m as i64).unwrap();
        }
        let r = a.divrem(&b).1;
        let Some(k) = r.degree() else {
            return CycNum::zero(order);
        };
        // Res(a, b) = (-1)^{mn} lc(b)^{m-k} Res(b, r)
        if (m * n) % 2 == 1 {
            acc = -acc;
        }
        acc = &acc * &b.leading().unwrap().pow((m - k) as i64).unwrap();
        a = b;
        b = r;
        m = n;
        n = k;
    }
}

/// Newton interpolation through (xs[i], ys[i]).
fn interpolate(xs: &[CycNum], ys: &[CycNum]) -> UPoly {
    let order = xs[0].order();
    let k = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..k {
        for i in (j..k).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &xs[i] - &xs[i - j];
            dd[i] = num.try_div(&den).expect("distinct nodes");
        }
    }
    let mut p = UPoly::new(order, vec![dd[k - 1].clone()]);
    for i in (0..k - 1).rev() {
        let lin = UPoly::new(order, vec![-&xs[i], CycNum::one(order)]);
        p = p.mul(&lin).add(&UPoly::new(order, vec![dd[i].clone()]));
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(order: u32, s: &str) -> MPoly {
        MPoly::parse(order, s).unwrap()
    }

    fn pt(order: u32, c: [i64; 3]) -> [CycNum; 3] {
        c.map(|x| CycNum::from_int(order, x))
    }

    #[test]
    fn four_rational_points() {
        let rep = projective_points(&[p(1, "x^2-y^2"), p(1, "x^2+y^2-2*z^2")]).unwrap();
        assert!(rep.complete);
        let mut expected = vec![pt(1, [1, 1, 1]), pt(1, [1, -1, 1]), pt(1, [1, 1, -1]), pt(1, [1, -1, -1])];
        expected.sort();
        assert_eq!(rep.points, expected);
    }

    #[test]
    fn irrational_points_are_incomplete() {
        let rep = projective_points(&[p(1, "x^2-2*z^2"), p(1, "y")]).unwrap();
        assert!(rep.points.is_empty());
        assert!(!rep.complete);
        let rep = projective_points(&[p(8, "x^2-2*z^2"), p(8, "y")]).unwrap();
        assert_eq!(rep.points.len(), 2);
        assert!(rep.complete);
    }

    #[test]
    fn empty_and_curve() {
        let rep = projective_points(&[p(1, "x"), p(1, "y"), p(1, "z")]).unwrap();
        assert!(rep.complete && rep.points.is_empty());
        let rep = projective_points(&[p(1, "y^2-x*z")]).unwrap();
        assert!(!rep.complete);
        assert_eq!(rep.dimension, ProjectiveDimension::Positive);
    }

    #[test]
    fn resultant_of_linear_factors() {
        let f = UPoly::from_ints(1, &[-1, 1]);
        let g = UPoly::from_ints(1, &[-3, 0, 1]);
        // Res(z - 1, z^2 - 3) = 1 - 3
        assert_eq!(resultant(&f, &g), CycNum::from_int(1, -2));
        assert_eq!(resultant(&g, &f), CycNum::from_int(1, -2));
    }
}
