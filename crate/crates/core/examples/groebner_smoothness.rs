//! Gröbner bases, projective points and smoothness of plane curves.

use f218::poly::groebner::{groebner, projective_locus_empty};
use f218::poly::points::projective_points;
use f218::surface::{delta_singular_points, discriminant, z_smooth};
use f218::{MPoly, Surface22, Var};

fn main() -> f218::Result<()> {
    // two conics meeting in four points, two of them over Q(i) only
    let gens = [MPoly::parse(1, "x^2 - y^2")?, MPoly::parse(1, "x*y - z^2")?];
    for g in groebner(&gens, &Var::X_BLOCK)? {
        println!("basis element: {g}");
    }
    let pts = projective_points(&gens)?;
    println!("points found: {} (complete: {})", pts.points.len(), pts.complete);
    for p in &pts.points {
        println!("  [{} : {} : {}]", p[0], p[1], p[2]);
    }

    // the Jacobian ideal of a smooth conic has no zeros
    let conic = MPoly::parse(1, "x^2 + y^2 - z^2")?;
    println!("x²+y²−z² smooth: {}", projective_locus_empty(&conic.partials(f218::poly::Block::X))?);

    // Q₁, Q₂, Q₃ have no common zero, but Z is singular over [0:1:0]
    let s = Surface22::parse(1, "x^2", "y*z", "z^2 + y^2")?;
    println!("Δ = {}", discriminant(&s)?.form());
    let rep = delta_singular_points(&s)?;
    println!("Δ smooth: {}, singular points: {}", rep.smooth, rep.points.len());
    println!("Z smooth: {}", z_smooth(&s)?);
    Ok(())
}
