//! A smooth branch surface whose discriminant splits into two conics.

use f218::lifting::involution_trivial_p2_lift;
use f218::surface::{build_reducible_example, delta_singular_points, discriminant, z_smooth, ReducibleParams};

fn main() -> f218::Result<()> {
    let params = ReducibleParams::from_ints(1, [2, -4, 2, 3, 1, -2]);
    let s = build_reducible_example(&params)?;
    for (k, q) in s.quadrics().iter().enumerate() {
        println!("Q{} = {q}", k + 1);
    }
    println!("Δ = {}", discriminant(&s)?.form());
    let rep = delta_singular_points(&s)?;
    for p in &rep.points {
        println!("node at [{} : {} : {}]", p.point[0], p.point[1], p.point[2]);
    }
    println!("Z smooth: {}", z_smooth(&s)?);
    if let Some(cert) = involution_trivial_p2_lift(&s)? {
        println!("involution on P¹: {:?}, σ = {}, F∘σ = {}·F", cert.case, cert.sigma, cert.c);
    }
    Ok(())
}
