//! A cyclic action that is linearizable and an extension of it that is not.

use f218::linearize::{
    fixed_points_on_delta, generate_group, linearizability_verdict, swaps_lines, GroupStructure, LiftedAut,
};
use f218::surface::discriminant;
use f218::workbench::catalog_get;
use f218::workbench::json::verdict_to_json;

fn main() -> f218::Result<()> {
    let e = catalog_get("nolinear")?;
    let s = &e.surface;
    let tau = e.lifted_named("tau")?.clone();
    let deck = LiftedAut::deck(s.order());

    let delta = discriminant(s)?;
    for p in fixed_points_on_delta(&tau.n, &delta)?.points {
        println!("[{} : {} : {}] lines swapped: {}", p[0], p[1], p[2], swaps_lines(&tau, s, &p)?);
    }

    let cyclic = generate_group(std::slice::from_ref(&tau), 100)?;
    let v = linearizability_verdict(s, &cyclic, &GroupStructure::Cyclic(tau.clone()))?;
    println!("⟨τ⟩: {}", verdict_to_json(&v));

    let bigger = generate_group(&[tau, deck], 100)?;
    let v = linearizability_verdict(s, &bigger, &GroupStructure::General)?;
    println!("⟨τ, deck⟩ ({} elements): {}", bigger.len(), verdict_to_json(&v));
    Ok(())
}
