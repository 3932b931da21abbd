//! An S₃-symmetric surface: the group order and a cyclic verdict.

use f218::lifting::aut_x_order;
use f218::linearize::{generate_group, linearizability_verdict, GroupStructure};
use f218::surface::discriminant;
use f218::workbench::catalog_get;

fn main() -> f218::Result<()> {
    let e = catalog_get("s3")?;
    let s = &e.surface;
    println!("Δ = {}", discriminant(s)?.form());
    let r = aut_x_order(s, &e.generators)?;
    println!("liftable: {}, |Aut(X)| over this group: {}", r.liftable.len(), r.order_aut_x);

    let g = e.lifted_named("c3")?;
    let elements = generate_group(std::slice::from_ref(g), 100)?;
    let v = linearizability_verdict(s, &elements, &GroupStructure::Cyclic(g.clone()))?;
    println!("C₃ verdict: {:?} ({:?})", v.status, v.criterion);
    Ok(())
}
