//! Every automorphism of the Fermat quartic lifts to the double cover.

use f218::lifting::aut_x_order;
use f218::surface::discriminant;
use f218::workbench::catalog_get;

fn main() -> f218::Result<()> {
    let e = catalog_get("fermat")?;
    println!("Δ = {}", discriminant(&e.surface)?.form());
    let r = aut_x_order(&e.surface, &e.generators)?;
    println!("group generated: {} elements", r.group.len());
    println!("liftable: {}", r.liftable.len());
    println!("|Aut(X)| over this group: {}", r.order_aut_x);
    let (m, n) = &r.lifted_pairs[1];
    println!("sample lift:\n  N = {n}\n  M = {m}");
    Ok(())
}
