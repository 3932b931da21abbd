//! The order-7 automorphism of the Klein quartic does not lift.

use f218::lifting::{aut_lift_decision, aut_x_order};
use f218::surface::discriminant;
use f218::workbench::catalog_get;
use f218::{CycNum, Matrix, ProjMat};

fn main() -> f218::Result<()> {
    let e = catalog_get("klein")?;
    println!("Δ = {}", discriminant(&e.surface)?.form());
    let n = Matrix::diag(&[CycNum::one(7), CycNum::zeta_pow(7, 3), CycNum::zeta(7)]);
    let dec = aut_lift_decision(&e.surface, &n)?;
    println!("diag(1, ζ₇³, ζ₇) lifts: {}", dec.exists);
    let r = aut_x_order(&e.surface, &[ProjMat::new(n)?])?;
    println!("order over ⟨N⟩: {} (only the deck involution survives)", r.order_aut_x);
    Ok(())
}
