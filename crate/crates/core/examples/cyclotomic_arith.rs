//! Exact arithmetic in Q(ζₙ) and in one quadratic extension on top of it.

use f218::arith::rat_frac;
use f218::{adjoin_sqrt, CycNum};

fn main() -> f218::Result<()> {
    let z = CycNum::zeta(12);
    let i = CycNum::imag_unit(12)?;
    println!("ζ₁₂³ = {}  (i = {i})", z.pow(3)?);
    println!("ζ₁₂⁴ + ζ₁₂⁸ = {}", &z.pow(4)? + &z.pow(8)?);

    let a = &CycNum::from_rat(12, rat_frac(3, 4)) + &z;
    let b = a.inv().expect("nonzero");
    println!("a = {a}, 1/a = {b}, a·(1/a) = {}", &a * &b);

    // elements embed into larger cyclotomic fields
    println!("i in Q(ζ₂₄): {}", CycNum::imag_unit(4)?.embed(24)?);

    // √2 is not in Q(ζ₄); adjoin it
    let ext = adjoin_sqrt(&CycNum::from_int(4, 2))?;
    let r = ext.sqrt();
    println!("(√2)² = {}", r.try_mul(&r)?);
    println!("(1 + √2)·(1 − √2) = {}", ext.make(CycNum::one(4), CycNum::one(4)).norm());
    Ok(())
}
