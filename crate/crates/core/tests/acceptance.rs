//! Acceptance runner: one [PASS]/[FAIL] line per criterion, nonzero exit
//! status if any criterion fails or overruns its time budget.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use f218::lifting::{aut_lift_decision, aut_x_order, group_closure, involution_trivial_p2_lift, InvolutionCase};
use f218::linearize::{
    generate_group, linearizability_verdict, tilde_fixed_point_exists, verify_verdict, Criterion, GroupStructure,
    LiftedAut, TriBool, VerdictStatus, Witness,
};
use f218::surface::{build_reducible_example, delta_smooth, discriminant, z_smooth, ReducibleParams};
use f218::workbench::{catalog_get, sample_generic};
use f218::{CycNum, MPoly, Matrix, ProjMat};

type Outcome = Result<String, String>;

/// Name, check and time budget in seconds.
type Entry = (&'static str, fn() -> Outcome, Option<u64>);

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn fermat() -> Outcome {
    let e = catalog_get("fermat").map_err(err)?;
    let s = &e.surface;
    let delta = discriminant(s).map_err(err)?;
    ensure(*delta.form() == MPoly::parse(4, "x^4 + y^4 + z^4").unwrap(), "Δ ≠ x⁴+y⁴+z⁴")?;
    ensure(delta_smooth(s).map_err(err)?, "Δ not smooth")?;
    let group = group_closure(&e.generators, 10_000).map_err(err)?;
    ensure(group.len() == 96, format!("closure has {} elements", group.len()))?;
    let r = aut_x_order(s, &e.generators).map_err(err)?;
    ensure(r.liftable.len() == 96, format!("{} liftable", r.liftable.len()))?;
    ensure(r.order_aut_x == 192, format!("order {}", r.order_aut_x))?;
    Ok("|Aut(Δ) ∩ G| = 96, all liftable, order 192".into())
}

fn klein() -> Outcome {
    let e = catalog_get("klein").map_err(err)?;
    let s = &e.surface;
    let n = Matrix::diag(&[CycNum::one(7), CycNum::zeta_pow(7, 3), CycNum::zeta(7)]);
    let dec = aut_lift_decision(s, &n).map_err(err)?;
    ensure(!dec.exists, "diag(1, ζ₇³, ζ₇) lifts")?;
    let r = aut_x_order(s, &[ProjMat::new(n).map_err(err)?]).map_err(err)?;
    ensure(r.order_aut_x == 2, format!("order {}", r.order_aut_x))?;
    Ok("no lift, order 2".into())
}

fn s3() -> Outcome {
    let e = catalog_get("s3").map_err(err)?;
    let s = &e.surface;
    let expected = MPoly::parse(s.order(), "x^4 + x*y^3 + x*z^3 + 3*x^2*y*z + 2*y^2*z^2").unwrap();
    ensure(*discriminant(s).map_err(err)?.form() == expected, "unexpected Δ")?;
    ensure(delta_smooth(s).map_err(err)?, "Δ not smooth")?;
    let r = aut_x_order(s, &e.generators).map_err(err)?;
    ensure(r.liftable.len() == 6, format!("{} liftable", r.liftable.len()))?;
    ensure(r.order_aut_x == 12, format!("order {}", r.order_aut_x))?;
    Ok("liftable subgroup of order 6, order 12".into())
}

fn reducible() -> Outcome {
    let s = build_reducible_example(&ReducibleParams::from_ints(1, [2, -4, 2, 3, 1, -2])).map_err(err)?;
    let c1 = MPoly::parse(1, "y*z + x*z + x*y").unwrap();
    let c2 = MPoly::parse(1, "2*y*z + 3*x*z + x*y").unwrap();
    ensure(*discriminant(&s).map_err(err)?.form() == c1.mul(&c2), "Δ is not the product of the conics")?;
    ensure(z_smooth(&s).map_err(err)?, "Z singular")?;
    let cert = involution_trivial_p2_lift(&s).map_err(err)?.ok_or("no involution certificate")?;
    ensure(cert.case == InvolutionCase::LinearRelation, "not case-i")?;
    ensure(cert.sigma == Matrix::from_ints(1, &[&[1, 2], &[4, -1]]), format!("sigma = {:?}", cert.sigma))?;
    let f = s.equation();
    let moved = f.substitute_linear(Some(&cert.sigma), None).map_err(err)?;
    ensure(moved.proportionality(&f).is_some(), "F∘(σ×id) not proportional to F")?;
    Ok("Δ = C₁·C₂, Z smooth, case-i σ = [[1,2],[4,−1]]".into())
}

fn verdict(s: &f218::Surface22, gens: &[LiftedAut]) -> Result<f218::linearize::Verdict, String> {
    let elements = generate_group(gens, 10_000).map_err(err)?;
    let structure = if gens.len() == 1 { GroupStructure::Cyclic(gens[0].clone()) } else { GroupStructure::General };
    linearizability_verdict(s, &elements, &structure).map_err(err)
}

fn nolinear() -> Outcome {
    let e = catalog_get("nolinear").map_err(err)?;
    let s = &e.surface;
    let tau = e.lifted_named("tau").map_err(err)?.clone();
    let sigma = e.lifted_named("sigma").map_err(err)?.clone();

    let v = verdict(s, std::slice::from_ref(&tau))?;
    ensure(v.status == VerdictStatus::Linearizable, format!("⟨τ⟩: {:?}", v.status))?;
    let Some(Witness::FixedPoint(p)) = &v.witness else {
        return Err("⟨τ⟩: no fixed-point witness".into());
    };
    ensure(verify_verdict(s, &v, Some(&tau)).map_err(err)?, "⟨τ⟩ witness fails re-verification")?;

    let v = verdict(s, &[tau.clone(), sigma.clone()])?;
    ensure(v.status == VerdictStatus::NotProjectivelyLinearizable, format!("⟨τ,σ⟩: {:?}", v.status))?;
    ensure(v.criterion == Some(Criterion::BaseInvolutionWithoutFixedLines), "⟨τ,σ⟩: wrong criterion")?;
    let Some(Witness::Involution(g)) = &v.witness else {
        return Err("⟨τ,σ⟩: no involution witness".into());
    };
    let st2 = sigma.compose(&tau.compose(&tau).map_err(err)?).map_err(err)?;
    ensure(g.canonical() == st2.canonical(), "witness is not στ²")?;
    // the three conditions, from scratch
    g.verify(s).map_err(err)?;
    ensure(g.element_order().map_err(err)? == 2, "witness is not an involution")?;
    ensure(g.m.is_scalar() && !g.n.is_scalar(), "witness does not act on P² only")?;
    ensure(tilde_fixed_point_exists(s, g).map_err(err)? == TriBool::No, "witness fixes a line")?;
    ensure(verify_verdict(s, &v, None).map_err(err)?, "⟨τ,σ⟩ witness fails re-verification")?;
    let p: Vec<String> = p.iter().map(|c| c.to_string()).collect();
    Ok(format!("⟨τ⟩ linearizable at [{}], ⟨τ,σ⟩ not projectively linearizable via στ²", p.join(" : ")))
}

fn c3() -> Outcome {
    let e = catalog_get("s3").map_err(err)?;
    let g = e.lifted_named("c3").map_err(err)?.clone();
    let v = verdict(&e.surface, std::slice::from_ref(&g))?;
    ensure(v.status == VerdictStatus::Linearizable, format!("{:?}", v.status))?;
    ensure(v.criterion == Some(Criterion::OddOrderCyclic), format!("{:?}", v.criterion))?;
    ensure(verify_verdict(&e.surface, &v, Some(&g)).map_err(err)?, "witness fails re-verification")?;
    Ok("linearizable by the odd-order criterion".into())
}

fn property_suites() -> Outcome {
    let mut failed = Vec::new();
    for (name, suite) in common::props::SUITES {
        if catch_unwind(suite).is_err() {
            failed.push(*name);
        }
    }
    ensure(failed.is_empty(), format!("failing suites: {}", failed.join(", ")))?;
    Ok(format!("{} suites", common::props::SUITES.len()))
}

fn genericity() -> Outcome {
    let st = sample_generic(1000, 5, 42);
    ensure(st.lifting_condition <= 0.05, format!("lifting fraction {}", st.lifting_condition))?;
    ensure(st.nonzero_discriminant >= 0.95, format!("nonzero fraction {}", st.nonzero_discriminant))?;
    Ok(format!(
        "lifting {:.3}, nonzero Δ {:.3}, smooth Δ {:.3}",
        st.lifting_condition, st.nonzero_discriminant, st.delta_smooth
    ))
}

fn main() -> ExitCode {
    let criteria: [Entry; 8] = [
        ("1 fermat pipeline", fermat, Some(60)),
        ("2 klein non-lift", klein, Some(10)),
        ("3 s3 pipeline", s3, Some(30)),
        ("4 reducible construction", reducible, Some(30)),
        ("5 nolinear verdicts", nolinear, Some(60)),
        ("6 c3 verdict", c3, Some(10)),
        ("7 property suites", property_suites, None),
        ("8 genericity sampling", genericity, Some(120)),
    ];
    // keep panic messages from the property suites out of the report
    std::panic::set_hook(Box::new(|_| {}));
    let mut all = true;
    for (name, f, limit) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(s)) if elapsed > Duration::from_secs(s) => Err(format!("exceeded {s} s")),
            (o, _) => o,
        };
        let secs = elapsed.as_secs_f64();
        match outcome {
            Ok(detail) => println!("[PASS] {name} ({secs:.2} s): {detail}"),
            Err(why) => {
                all = false;
                println!("[FAIL] {name} ({secs:.2} s): {why}");
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
