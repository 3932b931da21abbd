//! Property suites, shared by the `properties` test target and the
//! acceptance runner. Seeds are fixed so that failures reproduce.

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use super::{monomials, Fp};
use f218::arith::{euler_phi, rat, rat_frac};
use f218::lifting::{aut_lift_decision, aut_x_order, involution_trivial_p2_lift, preserves_delta, InvolutionCase};
use f218::linearize::{
    fixed_points_on_delta, generate_group, linearizability_verdict, swaps_lines, tilde_fixed_point_exists,
    verify_verdict, GroupStructure, LiftedAut, VerdictStatus,
};
use f218::poly::groebner::projective_locus_empty;
use f218::poly::points::projective_points;
use f218::poly::Var;
use f218::surface::{build_reducible_example, discriminant, ReducibleParams};
use f218::workbench::catalog_get;
use f218::{CycNum, Error, MPoly, Matrix, Monomial, ProjMat, Rat, Surface22};

fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(0x218),
        failure_persistence: None,
        ..Config::default()
    }
}

const ORDERS: [u32; 6] = [1, 3, 4, 5, 8, 12];

fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat_frac(n, d))
}

fn nonzero_rat() -> impl Strategy<Value = Rat> {
    small_rat().prop_filter("nonzero", |r| *r != rat(0))
}

fn cyc(order: u32) -> impl Strategy<Value = CycNum> {
    prop::collection::vec(small_rat(), euler_phi(order)).prop_map(move |c| CycNum::new(order, c).unwrap())
}

fn cyc_triple() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
    prop::sample::select(&ORDERS[..]).prop_flat_map(|n| (cyc(n), cyc(n), cyc(n)))
}

fn x_monomial(e: [u16; 3]) -> Monomial {
    Monomial([0, 0, e[0], e[1], e[2]])
}

/// A form of degree `d` in x, y, z with coefficients in [−2, 2].
fn form(d: u16) -> impl Strategy<Value = MPoly> {
    let mons = monomials(d as u32);
    prop::collection::vec(-2i64..=2, mons.len()).prop_map(move |cs| {
        MPoly::from_terms(1, mons.iter().zip(cs).map(|(m, c)| (x_monomial(*m), CycNum::from_int(1, c))))
    })
}

fn int_matrix(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-2i64..=2, n * n).prop_filter_map("singular", move |v| {
        let rows: Vec<&[i64]> = v.chunks(n).collect();
        let m = Matrix::from_ints(1, &rows);
        (!m.det().is_zero()).then_some(m)
    })
}

fn quadric(coeffs: &[i64; 6]) -> MPoly {
    let mons = f218::poly::quadric_monomials();
    MPoly::from_terms(1, mons.iter().zip(coeffs).map(|(m, &c)| (*m, CycNum::from_int(1, c))))
}

proptest! {
    #![proptest_config(config(1000))]

    fn field_axioms((a, b, c) in cyc_triple()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-&a)).is_zero());
        prop_assert_eq!(&a * &CycNum::one(a.order()), a.clone());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!((&b * &a).try_div(&a).unwrap(), b.clone());
        }
    }
}

proptest! {
    #![proptest_config(config(200))]

    fn linear_substitution_round_trip(f in form(3), g in form(2), n in int_matrix(3), m in int_matrix(2)) {
        let ninv = n.inverse().unwrap();
        let moved = f.substitute_linear(None, Some(&n)).unwrap();
        prop_assert_eq!(moved.substitute_linear(None, Some(&ninv)).unwrap(), f.clone());
        // (f∘N)∘N' = f∘(N·N')
        let nn = n.mul(&ninv).unwrap();
        prop_assert_eq!(f.substitute_linear(None, Some(&nn)).unwrap(), f.clone());
        // a mixed form in t and x
        let t0 = MPoly::var(1, Var::T0);
        let t1 = MPoly::var(1, Var::T1);
        let h = t0.mul(&t0).mul(&g).add(&t0.mul(&t1).mul(&f.partial(Var::X)));
        let moved = h.substitute_linear(Some(&m), Some(&n)).unwrap();
        let back = moved.substitute_linear(Some(&m.inverse().unwrap()), Some(&ninv)).unwrap();
        prop_assert_eq!(back, h);
    }
}

const PRIMES: [u64; 3] = [7, 11, 13];

/// Forms of degree 1 or 2, optionally forced through a small point.
fn ideal() -> impl Strategy<Value = (Vec<MPoly>, Option<[i64; 3]>)> {
    let gens = prop::collection::vec(prop::sample::select(vec![1u16, 2]).prop_flat_map(form), 2..=3);
    let planted = prop::option::of(prop::array::uniform3(-1i64..=2).prop_filter("nonzero", |p| p.iter().any(|&c| c != 0)));
    (gens, planted).prop_map(|(gens, planted)| {
        let Some(p) = planted else { return (gens, None) };
        let pt = p.map(|c| CycNum::from_int(1, c));
        let k = p.iter().position(|&c| c != 0).unwrap();
        let gens = gens
            .into_iter()
            .map(|f| {
                // f − f(p)/p_k^d · x_k^d vanishes at p
                let d = f.homogeneous_degree().unwrap_or(1) as u16;
                let mut e = [0u16; 3];
                e[k] = d;
                let corr = f.eval_x(&pt).try_div(&pt[k].pow(d as i64).unwrap()).unwrap();
                f.sub(&MPoly::term(x_monomial(e), corr))
            })
            .collect();
        (gens, Some(p))
    })
}

proptest! {
    #![proptest_config(config(60))]

    fn emptiness_agrees_with_finite_fields((gens, planted) in ideal()) {
        let gens: Vec<MPoly> = gens.into_iter().filter(|g| !g.is_zero()).collect();
        prop_assume!(!gens.is_empty());
        let empty = projective_locus_empty(&gens).unwrap();
        let e = gens.iter().filter_map(|g| g.homogeneous_degree()).max().unwrap();
        let mut full_somewhere = false;
        for p in PRIMES {
            let f = Fp::new(p, 1);
            let full = f.macaulay_full(&gens, 3 * e - 2);
            let zeros = f.zeros(&gens);
            if full {
                prop_assert!(empty, "full rank mod {} but the library found a point", p);
                prop_assert!(zeros.is_empty());
                full_somewhere = true;
            }
            if let Some(q) = planted {
                let q = f.normalize(q.map(|c| c.rem_euclid(p as i64) as u64));
                prop_assert!(zeros.contains(&q));
            }
        }
        if empty {
            prop_assert!(full_somewhere, "empty over Q but no prime certifies it");
        }
        if planted.is_some() {
            prop_assert!(!empty);
        }
        if !empty {
            let rep = projective_points(&gens).unwrap();
            for p in PRIMES {
                let f = Fp::new(p, 1);
                let zeros = f.zeros(&gens);
                for q in rep.points.iter().filter(|q| integral_at(&q[..], p)) {
                    prop_assert!(zeros.contains(&f.point(q)));
                }
            }
        }
    }
}

/// Whether no coordinate has a denominator divisible by p.
fn integral_at(q: &[CycNum], p: u64) -> bool {
    let p = num_bigint::BigInt::from(p);
    q.iter().flat_map(|c| c.coords()).all(|r| (r.denom() % &p) != num_bigint::BigInt::from(0))
}

fn check_certificate(s: &Surface22) -> Result<(), TestCaseError> {
    let cert = match involution_trivial_p2_lift(s) {
        Ok(Some(c)) => c,
        Ok(None) => return Err(TestCaseError::fail("no certificate for a surface with a relation")),
        Err(Error::DegenerateDiscriminant) => return Err(TestCaseError::reject("degenerate")),
        Err(e) => return Err(TestCaseError::fail(e.to_string())),
    };
    let f = s.equation();
    let moved = f.substitute_linear(Some(&cert.sigma), None).unwrap();
    prop_assert_eq!(moved, f.scale(&cert.c));
    prop_assert!(cert.sigma.mul(&cert.sigma).unwrap().is_scalar());
    prop_assert!(!cert.sigma.is_scalar());
    let [q1, q2, q3] = s.quadrics();
    match cert.case {
        InvolutionCase::Proportional => prop_assert_eq!(q3.clone(), q1.scale(&cert.a)),
        InvolutionCase::LinearRelation => {
            let b = cert.b.clone().unwrap();
            prop_assert_eq!(q2.scale_int(2), q1.scale(&cert.a).add(&q3.scale(&b)));
            prop_assert!(!(&cert.a * &b).is_one());
        }
    }
    Ok(())
}

fn quadric6() -> impl Strategy<Value = [i64; 6]> {
    prop::array::uniform6(-3i64..=3).prop_filter("nonzero", |q| q.iter().any(|&c| c != 0))
}

proptest! {
    #![proptest_config(config(60))]

    fn linear_relation_certificate(q1 in quadric6(), q3 in quadric6(), a in nonzero_rat(), b in small_rat()) {
        let (a, b) = (CycNum::from_rat(1, a), CycNum::from_rat(1, b));
        prop_assume!(!(&a * &b).is_one());
        let (q1, q3) = (quadric(&q1), quadric(&q3));
        let q2 = q1.scale(&a).add(&q3.scale(&b)).scale(&CycNum::from_rat(1, rat_frac(1, 2)));
        prop_assume!(!q2.is_zero());
        check_certificate(&Surface22::new(q1, q2, q3).unwrap())?;
    }

    fn proportional_certificate(q1 in quadric6(), q2 in quadric6(), a in nonzero_rat()) {
        let q1 = quadric(&q1);
        let q3 = q1.scale(&CycNum::from_rat(1, a));
        check_certificate(&Surface22::new(q1, quadric(&q2), q3).unwrap())?;
    }
}

/// Admissible parameters: s rational, ab = 4s/(s+1)², b = ab/a.
fn reducible_params() -> impl Strategy<Value = ReducibleParams> {
    (nonzero_rat(), nonzero_rat(), nonzero_rat(), nonzero_rat(), nonzero_rat())
        .prop_filter("admissible", |(_, alpha, beta, _, s)| {
            let one = rat(1);
            *alpha != one && *beta != one && alpha != beta && s * s != one
        })
        .prop_map(|(a, alpha, beta, lambda, s)| {
            let ab = rat(4) * &s / ((&s + rat(1)) * (&s + rat(1)));
            let b = ab / &a;
            let c = |r: Rat| CycNum::from_rat(1, r);
            ReducibleParams {
                a: c(a),
                b: c(b),
                alpha: c(alpha),
                beta: c(beta),
                lambda: c(lambda),
                s: c(s),
            }
        })
}

proptest! {
    #![proptest_config(config(60))]

    fn reducible_discriminant_is_a_product_of_conics(p in reducible_params()) {
        let s = build_reducible_example(&p).unwrap();
        let delta = discriminant(&s).unwrap();
        let c1 = MPoly::parse(1, "y*z + x*z + x*y").unwrap();
        let c2 = MPoly::parse(1, "x*y").unwrap()
            .add(&MPoly::parse(1, "y*z").unwrap().scale(&p.alpha))
            .add(&MPoly::parse(1, "x*z").unwrap().scale(&p.beta));
        prop_assert!(delta.form().proportionality(&c1.mul(&c2)).is_some());
        prop_assert!(!delta.is_smooth().unwrap());
    }
}

fn fermat_pairs() -> &'static (Surface22, Vec<(ProjMat, ProjMat)>) {
    static PAIRS: std::sync::OnceLock<(Surface22, Vec<(ProjMat, ProjMat)>)> = std::sync::OnceLock::new();
    PAIRS.get_or_init(|| {
        let e = catalog_get("fermat").unwrap();
        let r = aut_x_order(&e.surface, &e.generators).unwrap();
        (e.surface, r.lifted_pairs)
    })
}

fn rat_point() -> impl Strategy<Value = [Rat; 3]> {
    prop::array::uniform3(small_rat())
}

proptest! {
    #![proptest_config(config(100))]

    fn lifts_are_equivariant(k in 0usize..96, x in rat_point()) {
        let (s, pairs) = fermat_pairs();
        let n = pairs[k].1.matrix();
        let x: Vec<CycNum> = x.iter().map(|r| CycNum::from_rat(4, r.clone())).collect();
        let nx = n.apply(&x);
        let dec = aut_lift_decision(s, n).unwrap();
        prop_assert!(dec.exists);
        let t = dec.t.unwrap();
        let c = |p: &[CycNum]| -> Vec<CycNum> { s.quadrics().iter().map(|q| q.eval_x(p)).collect() };
        prop_assert_eq!(c(&nx), t.apply(&c(&x)));
        let delta = discriminant(s).unwrap();
        let lambda = preserves_delta(n, &delta).unwrap().unwrap();
        prop_assert_eq!(delta.form().eval_x(&nx), &lambda * &delta.form().eval_x(&x));
    }
}

proptest! {
    #![proptest_config(config(12))]

    fn liftable_elements_form_a_subgroup(mask in 1usize..16) {
        let e = catalog_get("fermat").unwrap();
        let gens: Vec<ProjMat> = e.generators.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| g.clone()).collect();
        let r = aut_x_order(&e.surface, &gens).unwrap();
        prop_assert_eq!(r.order_aut_x, 2 * r.liftable.len());
        prop_assert_eq!(r.group.len() % r.liftable.len(), 0);
        let set: std::collections::BTreeSet<&ProjMat> = r.liftable.iter().collect();
        for a in &r.liftable {
            prop_assert!(set.contains(&a.inverse()));
            for b in &r.liftable {
                prop_assert!(set.contains(&a.compose(b).unwrap()));
            }
        }
    }
}

/// Lifted automorphisms with non-scalar N from the catalog, with surfaces.
fn catalog_lifts() -> Vec<(Surface22, LiftedAut)> {
    let mut out = Vec::new();
    for name in ["nolinear", "s3"] {
        let e = catalog_get(name).unwrap();
        let gens: Vec<LiftedAut> = e.lifted.iter().map(|(_, g)| g.clone()).collect();
        for g in generate_group(&gens, 1000).unwrap() {
            if !g.n.is_scalar() {
                out.push((e.surface.clone(), g));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(config(40))]

    fn deck_flips_swaps_and_scaling_changes_nothing(
        idx in any::<prop::sample::Index>(),
        (l, k) in (nonzero_rat(), 0i64..24),
        (r, j) in (nonzero_rat(), 0i64..24),
    ) {
        let lifts = catalog_lifts();
        let (s, g) = &lifts[idx.index(lifts.len())];
        let order = s.order();
        let lambda = &CycNum::from_rat(order, l) * &CycNum::zeta_pow(order, k);
        let kappa = &CycNum::from_rat(order, r) * &CycNum::zeta_pow(order, j);
        let h = g.rescaled(&lambda, &kappa);
        h.verify(s).unwrap();
        let delta = discriminant(s).unwrap();
        let rep = fixed_points_on_delta(&g.n, &delta).unwrap();
        for p in &rep.points {
            let sw = swaps_lines(g, s, p).unwrap();
            prop_assert_eq!(swaps_lines(&g.with_deck(), s, p).unwrap(), !sw);
            prop_assert_eq!(swaps_lines(&h, s, p).unwrap(), sw);
        }
        prop_assert_eq!(tilde_fixed_point_exists(s, &h).unwrap(), tilde_fixed_point_exists(s, g).unwrap());
    }
}

/// Generator pool for subgroups of the automorphisms of the nolinear surface.
fn nolinear_pool() -> (Surface22, Vec<LiftedAut>) {
    let e = catalog_get("nolinear").unwrap();
    let tau = e.lifted_named("tau").unwrap().clone();
    let t2 = tau.compose(&tau).unwrap();
    let deck = LiftedAut::deck(e.surface.order());
    let pool = vec![tau.clone(), t2.clone(), deck, tau.with_deck(), t2.with_deck()];
    (e.surface, pool)
}

fn verdict_of(s: &Surface22, gens: &[LiftedAut]) -> f218::linearize::Verdict {
    let elems = generate_group(gens, 1000).unwrap();
    let structure = if gens.len() == 1 { GroupStructure::Cyclic(gens[0].clone()) } else { GroupStructure::General };
    linearizability_verdict(s, &elems, &structure).unwrap()
}

proptest! {
    #![proptest_config(config(30))]

    fn verdicts_verify_and_are_monotone(small in 1usize..32, extra in 0usize..32) {
        let (s, pool) = nolinear_pool();
        let pick = |mask: usize| -> Vec<LiftedAut> {
            pool.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, g)| g.clone()).collect()
        };
        let h = pick(small);
        let g = pick(small | extra);
        let vh = verdict_of(&s, &h);
        let generator = (h.len() == 1).then(|| &h[0]);
        prop_assert!(verify_verdict(&s, &vh, generator).unwrap());
        if vh.status == VerdictStatus::NotProjectivelyLinearizable {
            prop_assert_eq!(verdict_of(&s, &g).status, VerdictStatus::NotProjectivelyLinearizable);
        }
    }
}

fn tau_squared_with_sigma_forces_tau_with_sigma() {
    let (s, pool) = nolinear_pool();
    let (tau, t2, sigma) = (&pool[0], &pool[1], &pool[2]);
    let small = verdict_of(&s, &[t2.clone(), sigma.clone()]);
    assert_eq!(small.status, VerdictStatus::NotProjectivelyLinearizable);
    assert_eq!(verdict_of(&s, &[tau.clone(), sigma.clone()]).status, VerdictStatus::NotProjectivelyLinearizable);
}

/// Every suite by name; each panics on failure.
pub const SUITES: &[(&str, fn())] = &[
    ("field_axioms", field_axioms),
    ("linear_substitution_round_trip", linear_substitution_round_trip),
    ("emptiness_agrees_with_finite_fields", emptiness_agrees_with_finite_fields),
    ("linear_relation_certificate", linear_relation_certificate),
    ("proportional_certificate", proportional_certificate),
    ("reducible_discriminant_is_a_product_of_conics", reducible_discriminant_is_a_product_of_conics),
    ("lifts_are_equivariant", lifts_are_equivariant),
    ("liftable_elements_form_a_subgroup", liftable_elements_form_a_subgroup),
    ("deck_flips_swaps_and_scaling_changes_nothing", deck_flips_swaps_and_scaling_changes_nothing),
    ("verdicts_verify_and_are_monotone", verdicts_verify_and_are_monotone),
    ("tau_squared_with_sigma_forces_tau_with_sigma", tau_squared_with_sigma_forces_tau_with_sigma),
];
