//! Worked examples with known answers, used as a regression corpus.

use crate::arith::{CycNum, ExtNum};
use crate::error::{Error, Result};
use crate::lifting::InvolutionCase;
use crate::linalg::{Matrix, ProjMat};
use crate::linearize::{Criterion, LiftedAut, VerdictStatus};
use crate::poly::MPoly;
use crate::surface::{build_reducible_example, ReducibleParams, Surface22};

pub const NAMES: [&str; 5] = ["fermat", "klein", "s3", "reducible", "nolinear"];

/// A verdict the pipeline should reproduce for the group generated by the
/// named lifted automorphisms.
#[derive(Clone, Debug)]
pub struct ExpectedVerdict {
    pub generators: Vec<&'static str>,
    pub cyclic: bool,
    pub status: VerdictStatus,
    pub criterion: Option<Criterion>,
}

#[derive(Clone, Debug, Default)]
pub struct Expected {
    pub discriminant: Option<MPoly>,
    pub delta_smooth: Option<bool>,
    pub z_smooth: Option<bool>,
    pub group_size: Option<usize>,
    pub liftable: Option<usize>,
    pub order_aut_x: Option<usize>,
    /// Elements of Aut(Δ) known not to lift.
    pub non_liftable: Vec<ProjMat>,
    /// `None` means no involution acting only on P¹ exists.
    pub involution: Option<Option<(InvolutionCase, Matrix)>>,
    pub verdicts: Vec<ExpectedVerdict>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub surface: Surface22,
    /// Generators of a subgroup of Aut(Δ).
    pub generators: Vec<ProjMat>,
    /// Named automorphisms of X with explicit representatives.
    pub lifted: Vec<(&'static str, LiftedAut)>,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn lifted_named(&self, name: &str) -> Result<&LiftedAut> {
        self.lifted
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, g)| g)
            .ok_or_else(|| Error::UnknownName(name.to_string()))
    }
}

fn z(n: u32, k: i64) -> CycNum {
    CycNum::zeta_pow(n, k)
}

fn pm(m: Matrix) -> ProjMat {
    ProjMat::new(m).expect("invertible catalog matrix")
}

fn quartic(order: u32, s: &str) -> MPoly {
    MPoly::parse(order, s).expect("catalog polynomial")
}

pub fn catalog_get(name: &str) -> Result<CatalogEntry> {
    match name {
        "fermat" => Ok(fermat()),
        "klein" => Ok(klein()),
        "s3" => Ok(s3()),
        "reducible" => Ok(reducible()),
        "nolinear" => Ok(nolinear()),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

fn fermat() -> CatalogEntry {
    let n = 4;
    let (one, i) = (CycNum::one(n), z(n, 1));
    CatalogEntry {
        name: "fermat",
        description: "Δ the Fermat quartic; every automorphism of Δ lifts",
        surface: Surface22::parse(n, "z4*x^2 + y^2", "z^2", "z4*x^2 - y^2").unwrap(),
        generators: vec![
            pm(Matrix::diag(&[i.clone(), one.clone(), one.clone()])),
            pm(Matrix::diag(&[one.clone(), i, one])),
            pm(Matrix::from_ints(n, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])),
            pm(Matrix::from_ints(n, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]])),
        ],
        lifted: Vec::new(),
        expected: Expected {
            discriminant: Some(quartic(n, "x^4 + y^4 + z^4")),
            delta_smooth: Some(true),
            z_smooth: Some(true),
            group_size: Some(96),
            liftable: Some(96),
            order_aut_x: Some(192),
            involution: Some(None),
            ..Expected::default()
        },
    }
}

fn klein() -> CatalogEntry {
    let n = 7;
    let g = pm(Matrix::diag(&[CycNum::one(n), z(n, 3), z(n, 1)]));
    CatalogEntry {
        name: "klein",
        description: "Δ the Klein quartic; the diagonal element of order 7 does not lift",
        surface: Surface22::parse(n, "x^2 - x*y + y^2 + x*z", "x^2 - x*y + y*z", "x^2 - x*z + y*z + z^2").unwrap(),
        generators: vec![g.clone()],
        lifted: Vec::new(),
        expected: Expected {
            discriminant: Some(quartic(n, "-x^3*y - y^3*z - z^3*x")),
            delta_smooth: Some(true),
            z_smooth: Some(true),
            group_size: Some(7),
            liftable: Some(1),
            order_aut_x: Some(2),
            non_liftable: vec![g],
            involution: Some(None),
            ..Expected::default()
        },
    }
}

fn s3() -> CatalogEntry {
    // Q(ζ₁₂) contains both i and ζ₃
    let n = 12;
    let one = CycNum::one(n);
    let surface = Surface22::parse(n, "z12^3*y^2 + z12^3*x*z", "x^2 + y*z", "z12^3*z^2 + z12^3*x*y").unwrap();
    let c3 = LiftedAut::new(
        &surface,
        Matrix::diag(&[one.clone(), z(n, 8)]),
        Matrix::diag(&[one.clone(), z(n, 4), z(n, 8)]),
        ExtNum::from_base(z(n, 4)),
    )
    .unwrap();
    CatalogEntry {
        name: "s3",
        description: "S₃-symmetric surface with a = 1; Aut(X) has order 12, and a C₃ action",
        surface,
        generators: vec![
            pm(Matrix::diag(&[one, z(n, 4), z(n, 8)])),
            pm(Matrix::from_ints(n, &[&[1, 0, 0], &[0, 0, 1], &[0, 1, 0]])),
        ],
        lifted: vec![("c3", c3)],
        expected: Expected {
            discriminant: Some(quartic(n, "x^4 + x*y^3 + x*z^3 + 3*x^2*y*z + 2*y^2*z^2")),
            delta_smooth: Some(true),
            z_smooth: Some(true),
            group_size: Some(6),
            liftable: Some(6),
            order_aut_x: Some(12),
            involution: Some(None),
            verdicts: vec![ExpectedVerdict {
                generators: vec!["c3"],
                cyclic: true,
                status: VerdictStatus::Linearizable,
                criterion: Some(Criterion::OddOrderCyclic),
            }],
            ..Expected::default()
        },
    }
}

fn reducible() -> CatalogEntry {
    let n = 1;
    let surface = build_reducible_example(&ReducibleParams::from_ints(n, [2, -4, 2, 3, 1, -2])).unwrap();
    CatalogEntry {
        name: "reducible",
        description: "Δ a union of two conics, Z smooth, with an involution acting only on P¹",
        surface,
        generators: Vec::new(),
        lifted: Vec::new(),
        expected: Expected {
            discriminant: Some(quartic(n, "y*z + x*z + x*y").mul(&quartic(n, "2*y*z + 3*x*z + x*y"))),
            delta_smooth: Some(false),
            z_smooth: Some(true),
            involution: Some(Some((
                InvolutionCase::LinearRelation,
                Matrix::from_ints(n, &[&[1, 2], &[4, -1]]),
            ))),
            ..Expected::default()
        },
    }
}

fn nolinear() -> CatalogEntry {
    let n = 8;
    let (one, i) = (CycNum::one(n), z(n, 2));
    let surface = Surface22::parse(n, "z8^2*x^2 + y^2", "z^2", "z8^2*x^2 - y^2").unwrap();
    let tau = LiftedAut::new(
        &surface,
        Matrix::diag(&[i.clone(), -&i]),
        Matrix::diag(&[i.clone(), i, one.clone()]),
        ExtNum::from_base(one),
    )
    .unwrap();
    CatalogEntry {
        name: "nolinear",
        description: "Fermat-type surface over Q(ζ₈) with an order-4 action and the deck involution",
        surface,
        generators: Vec::new(),
        lifted: vec![("tau", tau), ("sigma", LiftedAut::deck(n))],
        expected: Expected {
            discriminant: Some(quartic(n, "x^4 + y^4 + z^4")),
            delta_smooth: Some(true),
            z_smooth: Some(true),
            involution: Some(None),
            verdicts: vec![
                ExpectedVerdict {
                    generators: vec!["tau"],
                    cyclic: true,
                    status: VerdictStatus::Linearizable,
                    criterion: Some(Criterion::CyclicTildeFixedPoint),
                },
                ExpectedVerdict {
                    generators: vec!["tau", "sigma"],
                    cyclic: false,
                    status: VerdictStatus::NotProjectivelyLinearizable,
                    criterion: Some(Criterion::BaseInvolutionWithoutFixedLines),
                },
            ],
            ..Expected::default()
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_resolve() {
        for name in NAMES {
            assert_eq!(catalog_get(name).unwrap().name, name);
        }
        assert_eq!(catalog_get("unknown").unwrap_err(), Error::UnknownName("unknown".into()));
    }
}
