//! Staged pipeline runs over one surface, with JSON reports.

use std::time::Instant;

use serde_json::{json, Map, Value};

use super::catalog::{catalog_get, CatalogEntry};
use super::json::{
    aut_order_to_json, certificate_to_json, generators_from_json, lift_decision_to_json, lifted_group_from_json,
    lifted_to_json, matrix_to_json, point_to_json, poly_to_json, surface_from_json, surface_to_json, verdict_to_json,
};
use crate::error::{Error, Result};
use crate::lifting::{aut_lift_decision, aut_x_order, involution_trivial_p2_lift};
use crate::linearize::{generate_group, linearizability_verdict, GroupStructure, GROUP_CAP};
use crate::surface::{delta_singular_points_with, discriminant, z_smooth, SingularRoute, Surface22};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Stage {
    Discriminant,
    DeltaSmooth,
    ZSmooth,
    LiftInvolution,
    AutOrder,
    Verdict,
}

impl Stage {
    pub const ALL: [Stage; 6] = [
        Stage::Discriminant,
        Stage::DeltaSmooth,
        Stage::ZSmooth,
        Stage::LiftInvolution,
        Stage::AutOrder,
        Stage::Verdict,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Stage::Discriminant => "discriminant",
            Stage::DeltaSmooth => "delta-smooth",
            Stage::ZSmooth => "z-smooth",
            Stage::LiftInvolution => "lift-involution",
            Stage::AutOrder => "aut-order",
            Stage::Verdict => "verdict",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Stage::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownName(s.to_string()))
    }

    fn depends_on(self) -> &'static [Stage] {
        match self {
            Stage::Discriminant => &[],
            Stage::DeltaSmooth | Stage::ZSmooth | Stage::LiftInvolution | Stage::Verdict => &[Stage::Discriminant],
            Stage::AutOrder => &[Stage::DeltaSmooth],
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Outcome {
    Done(Value),
    Failed { error: String, exit_code: i32 },
    Skipped(Stage),
}

#[derive(Clone, Debug)]
pub struct Report {
    pub input: Value,
    pub seed: u64,
    pub stages: Vec<(Stage, Outcome)>,
    pub timings_ms: Vec<(Stage, f64)>,
    pub version: &'static str,
}

impl Report {
    pub fn outcome(&self, stage: Stage) -> Option<&Outcome> {
        self.stages.iter().find(|(s, _)| *s == stage).map(|(_, o)| o)
    }

    pub fn result(&self, stage: Stage) -> Option<&Value> {
        match self.outcome(stage)? {
            Outcome::Done(v) => Some(v),
            _ => None,
        }
    }

    /// The report as JSON; timings are left out when `with_timings` is false
    /// so that repeated runs compare byte for byte.
    pub fn to_json(&self, with_timings: bool) -> Value {
        let mut stages = Map::new();
        for (s, o) in &self.stages {
            let v = match o {
                Outcome::Done(v) => json!({"status": "ok", "result": v}),
                Outcome::Failed { error, exit_code } => {
                    json!({"status": "failed", "error": error, "exit_code": exit_code})
                }
                Outcome::Skipped(dep) => json!({"status": "skipped", "because": dep.name()}),
            };
            stages.insert(s.name().into(), v);
        }
        let mut out = json!({
            "version": self.version,
            "seed": self.seed,
            "input": self.input,
            "stages": stages,
        });
        if with_timings {
            let t: Map<String, Value> = self
                .timings_ms
                .iter()
                .map(|(s, ms)| (s.name().to_string(), json!(ms)))
                .collect();
            out["timings_ms"] = Value::Object(t);
        }
        out
    }
}

/// Everything a run needs, parsed from the input JSON: the surface fields,
/// plus optional "generators" (3x3 matrices in Aut(Δ)) and "groups", a list
/// of {"generators": [lifted...], "cyclic": bool, "label": string}.
struct Input {
    surface: Surface22,
    raw: Value,
}

fn stage_closure(tasks: &[Stage]) -> Vec<Stage> {
    let mut need: Vec<Stage> = tasks.to_vec();
    let mut i = 0;
    while i < need.len() {
        for d in need[i].depends_on() {
            if !need.contains(d) {
                need.push(*d);
            }
        }
        i += 1;
    }
    need.sort();
    need.dedup();
    need
}

/// Runs the requested stages and everything they depend on.
///
/// The seed is recorded for reproducibility; every stage is deterministic.
pub fn run_report(input: &Value, tasks: &[Stage], seed: u64) -> Result<Report> {
    let surface = surface_from_json(input)?;
    if tasks.contains(&Stage::AutOrder) && input.get("generators").is_none() {
        return Err(Error::Validation("aut-order needs \"generators\"".into()));
    }
    if tasks.contains(&Stage::Verdict) && input.get("groups").is_none() {
        return Err(Error::Validation("verdict needs \"groups\"".into()));
    }
    let inp = Input {
        surface,
        raw: input.clone(),
    };
    let mut stages: Vec<(Stage, Outcome)> = Vec::new();
    let mut timings = Vec::new();
    for stage in stage_closure(tasks) {
        let failed_dep = stage.depends_on().iter().find(|d| {
            !matches!(
                stages.iter().find(|(s, _)| s == *d).map(|(_, o)| o),
                Some(Outcome::Done(_))
            )
        });
        let outcome = if let Some(d) = failed_dep {
            Outcome::Skipped(*d)
        } else {
            let start = Instant::now();
            let r = run_stage(stage, &inp);
            timings.push((stage, start.elapsed().as_secs_f64() * 1e3));
            match r {
                Ok(v) => Outcome::Done(v),
                Err(e) => Outcome::Failed {
                    error: e.to_string(),
                    exit_code: e.exit_code(),
                },
            }
        };
        stages.push((stage, outcome));
    }
    Ok(Report {
        input: input.clone(),
        seed,
        stages,
        timings_ms: timings,
        version: env!("CARGO_PKG_VERSION"),
    })
}

fn run_stage(stage: Stage, inp: &Input) -> Result<Value> {
    let s = &inp.surface;
    match stage {
        Stage::Discriminant => Ok(json!({"delta": poly_to_json(discriminant(s)?.form())})),
        Stage::DeltaSmooth => {
            let rep = delta_singular_points_with(s, SingularRoute::Jacobian)?;
            let pts: Vec<Value> = rep
                .points
                .iter()
                .map(|p| json!({"point": point_to_json(&p.point), "node": p.node}))
                .collect();
            Ok(json!({"smooth": rep.smooth, "singular_points": pts, "complete": rep.complete}))
        }
        Stage::ZSmooth => Ok(json!({"smooth": z_smooth(s)?})),
        Stage::LiftInvolution => Ok(certificate_to_json(involution_trivial_p2_lift(s)?.as_ref())),
        Stage::AutOrder => {
            let gens = generators_from_json(&inp.raw, s.order())?;
            Ok(aut_order_to_json(&aut_x_order(s, &gens)?))
        }
        Stage::Verdict => {
            let groups = inp.raw["groups"]
                .as_array()
                .ok_or_else(|| Error::Validation("\"groups\" must be an array".into()))?;
            let mut out = Vec::new();
            for g in groups {
                let cyclic = g.get("cyclic").and_then(Value::as_bool).unwrap_or(false);
                let (v, size) = verdict_for(s, g, cyclic)?;
                out.push(json!({
                    "label": g.get("label").cloned().unwrap_or(Value::Null),
                    "group_size": size,
                    "verdict": verdict_to_json(&v),
                }));
            }
            Ok(Value::Array(out))
        }
    }
}

/// Verdict for a group given as JSON; also returns the group size.
pub fn verdict_for(s: &Surface22, group: &Value, cyclic: bool) -> Result<(crate::linearize::Verdict, usize)> {
    let (list, by_gens) = lifted_group_from_json(group, s)?;
    let elements = if by_gens {
        generate_group(&list, GROUP_CAP)?
    } else {
        list.clone()
    };
    let structure = if cyclic {
        if !by_gens || list.len() != 1 {
            return Err(Error::Validation("a cyclic group is given by exactly one generator".into()));
        }
        GroupStructure::Cyclic(list[0].clone())
    } else {
        GroupStructure::General
    };
    let v = linearizability_verdict(s, &elements, &structure)?;
    Ok((v, elements.len()))
}

/// The input JSON for a catalog entry.
pub fn catalog_input(e: &CatalogEntry) -> Value {
    let mut v = surface_to_json(&e.surface);
    if !e.generators.is_empty() {
        v["generators"] = Value::Array(e.generators.iter().map(|g| matrix_to_json(g.matrix())).collect());
    }
    if !e.expected.verdicts.is_empty() {
        let groups: Vec<Value> = e
            .expected
            .verdicts
            .iter()
            .map(|ev| {
                let gens: Vec<Value> = ev
                    .generators
                    .iter()
                    .map(|n| lifted_to_json(e.lifted_named(n).unwrap()))
                    .collect();
                json!({"label": ev.generators.join(","), "cyclic": ev.cyclic, "generators": gens})
            })
            .collect();
        v["groups"] = Value::Array(groups);
    }
    v
}

/// One comparison between an expected and a computed value.
#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
}

impl Check {
    pub fn pass(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Clone, Debug)]
pub struct CatalogRun {
    pub report: Report,
    pub checks: Vec<Check>,
}

impl CatalogRun {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(Check::pass)
    }

    pub fn to_json(&self, with_timings: bool) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "expected": c.expected, "actual": c.actual, "pass": c.pass()}))
            .collect();
        json!({"report": self.report.to_json(with_timings), "checks": checks, "all_pass": self.all_pass()})
    }
}

/// Runs every stage on a catalog entry and compares with its expectations.
pub fn run_catalog(name: &str) -> Result<CatalogRun> {
    let e = catalog_get(name)?;
    let input = catalog_input(&e);
    let mut tasks = vec![Stage::Discriminant, Stage::DeltaSmooth, Stage::ZSmooth, Stage::LiftInvolution];
    if !e.generators.is_empty() {
        tasks.push(Stage::AutOrder);
    }
    if !e.expected.verdicts.is_empty() {
        tasks.push(Stage::Verdict);
    }
    let report = run_report(&input, &tasks, 0)?;
    let mut checks = Vec::new();
    let mut check = |name: &str, expected: Value, actual: Option<Value>| {
        checks.push(Check {
            name: name.to_string(),
            expected,
            actual: actual.unwrap_or(Value::Null),
        })
    };
    let ex = &e.expected;
    let get = |st: Stage, key: &str| report.result(st).map(|v| v[key].clone());
    if let Some(d) = &ex.discriminant {
        check("discriminant", poly_to_json(d), get(Stage::Discriminant, "delta"));
    }
    if let Some(b) = ex.delta_smooth {
        check("delta_smooth", json!(b), get(Stage::DeltaSmooth, "smooth"));
    }
    if let Some(b) = ex.z_smooth {
        check("z_smooth", json!(b), get(Stage::ZSmooth, "smooth"));
    }
    if let Some(inv) = &ex.involution {
        let res = report.result(Stage::LiftInvolution);
        match inv {
            None => check("involution_exists", json!(false), res.map(|v| v["exists"].clone())),
            Some((case, sigma)) => {
                check("involution_case", json!(case), res.map(|v| v["case"].clone()));
                check("involution_sigma", matrix_to_json(sigma), res.map(|v| v["sigma"].clone()));
            }
        }
    }
    for (key, val) in [
        ("group_size", ex.group_size),
        ("liftable", ex.liftable),
        ("order_aut_x", ex.order_aut_x),
    ] {
        if let Some(k) = val {
            check(key, json!(k), get(Stage::AutOrder, key));
        }
    }
    for g in &ex.non_liftable {
        let d = aut_lift_decision(&e.surface, g.matrix())?;
        check("non_liftable", json!(false), Some(lift_decision_to_json(&d)["exists"].clone()));
    }
    if let Some(Value::Array(vs)) = report.result(Stage::Verdict) {
        for (ev, v) in ex.verdicts.iter().zip(vs) {
            let label = ev.generators.join(",");
            check(&format!("verdict[{label}].status"), json!(ev.status), Some(v["verdict"]["status"].clone()));
            check(
                &format!("verdict[{label}].criterion"),
                json!(ev.criterion),
                Some(v["verdict"]["criterion"].clone()),
            );
        }
    } else if !ex.verdicts.is_empty() {
        check("verdicts", json!(ex.verdicts.len()), None);
    }
    Ok(CatalogRun { report, checks })
}
