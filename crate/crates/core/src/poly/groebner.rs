//! Buchberger's algorithm (normal selection strategy, Gebauer–Möller
//! criteria) under grevlex, and the Hilbert-function bookkeeping used to
//! decide emptiness and count points of projective zero loci.

use crate::error::{Error, Result};

use super::{MPoly, Monomial, Var};

/// Default bound on the number of S-pair reductions.
pub const DEFAULT_MAX_REDUCTIONS: usize = 100_000;

#[derive(Clone, Copy, Debug)]
pub struct GroebnerConfig {
    /// Abort with `Timeout` after this many S-pair reductions.
    pub max_reductions: usize,
}

impl Default for GroebnerConfig {
    fn default() -> Self {
        GroebnerConfig {
            max_reductions: DEFAULT_MAX_REDUCTIONS,
        }
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens`, whose terms may
/// only involve `vars`. Elements are monic and sorted by decreasing leading
/// monomial; the zero ideal gives an empty basis.
pub fn groebner(gens: &[MPoly], vars: &[Var]) -> Result<Vec<MPoly>> {
    groebner_with(gens, vars, GroebnerConfig::default())
}

pub fn groebner_with(gens: &[MPoly], vars: &[Var], cfg: GroebnerConfig) -> Result<Vec<MPoly>> {
    if let Some(g) = gens.iter().find(|g| !g.uses_only(vars)) {
        return Err(Error::Validation(format!(
            "generator {g} uses variables outside the chosen subset"
        )));
    }
    let mut state = State {
        polys: Vec::new(),
        lms: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
    };
    let mut input: Vec<MPoly> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.monic()).collect();
    // processing order must not depend on the caller's order
    input.sort_by(|a, b| {
        a.leading_monomial()
            .cmp(&b.leading_monomial())
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    input.dedup();
    for g in input {
        let basis = state.active_polys();
        let h = reduce(&g, &basis);
        if !h.is_zero() {
            state.insert(h.monic());
        }
    }
    let mut reductions = 0usize;
    while let Some((i, j)) = state.next_pair() {
        reductions += 1;
        if reductions > cfg.max_reductions {
            return Err(Error::Timeout(cfg.max_reductions));
        }
        let s = spoly(&state.polys[i], &state.polys[j]);
        let basis = state.active_polys();
        let h = reduce(&s, &basis);
        if !h.is_zero() {
            state.insert(h.monic());
        }
    }
    Ok(reduce_basis(state.active_polys().into_iter().cloned().collect()))
}

struct State {
    polys: Vec<MPoly>,
    lms: Vec<Monomial>,
    active: Vec<bool>,
    /// (lcm, i, j) with i < j
    pairs: Vec<(Monomial, usize, usize)>,
}

impl State {
    fn active_polys(&self) -> Vec<&MPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    fn next_pair(&mut self) -> Option<(usize, usize)> {
        let best = self
            .pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.cmp(b))
            .map(|(k, _)| k)?;
        let (_, i, j) = self.pairs.swap_remove(best);
        Some((i, j))
    }

    /// Gebauer–Möller installation of a new basis element.
    fn insert(&mut self, h: MPoly) {
        let hl = h.leading_monomial().unwrap();
        let k = self.polys.len();
        let olds: Vec<usize> = (0..k).filter(|&i| self.active[i]).collect();

        // candidate new pairs (h, g)
        let cands: Vec<(Monomial, usize)> = olds.iter().map(|&g| (hl.lcm(&self.lms[g]), g)).collect();
        let mut kept: Vec<(Monomial, usize)> = Vec::new();
        for (idx, &(l, g)) in cands.iter().enumerate() {
            let coprime = hl.is_coprime(&self.lms[g]);
            let dominated = cands[idx + 1..].iter().any(|&(l2, _)| l2.divides(&l))
                || kept.iter().any(|&(l2, _)| l2.divides(&l));
            if coprime || !dominated {
                kept.push((l, g));
            }
        }
        // drop pairs with coprime leading monomials (product criterion)
        let mut newpairs: Vec<(Monomial, usize, usize)> = Vec::new();
        for (l, g) in kept {
            if !hl.is_coprime(&self.lms[g]) {
                newpairs.push((l, g.min(k), g.max(k)));
            }
        }
        // chain criterion on the old pairs
        let lms = &self.lms;
        self.pairs.retain(|&(l, i, j)| {
            !(hl.divides(&l) && hl.lcm(&lms[i]) != l && hl.lcm(&lms[j]) != l)
        });
        self.pairs.extend(newpairs);
        // old elements whose leading monomial is a multiple of hl leave the basis
        for &g in &olds {
            if hl.divides(&self.lms[g]) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.lms.push(hl);
        self.active.push(true);
    }
}

fn spoly(f: &MPoly, g: &MPoly) -> MPoly {
    let (lf, cf) = f.leading_term().unwrap();
    let (lg, cg) = g.leading_term().unwrap();
    let l = lf.lcm(lg);
    let a = f.mul_term(&lf.quotient(&l), &cg.clone());
    let b = g.mul_term(&lg.quotient(&l), &cf.clone());
    a.sub(&b)
}

/// Full reduction (leading and tail terms) of `p` by a set of monic
/// polynomials.
pub fn reduce(p: &MPoly, basis: &[&MPoly]) -> MPoly {
    let mut p = p.clone();
    let mut rem = MPoly::zero(p.order());
    let lts: Vec<(Monomial, &MPoly)> = basis
        .iter()
        .map(|g| (g.leading_monomial().unwrap(), *g))
        .collect();
    while let Some((m, c)) = p.leading_term().map(|(m, c)| (*m, c.clone())) {
        match lts.iter().find(|(l, _)| l.divides(&m)) {
            Some((l, g)) => {
                let lc = g.leading_term().unwrap().1;
                let factor = if lc.is_one() { c } else { c.try_div(lc).unwrap() };
                p = p.sub(&g.mul_term(&l.quotient(&m), &factor));
            }
            None => {
                rem.add_term(m, &c);
                p.add_term(m, &-&c);
            }
        }
    }
    rem
}

fn reduce_basis(mut g: Vec<MPoly>) -> Vec<MPoly> {
    // keep only elements whose leading monomial is minimal
    g.sort_by_key(|p| p.leading_monomial());
    let mut minimal: Vec<MPoly> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if !minimal.iter().any(|q| q.leading_monomial().unwrap().divides(&lm)) {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<&MPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q)
            .collect();
        let (lm, lc) = minimal[i].leading_term().unwrap();
        let tail = {
            let mut t = minimal[i].clone();
            t.add_term(*lm, &-lc);
            t
        };
        let mut r = reduce(&tail, &others);
        r.add_term(*lm, lc);
        out.push(r.monic());
    }
    out.sort_by(|a, b| b.leading_monomial().cmp(&a.leading_monomial()));
    out
}

/// Hilbert data of a homogeneous ideal in k[x, y, z] read off a Gröbner
/// basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectiveDimension {
    Empty,
    /// Finitely many points; the count is the degree of the zero-dimensional
    /// scheme, i.e. points counted with multiplicity.
    Points(usize),
    /// Contains a curve.
    Positive,
}

fn in_subset(m: &Monomial, vars: &[Var]) -> bool {
    Var::ALL
        .iter()
        .all(|v| vars.contains(v) || m.0[*v as usize] == 0)
}

/// Dimension and degree of the projective zero locus in P² of an ideal with
/// the given reduced Gröbner basis.
pub fn projective_dimension(gb: &[MPoly]) -> ProjectiveDimension {
    let lms: Vec<Monomial> = gb.iter().filter_map(|g| g.leading_monomial()).collect();
    let xs = Var::X_BLOCK;
    let empty = xs
        .iter()
        .all(|&v| lms.iter().any(|m| in_subset(m, &[v])));
    if empty {
        return ProjectiveDimension::Empty;
    }
    let pairs = [[Var::X, Var::Y], [Var::X, Var::Z], [Var::Y, Var::Z]];
    let finite = pairs
        .iter()
        .all(|pair| lms.iter().any(|m| in_subset(m, pair)));
    if !finite {
        return ProjectiveDimension::Positive;
    }
    // the Hilbert function is constant from one past the sum of the largest
    // exponents appearing in the leading monomials
    let d: u32 = xs
        .iter()
        .map(|&v| lms.iter().map(|m| m.0[v as usize] as u32).max().unwrap_or(0))
        .sum::<u32>()
        + 1;
    ProjectiveDimension::Points(hilbert_function(&lms, d))
}

/// Number of degree-`d` monomials in x, y, z not divisible by any of `lms`.
pub fn hilbert_function(lms: &[Monomial], d: u32) -> usize {
    let mut count = 0;
    for a in 0..=d {
        for b in 0..=d - a {
            let m = Monomial([0, 0, a as u16, b as u16, (d - a - b) as u16]);
            if !lms.iter().any(|l| l.divides(&m)) {
                count += 1;
            }
        }
    }
    count
}

/// Whether the common zero locus in P² of homogeneous polynomials in
/// x, y, z is empty.
pub fn projective_locus_empty(gens: &[MPoly]) -> Result<bool> {
    check_projective_input(gens)?;
    let gb = groebner(gens, &Var::X_BLOCK)?;
    Ok(projective_dimension(&gb) == ProjectiveDimension::Empty)
}

pub(crate) fn check_projective_input(gens: &[MPoly]) -> Result<()> {
    for g in gens {
        if !g.uses_only(&Var::X_BLOCK) {
            return Err(Error::Validation(format!("{g} involves t-variables")));
        }
        if !g.is_zero() && g.homogeneous_degree().is_none() {
            return Err(Error::Validation(format!("{g} is not homogeneous")));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> MPoly {
        MPoly::parse(1, s).unwrap()
    }

    fn gb(gens: &[&str]) -> Vec<MPoly> {
        let g: Vec<MPoly> = gens.iter().map(|s| p(s)).collect();
        groebner(&g, &Var::X_BLOCK).unwrap()
    }

    #[test]
    fn already_reduced() {
        assert_eq!(gb(&["x", "y", "z"]), vec![p("x"), p("y"), p("z")]);
    }

    #[test]
    fn containment() {
        assert_eq!(gb(&["x^2-y^2", "x-y"]), vec![p("x-y")]);
    }

    #[test]
    fn binomials_keep_a_common_zero() {
        let b = gb(&["y^2-x*z", "x^2"]);
        let lms: Vec<Monomial> = b.iter().map(|g| g.leading_monomial().unwrap()).collect();
        let pure = |v: Var| lms.iter().any(|m| m.pure_power_of() == Some(v));
        assert!(pure(Var::X) && pure(Var::Y) && !pure(Var::Z));
        assert_eq!(projective_dimension(&b), ProjectiveDimension::Points(4));
    }

    #[test]
    fn emptiness() {
        assert!(projective_locus_empty(&[p("x"), p("y"), p("z")]).unwrap());
        assert!(projective_locus_empty(&[p("4*x^3"), p("4*y^3"), p("4*z^3")]).unwrap());
        assert!(!projective_locus_empty(&[p("y^2-x*z"), p("x^2")]).unwrap());
        assert!(projective_locus_empty(&[p("x+t0")]).is_err());
    }

    #[test]
    fn order_independence() {
        let a = gb(&["x^2+y*z-z^2", "x*y-2*z^2", "y^3-x*z^2+z^3"]);
        let b = gb(&["y^3-x*z^2+z^3", "x^2+y*z-z^2", "x*y-2*z^2"]);
        assert_eq!(a, b);
    }

    #[test]
    fn degree_of_conic_intersection() {
        // two conics meeting in four points
        let b = gb(&["x^2-y^2", "x^2+y^2-2*z^2"]);
        assert_eq!(projective_dimension(&b), ProjectiveDimension::Points(4));
        let c = gb(&["x^2-y*z"]);
        assert_eq!(projective_dimension(&c), ProjectiveDimension::Positive);
    }

    #[test]
    fn timeout() {
        let g = vec![p("x^3+y^2*z-z^3"), p("x*y^2-z^3+x^2*z"), p("y^3-x*z^2")];
        let r = groebner_with(&g, &Var::X_BLOCK, GroebnerConfig { max_reductions: 1 });
        assert_eq!(r, Err(Error::Timeout(1)));
    }
}
