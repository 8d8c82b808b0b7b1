//! Enumeration oracle: rank-one point-framed local systems over finite
//! fields, counted directly.
//!
//! A cocycle at level `M` is a tuple of units `z_1..z_{v+1}` of `F_{p^M}`,
//! one per non-null region, with
//! `z_j F^s(z_k)^-1 F^s(z_l) z_m^-1 = 1` at every crossing, where `F` is the
//! `q`-power map and `s = ±1` the crossing's twist. A unit `y` acts by
//! `z_j -> F^{I(j)}(y) y^-1 z_j`.
//!
//! Over the algebraic closure every cocycle with `z_{j0} = 1` (for a fixed
//! region `j0` of index `±1`) is a distinct class, and every class has such a
//! representative at any level where it is defined: the class of `z` is
//! trivial iff `z` equals the coboundary of a solution `y` of
//! `F(y)/y = c`, which exists over the closure for every `c`. So the classes
//! visible at level `M` are exactly the level-`M` cocycles with `z_{j0} = 1`,
//! and the stable count is the largest of these over the scanned levels.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::diagram::Diagram;
use crate::error::{Error, Result};
use crate::finitefield::{is_prime, Embedding, FieldCtx, FieldElem};
use crate::presentation::dehn_presentation;

/// Default bound on search points per level.
pub const DEFAULT_BUDGET: u64 = 1 << 20;

/// `F^twist(z_var)^exp`
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Term {
    var: usize,
    twist: i64,
    exp: i64,
}

#[derive(Debug, Clone)]
struct Relation {
    terms: Vec<Term>,
}

#[derive(Debug, Clone, Copy)]
enum Step {
    Free(usize),
    Determine { var: usize, rel: usize },
    Check(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cocycle {
    pub level: u32,
    /// `z[i]` belongs to region `i + 1`.
    pub z: Vec<FieldElem>,
}

/// The cocycle equations of one diagram for a fixed `(p, nu)`.
#[derive(Debug, Clone)]
pub struct LocalSystems {
    p: u64,
    nu: u32,
    vars: usize,
    relations: Vec<Relation>,
    /// Alexander index of each unknown (region `i + 1`).
    indices: Vec<i64>,
    /// Unknown pinned to 1 for the class slice.
    anchor: usize,
}

impl LocalSystems {
    /// `nu = 0` is accepted and turns every Frobenius into the identity.
    pub fn new(d: &Diagram, p: u64, nu: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
        }
        let pres = dehn_presentation(d)?;
        let vars = pres.generator_count;
        let relations = pres
            .relations
            .iter()
            .map(|r| {
                let s = r.handedness.twist();
                let mut terms: Vec<Term> = Vec::new();
                for (region, twist, exp) in [(r.j, 0, 1), (r.k, s, -1), (r.l, s, 1), (r.m, 0, -1)] {
                    if region == 0 {
                        continue;
                    }
                    let var = region - 1;
                    match terms.iter_mut().find(|t| t.var == var && t.twist == twist) {
                        Some(t) => t.exp += exp,
                        None => terms.push(Term { var, twist, exp }),
                    }
                }
                terms.retain(|t| t.exp != 0);
                Relation { terms }
            })
            .collect();
        let indices: Vec<i64> = pres.indices[1..].to_vec();
        let anchor = indices
            .iter()
            .position(|i| i.abs() == 1)
            .ok_or_else(|| Error::InconsistentDiagram("no region of index ±1".into()))?;
        Ok(LocalSystems { p, nu, vars, relations, indices, anchor })
    }

    pub fn unknowns(&self) -> usize {
        self.vars
    }

    /// Index of each non-null region.
    pub fn indices(&self) -> &[i64] {
        &self.indices
    }

    /// Region (1-based id) pinned to 1 in the class slice.
    pub fn anchor_region(&self) -> usize {
        self.anchor + 1
    }

    fn check_level(&self, level: u32) -> Result<()> {
        if level == 0 || (self.nu > 0 && !level.is_multiple_of(self.nu)) {
            return Err(Error::InvalidParameter(format!("level {level} is not a positive multiple of nu = {}", self.nu)));
        }
        Ok(())
    }

    /// Field of degree `level`, allowing large fields when the budget does.
    pub fn field(&self, level: u32, budget: u64) -> Result<FieldCtx> {
        self.check_level(level)?;
        let size = (self.p as u128).checked_pow(level).unwrap_or(u128::MAX);
        FieldCtx::new(self.p, level, size - 1 <= budget as u128)
    }

    fn plan(&self, pinned: &[usize]) -> Vec<Step> {
        let mut known = vec![false; self.vars];
        for &v in pinned {
            known[v] = true;
        }
        let mut pending: Vec<usize> = (0..self.relations.len()).collect();
        let mut steps = Vec::new();
        loop {
            let mut progress = true;
            while progress {
                progress = false;
                let mut i = 0;
                while i < pending.len() {
                    let rel = &self.relations[pending[i]];
                    let unknown: Vec<&Term> = rel.terms.iter().filter(|t| !known[t.var]).collect();
                    let step = match unknown.as_slice() {
                        [] => Some(Step::Check(pending[i])),
                        [t] if t.exp.abs() == 1 => Some(Step::Determine { var: t.var, rel: pending[i] }),
                        _ => None,
                    };
                    match step {
                        Some(s) => {
                            if let Step::Determine { var, .. } = s {
                                known[var] = true;
                            }
                            steps.push(s);
                            pending.remove(i);
                            progress = true;
                        }
                        None => i += 1,
                    }
                }
            }
            let free = (0..self.vars).filter(|&v| !known[v]).max_by_key(|&v| {
                let uses = pending.iter().filter(|&&r| self.relations[r].terms.iter().any(|t| t.var == v)).count();
                (uses, std::cmp::Reverse(v))
            });
            match free {
                Some(v) => {
                    known[v] = true;
                    steps.push(Step::Free(v));
                }
                None => break,
            }
        }
        debug_assert!(pending.is_empty());
        steps
    }

    /// Number of unknowns searched exhaustively (after propagation).
    pub fn free_dimension(&self, slice: bool) -> usize {
        let pinned: Vec<usize> = if slice { vec![self.anchor] } else { Vec::new() };
        self.plan(&pinned).iter().filter(|s| matches!(s, Step::Free(_))).count()
    }

    /// Search points needed at `level`, saturating.
    pub fn search_cost(&self, level: u32, slice: bool) -> u128 {
        let units = (self.p as u128).checked_pow(level).map_or(u128::MAX, |s| s - 1);
        let k = self.free_dimension(slice) as u32;
        units.checked_pow(k).unwrap_or(u128::MAX)
    }

    /// Every cocycle at `level`.
    pub fn enumerate(&self, level: u32, budget: u64) -> Result<Vec<Cocycle>> {
        let f = self.field(level, budget)?;
        self.search(&f, &[], budget)
    }

    /// Cocycles with the anchor pinned to 1: one per class over the algebraic
    /// closure that is defined at this level.
    pub fn enumerate_classes(&self, level: u32, budget: u64) -> Result<Vec<Cocycle>> {
        let f = self.field(level, budget)?;
        self.search(&f, &[self.anchor], budget)
    }

    fn search(&self, f: &FieldCtx, pinned: &[usize], budget: u64) -> Result<Vec<Cocycle>> {
        let steps = self.plan(pinned);
        let frees = steps.iter().filter(|s| matches!(s, Step::Free(_))).count() as u32;
        let cost = ((f.size() - 1) as u128).checked_pow(frees).unwrap_or(u128::MAX);
        if cost > budget as u128 {
            return Err(Error::BudgetExceeded(format!(
                "level {} needs {cost} search points ({frees} free units over F_{}^{}), budget is {budget}",
                f.degree(),
                f.p(),
                f.degree()
            )));
        }
        let mut vals = vec![(f.one(), f.one()); self.vars];
        let mut out = Vec::new();
        let mut search = Search { sys: self, f, steps: &steps, vals: &mut vals, out: &mut out };
        search.run(0);
        Ok(out)
    }

    fn frob(&self, f: &FieldCtx, a: FieldElem, twist: i64) -> FieldElem {
        f.frob(a, self.nu as i64 * twist)
    }

    /// Independent check of every relation on a normalized tuple.
    pub fn is_cocycle(&self, f: &FieldCtx, z: &[FieldElem]) -> bool {
        z.len() == self.vars
            && z.iter().all(|&x| x != f.zero() && f.contains(x))
            && self.relations.iter().all(|r| {
                let mut acc = f.one();
                for t in &r.terms {
                    let x = self.frob(f, z[t.var], t.twist);
                    let x = if t.exp < 0 { f.inv(x).unwrap() } else { x };
                    acc = f.mul(acc, f.pow(x, t.exp.unsigned_abs()));
                }
                acc == f.one()
            })
    }

    /// The coboundary of `y`: `(F^{I(j)}(y) / y)_j`.
    pub fn coboundary(&self, f: &FieldCtx, y: FieldElem) -> Vec<FieldElem> {
        let yinv = f.inv(y).expect("unit");
        self.indices.iter().map(|&i| f.mul(self.frob(f, y, i), yinv)).collect()
    }

    /// Units acting trivially on every cocycle at this level.
    pub fn stabilizer_order(&self, f: &FieldCtx) -> u64 {
        f.units().filter(|&y| self.indices.iter().all(|&i| self.frob(f, y, i) == y)).count() as u64
    }
}

struct Search<'a> {
    sys: &'a LocalSystems,
    f: &'a FieldCtx,
    steps: &'a [Step],
    /// Values as fractions `num / den` so the inner loop never inverts.
    vals: &'a mut Vec<(FieldElem, FieldElem)>,
    out: &'a mut Vec<Cocycle>,
}

impl Search<'_> {
    /// Product of the terms of `rel` other than those on `skip`, as a fraction.
    fn product(&self, rel: usize, skip: Option<usize>) -> (FieldElem, FieldElem) {
        let f = self.f;
        let (mut n, mut d) = (f.one(), f.one());
        for t in &self.sys.relations[rel].terms {
            if Some(t.var) == skip {
                continue;
            }
            let (a, b) = self.vals[t.var];
            let (mut a, mut b) = (self.sys.frob(f, a, t.twist), self.sys.frob(f, b, t.twist));
            if t.exp < 0 {
                std::mem::swap(&mut a, &mut b);
            }
            let e = t.exp.unsigned_abs();
            if e != 1 {
                a = f.pow(a, e);
                b = f.pow(b, e);
            }
            n = f.mul(n, a);
            d = f.mul(d, b);
        }
        (n, d)
    }

    fn run(&mut self, at: usize) {
        let f = self.f;
        let Some(&step) = self.steps.get(at) else {
            let z: Vec<FieldElem> = self.vals.iter().map(|&(n, d)| f.mul(n, f.inv(d).unwrap())).collect();
            assert!(self.sys.is_cocycle(f, &z), "search emitted a tuple that is not a cocycle");
            self.out.push(Cocycle { level: f.degree(), z });
            return;
        };
        match step {
            Step::Free(var) => {
                for y in f.units() {
                    self.vals[var] = (y, f.one());
                    self.run(at + 1);
                }
            }
            Step::Determine { var, rel } => {
                let t = *self.sys.relations[rel].terms.iter().find(|t| t.var == var).unwrap();
                let (n, d) = self.product(rel, Some(var));
                // F^t(z)^e (n/d) = 1
                let (a, b) = if t.exp == 1 { (d, n) } else { (n, d) };
                self.vals[var] = (self.sys.frob(f, a, -t.twist), self.sys.frob(f, b, -t.twist));
                self.run(at + 1);
            }
            Step::Check(rel) => {
                let (n, d) = self.product(rel, None);
                if n == d {
                    self.run(at + 1);
                }
            }
        }
    }
}

/// Every cocycle of `d` over `F_{p^level}`.
pub fn enumerate_cocycles(d: &Diagram, p: u64, nu: u32, level: u32, budget: u64) -> Result<Vec<Cocycle>> {
    require_nu(nu)?;
    LocalSystems::new(d, p, nu)?.enumerate(level, budget)
}

fn require_nu(nu: u32) -> Result<()> {
    if nu == 0 {
        return Err(Error::InvalidParameter("nu must be positive".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassInfo {
    /// Smallest cocycle of the orbit in the element order.
    pub representative: Cocycle,
    pub orbit_size: u64,
    pub automorphism_order: u64,
}

/// Orbits of the finite-level action of `F_{p^M}^*` on cocycles.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassTable {
    pub level: u32,
    pub classes: Vec<ClassInfo>,
    pub total_cocycles: u64,
    pub coboundary_image_size: u64,
}

/// Splits `cocycles` (all at one level, closed under the action) into
/// orbits of `z_j -> F^{I(j)}(y) y^-1 z_j`.
pub fn coboundary_orbits(sys: &LocalSystems, f: &FieldCtx, cocycles: &[Cocycle]) -> Result<ClassTable> {
    let image: BTreeSet<Vec<FieldElem>> = f.units().map(|y| sys.coboundary(f, y)).collect();
    let all: BTreeSet<Vec<FieldElem>> = cocycles.iter().map(|c| c.z.clone()).collect();
    let mut seen: BTreeSet<Vec<FieldElem>> = BTreeSet::new();
    let mut classes = Vec::new();
    for z in &all {
        if seen.contains(z) {
            continue;
        }
        let orbit: BTreeSet<Vec<FieldElem>> =
            image.iter().map(|b| z.iter().zip(b).map(|(&x, &y)| f.mul(x, y)).collect()).collect();
        if !orbit.is_subset(&all) {
            return Err(Error::InvalidParameter("cocycle list is not closed under coboundaries".into()));
        }
        let automorphism_order = f
            .units()
            .filter(|&y| sys.coboundary(f, y).iter().zip(z).all(|(&b, &x)| f.mul(b, x) == x))
            .count() as u64;
        classes.push(ClassInfo {
            representative: Cocycle { level: f.degree(), z: z.clone() },
            orbit_size: orbit.len() as u64,
            automorphism_order,
        });
        seen.extend(orbit);
    }
    Ok(ClassTable {
        level: f.degree(),
        classes,
        total_cocycles: all.len() as u64,
        coboundary_image_size: image.len() as u64,
    })
}

/// One scanned level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: u32,
    /// Classes over the algebraic closure defined at this level.
    pub classes: u64,
    /// All cocycles at this level (`classes * (p^M - 1)`).
    pub total_cocycles: u64,
    pub search_points: u64,
    /// Orbits of the finite-level action, when small enough to list.
    pub finite_level_classes: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub p: u64,
    pub nu: u32,
    pub q: u64,
    pub cap: u32,
    pub budget: u64,
    pub anchor_region: usize,
    pub levels: Vec<LevelReport>,
    /// `(M, M')` with `M | M'` both attaining the maximum, if any.
    pub stable_levels: Option<(u32, u32)>,
    pub max_count: u64,
    /// Class representatives at the first stable level.
    pub representatives: Vec<Cocycle>,
    /// Units of the stable level fixing a class (the same for all classes).
    pub automorphism_order: Option<u64>,
    /// `false` if the recheck at the second stable level disagreed.
    pub automorphism_consistent: bool,
    /// Every representative at level `M` embeds into the class list at `2M`
    /// for each scanned pair.
    pub embedding_consistent: bool,
}

impl Stabilization {
    pub fn stable_count(&self) -> Option<u64> {
        self.stable_levels.map(|_| self.max_count)
    }
}

const FINITE_TABLE_LIMIT: u128 = 1 << 14;

/// Scans every level `M = nu, 2nu, ...` up to `cap` that fits the budget.
pub fn scan_levels(d: &Diagram, p: u64, nu: u32, cap: u32, budget: u64) -> Result<Stabilization> {
    require_nu(nu)?;
    let sys = LocalSystems::new(d, p, nu)?;
    let q = p.checked_pow(nu).ok_or_else(|| Error::InvalidParameter("q does not fit in 64 bits".into()))?;
    if cap < nu {
        return Err(Error::InvalidParameter(format!("cap {cap} is below nu = {nu}")));
    }
    let mut levels = Vec::new();
    let mut reps: Vec<(u32, Vec<Cocycle>)> = Vec::new();
    let mut level = nu;
    while level <= cap {
        let cost = sys.search_cost(level, true);
        // building the field and scanning its units for stabilizers is
        // itself p^M work, even when the search is trivial
        let units = (p as u128).checked_pow(level).map_or(u128::MAX, |s| s - 1);
        if cost.max(units) > budget as u128 {
            if levels.is_empty() {
                return Err(Error::BudgetExceeded(format!(
                    "the first level {level} needs {} steps, budget is {budget}",
                    cost.max(units)
                )));
            }
            break;
        }
        let f = sys.field(level, budget)?;
        let classes = sys.search(&f, &[sys.anchor], budget)?;
        let finite_level_classes = if sys.search_cost(level, false) <= FINITE_TABLE_LIMIT {
            let all = sys.search(&f, &[], budget)?;
            Some(coboundary_orbits(&sys, &f, &all)?.classes.len() as u64)
        } else {
            None
        };
        levels.push(LevelReport {
            level,
            classes: classes.len() as u64,
            total_cocycles: classes.len() as u64 * (f.size() - 1),
            search_points: cost as u64,
            finite_level_classes,
        });
        reps.push((level, classes));
        level += nu;
    }
    let max_count = levels.iter().map(|l| l.classes).max().unwrap_or(0);
    let at_max: Vec<u32> = levels.iter().filter(|l| l.classes == max_count).map(|l| l.level).collect();
    let stable_levels = at_max
        .iter()
        .flat_map(|&a| at_max.iter().map(move |&b| (a, b)))
        .find(|&(a, b)| a < b && b % a == 0);

    let mut embedding_consistent = true;
    for (m, small) in &reps {
        let Some((_, big)) = reps.iter().find(|(n, _)| *n == 2 * m) else { continue };
        let (fs, fb) = (sys.field(*m, budget)?, sys.field(2 * m, budget)?);
        let e = Embedding::new(&fs, &fb)?;
        let targets: BTreeSet<&Vec<FieldElem>> = big.iter().map(|c| &c.z).collect();
        for c in small {
            let img: Vec<FieldElem> = c.z.iter().map(|&x| e.apply(&fs, &fb, x)).collect();
            if !targets.contains(&img) {
                embedding_consistent = false;
            }
        }
    }

    let (mut automorphism_order, mut automorphism_consistent, mut representatives) = (None, true, Vec::new());
    if let Some((a, b)) = stable_levels {
        let first = sys.stabilizer_order(&sys.field(a, budget)?);
        let second = sys.stabilizer_order(&sys.field(b, budget)?);
        automorphism_consistent = first == second;
        automorphism_order = Some(second);
        representatives = reps.iter().find(|(m, _)| *m == a).map(|(_, r)| r.clone()).unwrap_or_default();
    }
    Ok(Stabilization {
        p,
        nu,
        q,
        cap,
        budget,
        anchor_region: sys.anchor_region(),
        levels,
        stable_levels,
        max_count,
        representatives,
        automorphism_order,
        automorphism_consistent,
        embedding_consistent,
    })
}

/// [`scan_levels`], failing with `NotStabilized` unless the maximum is
/// attained at two levels `M | M'`.
pub fn stable_class_count(d: &Diagram, p: u64, nu: u32, cap: u32, budget: u64) -> Result<Stabilization> {
    let s = scan_levels(d, p, nu, cap, budget)?;
    if s.stable_levels.is_none() {
        let seq: Vec<String> = s.levels.iter().map(|l| format!("M={}:{}", l.level, l.classes)).collect();
        return Err(Error::NotStabilized(format!(
            "class counts {} (cap {cap}, budget {budget}) never repeat their maximum at levels M | M'",
            seq.join(" ")
        )));
    }
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbifold {
    pub num: BigInt,
    pub den: BigInt,
    pub classes: u64,
    pub automorphism_order: u64,
}

impl Orbifold {
    pub fn value(&self) -> BigRational {
        BigRational::new(self.num.clone(), self.den.clone())
    }
}

/// Sum over stable classes of `1/|Aut|`.
pub fn orbifold_count(d: &Diagram, p: u64, nu: u32, cap: u32, budget: u64) -> Result<Orbifold> {
    let s = stable_class_count(d, p, nu, cap, budget)?;
    orbifold_from(&s)
}

pub fn orbifold_from(s: &Stabilization) -> Result<Orbifold> {
    let (Some(count), Some(aut)) = (s.stable_count(), s.automorphism_order) else {
        return Err(Error::NotStabilized("no stable level to read automorphisms from".into()));
    };
    let value: BigRational = (0..count).map(|_| BigRational::new(1.into(), aut.into())).sum();
    Ok(Orbifold { num: value.numer().clone(), den: value.denom().clone(), classes: count, automorphism_order: aut })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{mirror, parse_pd};

    const TREFOIL: &str = "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]";
    const FIGURE_EIGHT: &str = "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]";
    const FIVE_TWO: &str = "X[1,4,2,5] X[3,8,4,9] X[5,10,6,1] X[9,6,10,7] X[7,2,8,3]";

    fn trefoil() -> Diagram {
        parse_pd(TREFOIL).unwrap()
    }

    /// Plain brute force over all unit tuples.
    fn brute_force(sys: &LocalSystems, f: &FieldCtx) -> usize {
        let n = sys.unknowns();
        let units: Vec<FieldElem> = f.units().collect();
        let mut idx = vec![0usize; n];
        let mut count = 0;
        loop {
            let z: Vec<FieldElem> = idx.iter().map(|&i| units[i]).collect();
            if sys.is_cocycle(f, &z) {
                count += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    return count;
                }
                idx[k] += 1;
                if idx[k] < units.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }

    #[test]
    fn trefoil_over_f4() {
        let sys = LocalSystems::new(&trefoil(), 2, 1).unwrap();
        let f = sys.field(2, DEFAULT_BUDGET).unwrap();
        let all = sys.enumerate(2, DEFAULT_BUDGET).unwrap();
        assert_eq!(all.len(), 9);
        assert_eq!(brute_force(&sys, &f), 9);
        let table = coboundary_orbits(&sys, &f, &all).unwrap();
        assert_eq!(table.classes.len(), 3);
        assert_eq!(table.classes.iter().map(|c| c.orbit_size).sum::<u64>(), 9);
        assert!(table.classes.iter().all(|c| 3 % c.automorphism_order == 0));
        assert_eq!(sys.enumerate_classes(2, DEFAULT_BUDGET).unwrap().len(), 3);
    }

    #[test]
    fn propagation_matches_brute_force() {
        for (pd, p, nu, level) in [(TREFOIL, 3, 1, 2), (FIGURE_EIGHT, 2, 1, 3), (FIVE_TWO, 2, 1, 2), (TREFOIL, 2, 2, 4)] {
            let sys = LocalSystems::new(&parse_pd(pd).unwrap(), p, nu).unwrap();
            let f = sys.field(level, DEFAULT_BUDGET).unwrap();
            assert_eq!(sys.enumerate(level, DEFAULT_BUDGET).unwrap().len(), brute_force(&sys, &f), "{pd}");
        }
    }

    #[test]
    fn unknot_counts() {
        let u = parse_pd("unknot").unwrap();
        for (p, m) in [(2, 2), (3, 2), (5, 1)] {
            let sys = LocalSystems::new(&u, p, 1).unwrap();
            let f = sys.field(m, DEFAULT_BUDGET).unwrap();
            let all = sys.enumerate(m, DEFAULT_BUDGET).unwrap();
            assert_eq!(all.len() as u64, p.pow(m) - 1);
            let table = coboundary_orbits(&sys, &f, &all).unwrap();
            // over F_{p^m} the coboundaries y^(p-1) have index p - 1
            assert_eq!(table.classes.len() as u64, p - 1);
        }
        let o = orbifold_count(&u, 3, 1, 4, DEFAULT_BUDGET).unwrap();
        assert_eq!(o.value(), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn trefoil_stabilizes_at_delta() {
        let s = stable_class_count(&trefoil(), 2, 1, 8, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.stable_count(), Some(3));
        assert_eq!(s.stable_levels, Some((2, 4)));
        assert!(s.embedding_consistent);
        let s = stable_class_count(&trefoil(), 3, 1, 12, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.stable_count(), Some(7));
        assert_eq!(s.stable_levels, Some((6, 12)));
        assert_eq!(s.automorphism_order, Some(2));
    }

    #[test]
    fn five_two_at_excluded_prime() {
        let s = stable_class_count(&parse_pd(FIVE_TWO).unwrap(), 2, 1, 12, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.stable_count(), Some(1));
    }

    #[test]
    fn orbifold_values() {
        let o = orbifold_count(&trefoil(), 2, 1, 8, DEFAULT_BUDGET).unwrap();
        assert_eq!(o.value(), BigRational::from_integer(3.into()));
        let o = orbifold_count(&trefoil(), 3, 1, 12, DEFAULT_BUDGET).unwrap();
        assert_eq!(o.value(), BigRational::new(7.into(), 2.into()));
    }

    #[test]
    fn classes_form_a_group() {
        let sys = LocalSystems::new(&trefoil(), 3, 1).unwrap();
        let f = sys.field(6, DEFAULT_BUDGET).unwrap();
        let reps = sys.enumerate_classes(6, DEFAULT_BUDGET).unwrap();
        let set: BTreeSet<Vec<FieldElem>> = reps.iter().map(|c| c.z.clone()).collect();
        for a in &reps {
            for b in &reps {
                let prod: Vec<FieldElem> = a.z.iter().zip(&b.z).map(|(&x, &y)| f.mul(x, y)).collect();
                assert!(set.contains(&prod));
            }
            let inv: Vec<FieldElem> = a.z.iter().map(|&x| f.inv(x).unwrap()).collect();
            assert!(set.contains(&inv));
        }
    }

    #[test]
    fn coboundaries_commute_with_products() {
        let sys = LocalSystems::new(&trefoil(), 2, 1).unwrap();
        let f = sys.field(4, DEFAULT_BUDGET).unwrap();
        for y in f.units().step_by(4) {
            for w in f.units().step_by(5) {
                let lhs = sys.coboundary(&f, f.mul(y, w));
                let rhs: Vec<FieldElem> =
                    sys.coboundary(&f, y).iter().zip(sys.coboundary(&f, w)).map(|(&a, b)| f.mul(a, b)).collect();
                assert_eq!(lhs, rhs);
                assert!(sys.is_cocycle(&f, &lhs));
            }
        }
    }

    #[test]
    fn untwisted_counts_do_not_depend_on_q() {
        // Frobenius replaced by the identity: classical rank-one local
        // systems, one per unit (abelianization Z)
        let d = parse_pd(FIGURE_EIGHT).unwrap();
        for p in [2, 3] {
            let sys = LocalSystems::new(&d, p, 0).unwrap();
            for m in 1..=3 {
                assert_eq!(sys.enumerate(m, DEFAULT_BUDGET).unwrap().len() as u64, p.pow(m) - 1);
            }
        }
    }

    #[test]
    fn mirror_keeps_counts() {
        let d = trefoil();
        let a = stable_class_count(&d, 2, 1, 8, DEFAULT_BUDGET).unwrap();
        let b = stable_class_count(&mirror(&d), 2, 1, 8, DEFAULT_BUDGET).unwrap();
        assert_eq!(a.stable_count(), b.stable_count());
    }

    #[test]
    fn errors() {
        let d = trefoil();
        assert!(matches!(enumerate_cocycles(&d, 2, 2, 3, DEFAULT_BUDGET), Err(Error::InvalidParameter(_))));
        assert!(matches!(enumerate_cocycles(&d, 2, 1, 12, 100), Err(Error::BudgetExceeded(_))));
        // 13 | 2^M - 1 needs 12 | M: below that every level reads 1 and the
        // scan agrees with itself too early
        let s = stable_class_count(&d, 2, 2, 8, DEFAULT_BUDGET).unwrap();
        assert_eq!(s.stable_count(), Some(1));
        assert!(matches!(stable_class_count(&d, 2, 2, 20, DEFAULT_BUDGET), Err(Error::NotStabilized(_))));
    }
}
