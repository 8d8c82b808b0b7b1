//! Brute-force counts of twisted torsors for `GL_1` and `GL_2` over finite
//! fields.
//!
//! A meridian `x` is sent to `(g_x, τ)` in `G(k) ⋊ <σ>` with `τ = σ^nu`.
//! Multiplying out a Wirtinger relation in the semidirect product, where
//! `(a, σ^i)(b, σ^j) = (a σ^i(b), σ^{i+j})`, gives
//! `g_c = g_o τ(g_a) τ(g_o)^-1` at a left-handed crossing and
//! `g_c = τ^-1(g_o)^-1 τ^-1(g_a) g_o` at a right-handed one. Solutions are
//! normalized by `g = 1` on the first arc, which Lang's theorem allows over
//! the algebraic closure; the remaining freedom is simultaneous conjugation by
//! the `τ`-fixed subgroup `G(F_q)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::diagram::{Diagram, Handedness};
use crate::error::{Error, Result};
use crate::finitefield::{FieldCtx, FieldElem};
use crate::presentation::{wirtinger_presentation, WirtingerPresentation};

/// `τ^twist(g_gen)^{±1}`
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Letter {
    pub gen: usize,
    pub twist: i64,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, twist: i64, inverse: bool) -> Self {
        Letter { gen, twist, inverse }
    }
}

/// A freely reduced word in twisted letters.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TwistedWord(pub Vec<Letter>);

impl TwistedWord {
    pub fn identity() -> Self {
        TwistedWord(Vec::new())
    }

    pub fn letter(gen: usize) -> Self {
        TwistedWord(vec![Letter::new(gen, 0, false)])
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn mul(&self, other: &TwistedWord) -> TwistedWord {
        let mut out = self.0.clone();
        for &l in &other.0 {
            match out.last() {
                Some(&last) if last.gen == l.gen && last.twist == l.twist && last.inverse != l.inverse => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        TwistedWord(out)
    }

    pub fn inverse(&self) -> TwistedWord {
        TwistedWord(self.0.iter().rev().map(|l| Letter { inverse: !l.inverse, ..*l }).collect())
    }

    /// Applies `τ^k` to every letter.
    pub fn twist(&self, k: i64) -> TwistedWord {
        TwistedWord(self.0.iter().map(|l| Letter { twist: l.twist + k, ..*l }).collect())
    }

    /// Replaces every generator by a word.
    pub fn substitute(&self, words: &[TwistedWord]) -> TwistedWord {
        self.0.iter().fold(TwistedWord::identity(), |acc, l| {
            let w = words[l.gen].twist(l.twist);
            acc.mul(&if l.inverse { w.inverse() } else { w })
        })
    }

    /// Cyclically reduced form (conjugation does not change `w = 1`).
    pub fn cyclically_reduced(&self) -> TwistedWord {
        let mut w = self.0.clone();
        while w.len() >= 2 {
            let (a, b) = (w[0], w[w.len() - 1]);
            if a.gen == b.gen && a.twist == b.twist && a.inverse != b.inverse {
                w.pop();
                w.remove(0);
            } else {
                break;
            }
        }
        TwistedWord(w)
    }

    /// Representative of `w = 1` up to conjugation, inversion and a global
    /// twist, none of which change the solution set.
    pub fn normal_form(&self) -> TwistedWord {
        let base = self.cyclically_reduced();
        let mut best: Option<TwistedWord> = None;
        for v in [base.clone(), base.inverse()] {
            for r in 0..v.0.len() {
                let mut rot = v.0.clone();
                rot.rotate_left(r);
                let lo = rot.iter().map(|l| l.twist).min().unwrap_or(0);
                let c = TwistedWord(rot).twist(-lo);
                if best.as_ref().is_none_or(|b| c < *b) {
                    best = Some(c);
                }
            }
        }
        best.unwrap_or(base)
    }

    /// Renders with `σ` powers, `τ = σ^nu`.
    pub fn render(&self, names: &dyn Fn(usize) -> String, nu: u32) -> String {
        if self.0.is_empty() {
            return "1".into();
        }
        self.0
            .iter()
            .map(|l| {
                let s = l.twist * nu as i64;
                let base = match s {
                    0 => names(l.gen),
                    1 => format!("σ({})", names(l.gen)),
                    _ => format!("σ^{s}({})", names(l.gen)),
                };
                if l.inverse {
                    format!("{base}^-1")
                } else {
                    base
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// `g_lhs = rhs` for one crossing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwistedRelation {
    pub crossing: usize,
    pub lhs: usize,
    pub rhs: TwistedWord,
}

fn relation_of(r: &crate::presentation::WirtingerRelation) -> TwistedRelation {
    let (o, a, c) = (r.over, r.incoming, r.outgoing);
    let rhs = match r.handedness {
        Handedness::Left => TwistedWord(vec![Letter::new(o, 0, false), Letter::new(a, 1, false), Letter::new(o, 1, true)]),
        Handedness::Right => {
            TwistedWord(vec![Letter::new(o, -1, true), Letter::new(a, -1, false), Letter::new(o, 0, false)])
        }
    };
    TwistedRelation { crossing: r.crossing, lhs: c, rhs: TwistedWord::identity().mul(&rhs) }
}

/// One twisted equation per Wirtinger relation, twists counted in powers of
/// `τ = σ^nu`.
pub fn twisted_relations(w: &WirtingerPresentation) -> Vec<TwistedRelation> {
    w.relations.iter().map(relation_of).collect()
}

/// Arcs written as words in a few unknown arcs, plus the leftover equations.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Elimination {
    /// Arcs kept as unknowns; unknown `i` is arc `unknowns[i]`.
    pub unknowns: Vec<usize>,
    /// Every arc as a word in the unknowns.
    pub arc_words: Vec<TwistedWord>,
    /// Nontrivial cyclically reduced equations `w = 1` in the unknowns.
    pub equations: Vec<TwistedWord>,
}

/// Pins arc 0 to 1 and solves relations for arcs while possible, promoting
/// the smallest unsolved arc to an unknown when stuck.
pub fn eliminate(w: &WirtingerPresentation) -> Elimination {
    let rels = twisted_relations(w);
    let n = w.generator_count;
    let mut words: Vec<Option<TwistedWord>> = vec![None; n];
    words[0] = Some(TwistedWord::identity());
    let mut unknowns = Vec::new();
    let mut used = vec![false; rels.len()];
    loop {
        let mut progress = true;
        while progress {
            progress = false;
            for (i, r) in rels.iter().enumerate() {
                if used[i] {
                    continue;
                }
                let rel = &w.relations[i];
                let (o, a, c) = (rel.over, rel.incoming, rel.outgoing);
                let known = |x: usize| words[x].clone();
                let solved = match (known(o), known(a), known(c)) {
                    (Some(_), Some(_), None) => {
                        Some((c, r.rhs.substitute(&words.iter().map(|x| x.clone().unwrap_or_default()).collect::<Vec<_>>())))
                    }
                    (Some(wo), None, Some(wc)) => {
                        let a_word = match rel.handedness {
                            // τ(a) = o^-1 c τ(o)
                            Handedness::Left => wo.twist(-1).inverse().mul(&wc.twist(-1)).mul(&wo),
                            // τ^-1(a) = τ^-1(o) c o^-1
                            Handedness::Right => wo.mul(&wc.twist(1)).mul(&wo.twist(1).inverse()),
                        };
                        Some((a, a_word))
                    }
                    _ => None,
                };
                if let Some((arc, word)) = solved {
                    words[arc] = Some(word);
                    used[i] = true;
                    progress = true;
                }
            }
        }
        match (0..n).find(|&x| words[x].is_none()) {
            Some(x) => {
                words[x] = Some(TwistedWord::letter(unknowns.len()));
                unknowns.push(x);
            }
            None => break,
        }
    }
    let arc_words: Vec<TwistedWord> = words.into_iter().map(Option::unwrap).collect();
    let mut equations = Vec::new();
    for (i, r) in rels.iter().enumerate() {
        if used[i] {
            continue;
        }
        let eq = arc_words[r.lhs].inverse().mul(&r.rhs.substitute(&arc_words)).normal_form();
        if !eq.is_identity() && !equations.contains(&eq) {
            equations.push(eq);
        }
    }
    Elimination { unknowns, arc_words, equations }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GroupFamily {
    #[serde(rename = "gl1")]
    GL1,
    #[serde(rename = "gl2")]
    GL2,
}

impl GroupFamily {
    pub fn rank(self) -> usize {
        match self {
            GroupFamily::GL1 => 1,
            GroupFamily::GL2 => 2,
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupFamily::GL1 => "gl1",
            GroupFamily::GL2 => "gl2",
        })
    }
}

/// `GL_n(F_{p^level})`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupSpec {
    pub family: GroupFamily,
    pub p: u64,
    pub level: u32,
}

/// Row-major `[a, b, c, d]`; `GL_1` uses only `a`.
pub type Mat = [FieldElem; 4];

/// Matrix group over a field context.
#[derive(Debug, Clone)]
pub struct MatGroup {
    n: usize,
    f: FieldCtx,
}

impl MatGroup {
    pub fn new(family: GroupFamily, f: FieldCtx) -> Self {
        MatGroup { n: family.rank(), f }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.f
    }

    /// `prod_{i<n} (Q^n - Q^i)` with `Q` the field size; saturating.
    pub fn order(&self) -> u128 {
        let big_q = self.f.size() as u128;
        let n = self.n as u32;
        (0..n).try_fold(1u128, |acc, i| acc.checked_mul(big_q.checked_pow(n)? - big_q.pow(i))).unwrap_or(u128::MAX)
    }

    pub fn identity(&self) -> Mat {
        let (o, z) = (self.f.one(), self.f.zero());
        if self.n == 1 {
            [o, z, z, z]
        } else {
            [o, z, z, o]
        }
    }

    pub fn mul(&self, x: &Mat, y: &Mat) -> Mat {
        let f = &self.f;
        let z = f.zero();
        if self.n == 1 {
            return [f.mul(x[0], y[0]), z, z, z];
        }
        let dot = |a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem| f.add(f.mul(a, b), f.mul(c, d));
        [
            dot(x[0], y[0], x[1], y[2]),
            dot(x[0], y[1], x[1], y[3]),
            dot(x[2], y[0], x[3], y[2]),
            dot(x[2], y[1], x[3], y[3]),
        ]
    }

    pub fn det(&self, x: &Mat) -> FieldElem {
        if self.n == 1 {
            x[0]
        } else {
            self.f.sub(self.f.mul(x[0], x[3]), self.f.mul(x[1], x[2]))
        }
    }

    pub fn inv(&self, x: &Mat) -> Mat {
        let f = &self.f;
        let di = f.inv(self.det(x)).expect("invertible matrix");
        if self.n == 1 {
            return [di, f.zero(), f.zero(), f.zero()];
        }
        [f.mul(x[3], di), f.mul(f.neg(x[1]), di), f.mul(f.neg(x[2]), di), f.mul(x[0], di)]
    }

    /// Entrywise `a -> a^{p^e}`.
    pub fn frob(&self, x: &Mat, e: i64) -> Mat {
        x.map(|a| self.f.frob(a, e))
    }

    /// All elements in lexicographic entry order.
    pub fn elements(&self) -> Vec<Mat> {
        let z = self.f.zero();
        if self.n == 1 {
            return self.f.units().map(|a| [a, z, z, z]).collect();
        }
        let mut out = Vec::new();
        for a in self.f.elements() {
            for b in self.f.elements() {
                for c in self.f.elements() {
                    for d in self.f.elements() {
                        let m = [a, b, c, d];
                        if self.det(&m) != z {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }

    fn eval(&self, w: &TwistedWord, vals: &[Mat], nu: u32) -> Mat {
        w.letters().iter().fold(self.identity(), |acc, l| {
            let x = self.frob(&vals[l.gen], l.twist * nu as i64);
            let x = if l.inverse { self.inv(&x) } else { x };
            self.mul(&acc, &x)
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsorOrbit {
    /// Smallest solution of the orbit, one matrix per arc.
    pub representative: Vec<Mat>,
    pub size: u64,
    pub stabilizer_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TorsorCount {
    pub group: GroupSpec,
    pub nu: u32,
    pub group_order: u64,
    /// Order of the conjugating group `G(F_q)`.
    pub fixed_group_order: u64,
    pub unknowns: usize,
    pub equations: Vec<String>,
    pub search_points: u64,
    pub solutions: u64,
    pub classes: u64,
    pub orbits: Vec<TorsorOrbit>,
}

/// All normalized solutions at the given level, one matrix per arc.
pub fn torsor_solutions(d: &Diagram, g: &MatGroup, nu: u32, budget: u64) -> Result<(Vec<Vec<Mat>>, u64)> {
    let f = g.field();
    if nu == 0 || !f.degree().is_multiple_of(nu) {
        return Err(Error::InvalidParameter(format!(
            "level {} is not a positive multiple of nu = {nu}",
            f.degree()
        )));
    }
    let w = wirtinger_presentation(d);
    let rels = twisted_relations(&w);
    let elim = eliminate(&w);
    let order = g.order();
    let cost = order.checked_pow(elim.unknowns.len() as u32).unwrap_or(u128::MAX);
    if cost > budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{} unknowns over a group of order {order} need {cost} search points, budget is {budget}",
            elim.unknowns.len()
        )));
    }
    let elements = g.elements();
    let k = elim.unknowns.len();
    let mut idx = vec![0usize; k];
    let mut out = Vec::new();
    if k > 0 && elements.is_empty() {
        return Ok((out, 0));
    }
    loop {
        let vals: Vec<Mat> = idx.iter().map(|&i| elements[i]).collect();
        let arcs: Vec<Mat> = elim.arc_words.iter().map(|wd| g.eval(wd, &vals, nu)).collect();
        let ok = rels.iter().all(|r| g.eval(&r.rhs, &arcs, nu) == arcs[r.lhs]);
        if ok {
            out.push(arcs);
        }
        let mut i = 0;
        loop {
            if i == k {
                return Ok((out, cost as u64));
            }
            idx[i] += 1;
            if idx[i] < elements.len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

pub fn count_torsors(d: &Diagram, spec: &GroupSpec, nu: u32, budget: u64) -> Result<TorsorCount> {
    let size = (spec.p as u128).checked_pow(spec.level).unwrap_or(u128::MAX);
    let f = FieldCtx::new(spec.p, spec.level, size <= budget as u128)?;
    let g = MatGroup::new(spec.family, f);
    let (solutions, search_points) = torsor_solutions(d, &g, nu, budget)?;
    let fixed: Vec<Mat> = g.elements().into_iter().filter(|h| g.frob(h, nu as i64) == *h).collect();
    let all: BTreeSet<Vec<Mat>> = solutions.iter().cloned().collect();
    let mut seen: BTreeSet<Vec<Mat>> = BTreeSet::new();
    let mut orbits = Vec::new();
    for s in &all {
        if seen.contains(s) {
            continue;
        }
        let mut orbit = BTreeSet::new();
        let mut stabilizer = 0u64;
        for h in &fixed {
            let hi = g.inv(h);
            let t: Vec<Mat> = s.iter().map(|x| g.mul(&g.mul(h, x), &hi)).collect();
            if t == *s {
                stabilizer += 1;
            }
            orbit.insert(t);
        }
        debug_assert!(orbit.is_subset(&all));
        debug_assert_eq!(orbit.len() as u64 * stabilizer, fixed.len() as u64);
        orbits.push(TorsorOrbit { representative: s.clone(), size: orbit.len() as u64, stabilizer_order: stabilizer });
        seen.extend(orbit);
    }
    let w = wirtinger_presentation(d);
    let elim = eliminate(&w);
    let names = |i: usize| if elim.unknowns.len() == 1 { "g".to_string() } else { format!("g{i}") };
    Ok(TorsorCount {
        group: *spec,
        nu,
        group_order: g.order() as u64,
        fixed_group_order: fixed.len() as u64,
        unknowns: elim.unknowns.len(),
        equations: elim.equations.iter().map(|e| format!("{} = 1", e.render(&names, nu))).collect(),
        search_points,
        solutions: all.len() as u64,
        classes: orbits.len() as u64,
        orbits,
    })
}
