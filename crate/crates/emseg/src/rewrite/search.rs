//! Breadth-first search over (C), (UI), (P) and their inverses.
//!
//! Intermediate states may carry phantom rows (A + B = -1). Members of a class
//! are the states without them; an edge between members is a path whose inner
//! states all have phantoms.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};

use serde_json::{json, Value};

use super::{
    op_c, op_p_add, op_p_remove, op_ui, ui_preimages, Kernel, KernelGap, PhantomKind, RewriteStep,
    UiTarget,
};
use crate::aparam::AParameter;
use crate::foundation::RhoLabel;
use crate::multiseg::Ems;

/// Limits of the search space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest phantom l; `None` means max A + 1 of the starting state, per label.
    pub phantom_l_max: Option<u32>,
    /// Phantom rows allowed at once.
    pub max_phantoms: usize,
    /// States visited before giving up.
    pub state_limit: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            phantom_l_max: None,
            max_phantoms: 1,
            state_limit: 200_000,
        }
    }
}

struct Space {
    lmax: BTreeMap<RhoLabel, u32>,
    max_phantoms: usize,
}

impl Space {
    fn new(start: &Ems, bounds: &Bounds) -> Self {
        let lmax = start
            .blocks()
            .map(|(rho, rs)| {
                let top = rs.iter().map(|r| r.upper.floor()).max().unwrap_or(0);
                (
                    rho.clone(),
                    bounds.phantom_l_max.unwrap_or((top + 1).max(1) as u32),
                )
            })
            .collect();
        Space {
            lmax,
            max_phantoms: bounds.max_phantoms,
        }
    }

    fn phantoms(e: &Ems) -> usize {
        e.blocks()
            .flat_map(|(_, rs)| rs)
            .filter(|r| r.a() == 0)
            .count()
    }

    fn admits(&self, e: &Ems) -> bool {
        if !e.is_admissible() || Space::phantoms(e) > self.max_phantoms {
            return false;
        }
        e.blocks().flat_map(|(_, rs)| rs).all(|r| {
            r.b() >= 1 && r.l_in_range() && r.a() >= 0 && r.lower.twice() + 2 * r.l as i64 >= -1
        })
    }

    fn moves(
        &self,
        e: &Ems,
        kernel: &dyn Kernel,
        gaps: &mut BTreeSet<KernelGap>,
    ) -> Vec<(RewriteStep, Ems)> {
        let mut out = Vec::new();
        for (rho, rs) in e.blocks() {
            let n = rs.len();
            for i in 0..n.saturating_sub(1) {
                let (x, y) = (rs[i], rs[i + 1]);
                if x.contains(&y) || y.contains(&x) {
                    if let Ok(o) = op_c(e, rho, i, kernel) {
                        gaps.extend(o.gaps);
                        for s in o.results.into_iter().filter(|s| self.admits(s)) {
                            out.push((
                                RewriteStep::C {
                                    rho: rho.clone(),
                                    index: i,
                                },
                                s,
                            ));
                        }
                    }
                }
                if x.lower < y.lower && x.upper < y.upper && y.lower <= x.upper + 1 {
                    if let Ok(o) = op_ui(e, rho, i, kernel) {
                        gaps.extend(o.gaps);
                        for (variant, s) in o.results.into_iter().enumerate() {
                            if self.admits(&s) {
                                out.push((
                                    RewriteStep::UI {
                                        rho: rho.clone(),
                                        index: i,
                                        variant,
                                    },
                                    s,
                                ));
                            }
                        }
                    }
                }
                if x.lower < y.lower && y.upper < x.upper {
                    self.preimages(e, rho, UiTarget::Pair(i), kernel, gaps, &mut out);
                }
            }
            for (i, x) in rs.iter().enumerate() {
                let mut at = x.lower;
                while at < x.upper {
                    self.preimages(
                        e,
                        rho,
                        UiTarget::Split { index: i, at },
                        kernel,
                        gaps,
                        &mut out,
                    );
                    at = at + 1;
                }
            }
            if rs[0].is_phantom() {
                if let Ok(s) = op_p_remove(e, rho, 0) {
                    if self.admits(&s) {
                        out.push((RewriteStep::Premove { rho: rho.clone() }, s));
                    }
                }
            }
            if Space::phantoms(e) < self.max_phantoms {
                let lmax = self.lmax.get(rho).copied().unwrap_or(1);
                let (kind, first) = if rs[0].upper.is_integer() {
                    (PhantomKind::Integral, 1)
                } else {
                    (PhantomKind::HalfIntegral, 0)
                };
                for l in first..=lmax {
                    if let Ok(s) = op_p_add(e, rho, kind, l) {
                        if self.admits(&s) {
                            out.push((
                                RewriteStep::Padd {
                                    rho: rho.clone(),
                                    kind,
                                    l,
                                },
                                s,
                            ));
                        }
                    }
                }
            }
        }
        out
    }

    fn preimages(
        &self,
        e: &Ems,
        rho: &RhoLabel,
        target: UiTarget,
        kernel: &dyn Kernel,
        gaps: &mut BTreeSet<KernelGap>,
        out: &mut Vec<(RewriteStep, Ems)>,
    ) {
        let Ok(cands) = ui_preimages(e, rho, target, kernel) else {
            return;
        };
        for p in cands {
            if !self.admits(&p.state) {
                continue;
            }
            match p.gap {
                Some(g) => {
                    gaps.insert(g);
                }
                None => out.push((p.step, p.state)),
            }
        }
    }
}

/// Strict states one phantom-free hop away, with the path to each.
#[derive(Clone, Debug)]
pub struct Neighborhood {
    pub items: Vec<(Vec<RewriteStep>, Ems)>,
    pub gaps: Vec<KernelGap>,
    pub bound_hit: bool,
}

pub fn neighbors(e: &Ems, kernel: &dyn Kernel, bounds: &Bounds) -> Neighborhood {
    let space = Space::new(e, bounds);
    let mut gaps = BTreeSet::new();
    let mut seen: HashSet<Ems> = HashSet::from([e.clone()]);
    let mut queue = VecDeque::from([(e.clone(), Vec::new())]);
    let mut items = Vec::new();
    let mut bound_hit = false;
    while let Some((cur, path)) = queue.pop_front() {
        for (step, s) in space.moves(&cur, kernel, &mut gaps) {
            if seen.contains(&s) {
                continue;
            }
            if seen.len() >= bounds.state_limit {
                bound_hit = true;
                break;
            }
            seen.insert(s.clone());
            let mut p: Vec<RewriteStep> = path.clone();
            p.push(step);
            if s.is_strict() {
                items.push((p, s));
            } else {
                queue.push_back((s, p));
            }
        }
    }
    Neighborhood {
        items,
        gaps: gaps.into_iter().collect(),
        bound_hit,
    }
}

/// A member-to-member edge; indices point into [`ClassEnumeration::raw`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub steps: Vec<RewriteStep>,
}

#[derive(Clone, Debug)]
pub struct ClassEnumeration {
    /// One representative per (C)-orbit, in discovery order.
    pub members: Vec<Ems>,
    /// Every strict state reached, in discovery order; `raw[0]` is the start.
    pub raw: Vec<Ems>,
    /// Orbit of each raw state, as an index into `members`.
    pub orbit: Vec<usize>,
    pub edges: Vec<Edge>,
    pub exhausted: bool,
    pub gaps: Vec<KernelGap>,
    pub bound_hit: bool,
    pub states_visited: usize,
    pub phantom_l_max: BTreeMap<RhoLabel, u32>,
    pub max_phantoms: usize,
}

impl ClassEnumeration {
    pub fn raw_index(&self, e: &Ems) -> Option<usize> {
        self.raw.iter().position(|r| r == e)
    }

    /// Orbit index of `e`, if `e` was reached.
    pub fn member_of(&self, e: &Ems) -> Option<usize> {
        self.raw_index(e).map(|i| self.orbit[i])
    }

    /// Distinct psi_E over the class, in member order.
    pub fn psis(&self) -> Vec<AParameter> {
        let mut out: Vec<AParameter> = Vec::new();
        for m in &self.members {
            let p = m.psi_of();
            if !out.contains(&p) {
                out.push(p);
            }
        }
        out
    }

    /// Steps from raw state `from` to raw state `to` along recorded edges.
    pub fn path(&self, from: usize, to: usize) -> Option<Vec<RewriteStep>> {
        let mut prev: HashMap<usize, usize> = HashMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = BTreeSet::from([from]);
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut edges = Vec::new();
                let mut c = to;
                while c != from {
                    let ei = prev[&c];
                    edges.push(ei);
                    c = self.edges[ei].from;
                }
                return Some(
                    edges
                        .iter()
                        .rev()
                        .flat_map(|&ei| self.edges[ei].steps.clone())
                        .collect(),
                );
            }
            for (ei, e) in self.edges.iter().enumerate() {
                if e.from == v && seen.insert(e.to) {
                    prev.insert(e.to, ei);
                    queue.push_back(e.to);
                }
            }
        }
        None
    }

    pub fn to_json(&self, group_by_c: bool) -> Value {
        let gaps: Vec<String> = self.gaps.iter().map(ToString::to_string).collect();
        let edges: Vec<Value> = self
            .edges
            .iter()
            .map(|e| {
                json!({
                    "from": e.from,
                    "to": e.to,
                    "steps": e.steps.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })
            })
            .collect();
        let members: Vec<Value> = self
            .members
            .iter()
            .enumerate()
            .map(|(m, e)| {
                let mut v = json!({ "E": e.to_line(), "psi": e.psi_of().render() });
                if group_by_c {
                    let raw: Vec<String> = (0..self.raw.len())
                        .filter(|&i| self.orbit[i] == m)
                        .map(|i| self.raw[i].to_line())
                        .collect();
                    v["orbit"] = json!(raw);
                }
                v
            })
            .collect();
        json!({
            "members": members,
            "raw": self.raw.iter().map(Ems::to_line).collect::<Vec<_>>(),
            "edges": edges,
            "exhausted": self.exhausted,
            "gaps": gaps,
            "bound_hit": self.bound_hit,
            "states_visited": self.states_visited,
            "max_phantoms": self.max_phantoms,
            "phantom_l_max": self.phantom_l_max.iter().map(|(r, l)| (r.to_string(), *l)).collect::<BTreeMap<_, _>>(),
        })
    }
}

pub fn enumerate_class(start: &Ems, kernel: &dyn Kernel, bounds: &Bounds) -> ClassEnumeration {
    let space = Space::new(start, bounds);
    let mut gaps = BTreeSet::new();
    let mut states = vec![start.clone()];
    let mut index: HashMap<Ems, usize> = HashMap::from([(start.clone(), 0)]);
    let mut adj: Vec<Vec<(RewriteStep, usize)>> = vec![Vec::new()];
    let mut queue = VecDeque::from([0usize]);
    let mut bound_hit = false;
    'bfs: while let Some(i) = queue.pop_front() {
        for (step, s) in space.moves(&states[i], kernel, &mut gaps) {
            let j = match index.get(&s) {
                Some(&j) => j,
                None => {
                    if states.len() >= bounds.state_limit {
                        bound_hit = true;
                        break 'bfs;
                    }
                    states.push(s.clone());
                    adj.push(Vec::new());
                    index.insert(s, states.len() - 1);
                    queue.push_back(states.len() - 1);
                    states.len() - 1
                }
            };
            adj[i].push((step, j));
        }
    }

    let strict: Vec<bool> = states
        .iter()
        .enumerate()
        .map(|(i, s)| i == 0 || s.is_strict())
        .collect();
    let raw_ids: Vec<usize> = (0..states.len()).filter(|&i| strict[i]).collect();
    let raw_of: HashMap<usize, usize> = raw_ids.iter().enumerate().map(|(r, &g)| (g, r)).collect();

    let mut edges = Vec::new();
    for (r, &g) in raw_ids.iter().enumerate() {
        let mut seen = BTreeSet::from([g]);
        let mut queue = VecDeque::from([(g, Vec::<RewriteStep>::new())]);
        while let Some((v, path)) = queue.pop_front() {
            for (step, w) in &adj[v] {
                if !seen.insert(*w) {
                    continue;
                }
                let mut p = path.clone();
                p.push(step.clone());
                if strict[*w] {
                    edges.push(Edge {
                        from: r,
                        to: raw_of[w],
                        steps: p,
                    });
                } else {
                    queue.push_back((*w, p));
                }
            }
        }
    }

    // (C)-orbits by union-find over single-step (C) edges.
    let mut parent: Vec<usize> = (0..raw_ids.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for e in &edges {
        if let [RewriteStep::C { .. }] = e.steps[..] {
            let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let raw: Vec<Ems> = raw_ids.iter().map(|&g| states[g].clone()).collect();
    let mut roots: Vec<usize> = Vec::new();
    let mut orbit = vec![0; raw.len()];
    for (i, o) in orbit.iter_mut().enumerate() {
        let root = find(&mut parent, i);
        *o = match roots.iter().position(|&x| x == root) {
            Some(k) => k,
            None => {
                roots.push(root);
                roots.len() - 1
            }
        };
    }
    let members = (0..roots.len())
        .map(|m| {
            (0..raw.len())
                .filter(|&i| orbit[i] == m)
                .map(|i| &raw[i])
                .min_by_key(|e| (!e.is_very_admissible(), e.to_line()))
                .expect("orbit is non-empty")
                .clone()
        })
        .collect();

    let gaps: Vec<KernelGap> = gaps.into_iter().collect();
    ClassEnumeration {
        members,
        raw,
        orbit,
        edges,
        exhausted: gaps.is_empty() && !bound_hit,
        gaps,
        bound_hit,
        states_visited: states.len(),
        phantom_l_max: space.lmax,
        max_phantoms: space.max_phantoms,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    /// A replayable path from the first to the second.
    Yes(Vec<RewriteStep>),
    No(String),
    Unknown(String),
}

pub fn strongly_equivalent(
    e1: &Ems,
    e2: &Ems,
    kernel: &dyn Kernel,
    bounds: &Bounds,
) -> Equivalence {
    if e1 == e2 {
        return Equivalence::Yes(Vec::new());
    }
    if e1.ctx != e2.ctx {
        return Equivalence::No("different groups".into());
    }
    if e1.psi_of().diagonal_restriction() != e2.psi_of().diagonal_restriction() {
        return Equivalence::No("different diagonal restrictions".into());
    }
    let c1 = enumerate_class(e1, kernel, bounds);
    if let Some(j) = c1.raw_index(e2) {
        if let Some(p) = c1.path(0, j) {
            return Equivalence::Yes(p);
        }
    }
    if c1.exhausted {
        return Equivalence::No(
            "the first class is exhausted and does not contain the second".into(),
        );
    }
    let c2 = enumerate_class(e2, kernel, bounds);
    if c2.raw_index(e1).is_none() && c2.exhausted {
        return Equivalence::No(
            "the second class is exhausted and does not contain the first".into(),
        );
    }
    Equivalence::Unknown(format!(
        "{} kernel gaps, bound hit: {}",
        c1.gaps.len(),
        c1.bound_hit
    ))
}
