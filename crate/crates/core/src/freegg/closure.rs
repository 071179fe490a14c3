//! Bounded congruence closure.
//!
//! States are canonical terms of bounded size with a fixed frame. Two states
//! are joined when one rewrites to the other by a single relation instance
//! applied inside any context: interchange in either direction (with unit
//! padding and table factorizations supplying the decompositions), extra
//! relation pairs in either direction, and in weak mode the unitor and
//! associator relations. Everything else is absorbed by the canonical form.

use std::fmt;
use std::rc::Rc;

use rustc_hash::{FxHashMap, FxHashSet};

use super::expr::CellExpr;
use super::store::{Node, Store, TermId};
use super::tables::{Frame, Tables};
use crate::error::Result;
use crate::presentation::Presentation;

/// Which relation families the engine may use. Turning one off gives a
/// deliberately incomplete engine, which the axiom checker must catch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rules {
    pub interchange: bool,
    pub eckmann_hilton: bool,
}

impl Default for Rules {
    fn default() -> Self {
        Rules { interchange: true, eckmann_hilton: true }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) enum Step {
    Interchange,
    Exchange,
    Relation(u32),
    Unitor,
    Associator,
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Interchange => write!(f, "interchange"),
            Step::Exchange => write!(f, "interchange, reversed"),
            Step::Relation(k) => write!(f, "relation #{k}"),
            Step::Unitor => write!(f, "unitor"),
            Step::Associator => write!(f, "associator"),
        }
    }
}

/// One line of an equality certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    pub expr: String,
    pub rule: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Proof {
    pub steps: Vec<ProofStep>,
}

impl fmt::Display for Proof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            if s.rule.is_empty() {
                write!(f, "  {}", s.expr)?;
            } else {
                write!(f, "= {}  [{}]", s.expr, s.rule)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal(Proof),
    /// No connection within the closure of all cells up to this size.
    Distinct(usize),
    /// The search was truncated before saturating at this size.
    Unknown(usize),
}

impl Verdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal(_))
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::Distinct(_))
    }

    pub fn label(&self) -> String {
        match self {
            Verdict::Equal(_) => "Equal".into(),
            Verdict::Distinct(b) => format!("Distinct({b})"),
            Verdict::Unknown(b) => format!("Unknown({b})"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

const PAD_NONE: u8 = 0;
const PAD_FIRST: u8 = 1;
const PAD_SECOND: u8 = 2;

type Decomp = Rc<[(TermId, TermId, u8)]>;

/// All canonical terms reachable as composites of at most `bound` leaves,
/// with the least level of a raw expression producing each.
pub(crate) struct Universe {
    pub level: FxHashMap<TermId, u16>,
    pub by_frame: FxHashMap<Frame, Vec<TermId>>,
}

struct Partition {
    bound: u32,
    members: Vec<TermId>,
    index: FxHashMap<TermId, u32>,
    parent: Vec<u32>,
    edges: Vec<(u32, u32, Step)>,
    pending: Vec<u32>,
    truncated: bool,
}

impl Partition {
    fn new(bound: u32) -> Self {
        Partition { bound, members: Vec::new(), index: FxHashMap::default(), parent: Vec::new(), edges: Vec::new(), pending: Vec::new(), truncated: false }
    }

    fn add(&mut self, t: TermId) -> u32 {
        if let Some(&i) = self.index.get(&t) {
            return i;
        }
        let i = self.members.len() as u32;
        self.members.push(t);
        self.parent.push(i);
        self.index.insert(t, i);
        self.pending.push(i);
        i
    }

    fn find(&mut self, mut i: u32) -> u32 {
        while self.parent[i as usize] != i {
            let gp = self.parent[self.parent[i as usize] as usize];
            self.parent[i as usize] = gp;
            i = gp;
        }
        i
    }

    fn union(&mut self, a: u32, b: u32, step: Step) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb) as usize] = ra.min(rb);
            self.edges.push((a, b, step));
        }
    }
}

/// An equality engine for one presentation plus optional extra relations.
pub struct Engine {
    pub(crate) store: Store,
    rules: Rules,
    relations: Vec<(TermId, TermId)>,
    rel_index: FxHashMap<TermId, Vec<(TermId, u32)>>,
    rw: FxHashMap<TermId, Rc<[(TermId, Step)]>>,
    hdec: FxHashMap<TermId, Decomp>,
    vdec: FxHashMap<TermId, Decomp>,
    universes: FxHashMap<u32, Option<Rc<Universe>>>,
    partitions: FxHashMap<(Frame, u32), Partition>,
    /// Largest universe built before falling back to exploring only the
    /// components of the queried terms.
    pub universe_cap: usize,
    /// Largest number of states in one frame before a search is truncated.
    pub state_cap: usize,
}

impl Engine {
    pub fn new(p: &Presentation) -> Result<Self> {
        Self::with_rules(p, Rules::default())
    }

    pub fn with_rules(p: &Presentation, rules: Rules) -> Result<Self> {
        let tables = Tables::compile(p)?;
        Ok(Engine {
            store: Store::new(tables, rules.eckmann_hilton),
            rules,
            relations: Vec::new(),
            rel_index: FxHashMap::default(),
            rw: FxHashMap::default(),
            hdec: FxHashMap::default(),
            vdec: FxHashMap::default(),
            universes: FxHashMap::default(),
            partitions: FxHashMap::default(),
            universe_cap: 400_000,
            state_cap: 600_000,
        })
    }

    /// Adds a generating pair; both sides must have the same frame.
    pub fn add_relation(&mut self, lhs: &CellExpr, rhs: &CellExpr) -> Result<()> {
        let (a, b) = (self.store.add_expr(lhs)?, self.store.add_expr(rhs)?);
        if self.store.frame(a) != self.store.frame(b) {
            return Err(crate::error::Error::compat(
                format!("relation #{}", self.relations.len()),
                format!("`{lhs}` and `{rhs}` have different boundaries"),
            ));
        }
        let k = self.relations.len() as u32;
        self.relations.push((a, b));
        if a != b {
            self.rel_index.entry(a).or_default().push((b, k));
            self.rel_index.entry(b).or_default().push((a, k));
        }
        self.rw.clear();
        self.partitions.clear();
        Ok(())
    }

    pub(crate) fn tables(&self) -> &Tables {
        &self.store.tables
    }

    pub(crate) fn intern(&mut self, e: &CellExpr) -> Result<TermId> {
        self.store.add_expr(e)
    }

    /// The canonical form used by the engine, as an expression.
    pub fn canonical(&mut self, e: &CellExpr) -> Result<CellExpr> {
        let t = self.store.add_expr(e)?;
        Ok(self.store.to_expr(t))
    }

    /// Decides `x = y` up to the closure of all cells with at most
    /// `max(budget, |x|, |y|)` leaves.
    pub fn equal(&mut self, x: &CellExpr, y: &CellExpr, budget: usize) -> Result<Verdict> {
        let (a, b) = (self.store.add_expr(x)?, self.store.add_expr(y)?);
        Ok(self.decide(a, b, budget))
    }

    pub(crate) fn decide(&mut self, a: TermId, b: TermId, budget: usize) -> Verdict {
        if self.store.frame(a) != self.store.frame(b) {
            return Verdict::Distinct(budget);
        }
        if a == b {
            let expr = self.store.show(a);
            return Verdict::Equal(Proof { steps: vec![ProofStep { expr, rule: String::new() }] });
        }
        let bound = (budget as u32).max(self.store.size(a)).max(self.store.size(b));
        let frame = self.store.frame(a);
        let mut part = self.take_partition(frame, bound);
        let ia = part.add(a);
        let ib = part.add(b);
        self.saturate(&mut part);
        let verdict = if part.find(ia) == part.find(ib) {
            Verdict::Equal(self.certificate(&part, ia, ib))
        } else if part.truncated {
            Verdict::Unknown(bound as usize)
        } else {
            Verdict::Distinct(bound as usize)
        };
        self.partitions.insert((frame, bound), part);
        verdict
    }

    fn take_partition(&mut self, frame: Frame, bound: u32) -> Partition {
        if let Some(p) = self.partitions.remove(&(frame, bound)) {
            return p;
        }
        let mut part = Partition::new(bound);
        match self.universe(bound) {
            Some(u) => {
                if let Some(ts) = u.by_frame.get(&frame) {
                    for &t in ts {
                        part.add(t);
                    }
                }
            }
            // Growing moves start from the universe; without it only
            // equalities can be concluded.
            None => part.truncated = true,
        }
        part
    }

    fn saturate(&mut self, part: &mut Partition) {
        while let Some(i) = part.pending.pop() {
            let t = part.members[i as usize];
            let next = self.rewrites(t);
            for &(r, step) in next.iter() {
                if self.store.size(r) > part.bound {
                    continue;
                }
                if !part.index.contains_key(&r) && part.members.len() >= self.state_cap {
                    part.truncated = true;
                    continue;
                }
                let j = part.add(r);
                part.union(i, j, step);
            }
        }
        self.rw.clear();
    }

    fn certificate(&self, part: &Partition, from: u32, to: u32) -> Proof {
        let mut adj: FxHashMap<u32, Vec<(u32, Step)>> = FxHashMap::default();
        for &(a, b, s) in &part.edges {
            adj.entry(a).or_default().push((b, s));
            adj.entry(b).or_default().push((a, s));
        }
        let mut prev: FxHashMap<u32, (u32, Step)> = FxHashMap::default();
        let mut queue = std::collections::VecDeque::from([from]);
        let mut seen = FxHashSet::from_iter([from]);
        while let Some(x) = queue.pop_front() {
            if x == to {
                break;
            }
            for &(y, s) in adj.get(&x).map(Vec::as_slice).unwrap_or(&[]) {
                if seen.insert(y) {
                    prev.insert(y, (x, s));
                    queue.push_back(y);
                }
            }
        }
        let mut path = vec![(to, None)];
        let mut cur = to;
        while let Some(&(p, s)) = prev.get(&cur) {
            path.last_mut().expect("path is nonempty").1 = Some(s);
            path.push((p, None));
            cur = p;
        }
        path.reverse();
        // Each entry carries the step that led into it.
        let steps = path
            .into_iter()
            .map(|(i, s)| ProofStep { expr: self.store.show(part.members[i as usize]), rule: s.map(|s| s.to_string()).unwrap_or_default() })
            .collect();
        Proof { steps }
    }

    /// The classes of the closure at `bound` that contain cells with the given
    /// frame, each as a list of members.
    pub(crate) fn classes(&mut self, frame: Frame, bound: u32) -> (Vec<Vec<TermId>>, bool) {
        let mut part = self.take_partition(frame, bound);
        self.saturate(&mut part);
        let mut groups: FxHashMap<u32, Vec<TermId>> = FxHashMap::default();
        for i in 0..part.members.len() as u32 {
            let r = part.find(i);
            groups.entry(r).or_default().push(part.members[i as usize]);
        }
        let truncated = part.truncated;
        self.partitions.insert((frame, bound), part);
        let mut out: Vec<Vec<TermId>> = groups.into_values().collect();
        out.sort_by_key(|g| g[0]);
        (out, truncated)
    }

    /// The class of `t` at `bound`, and whether the search was truncated.
    pub(crate) fn class_of(&mut self, t: TermId, bound: u32) -> (Vec<TermId>, bool) {
        let bound = bound.max(self.store.size(t));
        let frame = self.store.frame(t);
        let mut part = self.take_partition(frame, bound);
        let i = part.add(t);
        self.saturate(&mut part);
        let root = part.find(i);
        let mut out = Vec::new();
        for j in 0..part.members.len() as u32 {
            if part.find(j) == root {
                out.push(part.members[j as usize]);
            }
        }
        let truncated = part.truncated;
        self.partitions.insert((frame, bound), part);
        (out, truncated)
    }

    /// Frames of the cells in the universe at `bound`.
    pub(crate) fn frames(&mut self, bound: u32) -> Vec<Frame> {
        let mut out: Vec<Frame> = self.universe(bound).map(|u| u.by_frame.keys().copied().collect()).unwrap_or_default();
        out.sort_unstable();
        out
    }

    /// Classes at `bound` together with a lookup from member to class index.
    pub(crate) fn class_map(&mut self, frame: Frame, bound: u32) -> (Vec<Vec<TermId>>, FxHashMap<TermId, usize>, bool) {
        let (classes, truncated) = self.classes(frame, bound);
        let mut index = FxHashMap::default();
        for (i, c) in classes.iter().enumerate() {
            for &t in c {
                index.insert(t, i);
            }
        }
        (classes, index, truncated)
    }

    pub(crate) fn expr(&self, t: TermId) -> CellExpr {
        self.store.to_expr(t)
    }

    /// Shortlex-least member under the printed form.
    pub(crate) fn least(&self, members: &[TermId]) -> TermId {
        let min_size = members.iter().map(|&t| self.store.size(t)).min().expect("nonempty class");
        members
            .iter()
            .filter(|&&t| self.store.size(t) == min_size)
            .map(|&t| (self.store.show(t), t))
            .min()
            .expect("nonempty class")
            .1
    }

    // -----------------------------------------------------------------------
    // Universe

    pub(crate) fn universe(&mut self, bound: u32) -> Option<Rc<Universe>> {
        if let Some(u) = self.universes.get(&bound) {
            return u.clone();
        }
        let u = self.build_universe(bound).map(Rc::new);
        self.universes.insert(bound, u.clone());
        u
    }

    fn build_universe(&mut self, bound: u32) -> Option<Universe> {
        let b = bound as usize;
        // (least F-level, least E-level) over raw expressions
        let mut lv: FxHashMap<TermId, (u16, u16)> = FxHashMap::default();
        let mut by_size: Vec<Vec<TermId>> = vec![Vec::new(); b + 1];
        let mut dirty: Vec<TermId> = Vec::new();
        let mut leaves = Vec::new();
        for g in 0..self.store.tables.cells.len() as u32 {
            leaves.push(self.store.gen(g));
        }
        for a in 0..self.store.tables.vert.len() as u32 {
            leaves.push(self.store.fid(a));
        }
        for t in leaves {
            if lv.insert(t, (1, 1)).is_none() {
                by_size[self.store.size(t) as usize].push(t);
                dirty.push(t);
            }
        }
        let mut count = lv.len();
        while !dirty.is_empty() {
            let cur = std::mem::take(&mut dirty);
            let mut marked: FxHashSet<TermId> = FxHashSet::default();
            for &p in &cur {
                let sp = self.store.size(p) as usize;
                if sp >= b {
                    continue;
                }
                for sq in 1..=(b - sp) {
                    let mut qi = 0;
                    while qi < by_size[sq].len() {
                        let q = by_size[sq][qi];
                        qi += 1;
                        for (x, y) in [(p, q), (q, p)] {
                            let (fx, fy) = (self.store.frame(x), self.store.frame(y));
                            let (lx, ly) = (lv[&x], lv[&y]);
                            let mut found = [None, None];
                            if self.store.tables.v_frame(fx, fy).is_some() {
                                let f = lx.0.max(ly.0);
                                found[0] = Some((self.store.mk_v(&[x, y]), (f, f + 1)));
                            }
                            if self.store.tables.h_frame(fx, fy).is_some() {
                                let e = lx.1.max(ly.1);
                                found[1] = Some((self.store.mk_h(&[x, y]), (e, e)));
                            }
                            for (t, cand) in found.into_iter().flatten() {
                                let size = self.store.size(t) as usize;
                                if size > b {
                                    continue;
                                }
                                match lv.get_mut(&t) {
                                    None => {
                                        lv.insert(t, cand);
                                        by_size[size].push(t);
                                        marked.insert(t);
                                        count += 1;
                                    }
                                    Some(old) => {
                                        let new = (old.0.min(cand.0), old.1.min(cand.1));
                                        if new != *old {
                                            *old = new;
                                            marked.insert(t);
                                        }
                                    }
                                }
                            }
                        }
                    }
                    if count > self.universe_cap {
                        return None;
                    }
                }
            }
            dirty = marked.into_iter().collect();
            dirty.sort_unstable();
        }
        let mut terms: Vec<TermId> = by_size.into_iter().flatten().collect();
        terms.sort_unstable();
        let mut by_frame: FxHashMap<Frame, Vec<TermId>> = FxHashMap::default();
        for &t in &terms {
            by_frame.entry(self.store.frame(t)).or_default().push(t);
        }
        let level = lv.into_iter().map(|(t, (f, _))| (t, f)).collect();
        Some(Universe { level, by_frame })
    }

    // -----------------------------------------------------------------------
    // One-step rewrites

    fn seg_v(&mut self, items: &[TermId]) -> TermId {
        self.store.mk_v(items)
    }

    fn seg_h(&mut self, items: &[TermId]) -> TermId {
        self.store.mk_h(items)
    }

    /// Ways of writing `u` as `right ∗ left`.
    fn hdecomp(&mut self, u: TermId) -> Decomp {
        if let Some(d) = self.hdec.get(&u) {
            return d.clone();
        }
        let mut out: Vec<(TermId, TermId, u8)> = Vec::new();
        match self.store.node(u).clone() {
            Node::H(hs) => {
                for p in 1..hs.len() {
                    let (a, b) = (self.seg_h(&hs[..p]), self.seg_h(&hs[p..]));
                    out.push((a, b, PAD_NONE));
                }
            }
            Node::Gen(g) => {
                for &(a, b) in self.store.tables.hfactors[g as usize].clone().iter() {
                    let (a, b) = (self.store.gen(a), self.store.gen(b));
                    out.push((a, b, PAD_NONE));
                }
            }
            _ => {}
        }
        if self.store.tables.strict {
            let f = self.store.frame(u);
            let (is, it) = (self.store.fid(f.s), self.store.fid(f.t));
            out.push((u, is, PAD_FIRST));
            out.push((it, u, PAD_SECOND));
        }
        let d = dedup_decomp(out);
        self.hdec.insert(u, d.clone());
        d
    }

    /// Ways of writing `r` as `upper • lower`.
    fn vdecomp(&mut self, r: TermId) -> Decomp {
        if let Some(d) = self.vdec.get(&r) {
            return d.clone();
        }
        let mut out: Vec<(TermId, TermId, u8)> = Vec::new();
        match self.store.node(r).clone() {
            Node::V(vs) => {
                for p in 1..vs.len() {
                    let (a, b) = (self.seg_v(&vs[..p]), self.seg_v(&vs[p..]));
                    out.push((a, b, PAD_NONE));
                }
            }
            Node::Gen(g) => {
                for &(a, b) in self.store.tables.cells.factors[g as usize].clone().iter() {
                    let (a, b) = (self.store.gen(a), self.store.gen(b));
                    out.push((a, b, PAD_NONE));
                }
            }
            Node::FId(al) => {
                for &(a, b) in self.store.tables.vert.factors[al as usize].clone().iter() {
                    let (a, b) = (self.store.fid(a), self.store.fid(b));
                    out.push((a, b, PAD_NONE));
                }
            }
            Node::H(_) => {}
        }
        let f = self.store.frame(r);
        let (ud, uc) = (self.store.vunit(f.d), self.store.vunit(f.c));
        out.push((r, ud, PAD_FIRST));
        out.push((uc, r, PAD_SECOND));
        let d = dedup_decomp(out);
        self.vdec.insert(r, d.clone());
        d
    }

    pub(crate) fn rewrites(&mut self, t: TermId) -> Rc<[(TermId, Step)]> {
        if let Some(r) = self.rw.get(&t) {
            return r.clone();
        }
        let mut out: Vec<(TermId, Step)> = Vec::new();
        let node = self.store.node(t).clone();
        match &node {
            Node::Gen(_) | Node::FId(_) => {}
            Node::V(items) => {
                if self.rules.interchange {
                    self.interchange_moves(items, &mut out);
                }
                self.relation_moves(items, true, &mut out);
                for i in 0..items.len() {
                    let sub = self.rewrites(items[i]);
                    let mut v = items.to_vec();
                    for &(r, st) in sub.iter() {
                        v[i] = r;
                        out.push((self.store.mk_v(&v), st));
                    }
                }
            }
            Node::H(items) => {
                if self.rules.interchange {
                    self.exchange_moves(items, &mut out);
                }
                self.relation_moves(items, false, &mut out);
                for i in 0..items.len() {
                    let sub = self.rewrites(items[i]);
                    let mut v = items.to_vec();
                    for &(r, st) in sub.iter() {
                        v[i] = r;
                        out.push((self.store.mk_h(&v), st));
                    }
                }
            }
        }
        if let Some(rs) = self.rel_index.get(&t) {
            out.extend(rs.iter().map(|&(r, k)| (r, Step::Relation(k))));
        }
        if self.store.tables.coh.is_some() {
            self.coherence_moves(t, &node, &mut out);
        }
        out.sort_unstable();
        out.dedup_by_key(|x| x.0);
        out.retain(|x| x.0 != t);
        let rc: Rc<[(TermId, Step)]> = out.into();
        self.rw.insert(t, rc.clone());
        rc
    }

    /// `(Ψ₂ • Φ₂) ∗ (Ψ₁ • Φ₁)` from adjacent segments `U = Ψ₂ ∗ Ψ₁` over
    /// `L = Φ₂ ∗ Φ₁` of a vertical chain.
    fn interchange_moves(&mut self, items: &[TermId], out: &mut Vec<(TermId, Step)>) {
        let n = items.len();
        for i in 0..n {
            for j in i + 1..n {
                let u = self.seg_v(&items[i..j]);
                let ud = self.hdecomp(u);
                for k in j + 1..=n {
                    let l = self.seg_v(&items[j..k]);
                    let ld = self.hdecomp(l);
                    for &(p2, p1, pa) in ud.iter() {
                        for &(f2, f1, pb) in ld.iter() {
                            if pa != PAD_NONE && pa == pb {
                                continue;
                            }
                            let s = &self.store;
                            if s.frame(p2).d != s.frame(f2).c || s.frame(p1).d != s.frame(f1).c {
                                continue;
                            }
                            let a = self.store.mk_v(&[p2, f2]);
                            let b = self.store.mk_v(&[p1, f1]);
                            let new = self.store.mk_h(&[a, b]);
                            let mut v = Vec::with_capacity(n);
                            v.extend_from_slice(&items[..i]);
                            v.push(new);
                            v.extend_from_slice(&items[k..]);
                            out.push((self.store.mk_v(&v), Step::Interchange));
                        }
                    }
                }
            }
        }
    }

    /// `(Ψ₂ ∗ Ψ₁) • (Φ₂ ∗ Φ₁)` from adjacent segments `R = Ψ₂ • Φ₂` and
    /// `L = Ψ₁ • Φ₁` of a horizontal chain.
    fn exchange_moves(&mut self, items: &[TermId], out: &mut Vec<(TermId, Step)>) {
        let n = items.len();
        for i in 0..n {
            for j in i + 1..n {
                let r = self.seg_h(&items[i..j]);
                let rd = self.vdecomp(r);
                for k in j + 1..=n {
                    let l = self.seg_h(&items[j..k]);
                    let ld = self.vdecomp(l);
                    for &(p2, f2, pa) in rd.iter() {
                        for &(p1, f1, pb) in ld.iter() {
                            if pa != PAD_NONE && pa == pb {
                                continue;
                            }
                            let s = &self.store;
                            if s.frame(f1).t != s.frame(f2).s || s.frame(p1).t != s.frame(p2).s {
                                continue;
                            }
                            let top = self.store.mk_h(&[p2, p1]);
                            let bot = self.store.mk_h(&[f2, f1]);
                            let new = self.store.mk_v(&[top, bot]);
                            let mut v = Vec::with_capacity(n);
                            v.extend_from_slice(&items[..i]);
                            v.push(new);
                            v.extend_from_slice(&items[k..]);
                            out.push((self.store.mk_h(&v), Step::Exchange));
                        }
                    }
                }
            }
        }
    }

    fn relation_moves(&mut self, items: &[TermId], vertical: bool, out: &mut Vec<(TermId, Step)>) {
        if self.rel_index.is_empty() {
            return;
        }
        let n = items.len();
        for i in 0..n {
            for k in i + 2..=n {
                if i == 0 && k == n {
                    continue;
                }
                let seg = if vertical { self.seg_v(&items[i..k]) } else { self.seg_h(&items[i..k]) };
                let Some(rs) = self.rel_index.get(&seg).cloned() else { continue };
                for (r, idx) in rs {
                    let mut v = items[..i].to_vec();
                    v.push(r);
                    v.extend_from_slice(&items[k..]);
                    let t = if vertical { self.store.mk_v(&v) } else { self.store.mk_h(&v) };
                    out.push((t, Step::Relation(idx)));
                }
            }
        }
    }

    /// Unitor and associator relations, used only in weak mode.
    fn coherence_moves(&mut self, t: TermId, node: &Node, out: &mut Vec<(TermId, Step)>) {
        let f = self.store.frame(t);
        let (lam_c, lam_d, rho_c, rho_d) = {
            let coh = self.store.tables.coh.as_ref().expect("weak mode");
            (coh.lam[f.c as usize].0, coh.lam[f.d as usize].1, coh.rho[f.c as usize].0, coh.rho[f.d as usize].1)
        };
        // Expansions: Φ ~ λ • (Φ ∗ i) • λ⁻¹ and Φ ~ ρ • (i ∗ Φ) • ρ⁻¹.
        let (is, it) = (self.store.fid(f.s), self.store.fid(f.t));
        let (lc, ld, rc, rd) = (self.store.gen(lam_c), self.store.gen(lam_d), self.store.gen(rho_c), self.store.gen(rho_d));
        let wl = self.store.mk_h(&[t, is]);
        let wr = self.store.mk_h(&[it, t]);
        let el = self.store.mk_v(&[lc, wl, ld]);
        let er = self.store.mk_v(&[rc, wr, rd]);
        out.push((el, Step::Unitor));
        out.push((er, Step::Unitor));
        match node {
            Node::V(items) => {
                // Contractions of the same patterns inside a vertical chain.
                for i in 0..items.len().saturating_sub(2) {
                    let mid = items[i + 1];
                    if let Some(x) = self.unwhisker(items[i], mid, items[i + 2]) {
                        let mut v = items[..i].to_vec();
                        v.push(x);
                        v.extend_from_slice(&items[i + 3..]);
                        out.push((self.store.mk_v(&v), Step::Unitor));
                    }
                    if let Some(x) = self.reassociate_between(items[i], mid, items[i + 2]) {
                        let mut v = items[..i].to_vec();
                        v.push(x);
                        v.extend_from_slice(&items[i + 3..]);
                        out.push((self.store.mk_v(&v), Step::Associator));
                    }
                }
            }
            Node::H(items) if items.len() == 2 => {
                if let Some(x) = self.reassociate(items[0], items[1]) {
                    out.push((x, Step::Associator));
                }
            }
            _ => {}
        }
    }

    fn unwhisker(&mut self, top: TermId, mid: TermId, bot: TermId) -> Option<TermId> {
        let Node::H(hs) = self.store.node(mid).clone() else { return None };
        let (Node::Gen(a), Node::Gen(b)) = (self.store.node(top).clone(), self.store.node(bot).clone()) else { return None };
        let coh = self.store.tables.coh.as_ref()?;
        let (x, y) = (hs[0], hs[1]);
        let (fx, fy) = (self.store.frame(x), self.store.frame(y));
        if coh.lam[fx.c as usize].0 == a && coh.lam[fx.d as usize].1 == b && self.store.fid(fx.s) == y {
            return Some(x);
        }
        let coh = self.store.tables.coh.as_ref()?;
        if coh.rho[fy.c as usize].0 == a && coh.rho[fy.d as usize].1 == b && self.store.fid(fy.t) == x {
            return Some(y);
        }
        None
    }

    fn assoc_cells(&self, theta: TermId, psi: TermId, phi: TermId) -> Option<((u32, u32), (u32, u32))> {
        let coh = self.store.tables.coh.as_ref()?;
        let (a, b, c) = (self.store.frame(phi), self.store.frame(psi), self.store.frame(theta));
        let cod = *coh.assoc.get(&(a.c, b.c, c.c))?;
        let dom = *coh.assoc.get(&(a.d, b.d, c.d))?;
        Some((cod, dom))
    }

    /// `Θ ∗ (Ψ ∗ Φ)` to `A⁻¹ • ((Θ ∗ Ψ) ∗ Φ) • A`, and the mirror image.
    fn reassociate(&mut self, right: TermId, left: TermId) -> Option<TermId> {
        if let Node::H(inner) = self.store.node(left).clone() {
            let (psi, phi) = (inner[0], inner[1]);
            let (cod, dom) = self.assoc_cells(right, psi, phi)?;
            let tp = self.store.mk_h(&[right, psi]);
            let m = self.store.mk_h(&[tp, phi]);
            let (x, y) = (self.store.gen(cod.1), self.store.gen(dom.0));
            return Some(self.store.mk_v(&[x, m, y]));
        }
        if let Node::H(inner) = self.store.node(right).clone() {
            let (theta, psi) = (inner[0], inner[1]);
            let (cod, dom) = self.assoc_cells(theta, psi, left)?;
            let pp = self.store.mk_h(&[psi, left]);
            let m = self.store.mk_h(&[theta, pp]);
            let (x, y) = (self.store.gen(cod.0), self.store.gen(dom.1));
            return Some(self.store.mk_v(&[x, m, y]));
        }
        None
    }

    fn reassociate_between(&mut self, top: TermId, mid: TermId, bot: TermId) -> Option<TermId> {
        let Node::H(hs) = self.store.node(mid).clone() else { return None };
        let (Node::Gen(a), Node::Gen(b)) = (self.store.node(top).clone(), self.store.node(bot).clone()) else { return None };
        if hs.len() != 2 {
            return None;
        }
        let (right, left) = (hs[0], hs[1]);
        if let Node::H(inner) = self.store.node(right).clone() {
            // A⁻¹ • ((Θ ∗ Ψ) ∗ Φ) • A  ->  Θ ∗ (Ψ ∗ Φ)
            let (theta, psi) = (inner[0], inner[1]);
            let (cod, dom) = self.assoc_cells(theta, psi, left)?;
            if a == cod.1 && b == dom.0 {
                let pp = self.store.mk_h(&[psi, left]);
                return Some(self.store.mk_h(&[theta, pp]));
            }
        }
        if let Node::H(inner) = self.store.node(left).clone() {
            let (psi, phi) = (inner[0], inner[1]);
            let (cod, dom) = self.assoc_cells(right, psi, phi)?;
            if a == cod.0 && b == dom.1 {
                let tp = self.store.mk_h(&[right, psi]);
                return Some(self.store.mk_h(&[tp, phi]));
            }
        }
        None
    }
}

fn dedup_decomp(mut v: Vec<(TermId, TermId, u8)>) -> Decomp {
    // Prefer the padding tag when a factorization coincides with a padding.
    v.sort_unstable_by_key(|x| (x.0, x.1, std::cmp::Reverse(x.2)));
    v.dedup_by_key(|x| (x.0, x.1));
    v.into()
}
