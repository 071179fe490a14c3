//! The free globularly generated double category on a presentation.

mod axioms;
mod closure;
mod expr;
mod sample;
pub(crate) mod store;
pub(crate) mod tables;

use std::fmt;

use serde::Serialize;

pub use axioms::{check_double_axioms, check_double_axioms_with, INTERCHANGE_INSTANCES};
pub use closure::{Engine, Proof, ProofStep, Rules, Verdict};
pub use expr::CellExpr;
pub use sample::Sampler;

use crate::error::{Error, Result};
use crate::evaluation::{self, EvalTree, Ends};
use crate::presentation::Presentation;
use store::Store;
use tables::{Frame, Tables};

/// The frame of a cell: 1-cells `d` (bottom) and `c` (top), vertical
/// morphisms `s` (left) and `t` (right).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Boundary {
    pub d: String,
    pub c: String,
    pub s: String,
    pub t: String,
}

impl Boundary {
    pub fn new(d: &str, c: &str, s: &str, t: &str) -> Self {
        Boundary { d: d.into(), c: c.into(), s: s.into(), t: t.into() }
    }

    /// Parses `d,c,s,t`.
    pub fn parse(src: &str) -> Result<Self> {
        let parts: Vec<&str> = src.split(',').map(str::trim).collect();
        match parts.as_slice() {
            [d, c, s, t] => Ok(Boundary::new(d, c, s, t)),
            _ => Err(Error::Invalid(format!("a frame is written d,c,s,t; got `{src}`"))),
        }
    }

    pub(crate) fn from_frame(t: &Tables, f: Frame) -> Self {
        let [d, c, s, tt] = t.frame_names(f);
        Boundary { d, c, s, t: tt }
    }

    pub(crate) fn to_frame(&self, t: &Tables) -> Result<Frame> {
        let f = Frame {
            d: t.one.lookup(&self.d, "1-cell")?,
            c: t.one.lookup(&self.c, "1-cell")?,
            s: t.vert.lookup(&self.s, "vertical morphism")?,
            t: t.vert.lookup(&self.t, "vertical morphism")?,
        };
        let ok = t.vert.dom[f.s as usize] == t.one.dom[f.d as usize]
            && t.vert.cod[f.s as usize] == t.one.dom[f.c as usize]
            && t.vert.dom[f.t as usize] == t.one.cod[f.d as usize]
            && t.vert.cod[f.t as usize] == t.one.cod[f.c as usize];
        if !ok {
            return Err(Error::compat("frame", format!("{self} does not close up into a square")));
        }
        Ok(f)
    }
}

impl fmt::Display for Boundary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.d, self.c, self.s, self.t)
    }
}

pub(crate) fn frame_at(t: &Tables, e: &CellExpr, path: &str) -> Result<Frame> {
    match e {
        CellExpr::Gen(n) => Ok(t.gen_frame(t.cells.lookup(n, "2-cell")?)),
        CellExpr::FId(n) => Ok(t.fid_frame(t.vert.lookup(n, "vertical morphism")?)),
        CellExpr::VComp(u, l) => {
            let fu = frame_at(t, u, &format!("{path}.upper"))?;
            let fl = frame_at(t, l, &format!("{path}.lower"))?;
            if fu.d != fl.c {
                return Err(Error::compat(path, "lower codomain 1-cell differs from upper domain 1-cell"));
            }
            t.v_frame(fu, fl).ok_or_else(|| Error::compat(path, "vertical sides do not compose"))
        }
        CellExpr::HComp(..) => {
            // A horizontal spine is an evaluation whose leaves are its maximal
            // non-horizontal factors.
            let mut spine = Vec::new();
            collect_spine(e, path, &mut spine);
            let mut frames = Vec::with_capacity(spine.len());
            for (x, p) in &spine {
                frames.push(frame_at(t, x, p)?);
            }
            let tree = spine_tree(e, &mut frames.into_iter());
            let ends = Ends { source: &|f: &Frame| f.s, target: &|f: &Frame| f.t };
            let (s, tt) = evaluation::boundaries(&tree, &ends).map_err(|err| match err {
                Error::Compatibility { at, .. } => {
                    Error::compat(format!("{path} ({at} of the horizontal spine)"), "target of the left factor differs from source of the right factor")
                }
                other => other,
            })?;
            let p = tree.fold(&mut |f: &Frame| Some((f.d, f.c)), &mut |r, l| {
                let ((rd, rc), (ld, lc)) = (r?, l?);
                Some((t.one.try_comp(rd, ld)?, t.one.try_comp(rc, lc)?))
            });
            let (d, c) = p.ok_or_else(|| Error::compat(path, "1-cells do not compose"))?;
            Ok(Frame { d, c, s, t: tt })
        }
    }
}

fn collect_spine<'a>(e: &'a CellExpr, path: &str, out: &mut Vec<(&'a CellExpr, String)>) {
    match e {
        CellExpr::HComp(r, l) => {
            collect_spine(l, &format!("{path}.left"), out);
            collect_spine(r, &format!("{path}.right"), out);
        }
        _ => out.push((e, path.to_string())),
    }
}

fn spine_tree(e: &CellExpr, frames: &mut impl Iterator<Item = Frame>) -> EvalTree<Frame> {
    match e {
        CellExpr::HComp(r, l) => {
            let lt = spine_tree(l, frames);
            let rt = spine_tree(r, frames);
            EvalTree::Concat(Box::new(rt), Box::new(lt))
        }
        _ => EvalTree::Leaf(frames.next().expect("one frame per spine leaf")),
    }
}

/// The frame of a well-formed expression.
pub fn boundary(b: &Presentation, e: &CellExpr) -> Result<Boundary> {
    let t = Tables::compile(b)?;
    let f = frame_at(&t, e, "root")?;
    Ok(Boundary::from_frame(&t, f))
}

/// `(level, E-level)` of a raw expression.
fn levels(e: &CellExpr) -> (usize, usize) {
    match e {
        CellExpr::Gen(_) | CellExpr::FId(_) => (1, 1),
        CellExpr::VComp(u, l) => {
            let k = levels(u).0.max(levels(l).0);
            (k, k + 1)
        }
        CellExpr::HComp(r, l) => {
            let k = levels(r).1.max(levels(l).1);
            (k, k)
        }
    }
}

/// The least `k` with the expression in the `k`-th stage of the filtration.
pub fn level(b: &Presentation, e: &CellExpr) -> Result<usize> {
    boundary(b, e)?;
    Ok(levels(e).0)
}

/// Applies the oriented rules: table lookups for adjacent generators, merging
/// of formal identities, strict unit removal and flattening.
pub fn prenormalize(b: &Presentation, e: &CellExpr) -> Result<CellExpr> {
    let mut s = Store::new(Tables::compile(b)?, false);
    let id = s.add_expr(e)?;
    Ok(s.to_expr(id))
}

/// Decides equality of two cells up to the closure at `budget`.
pub fn equal(b: &Presentation, x: &CellExpr, y: &CellExpr, budget: usize) -> Result<Verdict> {
    Engine::new(b)?.equal(x, y, budget)
}

/// `i[α]` in normal form.
pub fn formal_identity(b: &Presentation, alpha: &str) -> Result<CellExpr> {
    prenormalize(b, &CellExpr::fid(alpha))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassSummary {
    /// Shortlex-least member.
    pub representative: CellExpr,
    pub size: usize,
    /// Least level among the enumerated members.
    pub level: usize,
    /// Number of enumerated normal forms in the class.
    pub members: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    pub classes: Vec<ClassSummary>,
    pub truncated: bool,
}

impl Serialize for CellExpr {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// All cells with the frame, at most `max_size` leaves and level at most
/// `max_level`, grouped into classes.
pub fn enumerate(b: &Presentation, frame: &Boundary, max_size: usize, max_level: usize) -> Result<Enumeration> {
    Engine::new(b)?.enumerate(frame, max_size, max_level)
}

impl Engine {
    pub fn enumerate(&mut self, frame: &Boundary, max_size: usize, max_level: usize) -> Result<Enumeration> {
        let f = frame.to_frame(self.tables())?;
        let bound = max_size as u32;
        let Some(u) = self.universe(bound) else {
            return Ok(Enumeration { classes: Vec::new(), truncated: true });
        };
        let (classes, truncated) = self.classes(f, bound);
        let mut out = Vec::new();
        for class in classes {
            let picked: Vec<_> = class.iter().copied().filter(|t| u.level.get(t).is_some_and(|&l| (l as usize) <= max_level)).collect();
            if picked.is_empty() {
                continue;
            }
            let rep = self.least(&class);
            let level = picked.iter().map(|t| u.level[t] as usize).min().unwrap_or(1);
            out.push(ClassSummary {
                representative: self.store.to_expr(rep),
                size: self.store.size(rep) as usize,
                level,
                members: picked.len(),
            });
        }
        out.sort_by_key(|c| (c.size, c.representative.to_string()));
        Ok(Enumeration { classes: out, truncated })
    }

    /// Shortlex-least member of the class of `e` at `bound`, with a
    /// truncation flag.
    pub fn representative(&mut self, e: &CellExpr, bound: usize) -> Result<(CellExpr, bool)> {
        let t = self.intern(e)?;
        let (class, truncated) = self.class_of(t, bound as u32);
        let rep = self.least(&class);
        Ok((self.store.to_expr(rep), truncated))
    }

    /// Frame of a well-formed expression.
    pub fn boundary(&mut self, e: &CellExpr) -> Result<Boundary> {
        let f = frame_at(self.tables(), e, "root")?;
        Ok(Boundary::from_frame(self.tables(), f))
    }
}
