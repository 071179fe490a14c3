//! The canonical projection of the free construction onto a verticalization.
//!
//! Targets are presented as quotients, so projecting a cell means reading the
//! same expression in the coarser congruence.

use std::collections::BTreeMap;

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::freegg::{CellExpr, Engine, Verdict};
use crate::presentation::Presentation;
use crate::quotient::{check_verticalization, QuotientSpec};
use crate::report::ValidationReport;

/// The class of a projected cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Projected {
    /// Shortlex-least member of the class among cells within the bound.
    pub representative: CellExpr,
    pub truncated: bool,
}

pub struct ProjectionHandle {
    source: Presentation,
    target: QuotientSpec,
    budget: usize,
    src: Engine,
    tgt: Engine,
}

impl ProjectionHandle {
    /// A projection onto `target`, which must pass the verticalization check
    /// at `budget`.
    pub fn new(target: QuotientSpec, budget: usize) -> Result<Self> {
        let report = check_verticalization(&target, budget)?;
        if !report.is_empty() {
            return Err(Error::Invalid(format!("target is not a verticalization of its base:\n{report}")));
        }
        Self::from_parts(target.base.clone(), target, budget)
    }

    /// A handle from an arbitrary source onto an arbitrary target, without
    /// the verticalization check. Meant for building broken fixtures.
    pub fn from_parts(source: Presentation, target: QuotientSpec, budget: usize) -> Result<Self> {
        let src = Engine::new(&source)?;
        let tgt = target.engine()?;
        Ok(ProjectionHandle { source, target, budget, src, tgt })
    }

    pub fn target(&self) -> &QuotientSpec {
        &self.target
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    /// The target class of a source cell.
    pub fn project(&mut self, e: &CellExpr) -> Result<Projected> {
        self.src.boundary(e)?;
        let (representative, truncated) = self.tgt.representative(e, self.budget)?;
        Ok(Projected { representative, truncated })
    }

    /// Equality of two source cells after projection.
    pub fn equal(&mut self, x: &CellExpr, y: &CellExpr) -> Result<Verdict> {
        self.tgt.equal(x, y, self.budget)
    }

    /// Every target class that has a member of level at most `k` and at most
    /// `budget` leaves must be hit by a source cell of level at most `k`.
    pub fn check_fullness(&mut self, k: usize, budget: usize) -> Result<ValidationReport> {
        let bound = budget as u32;
        let mut report = ValidationReport::new();
        let Some(tu) = self.tgt.universe(bound) else {
            report.incomplete = true;
            return Ok(report);
        };
        let Some(su) = self.src.universe(bound) else {
            report.incomplete = true;
            return Ok(report);
        };
        // source cells of level <= k, read in the target
        let mut hit: FxHashSet<(u32, usize)> = FxHashSet::default();
        let mut images = Vec::new();
        for (&t, &l) in &su.level {
            if l as usize <= k {
                images.push(self.src.expr(t));
            }
        }
        let mut image_terms = Vec::new();
        for e in &images {
            match self.tgt.intern(e) {
                Ok(t) => image_terms.push(t),
                Err(_) => report.push_witness("projection", "source cell is not a target cell", e.to_string()),
            }
        }
        let frames = self.tgt.frames(bound);
        let mut index_of = Vec::new();
        for fr in &frames {
            let (classes, index, truncated) = self.tgt.class_map(*fr, bound);
            report.incomplete |= truncated;
            index_of.push((*fr, classes, index));
        }
        for &t in &image_terms {
            let fr = self.tgt.store.frame(t);
            if let Some(pos) = frames.iter().position(|f| *f == fr) {
                if let Some(&c) = index_of[pos].2.get(&t) {
                    hit.insert((pos as u32, c));
                }
            }
        }
        for (pos, (_, classes, _)) in index_of.iter().enumerate() {
            for (c, members) in classes.iter().enumerate() {
                let low = members.iter().filter_map(|t| tu.level.get(t)).min().copied();
                let Some(low) = low else { continue };
                if low as usize > k || hit.contains(&(pos as u32, c)) {
                    continue;
                }
                let rep = self.tgt.least(members);
                report.push_witness("fullness", format!("target class of level {low} has no preimage of level at most {k}"), self.tgt.expr(rep).to_string());
            }
        }
        Ok(report)
    }
}

/// Images of the leaves `Gen(g)` and `FId(α)`, keyed by the leaf.
pub type LeafAssignment = BTreeMap<CellExpr, CellExpr>;

/// The leaf assignment of the inclusion of generators.
pub fn inclusion(b: &Presentation) -> LeafAssignment {
    let mut m = LeafAssignment::new();
    for c in &b.globular.cells {
        m.insert(CellExpr::gen(&c.name), CellExpr::gen(&c.name));
    }
    for v in &b.decoration.morphisms {
        m.insert(CellExpr::fid(&v.name), CellExpr::fid(&v.name));
    }
    m
}

/// Structural extension of a leaf assignment.
pub fn extend(a: &LeafAssignment, e: &CellExpr) -> Result<CellExpr> {
    e.map_leaves(&mut |leaf| {
        a.get(leaf).cloned().ok_or_else(|| match leaf {
            CellExpr::Gen(n) => Error::MissingEntry(format!("image of 2-cell `{n}`")),
            CellExpr::FId(n) => Error::MissingEntry(format!("image of `i[{n}]`")),
            _ => unreachable!("leaves only"),
        })
    })
}

/// Two assignments on the generators of `b`, with values in `target`, are
/// compared on the generators and their extensions on every cell with at
/// most `budget` leaves. An assignment whose extension is ill-formed somewhere
/// is an error.
pub fn check_determination(b: &Presentation, target: &QuotientSpec, f1: &LeafAssignment, f2: &LeafAssignment, budget: usize) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let mut src = Engine::new(b)?;
    let mut tgt = target.engine()?;
    for leaf in inclusion(b).keys() {
        let (x, y) = (extend(f1, leaf)?, extend(f2, leaf)?);
        for (which, img) in [("first", &x), ("second", &y)] {
            tgt.intern(img).map_err(|e| Error::compat(format!("{which} assignment at `{leaf}`"), e.to_string()))?;
        }
        match tgt.equal(&x, &y, budget)? {
            Verdict::Equal(_) => {}
            Verdict::Unknown(_) => report.incomplete = true,
            Verdict::Distinct(_) => {
                let name = match leaf {
                    CellExpr::Gen(n) | CellExpr::FId(n) => n.clone(),
                    _ => leaf.to_string(),
                };
                report.push_witness("generator", format!("assignments differ on generator `{leaf}`: {x} vs {y}"), name);
            }
        }
    }
    let Some(u) = src.universe(budget as u32) else {
        report.incomplete = true;
        return Ok(report);
    };
    let mut cells: Vec<u32> = u.level.keys().copied().collect();
    cells.sort_unstable();
    for t in cells {
        let e = src.expr(t);
        let (x, y) = (extend(f1, &e)?, extend(f2, &e)?);
        tgt.intern(&x).map_err(|err| Error::compat(format!("first extension of `{e}`"), err.to_string()))?;
        tgt.intern(&y).map_err(|err| Error::compat(format!("second extension of `{e}`"), err.to_string()))?;
        match tgt.equal(&x, &y, budget)? {
            Verdict::Equal(_) => {}
            Verdict::Unknown(_) => report.incomplete = true,
            Verdict::Distinct(_) => report.push_witness("extension", format!("extensions disagree: {x} vs {y}"), e.to_string()),
        }
    }
    Ok(report)
}
