//! Double categories presented as the free construction modulo extra
//! relations, and their horizontal bicategories.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;

use crate::error::Result;
use crate::freegg::store::Node;
use crate::freegg::tables::Frame;
use crate::freegg::{CellExpr, Engine, Verdict};
use crate::presentation::{Globular, Morphism, Presentation};
use crate::report::ValidationReport;

/// The free construction on `base` modulo the congruence generated by
/// `relations`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientSpec {
    pub base: Presentation,
    pub relations: Vec<(CellExpr, CellExpr)>,
}

impl QuotientSpec {
    /// Checks that both sides of every pair are well-formed with one frame.
    pub fn new(base: Presentation, relations: Vec<(CellExpr, CellExpr)>) -> Result<Self> {
        let q = QuotientSpec { base, relations };
        q.engine()?;
        Ok(q)
    }

    /// No extra relations.
    pub fn free(base: Presentation) -> Self {
        QuotientSpec { base, relations: Vec::new() }
    }

    pub fn engine(&self) -> Result<Engine> {
        let mut e = Engine::new(&self.base)?;
        for (a, b) in &self.relations {
            e.add_relation(a, b)?;
        }
        Ok(e)
    }
}

/// Equality in the quotient, with the semantics of [`crate::freegg::equal`].
pub fn equal_mod(q: &QuotientSpec, x: &CellExpr, y: &CellExpr, budget: usize) -> Result<Verdict> {
    q.engine()?.equal(x, y, budget)
}

/// One globular cell of a horizontalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobularClass {
    pub name: String,
    pub dom: String,
    pub cod: String,
    pub representative: CellExpr,
    pub size: usize,
    pub level: usize,
    /// Cells of the base presentation that fall into this class.
    pub base_cells: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Horizontalization {
    pub presentation: Presentation,
    pub classes: Vec<GlobularClass>,
    /// Set when a search was truncated or a composite fell outside the
    /// enumerated classes.
    pub incomplete: bool,
}

impl Horizontalization {
    pub fn class(&self, name: &str) -> Option<&GlobularClass> {
        self.classes.iter().find(|c| c.name == name)
    }

    /// The class containing a base cell.
    pub fn class_of_base(&self, cell: &str) -> Option<&GlobularClass> {
        self.classes.iter().find(|c| c.base_cells.iter().any(|b| b == cell))
    }
}

/// The decorated horizontal bicategory of the quotient: globular classes of
/// cells with at most `budget` leaves, with the induced compositions.
pub fn horizontalization(q: &QuotientSpec, budget: usize) -> Result<Horizontalization> {
    horizontalization_in(&mut q.engine()?, &q.base, budget)
}

pub(crate) fn horizontalization_in(engine: &mut Engine, base: &Presentation, budget: usize) -> Result<Horizontalization> {
    let bound = budget as u32;
    let universe = engine.universe(bound);
    let mut incomplete = universe.is_none();
    let one_len = engine.tables().one.len() as u32;

    // Globular frames: parallel 1-cells with identity sides.
    let mut frames = Vec::new();
    for f in 0..one_len {
        for g in 0..one_len {
            let t = engine.tables();
            let (x, y) = (t.one.dom[f as usize], t.one.cod[f as usize]);
            if t.one.dom[g as usize] == x && t.one.cod[g as usize] == y {
                frames.push(Frame { d: f, c: g, s: t.vert.ident[x as usize], t: t.vert.ident[y as usize] });
            }
        }
    }

    let mut classes: Vec<GlobularClass> = Vec::new();
    let mut lookup: FxHashMap<u32, usize> = FxHashMap::default();
    let mut by_frame: FxHashMap<Frame, Vec<usize>> = FxHashMap::default();
    let mut fresh = 0;
    let mut pending_new = Vec::new();
    for &fr in &frames {
        let (members, _, truncated) = engine.class_map(fr, bound);
        incomplete |= truncated;
        for class in members {
            let mut base_cells: Vec<u32> = class
                .iter()
                .filter_map(|&t| match engine.store.node(t) {
                    Node::Gen(g) => Some(*g),
                    _ => None,
                })
                .collect();
            base_cells.sort_unstable();
            let rep = engine.least(&class);
            let level = universe
                .as_ref()
                .and_then(|u| class.iter().filter_map(|t| u.level.get(t)).min().copied())
                .unwrap_or(1) as usize;
            let [d, c, _, _] = engine.tables().frame_names(fr);
            let gc = GlobularClass {
                name: String::new(),
                dom: d,
                cod: c,
                representative: engine.expr(rep),
                size: engine.store.size(rep) as usize,
                level,
                base_cells: base_cells.iter().map(|&g| engine.tables().cells.names[g as usize].clone()).collect(),
            };
            let sort_key = base_cells.first().copied();
            pending_new.push((sort_key, fr, class, gc));
        }
    }
    // Base cells keep their names and order; new classes follow in shortlex
    // order of their representatives.
    pending_new.sort_by(|a, b| match (a.0, b.0) {
        (Some(x), Some(y)) => x.cmp(&y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => (a.3.size, a.3.representative.to_string()).cmp(&(b.3.size, b.3.representative.to_string())),
    });
    for (_, fr, members, mut gc) in pending_new {
        gc.name = match gc.base_cells.first() {
            Some(n) => n.clone(),
            None => loop {
                let n = format!("q{fresh}");
                fresh += 1;
                if !base.globular.cells.iter().any(|c| c.name == n) {
                    break n;
                }
            },
        };
        let i = classes.len();
        for t in members {
            lookup.insert(t, i);
        }
        by_frame.entry(fr).or_default().push(i);
        classes.push(gc);
    }

    let reps: Vec<u32> = classes.iter().map(|c| engine.intern(&c.representative)).collect::<Result<_>>()?;
    let mut locate = |engine: &mut Engine, t: u32, incomplete: &mut bool| -> Option<usize> {
        if let Some(&i) = lookup.get(&t) {
            return Some(i);
        }
        let fr = engine.store.frame(t);
        for &i in by_frame.get(&fr).map(Vec::as_slice).unwrap_or(&[]) {
            match engine.decide(t, reps[i], budget) {
                Verdict::Equal(_) => {
                    lookup.insert(t, i);
                    return Some(i);
                }
                Verdict::Unknown(_) => *incomplete = true,
                Verdict::Distinct(_) => {}
            }
        }
        *incomplete = true;
        None
    };

    let mut identities = BTreeMap::new();
    for f in 0..one_len {
        let unit = engine.store.vunit(f);
        if let Some(i) = locate(engine, unit, &mut incomplete) {
            identities.insert(engine.tables().one.names[f as usize].clone(), classes[i].name.clone());
        }
    }
    let mut vcompose = Vec::new();
    let mut hcompose = Vec::new();
    for u in 0..classes.len() {
        for l in 0..classes.len() {
            let (fu, fl) = (engine.store.frame(reps[u]), engine.store.frame(reps[l]));
            if fu.d == fl.c {
                let t = engine.store.mk_v(&[reps[u], reps[l]]);
                if let Some(i) = locate(engine, t, &mut incomplete) {
                    vcompose.push([classes[u].name.clone(), classes[l].name.clone(), classes[i].name.clone()]);
                }
            }
            if engine.tables().one.cod[fl.d as usize] == engine.tables().one.dom[fu.d as usize] {
                let t = engine.store.mk_h(&[reps[u], reps[l]]);
                if let Some(i) = locate(engine, t, &mut incomplete) {
                    hcompose.push([classes[u].name.clone(), classes[l].name.clone(), classes[i].name.clone()]);
                }
            }
        }
    }
    let presentation = Presentation {
        objects: base.objects.clone(),
        decoration: base.decoration.clone(),
        horizontal: base.horizontal.clone(),
        globular: Globular {
            cells: classes.iter().map(|c| Morphism::new(&c.name, &c.dom, &c.cod)).collect(),
            identities,
            vcompose,
            hcompose,
        },
        mode: base.mode,
        coherence: base.coherence.clone(),
    };
    Ok(Horizontalization { presentation, classes, incomplete })
}

/// Compares the horizontalization of `q` with its base: reports base cells
/// that collapse together and globular classes that are not base cells.
pub fn check_verticalization(q: &QuotientSpec, budget: usize) -> Result<ValidationReport> {
    let h = horizontalization(q, budget)?;
    let mut report = ValidationReport::new();
    report.incomplete = h.incomplete;
    for c in &h.classes {
        if c.base_cells.len() > 1 {
            report.push_witness("globular collapse", format!("base cells {} are identified", c.base_cells.join(", ")), c.base_cells.join(" = "));
        }
        if c.base_cells.is_empty() {
            report.push_witness(
                "new globular cell",
                format!("class {} of size {} and level {} from {} to {} contains no base cell", c.name, c.size, c.level, c.dom, c.cod),
                c.representative.to_string(),
            );
        }
    }
    if report.is_empty() {
        for [u, l, r] in &q.base.globular.vcompose {
            if h.presentation.vcompose(u, l) != Some(r.as_str()) {
                report.push("composition", format!("({u})•({l}) is not {r} in the quotient"));
            }
        }
        for [u, l, r] in &q.base.globular.hcompose {
            if h.presentation.hcompose(u, l) != Some(r.as_str()) {
                report.push("composition", format!("({u})∗({l}) is not {r} in the quotient"));
            }
        }
    }
    Ok(report)
}
