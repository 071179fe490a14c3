//! Pointwise checks of the adjunction between the free construction and the
//! decorated horizontalization: both triangle identities and naturality of
//! the projections.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::freegg::{CellExpr, Engine, Sampler, Verdict};
use crate::functor::{map_cell, FreeFunctor};
use crate::presentation::{DecoratedFunctorSpec, Presentation};
use crate::quotient::{horizontalization, Horizontalization, QuotientSpec};
use crate::report::ValidationReport;

/// Number of random cells used by the sampled checks.
pub const SAMPLES: usize = 120;
/// Largest sampled cell.
pub const SAMPLE_SIZE: usize = 6;

/// The projection from the free construction on a horizontalization back to
/// the quotient: each globular class goes to its representative.
pub fn project_from_horizontalization(h: &Horizontalization, e: &CellExpr) -> Result<CellExpr> {
    e.map_leaves(&mut |leaf| match leaf {
        CellExpr::Gen(n) => h.class(n).map(|c| c.representative.clone()).ok_or_else(|| Error::unknown("2-cell", n)),
        other => Ok(other.clone()),
    })
}

fn record(report: &mut ValidationReport, v: Verdict, kind: &str, message: String, witness: String) {
    match v {
        Verdict::Equal(_) => {}
        Verdict::Unknown(_) => report.incomplete = true,
        Verdict::Distinct(_) => report.push_witness(kind, message, witness),
    }
}

/// For every globular class of the quotient's horizontalization, including it
/// as a generator and projecting back gives the class itself.
pub fn check_triangle_h(q: &QuotientSpec, budget: usize) -> Result<ValidationReport> {
    check_triangle_h_with(q, budget, &project_from_horizontalization)
}

/// Like [`check_triangle_h`] with a given projection.
pub fn check_triangle_h_with(q: &QuotientSpec, budget: usize, project: &dyn Fn(&Horizontalization, &CellExpr) -> Result<CellExpr>) -> Result<ValidationReport> {
    let h = horizontalization(q, budget)?;
    let mut engine = q.engine()?;
    let mut report = ValidationReport::new();
    report.incomplete = h.incomplete;
    for c in &h.classes {
        let included = CellExpr::gen(&c.name);
        let back = project(&h, &included)?;
        let v = engine.equal(&back, &c.representative, budget)?;
        record(&mut report, v, "triangle", format!("class `{}` comes back as {back}", c.name), c.representative.to_string());
    }
    Ok(report)
}

/// The unit: each base cell goes to the globular class containing it.
pub fn unit_map(h: &Horizontalization, b: &Presentation) -> BTreeMap<String, String> {
    b.globular.cells.iter().filter_map(|c| Some((c.name.clone(), h.class_of_base(&c.name)?.name.clone()))).collect()
}

/// On sampled cells of the free construction on `b`: pushing forward along
/// the unit and projecting back gives an equal cell.
pub fn check_triangle_q(b: &Presentation, budget: usize) -> Result<ValidationReport> {
    check_triangle_q_with(b, budget, None, 0)
}

/// Like [`check_triangle_q`], optionally with a replacement unit on 2-cells.
pub fn check_triangle_q_with(b: &Presentation, budget: usize, unit: Option<&BTreeMap<String, String>>, seed: u64) -> Result<ValidationReport> {
    let q = QuotientSpec::free(b.clone());
    let h = horizontalization(&q, budget)?;
    let mut report = ValidationReport::new();
    report.incomplete = h.incomplete;
    let default_unit = unit_map(&h, b);
    let unit = unit.unwrap_or(&default_unit);
    let mut engine = Engine::new(b)?;
    let mut sampler = Sampler::new(b, seed, SAMPLE_SIZE.min(budget))?;
    for _ in 0..SAMPLES {
        let e = sampler.next_expr();
        let pushed = e.map_leaves(&mut |leaf| match leaf {
            CellExpr::Gen(n) => unit.get(n).map(|m| CellExpr::gen(m)).ok_or_else(|| Error::MissingEntry(format!("unit at `{n}`"))),
            other => Ok(other.clone()),
        })?;
        crate::freegg::boundary(&h.presentation, &pushed)?;
        let back = project_from_horizontalization(&h, &pushed)?;
        let v = engine.equal(&back, &e, budget)?;
        record(&mut report, v, "triangle", format!("comes back as {back}"), e.to_string());
    }
    Ok(report)
}

/// Naturality of the projections along a decorated bifunctor `f` between the
/// bases of two quotients: projecting then applying the induced functor
/// agrees with applying the free functor then projecting.
pub fn check_naturality(q1: &QuotientSpec, q2: &QuotientSpec, f: &DecoratedFunctorSpec, budget: usize) -> Result<ValidationReport> {
    check_naturality_with(q1, q2, f, f, budget, 0)
}

/// Like [`check_naturality`], with the functor between the quotients given
/// separately as `t`.
pub fn check_naturality_with(
    q1: &QuotientSpec,
    q2: &QuotientSpec,
    f: &DecoratedFunctorSpec,
    t: &DecoratedFunctorSpec,
    budget: usize,
    seed: u64,
) -> Result<ValidationReport> {
    if f.source != q1.base || f.target != q2.base || t.source != q1.base || t.target != q2.base {
        return Err(Error::compat("naturality square", "functor endpoints differ from the quotient bases"));
    }
    let free_f = FreeFunctor::new(f.clone())?;
    let tt = FreeFunctor::new(t.clone())?;
    let mut e1 = q1.engine()?;
    let mut e2 = q2.engine()?;
    // The induced functor must respect the relations of the source quotient.
    for (i, (a, b)) in q1.relations.iter().enumerate() {
        let (fa, fb) = (map_cell(&tt, a)?, map_cell(&tt, b)?);
        if !e2.equal(&fa, &fb, budget)?.is_equal() {
            return Err(Error::compat(format!("relation #{i}"), format!("`{a}` and `{b}` have different images in the target quotient")));
        }
    }
    let mut report = ValidationReport::new();
    let mut sampler = Sampler::new(&q1.base, seed, SAMPLE_SIZE.min(budget))?;
    for _ in 0..SAMPLES {
        let e = sampler.next_expr();
        let (rep, trunc1) = e1.representative(&e, budget)?;
        let upper = map_cell(&tt, &rep)?;
        let (lower, trunc2) = e2.representative(&map_cell(&free_f, &e)?, budget)?;
        report.incomplete |= trunc1 || trunc2;
        let v = e2.equal(&upper, &lower, budget)?;
        record(&mut report, v, "naturality", format!("{upper} vs {lower}"), e.to_string());
    }
    Ok(report)
}
