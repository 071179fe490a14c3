//! Free double functors between free constructions.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::evaluation::{self, EvalTree, Ends};
use crate::freegg::tables::Tables;
use crate::freegg::{frame_at, CellExpr, Sampler};
use crate::presentation::{compose_specs, identity_spec, validate_functor, DecoratedFunctorSpec, Presentation};
use crate::projection::{check_determination, LeafAssignment};
use crate::quotient::QuotientSpec;
use crate::report::ValidationReport;

/// The double functor induced by a decorated bifunctor: it relabels leaves
/// and keeps the shape of every expression.
#[derive(Clone)]
pub struct FreeFunctor {
    spec: DecoratedFunctorSpec,
    src: Arc<Tables>,
    tgt: Arc<Tables>,
}

impl FreeFunctor {
    /// Validates the decorated bifunctor first.
    pub fn new(spec: DecoratedFunctorSpec) -> Result<Self> {
        let report = validate_functor(&spec)?;
        if !report.is_empty() {
            return Err(Error::Invalid(format!("not a decorated bifunctor:\n{report}")));
        }
        Self::unchecked(spec)
    }

    /// Skips validation; for deliberately broken fixtures.
    pub fn unchecked(spec: DecoratedFunctorSpec) -> Result<Self> {
        let src = Arc::new(Tables::compile(&spec.source)?);
        let tgt = Arc::new(Tables::compile(&spec.target)?);
        Ok(FreeFunctor { spec, src, tgt })
    }

    pub fn identity(p: &Presentation) -> Result<Self> {
        Self::new(identity_spec(p))
    }

    pub fn spec(&self) -> &DecoratedFunctorSpec {
        &self.spec
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &FreeFunctor) -> Result<FreeFunctor> {
        FreeFunctor::new(compose_specs(&self.spec, &then.spec)?)
    }

    /// The images of the leaves.
    pub fn leaf_assignment(&self) -> LeafAssignment {
        let mut m = LeafAssignment::new();
        for (k, v) in &self.spec.cells2 {
            m.insert(CellExpr::gen(k), CellExpr::gen(v));
        }
        for (k, v) in &self.spec.vertical {
            m.insert(CellExpr::fid(k), CellExpr::fid(v));
        }
        m
    }

    fn image(&self, map: &std::collections::BTreeMap<String, String>, name: &str, kind: &str) -> Result<String> {
        map.get(name).cloned().ok_or_else(|| Error::UnknownName { kind: kind.into(), name: name.into() })
    }

    fn map_at(&self, e: &CellExpr, path: &str) -> Result<CellExpr> {
        match e {
            CellExpr::Gen(n) => Ok(CellExpr::Gen(self.image(&self.spec.cells2, n, "2-cell")?)),
            CellExpr::FId(n) => Ok(CellExpr::FId(self.image(&self.spec.vertical, n, "vertical morphism")?)),
            CellExpr::VComp(u, l) => Ok(CellExpr::v(self.map_at(u, &format!("{path}.upper"))?, self.map_at(l, &format!("{path}.lower"))?)),
            CellExpr::HComp(..) => {
                // Lift the leaf map along the horizontal spine.
                let mut factors = Vec::new();
                spine(e, path, &mut factors);
                let mut src_ends = Vec::new();
                let mut images = Vec::new();
                for (x, p) in &factors {
                    let f = frame_at(&self.src, x, p)?;
                    src_ends.push([self.src.vert.names[f.s as usize].clone(), self.src.vert.names[f.t as usize].clone()]);
                    let y = self.map_at(x, p)?;
                    let g = frame_at(&self.tgt, &y, p)?;
                    images.push((y, [self.tgt.vert.names[g.s as usize].clone(), self.tgt.vert.names[g.t as usize].clone()]));
                }
                let mut next = 0..factors.len();
                let tree = spine_shape(e, &mut next);
                let ends = Ends { source: &|i: &usize| src_ends[*i][0].clone(), target: &|i: &usize| src_ends[*i][1].clone() };
                let ends2 = Ends {
                    source: &|x: &(CellExpr, [String; 2])| x.1[0].clone(),
                    target: &|x: &(CellExpr, [String; 2])| x.1[1].clone(),
                };
                let psi = |v: &String| self.spec.vertical.get(v).cloned().unwrap_or_default();
                let lifted = evaluation::mu(&|i: &usize| images[*i].clone(), &psi, &tree, &ends, &ends2)
                    .map_err(|err| match err {
                        Error::Compatibility { at, detail } => Error::compat(format!("{path} ({at})"), detail),
                        other => other,
                    })?;
                Ok(lifted.fold(&mut |x| x.0.clone(), &mut CellExpr::h))
            }
        }
    }
}

fn spine<'a>(e: &'a CellExpr, path: &str, out: &mut Vec<(&'a CellExpr, String)>) {
    match e {
        CellExpr::HComp(r, l) => {
            spine(l, &format!("{path}.left"), out);
            spine(r, &format!("{path}.right"), out);
        }
        _ => out.push((e, path.to_string())),
    }
}

fn spine_shape(e: &CellExpr, next: &mut impl Iterator<Item = usize>) -> EvalTree<usize> {
    match e {
        CellExpr::HComp(r, l) => {
            let lt = spine_shape(l, next);
            let rt = spine_shape(r, next);
            EvalTree::Concat(Box::new(rt), Box::new(lt))
        }
        _ => EvalTree::Leaf(next.next().expect("one index per factor")),
    }
}

/// The image of a cell; same tree shape over the target.
pub fn map_cell(f: &FreeFunctor, e: &CellExpr) -> Result<CellExpr> {
    frame_at(&f.src, e, "root")?;
    f.map_at(e, "root")
}

/// Compares the functor of the composite spec with the composite of the
/// functors on `samples` random cells of at most `budget` leaves.
pub fn compose_check(f: &FreeFunctor, g: &FreeFunctor, samples: usize, budget: usize) -> Result<ValidationReport> {
    let composite = f.then(g)?;
    compose_check_with(f, g, &composite, samples, budget, 0)
}

/// Like [`compose_check`], against an explicitly given composite.
pub fn compose_check_with(f: &FreeFunctor, g: &FreeFunctor, composite: &FreeFunctor, samples: usize, budget: usize, seed: u64) -> Result<ValidationReport> {
    if f.spec.target != g.spec.source {
        return Err(Error::Composition("target of the first functor is not the source of the second".into()));
    }
    let mut report = ValidationReport::new();
    let mut sampler = Sampler::new(&f.spec.source, seed, budget)?;
    for _ in 0..samples {
        let e = sampler.next_expr();
        let two_step = map_cell(g, &map_cell(f, &e)?)?;
        let one_step = map_cell(composite, &e)?;
        if one_step != two_step {
            report.push_witness("composition", format!("composite gives {one_step}, two steps give {two_step}"), e.to_string());
        }
    }
    Ok(report)
}

/// Checks that the functor restricts to its spec on generators and that it is
/// the only extension of its leaf assignment, on cells with at most `budget`
/// leaves.
pub fn check_free_characterization(f: &FreeFunctor, budget: usize) -> Result<ValidationReport> {
    check_free_characterization_with(f, None, budget)
}

/// Like [`check_free_characterization`], comparing against `other` leaf
/// images instead of the functor's own.
pub fn check_free_characterization_with(f: &FreeFunctor, other: Option<&LeafAssignment>, budget: usize) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let s = &f.spec;
    for c in &s.source.globular.cells {
        let img = map_cell(f, &CellExpr::gen(&c.name))?;
        let b = crate::freegg::boundary(&s.target, &img)?;
        let want = (s.cells1[&c.dom].clone(), s.cells1[&c.cod].clone());
        if img != CellExpr::gen(&s.cells2[&c.name]) || (b.d.clone(), b.c.clone()) != want {
            report.push_witness("restriction", format!("2-cell `{}` goes to {img}", c.name), c.name.clone());
        }
    }
    for m in &s.source.decoration.morphisms {
        let img = map_cell(f, &CellExpr::fid(&m.name))?;
        if img != CellExpr::fid(&s.vertical[&m.name]) {
            report.push_witness("restriction", format!("`i[{}]` goes to {img}", m.name), m.name.clone());
        }
    }
    let own = f.leaf_assignment();
    let alt = other.unwrap_or(&own);
    report.extend(check_determination(&s.source, &QuotientSpec::free(s.target.clone()), &own, alt, budget)?);
    Ok(report)
}
