//! Randomized and exhaustive checks of the double category laws.

use super::closure::{Engine, Rules, Verdict};
use super::expr::CellExpr;
use super::sample::Sampler;
use super::tables::Frame;
use crate::error::Result;
use crate::presentation::Presentation;
use crate::report::ValidationReport;

/// Number of random interchange instances checked.
pub const INTERCHANGE_INSTANCES: usize = 200;
const LAW_INSTANCES: usize = 60;

/// Checks the laws with the full rule set and seed 0.
pub fn check_double_axioms(b: &Presentation, budget: usize) -> Result<ValidationReport> {
    check_double_axioms_with(b, budget, Rules::default(), 0)
}

struct Ctx<'a> {
    engine: Engine,
    sampler: Sampler,
    budget: usize,
    report: &'a mut ValidationReport,
}

impl Ctx<'_> {
    fn expect_equal(&mut self, kind: &str, x: &CellExpr, y: &CellExpr) -> Result<bool> {
        match self.engine.equal(x, y, self.budget)? {
            Verdict::Equal(_) => Ok(true),
            Verdict::Distinct(n) => {
                self.report.push_witness(kind, format!("sides are distinct at size {n}"), format!("{x}  vs  {y}"));
                Ok(false)
            }
            Verdict::Unknown(_) => {
                self.report.incomplete = true;
                Ok(false)
            }
        }
    }
}

/// Checks interchange, associativity and unit laws for both compositions,
/// functoriality of the boundary maps and of the formal identities, using the
/// given rule set and seed.
pub fn check_double_axioms_with(b: &Presentation, budget: usize, rules: Rules, seed: u64) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let engine = Engine::with_rules(b, rules)?;
    let sampler = Sampler::new(b, seed, 2)?;
    let mut cx = Ctx { engine, sampler, budget, report: &mut report };
    let one_comp = |t: &super::tables::Tables, g: u32, f: u32| t.one.try_comp(g, f).is_some();

    // interchange
    let mut done = 0;
    let mut attempts = 0;
    while done < INTERCHANGE_INSTANCES && attempts < 50 * INTERCHANGE_INSTANCES {
        attempts += 1;
        let phi1 = cx.sampler.next_expr();
        let f1 = cx.sampler.frame_of(&phi1)?;
        let t = cx.engine.tables();
        let ok2 = |f: Frame| f.s == f1.t && one_comp(t, f.d, f1.d) && one_comp(t, f.c, f1.c);
        let Some((phi2, f2)) = cx.sampler.with_frame(ok2, 40) else { continue };
        let t = cx.engine.tables();
        let okp1 = |f: Frame| t.v_frame(f, f1).is_some();
        let Some((psi1, g1)) = cx.sampler.with_frame(okp1, 40) else { continue };
        let t = cx.engine.tables();
        let okp2 = |f: Frame| t.v_frame(f, f2).is_some() && t.h_frame(f, g1).is_some();
        let Some((psi2, _)) = cx.sampler.with_frame(okp2, 40) else { continue };
        let lhs = CellExpr::v(CellExpr::h(psi2.clone(), psi1.clone()), CellExpr::h(phi2.clone(), phi1.clone()));
        let rhs = CellExpr::h(CellExpr::v(psi2, phi2), CellExpr::v(psi1, phi1));
        if cx.sampler.frame_of(&lhs).is_err() || cx.sampler.frame_of(&rhs).is_err() {
            continue;
        }
        done += 1;
        cx.expect_equal("interchange", &lhs, &rhs)?;
    }
    if done < INTERCHANGE_INSTANCES {
        cx.report.push("interchange", format!("only {done} instances could be sampled"));
    }

    let strict = cx.engine.tables().strict;
    for _ in 0..LAW_INSTANCES {
        let x = cx.sampler.next_expr();
        let fx = cx.sampler.frame_of(&x)?;

        // boundary maps: the canonical form keeps the frame
        let canon = cx.engine.canonical(&x)?;
        if cx.sampler.frame_of(&canon)? != fx {
            cx.report.push_witness("boundary", "normal form changes the frame", x.to_string());
        }

        // vertical units and associativity
        let (cd, cc) = {
            let t = cx.engine.tables();
            (t.cells.names[t.id2(fx.d) as usize].clone(), t.cells.names[t.id2(fx.c) as usize].clone())
        };
        cx.expect_equal("vertical unit", &CellExpr::v(x.clone(), CellExpr::Gen(cd)), &x)?;
        cx.expect_equal("vertical unit", &CellExpr::v(CellExpr::Gen(cc), x.clone()), &x)?;
        let t = cx.engine.tables();
        if let Some((y, fy)) = cx.sampler.with_frame(|f| f.c == fx.d && t.v_frame(fx, f).is_some(), 40) {
            let t = cx.engine.tables();
            let fxy = t.v_frame(fx, fy).expect("composable");
            if let Some((z, _)) = cx.sampler.with_frame(|f| f.c == fy.d && t.v_frame(fxy, f).is_some(), 40) {
                let l = CellExpr::v(CellExpr::v(x.clone(), y.clone()), z.clone());
                let r = CellExpr::v(x.clone(), CellExpr::v(y, z));
                cx.expect_equal("vertical associativity", &l, &r)?;
            }
        }

        // horizontal units and associativity
        let (sname, tname) = {
            let t = cx.engine.tables();
            (t.vert.names[fx.s as usize].clone(), t.vert.names[fx.t as usize].clone())
        };
        let coh = cx.engine.tables().coh.as_ref().map(|c| {
            let n = |i: u32| CellExpr::Gen(cx.engine.tables().cells.names[i as usize].clone());
            (n(c.lam[fx.c as usize].0), n(c.lam[fx.d as usize].0), n(c.rho[fx.c as usize].0), n(c.rho[fx.d as usize].0))
        });
        let xl = CellExpr::h(x.clone(), CellExpr::FId(sname));
        let xr = CellExpr::h(CellExpr::FId(tname), x.clone());
        match coh {
            None => {
                cx.expect_equal("horizontal unit", &xl, &x)?;
                cx.expect_equal("horizontal unit", &xr, &x)?;
            }
            Some((lc, ld, rc, rd)) => {
                cx.expect_equal("horizontal unit", &CellExpr::v(lc, xl), &CellExpr::v(x.clone(), ld))?;
                cx.expect_equal("horizontal unit", &CellExpr::v(rc, xr), &CellExpr::v(x.clone(), rd))?;
            }
        }
        let t = cx.engine.tables();
        if let Some((y, fy)) = cx.sampler.with_frame(|f| t.h_frame(fx, f).is_some(), 40) {
            let t = cx.engine.tables();
            let fxy = t.h_frame(fx, fy).expect("composable");
            if let Some((z, fz)) = cx.sampler.with_frame(|f| t.h_frame(fxy, f).is_some(), 40) {
                let l = CellExpr::h(CellExpr::h(x.clone(), y.clone()), z.clone());
                let r = CellExpr::h(x.clone(), CellExpr::h(y, z));
                if strict {
                    cx.expect_equal("horizontal associativity", &l, &r)?;
                } else {
                    let t = cx.engine.tables();
                    let coh = t.coh.as_ref().expect("weak mode");
                    let cod = coh.assoc.get(&(fz.c, fy.c, fx.c)).map(|a| t.cells.names[a.0 as usize].clone());
                    let dom = coh.assoc.get(&(fz.d, fy.d, fx.d)).map(|a| t.cells.names[a.0 as usize].clone());
                    if let (Some(c), Some(d)) = (cod, dom) {
                        cx.expect_equal("horizontal associativity", &CellExpr::v(CellExpr::Gen(c), r), &CellExpr::v(l, CellExpr::Gen(d)))?;
                    }
                }
            }
        }
    }

    // formal identities are functorial, exhaustively
    let (pairs, units) = {
        let t = cx.engine.tables();
        let n = t.vert.len() as u32;
        let mut pairs = Vec::new();
        for b in 0..n {
            for a in 0..n {
                if let Some(ba) = t.vert.try_comp(b, a) {
                    pairs.push((t.vert.names[b as usize].clone(), t.vert.names[a as usize].clone(), t.vert.names[ba as usize].clone()));
                }
            }
        }
        let units: Vec<(String, String)> = (0..t.objects.len() as u32)
            .map(|x| (t.vert.names[t.vert.ident[x as usize] as usize].clone(), t.cells.names[t.unit_at(x) as usize].clone()))
            .collect();
        (pairs, units)
    };
    for (b, a, ba) in pairs {
        cx.expect_equal("formal identity", &CellExpr::v(CellExpr::FId(b), CellExpr::FId(a)), &CellExpr::FId(ba))?;
    }
    for (idx, unit) in units {
        cx.expect_equal("formal identity", &CellExpr::FId(idx), &CellExpr::Gen(unit))?;
    }
    Ok(report)
}
