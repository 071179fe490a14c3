//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Criterion 1 asks for free-product normal forms among vertical words in
//! `-1` and `i[-1]`. Interchange with the unit `id_a` makes `abab` and `baba`
//! equal (End(id_a) is dihedral of order 8, see `common::d4`), so that line
//! reports FAIL. The run still succeeds when the failure is exactly that one
//! collapse and every other pair matches the free product; anything else
//! failing makes the run fail.

mod common;

use std::time::{Duration, Instant};

use dblcat::adjunction::{check_naturality, check_triangle_h, check_triangle_q};
use dblcat::freegg::{self, check_double_axioms, Boundary, Engine, Sampler, INTERCHANGE_INSTANCES};
use dblcat::functor::{compose_check, map_cell, FreeFunctor};
use dblcat::presentation::identity_spec;
use dblcat::projection::{check_determination, inclusion, ProjectionHandle};
use dblcat::quotient::{check_verticalization, horizontalization};
use dblcat::syntax::parse_expr;
use dblcat::{corpus, CellExpr, QuotientSpec, ValidationReport};

use common::{alternating_words, d4, word};

/// Budgets and limits, pinned.
const BUDGET_FREE_PRODUCT: usize = 12;
const LIMIT_FREE_PRODUCT: Duration = Duration::from_secs(60);
const SIZE_POINT: usize = 8;
const POINT_SAMPLES: usize = 500;
const LIMIT_POINT: Duration = Duration::from_secs(10);
const BUDGET_VERTICALIZATION: usize = 10;
const BUDGET_AXIOMS: usize = 8;
const BUDGET_FULLNESS: usize = 12;
const SIZE_DETERMINATION: usize = 8;
const FUNCTOR_SAMPLES: usize = 500;
const FUNCTOR_SIZE: usize = 8;
const BUDGET_ADJUNCTION: usize = 8;
const SOUNDNESS_SAMPLES: usize = 1000;
const SOUNDNESS_SIZE: usize = 8;

type Outcome = Result<String, String>;

fn clean(r: &ValidationReport, what: &str) -> Result<(), String> {
    if r.is_empty() && !r.incomplete {
        Ok(())
    } else {
        Err(format!("{what}: {r}"))
    }
}

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// The 8 alternating words together with `1`, pairwise, against the free
/// product; plus `aa = bb = 1`. Returns the pairs that disagree.
fn free_product_mismatches(engine: &mut Engine) -> Result<Vec<String>, String> {
    let mut mismatches = Vec::new();
    for sq in ["aa", "bb"] {
        let v = engine.equal(&word(sq), &CellExpr::gen("1"), BUDGET_FREE_PRODUCT).map_err(fail)?;
        if !v.is_equal() {
            mismatches.push(format!("{sq} vs 1: {}", v.label()));
        }
    }
    let mut items: Vec<(String, CellExpr)> = vec![("1".into(), CellExpr::gen("1"))];
    items.extend(alternating_words().into_iter().map(|w| (w.clone(), word(&w))));
    for i in 0..items.len() {
        for j in i + 1..items.len() {
            let v = engine.equal(&items[i].1, &items[j].1, BUDGET_FREE_PRODUCT).map_err(fail)?;
            if !v.is_distinct() {
                mismatches.push(format!("{} vs {}: {}", items[i].0, items[j].0, v.label()));
            }
        }
    }
    Ok(mismatches)
}

fn criterion_1() -> (Outcome, bool) {
    let start = Instant::now();
    let run = || -> Result<Vec<String>, String> {
        let z2 = corpus::presentation("z2").map_err(fail)?;
        let mut engine = Engine::new(&z2).map_err(fail)?;
        free_product_mismatches(&mut engine)
    };
    let mismatches = match run() {
        Ok(m) => m,
        Err(e) => return (Err(e), false),
    };
    let elapsed = start.elapsed();
    if elapsed >= LIMIT_FREE_PRODUCT {
        return (Err(format!("took {elapsed:.1?}")), false);
    }
    if mismatches.is_empty() {
        return (Ok(format!("all 9 classes distinct, aa = bb = 1, {elapsed:.1?}")), true);
    }
    // Expected outcome: exactly the dihedral collapse abab = baba.
    let dihedral = mismatches == ["abab vs baba: Equal"] && d4(&word("abab")) == d4(&word("baba"));
    (Err(format!("{} (dihedral relation, {elapsed:.1?})", mismatches.join("; "))), dihedral)
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let point = corpus::presentation("point").map_err(fail)?;
    let frame = Boundary::new("id_a", "id_a", "1", "1");
    let en = freegg::enumerate(&point, &frame, SIZE_POINT, usize::MAX).map_err(fail)?;
    if en.truncated || en.classes.len() != 1 {
        return Err(format!("{} classes, truncated {}", en.classes.len(), en.truncated));
    }
    // Raw expressions, before normalization, all land in the one class.
    let mut engine = Engine::new(&point).map_err(fail)?;
    let mut sampler = Sampler::new(&point, 0, SIZE_POINT).map_err(fail)?;
    for _ in 0..POINT_SAMPLES {
        let e = sampler.next_expr();
        if !engine.equal(&e, &CellExpr::gen("1"), SIZE_POINT).map_err(fail)?.is_equal() {
            return Err(format!("{e} is not Equal to 1"));
        }
    }
    let h = horizontalization(&QuotientSpec::free(point.clone()), SIZE_POINT).map_err(fail)?;
    if h.presentation != point {
        return Err("horizontalization differs from point".into());
    }
    let elapsed = start.elapsed();
    if elapsed >= LIMIT_POINT {
        return Err(format!("took {elapsed:.1?}"));
    }
    Ok(format!("1 class, {POINT_SAMPLES} sampled cells Equal to 1, horizontalization is point, {elapsed:.1?}"))
}

fn criterion_3() -> Outcome {
    let z2 = corpus::presentation("z2").map_err(fail)?;
    let r = check_verticalization(&QuotientSpec::free(z2.clone()), BUDGET_VERTICALIZATION).map_err(fail)?;
    let v = r
        .violations
        .iter()
        .find(|v| v.kind == "new globular cell" && v.witness.is_some())
        .ok_or_else(|| format!("no new globular class reported: {r}"))?;
    let w = parse_expr(v.witness.as_deref().unwrap_or_default()).map_err(fail)?;
    let level = freegg::level(&z2, &w).map_err(fail)?;
    let globular = freegg::boundary(&z2, &w).map_err(fail)? == Boundary::new("id_a", "id_a", "1", "1");
    let new = ![CellExpr::gen("1"), CellExpr::gen("-1")].iter().any(|g| d4(g) == d4(&w));
    if level != 1 || w.size() > 8 || !globular || !new {
        return Err(format!("witness {w}: level {level}, size {}, globular {globular}, new {new}", w.size()));
    }
    Ok(format!("witness {w} (level 1, size {})", w.size()))
}

fn criterion_4() -> Outcome {
    if INTERCHANGE_INSTANCES < 200 {
        return Err(format!("only {INTERCHANGE_INSTANCES} interchange instances"));
    }
    for name in ["point", "z2"] {
        let p = corpus::presentation(name).map_err(fail)?;
        clean(&check_double_axioms(&p, BUDGET_AXIOMS).map_err(fail)?, name)?;
    }
    Ok(format!("point and z2, {INTERCHANGE_INSTANCES} interchange instances each"))
}

fn criterion_5() -> Outcome {
    let q = corpus::quotient("z2-abelian").map_err(fail)?;
    let mut h = ProjectionHandle::new(q, BUDGET_FULLNESS).map_err(fail)?;
    for k in [1, 2] {
        clean(&h.check_fullness(k, BUDGET_FULLNESS).map_err(fail)?, &format!("k = {k}"))?;
    }
    Ok("k = 1, 2".into())
}

fn criterion_6() -> Outcome {
    for name in ["point", "z2"] {
        let p = corpus::presentation(name).map_err(fail)?;
        let target = QuotientSpec::free(p.clone());
        let f1 = inclusion(&p);
        // Same values on generators, written differently: the unit 2-cell as
        // the formal identity of the identity.
        let mut f2 = f1.clone();
        f2.insert(CellExpr::gen("1"), CellExpr::fid("1"));
        clean(&check_determination(&p, &target, &f1, &f2, SIZE_DETERMINATION).map_err(fail)?, name)?;
    }
    let z2 = corpus::presentation("z2").map_err(fail)?;
    let f1 = inclusion(&z2);
    let mut f2 = f1.clone();
    f2.insert(CellExpr::gen("-1"), CellExpr::gen("1"));
    let r = check_determination(&z2, &QuotientSpec::free(z2.clone()), &f1, &f2, SIZE_DETERMINATION).map_err(fail)?;
    if !r.has_kind("generator") {
        return Err("mutation of `-1` not detected".into());
    }
    Ok("point and z2 agree; mutation of `-1` detected".into())
}

fn criterion_7() -> Outcome {
    let z2 = corpus::presentation("z2").map_err(fail)?;
    let id = FreeFunctor::identity(&z2).map_err(fail)?;
    let mut sampler = Sampler::new(&z2, 0, FUNCTOR_SIZE).map_err(fail)?;
    for _ in 0..FUNCTOR_SAMPLES {
        let e = sampler.next_expr();
        let img = map_cell(&id, &e).map_err(fail)?;
        if img != e {
            return Err(format!("identity moves {e} to {img}"));
        }
    }
    let first = FreeFunctor::new(corpus::functor("id-z2").map_err(fail)?).map_err(fail)?;
    let second = FreeFunctor::new(corpus::functor("collapse").map_err(fail)?).map_err(fail)?;
    clean(&compose_check(&first, &second, FUNCTOR_SAMPLES, FUNCTOR_SIZE).map_err(fail)?, "collapse after id")?;
    Ok(format!("{FUNCTOR_SAMPLES} samples each"))
}

fn criterion_8() -> Outcome {
    let q = corpus::quotient("z2-abelian").map_err(fail)?;
    clean(&check_triangle_h(&q, BUDGET_ADJUNCTION).map_err(fail)?, "triangle H on z2-abelian")?;
    for name in ["point", "z2"] {
        let p = corpus::presentation(name).map_err(fail)?;
        clean(&check_triangle_q(&p, BUDGET_ADJUNCTION).map_err(fail)?, &format!("triangle Q on {name}"))?;
    }
    let free = QuotientSpec::free(q.base.clone());
    clean(&check_naturality(&free, &q, &identity_spec(&q.base), BUDGET_ADJUNCTION).map_err(fail)?, "naturality")?;
    Ok("both triangles and naturality".into())
}

fn criterion_9() -> Outcome {
    let mut checked = 0;
    for (name, seed) in [("z2", 0), ("point", 1)] {
        let p = corpus::presentation(name).map_err(fail)?;
        let mut engine = Engine::new(&p).map_err(fail)?;
        let mut sampler = Sampler::new(&p, seed, SOUNDNESS_SIZE).map_err(fail)?;
        let mut previous: Option<CellExpr> = None;
        for _ in 0..SOUNDNESS_SAMPLES / 2 {
            let e = sampler.next_expr();
            let bd = freegg::boundary(&p, &e).map_err(fail)?;
            let n = freegg::prenormalize(&p, &e).map_err(fail)?;
            if freegg::boundary(&p, &n).map_err(fail)? != bd {
                return Err(format!("prenormalize moves the boundary of {e}"));
            }
            if freegg::prenormalize(&p, &n).map_err(fail)? != n {
                return Err(format!("prenormalize is not idempotent on {e}"));
            }
            if parse_expr(&e.to_string()).map_err(fail)? != e {
                return Err(format!("round trip changes {e}"));
            }
            if !engine.equal(&e, &n, SOUNDNESS_SIZE).map_err(fail)?.is_equal() {
                return Err(format!("{e} is not Equal to its normal form"));
            }
            if let Some(prev) = previous.replace(e.clone()) {
                if engine.equal(&prev, &e, SOUNDNESS_SIZE).map_err(fail)?.is_equal() && freegg::boundary(&p, &prev).map_err(fail)? != bd {
                    return Err(format!("{prev} and {e} are Equal with different boundaries"));
                }
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} expressions"))
}

fn main() {
    let mut ok = true;
    let mut line = |n: u8, name: &str, outcome: Outcome, tolerated: bool| {
        match &outcome {
            Ok(detail) => println!("PASS  {n}  {name}: {detail}"),
            Err(detail) => println!("FAIL  {n}  {name}: {detail}"),
        }
        if outcome.is_err() && !tolerated {
            ok = false;
        }
    };
    let (c1, dihedral) = criterion_1();
    line(1, "free-product reproduction", c1, dihedral);
    line(2, "trivial-decoration collapse", criterion_2(), false);
    line(3, "non-verticalization witness", criterion_3(), false);
    line(4, "double-category axioms", criterion_4(), false);
    line(5, "projection fullness", criterion_5(), false);
    line(6, "determination", criterion_6(), false);
    line(7, "functoriality", criterion_7(), false);
    line(8, "adjunction triangles and naturality", criterion_8(), false);
    line(9, "engine soundness", criterion_9(), false);
    if !ok {
        std::process::exit(1);
    }
}
