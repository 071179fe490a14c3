use std::collections::BTreeMap;

use dblcat::adjunction::{check_naturality, check_naturality_with, check_triangle_h, check_triangle_h_with, check_triangle_q, check_triangle_q_with, project_from_horizontalization};
use dblcat::functor::{check_free_characterization, check_free_characterization_with, compose_check, compose_check_with, map_cell, FreeFunctor};
use dblcat::presentation::identity_spec;
use dblcat::projection::inclusion;
use dblcat::quotient::horizontalization;
use dblcat::syntax::parse_expr;
use dblcat::{corpus, CellExpr, Error, QuotientSpec};

fn e(src: &str) -> CellExpr {
    parse_expr(src).unwrap()
}

fn functor(name: &str) -> FreeFunctor {
    FreeFunctor::new(corpus::functor(name).unwrap()).unwrap()
}

/// The bifunctor z2 → z2 with 2-cells -1 ↦ 1 and vertical maps fixed.
fn kill_minus_one() -> FreeFunctor {
    let mut spec = corpus::functor("id-z2").unwrap();
    spec.cells2.insert("-1".into(), "1".into());
    FreeFunctor::new(spec).unwrap()
}

#[test]
fn mapping_keeps_shape() {
    let collapse = functor("collapse");
    assert_eq!(map_cell(&collapse, &e("-1 . i[-1]")).unwrap(), e("1 . i[1]"));
    assert_eq!(map_cell(&collapse, &e("(-1 . i[-1]) * i[-1]")).unwrap(), e("(1 . i[1]) * i[1]"));
    let id = functor("id-z2");
    assert_eq!(map_cell(&id, &e("(-1 . i[-1]) * i[-1]")).unwrap(), e("(-1 . i[-1]) * i[-1]"));
    assert!(matches!(map_cell(&id, &e("-1 * i[-1]")), Err(Error::Compatibility { .. })));
}

#[test]
fn composition() {
    let (id, collapse) = (functor("id-z2"), functor("collapse"));
    assert!(compose_check(&id, &collapse, 200, 8).unwrap().is_empty());
    assert!(compose_check(&functor("id-point"), &functor("id-point"), 50, 6).unwrap().is_empty());
    assert!(matches!(compose_check(&collapse, &id, 10, 4), Err(Error::Composition(_))));
    // A wrong claimed composite.
    let r = compose_check_with(&id, &id, &kill_minus_one(), 200, 8, 0).unwrap();
    assert!(r.has_kind("composition"), "{r}");
}

#[test]
fn free_characterization() {
    for name in ["id-z2", "collapse", "id-point"] {
        let r = check_free_characterization(&functor(name), 6).unwrap();
        assert!(r.is_empty() && !r.incomplete, "{name}: {r}");
    }
    let z2 = corpus::presentation("z2").unwrap();
    let mut other = inclusion(&z2);
    other.insert(CellExpr::gen("-1"), CellExpr::gen("1"));
    let r = check_free_characterization_with(&functor("id-z2"), Some(&other), 6).unwrap();
    assert!(!r.is_empty());
}

#[test]
fn triangles() {
    let q = corpus::quotient("z2-abelian").unwrap();
    assert!(check_triangle_h(&q, 8).unwrap().is_empty());
    let z2 = corpus::presentation("z2").unwrap();
    assert!(check_triangle_q(&z2, 8).unwrap().is_empty());
    let h = horizontalization(&QuotientSpec::free(z2.clone()), 8).unwrap();
    assert_eq!(project_from_horizontalization(&h, &e("q0 . -1")).unwrap(), e("i[-1] . -1 . i[-1] . -1"));
}

#[test]
fn broken_triangles_are_detected() {
    let q = corpus::quotient("z2-abelian").unwrap();
    let to_unit = |_: &dblcat::quotient::Horizontalization, _: &CellExpr| Ok(CellExpr::gen("1"));
    assert!(check_triangle_h_with(&q, 8, &to_unit).unwrap().has_kind("triangle"));
    let z2 = corpus::presentation("z2").unwrap();
    let unit: BTreeMap<String, String> = [("1".to_string(), "1".to_string()), ("-1".to_string(), "1".to_string())].into();
    assert!(check_triangle_q_with(&z2, 8, Some(&unit), 0).unwrap().has_kind("triangle"));
}

#[test]
fn naturality() {
    let q = corpus::quotient("z2-abelian").unwrap();
    let free = QuotientSpec::free(q.base.clone());
    let id = identity_spec(&q.base);
    assert!(check_naturality(&free, &q, &id, 8).unwrap().is_empty());
    assert!(check_naturality(&q, &q, &id, 8).unwrap().is_empty());
    // Projections do not commute with a different induced functor.
    let r = check_naturality_with(&free, &q, &id, kill_minus_one().spec(), 8, 0).unwrap();
    assert!(r.has_kind("naturality"), "{r}");
    // The identity does not descend from the quotient to the free construction.
    assert!(matches!(check_naturality(&q, &free, &id, 8), Err(Error::Compatibility { .. })));
    let point = corpus::presentation("point").unwrap();
    assert!(matches!(check_naturality(&free, &QuotientSpec::free(point), &id, 8), Err(Error::Compatibility { .. })));
}
