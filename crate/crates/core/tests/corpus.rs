use dblcat::corpus::{self, to_pretty, Artifact, FunctorFile, QuotientFile};
use dblcat::presentation::{compose_specs, identity_spec, validate_category, validate_functor, validate_presentation, FinCategory, Morphism};
use dblcat::{Error, Presentation};

#[test]
fn every_artifact_validates() {
    for name in corpus::NAMES {
        corpus::load(name).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn serialization_is_bit_exact() {
    for name in corpus::NAMES {
        let src = corpus::source(name).unwrap();
        let out = match corpus::load(name).unwrap() {
            Artifact::Presentation(p) => to_pretty(&p),
            Artifact::Quotient(_) => to_pretty(&serde_json::from_str::<QuotientFile>(src).unwrap()),
            Artifact::Functor(_) => to_pretty(&serde_json::from_str::<FunctorFile>(src).unwrap()),
        };
        assert_eq!(out, src, "{name}");
    }
}

#[test]
fn presentation_json_round_trip() {
    for name in ["point", "z2"] {
        let p = corpus::presentation(name).unwrap();
        assert_eq!(Presentation::from_json(&p.to_json()).unwrap(), p);
    }
}

#[test]
fn shapes_of_the_examples() {
    let point = corpus::presentation("point").unwrap();
    assert_eq!((point.objects.len(), point.decoration.morphisms.len(), point.horizontal.morphisms.len(), point.globular.cells.len()), (1, 1, 1, 1));
    let z2 = corpus::presentation("z2").unwrap();
    let names = |ms: &[Morphism]| ms.iter().map(|m| m.name.clone()).collect::<Vec<_>>();
    assert_eq!(names(&z2.decoration.morphisms), ["1", "-1"]);
    assert_eq!(names(&z2.globular.cells), ["1", "-1"]);
    let q = corpus::quotient("z2-abelian").unwrap();
    assert_eq!(q.base, z2);
    assert_eq!(q.relations.len(), 1);
}

#[test]
fn unknown_name() {
    assert!(matches!(corpus::load("nope"), Err(Error::UnknownName { .. })));
    assert!(matches!(corpus::presentation("z2-abelian"), Err(Error::UnknownName { .. })));
}

fn monoid(elements: &[&str], table: &[[&str; 3]]) -> FinCategory {
    FinCategory {
        objects: vec!["*".into()],
        morphisms: elements.iter().map(|e| Morphism::new(e, "*", "*")).collect(),
        identities: [("*".to_string(), elements[0].to_string())].into(),
        compose: table.iter().map(|t| t.map(String::from)).collect(),
    }
}

#[test]
fn idempotent_monoid_is_a_category() {
    let c = monoid(&["1", "-1"], &[["1", "1", "1"], ["1", "-1", "-1"], ["-1", "1", "-1"], ["-1", "-1", "-1"]]);
    assert!(validate_category(&c).unwrap().is_empty());
}

#[test]
fn broken_categories_are_reported() {
    // Not associative: x∘(x∘y) = x∘x = 1 but (x∘x)∘y = y.
    let c = monoid(
        &["1", "x", "y"],
        &[["1", "1", "1"], ["1", "x", "x"], ["1", "y", "y"], ["x", "1", "x"], ["y", "1", "y"], ["x", "x", "1"], ["x", "y", "x"], ["y", "x", "y"], ["y", "y", "y"]],
    );
    assert!(!validate_category(&c).unwrap().is_empty());
    // Wrong unit.
    let d = monoid(&["1", "-1"], &[["1", "1", "1"], ["1", "-1", "1"], ["-1", "1", "-1"], ["-1", "-1", "1"]]);
    assert!(!validate_category(&d).unwrap().is_empty());
}

#[test]
fn clashing_names_are_errors() {
    let mut c = monoid(&["1", "-1"], &[["1", "1", "1"], ["1", "-1", "-1"], ["-1", "1", "-1"], ["-1", "-1", "1"]]);
    c.objects.push("*".into());
    assert!(matches!(validate_category(&c), Err(Error::NameClash { .. })));
}

#[test]
fn corrupted_presentation_is_reported() {
    let mut z2 = corpus::presentation("z2").unwrap();
    z2.globular.hcompose.retain(|t| t != &["-1".to_string(), "-1".to_string(), "1".to_string()]);
    z2.globular.hcompose.push(["-1".into(), "-1".into(), "-1".into()]);
    assert!(!validate_presentation(&z2).unwrap().is_empty());
}

#[test]
fn functor_validation() {
    let z2 = corpus::presentation("z2").unwrap();
    let id = identity_spec(&z2);
    assert!(validate_functor(&id).unwrap().is_empty());
    // 2-cells -1 ↦ 1 with vertical -1 ↦ -1 is still a bifunctor.
    let mut g = id.clone();
    g.cells2.insert("-1".into(), "1".into());
    assert!(validate_functor(&g).unwrap().is_empty());
    // A vertical map that breaks composition.
    let mut bad = id.clone();
    bad.vertical.insert("1".into(), "-1".into());
    assert!(!validate_functor(&bad).unwrap().is_empty());
    // Composition with the collapse.
    let collapse = corpus::functor("collapse").unwrap();
    let both = compose_specs(&id, &collapse).unwrap();
    assert_eq!(both.cells2, collapse.cells2);
    assert!(matches!(compose_specs(&collapse, &id), Err(Error::Composition(_))));
}
