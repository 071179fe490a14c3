use dblcat::cli::parse_expr;
use dblcat::{CellExpr, Error};
use proptest::prelude::*;

fn name() -> impl Strategy<Value = String> {
    prop_oneof![Just("1".to_string()), Just("-1".to_string()), Just("alpha".to_string()), "[a-z][a-z0-9_+-]{0,4}"]
}

fn expr() -> impl Strategy<Value = CellExpr> {
    let leaf = prop_oneof![name().prop_map(CellExpr::Gen), name().prop_map(CellExpr::FId)];
    leaf.prop_recursive(5, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(u, l)| CellExpr::v(u, l)),
            (inner.clone(), inner).prop_map(|(r, l)| CellExpr::h(r, l)),
        ]
    })
}

proptest! {
    #[test]
    fn print_then_parse_is_identity(e in expr()) {
        let printed = e.to_string();
        prop_assert_eq!(parse_expr(&printed).unwrap(), e);
    }

    #[test]
    fn printing_is_a_fixed_point(e in expr()) {
        let once = e.to_string();
        prop_assert_eq!(parse_expr(&once).unwrap().to_string(), once);
    }

    #[test]
    fn whitespace_is_insignificant(e in expr()) {
        let spaced = e.to_string().replace('(', " ( ").replace(')', " ) ");
        prop_assert_eq!(parse_expr(&spaced).unwrap(), e);
    }
}

#[test]
fn precedence_and_grouping() {
    let e = parse_expr("(-1 . i[-1]) * i[-1]").unwrap();
    assert_eq!(e, CellExpr::h(CellExpr::v(CellExpr::gen("-1"), CellExpr::fid("-1")), CellExpr::fid("-1")));
    assert_eq!(e.to_string(), "(-1 . i[-1]) * i[-1]");
    let f = parse_expr("a . b * c").unwrap();
    assert_eq!(f, CellExpr::v(CellExpr::gen("a"), CellExpr::h(CellExpr::gen("b"), CellExpr::gen("c"))));
    assert_eq!(parse_expr("a . (b . c)").unwrap().to_string(), "a . (b . c)");
}

#[test]
fn corpus_expressions_round_trip() {
    for src in ["i[-1] . i[-1]", "-1 . i[-1]", "i[-1] . -1", "(-1 . i[-1]) * i[-1]", "-1 . i[-1] . -1 . i[-1]"] {
        assert_eq!(parse_expr(src).unwrap().to_string(), src);
    }
}

#[test]
fn malformed_input_is_a_syntax_error() {
    for src in ["", "a .", "(a", "a )", "i[a", "a ** b", "a\n. ."] {
        assert!(matches!(parse_expr(src), Err(Error::Syntax { .. })), "{src:?}");
    }
    match parse_expr("a\n. .") {
        Err(Error::Syntax { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
}
