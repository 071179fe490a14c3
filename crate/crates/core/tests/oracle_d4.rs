//! The engine against the dihedral model of End(id_a) in `z2`.

mod common;

use common::{d4, hcomp, vcomp, word, Affine, A, B, ONE};
use dblcat::freegg::{self, Boundary, Engine, Sampler};
use dblcat::{corpus, CellExpr};
use proptest::prelude::*;

#[test]
fn model_satisfies_the_laws() {
    let all = Affine::all();
    let parity = |p: u8| all.iter().copied().filter(move |x| x.parity() == p);
    for x in all.iter().copied() {
        assert_eq!(vcomp(ONE, x), x);
        assert_eq!(vcomp(x, ONE), x);
        let unit = if x.parity() == 0 { ONE } else { B };
        assert_eq!(hcomp(unit, x), Some(x));
        assert_eq!(hcomp(x, unit), Some(x));
        for y in all.iter().copied() {
            for z in all.iter().copied() {
                assert_eq!(vcomp(vcomp(x, y), z), vcomp(x, vcomp(y, z)));
                if let (Some(xy), Some(yz)) = (hcomp(x, y), hcomp(y, z)) {
                    assert_eq!(hcomp(xy, z), hcomp(x, yz));
                }
            }
        }
    }
    // Interchange wherever both sides are defined.
    for p in [0, 1] {
        for q in [0, 1] {
            for psi2 in parity(p) {
                for psi1 in parity(p) {
                    for phi2 in parity(q) {
                        for phi1 in parity(q) {
                            let lhs = vcomp(hcomp(psi2, psi1).unwrap(), hcomp(phi2, phi1).unwrap());
                            let rhs = hcomp(vcomp(psi2, phi2), vcomp(psi1, phi1));
                            assert_eq!(Some(lhs), rhs);
                        }
                    }
                }
            }
        }
    }
    // The relations of z2: -1 • -1 = 1 and -1 ∗ -1 = 1.
    assert_eq!(vcomp(A, A), ONE);
    assert_eq!(hcomp(A, A), Some(ONE));
}

#[test]
fn words_evaluate_as_expected() {
    let value = |w: &str| d4(&word(w));
    assert_eq!(value("ab"), Affine { e: 1, c: 3 });
    assert_eq!(value("ba"), Affine { e: 1, c: 1 });
    assert_eq!(value("aba"), Affine { e: -1, c: 3 });
    assert_eq!(value("bab"), Affine { e: -1, c: 2 });
    assert_eq!(value("abab"), value("baba"));
}

#[test]
fn enumeration_matches_the_model() {
    let z2 = corpus::presentation("z2").unwrap();
    let mut engine = Engine::new(&z2).unwrap();
    for sides in ["1", "-1"] {
        let frame = Boundary::new("id_a", "id_a", sides, sides);
        let mut want: Vec<Affine> = Affine::all().into_iter().filter(|x| x.parity() == u8::from(sides == "-1")).collect();
        want.sort();
        for budget in [4, 6, 8, 10] {
            let en = engine.enumerate(&frame, budget, usize::MAX).unwrap();
            assert!(!en.truncated);
            let mut got: Vec<Affine> = en.classes.iter().map(|c| d4(&c.representative)).collect();
            got.sort();
            assert_eq!(got, want, "frame {frame}, budget {budget}");
        }
    }
}

#[test]
fn level_one_classes() {
    let z2 = corpus::presentation("z2").unwrap();
    let en = freegg::enumerate(&z2, &Boundary::new("id_a", "id_a", "1", "1"), 8, 1).unwrap();
    let reps: Vec<String> = en.classes.iter().map(|c| c.representative.to_string()).collect();
    assert_eq!(reps, ["-1", "1", "i[-1] . -1 . i[-1]", "-1 . i[-1] . -1 . i[-1]"]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn verdicts_agree_with_the_model(seed in 0u64..1_000_000) {
        let z2 = corpus::presentation("z2").unwrap();
        let mut engine = Engine::new(&z2).unwrap();
        let mut sampler = Sampler::new(&z2, seed, 6).unwrap();
        let mut seen: Vec<CellExpr> = Vec::new();
        for _ in 0..12 {
            let e = sampler.next_expr();
            for other in &seen {
                let same_frame = freegg::boundary(&z2, other).unwrap() == freegg::boundary(&z2, &e).unwrap();
                let v = engine.equal(other, &e, 8).unwrap();
                prop_assert_eq!(v.is_equal(), same_frame && d4(other) == d4(&e), "{} vs {}", other, e);
                prop_assert!(v.is_equal() || v.is_distinct());
            }
            seen.push(e);
        }
    }
}
