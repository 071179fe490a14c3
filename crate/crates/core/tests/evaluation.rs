use dblcat::evaluation::{boundaries, concat, mu, EvalTree, Ends};
use dblcat::Error;
use proptest::prelude::*;

// Carrier: steps (a, b) on the integers, with s = a and t = b.
fn ends() -> Ends<'static, (i32, i32), i32> {
    Ends { source: &|x: &(i32, i32)| x.0, target: &|x: &(i32, i32)| x.1 }
}

/// A random parenthesization of a compatible path starting at `start`.
fn tree(start: i32, steps: &[i32], splits: &[usize]) -> EvalTree<(i32, i32)> {
    if steps.len() == 1 {
        return EvalTree::leaf((start, start + steps[0]));
    }
    let k = 1 + splits[0] % (steps.len() - 1);
    let left = tree(start, &steps[..k], &splits[1..]);
    let mid = start + steps[..k].iter().sum::<i32>();
    let right = tree(mid, &steps[k..], &splits[1..]);
    EvalTree::Concat(Box::new(right), Box::new(left))
}

proptest! {
    #[test]
    fn boundary_of_a_path(start in -5i32..5, steps in prop::collection::vec(-3i32..4, 1..8), splits in prop::collection::vec(0usize..8, 8)) {
        let t = tree(start, &steps, &splits);
        prop_assert_eq!(t.len(), steps.len());
        let end = start + steps.iter().sum::<i32>();
        prop_assert_eq!(boundaries(&t, &ends()).unwrap(), (start, end));
    }

    #[test]
    fn concat_adds_boundaries(a in prop::collection::vec(-3i32..4, 1..5), b in prop::collection::vec(-3i32..4, 1..5)) {
        let splits = [0usize; 8];
        let left = tree(0, &a, &splits);
        let mid = a.iter().sum::<i32>();
        let right = tree(mid, &b, &splits);
        let both = concat(&right, &left, &ends()).unwrap();
        prop_assert_eq!(boundaries(&both, &ends()).unwrap(), (0, mid + b.iter().sum::<i32>()));
        let shifted = tree(mid + 1, &b, &splits);
        let is_compat_err = matches!(concat(&shifted, &left, &ends()), Err(Error::Compatibility { .. }));
        prop_assert!(is_compat_err);
    }

    #[test]
    fn lifting_keeps_shape(start in -5i32..5, steps in prop::collection::vec(-3i32..4, 1..8), splits in prop::collection::vec(0usize..8, 8)) {
        let t = tree(start, &steps, &splits);
        // Doubling on both layers is a compatible pair.
        let lifted = mu(&|x: &(i32, i32)| (2 * x.0, 2 * x.1), &|y: &i32| 2 * y, &t, &ends(), &ends()).unwrap();
        prop_assert_eq!(lifted.clone(), t.map(&mut |x| (2 * x.0, 2 * x.1)));
        prop_assert_eq!(boundaries(&lifted, &ends()).unwrap(), (2 * start, 2 * (start + steps.iter().sum::<i32>())));
    }
}

#[test]
fn broken_path_is_rejected() {
    let t = EvalTree::Concat(Box::new(EvalTree::leaf((5, 6))), Box::new(EvalTree::leaf((0, 1))));
    assert!(matches!(boundaries(&t, &ends()), Err(Error::Compatibility { .. })));
}
