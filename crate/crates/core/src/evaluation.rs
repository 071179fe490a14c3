//! Evaluations: binary parenthesizations of compatible sequences.
//!
//! A sequence `x_1, …, x_k` composes as `x_k ∗ … ∗ x_1`; it is compatible when
//! `t(x_i) = s(x_{i+1})`, and its boundary is `(s(x_1), t(x_k))`. In a node
//! `Concat(right, left)` the leaves of `left` come first.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EvalTree<X> {
    Leaf(X),
    Concat(Box<EvalTree<X>>, Box<EvalTree<X>>),
}

/// The source and target maps of a carrier.
pub struct Ends<'a, X, Y> {
    pub source: &'a dyn Fn(&X) -> Y,
    pub target: &'a dyn Fn(&X) -> Y,
}

impl<X> EvalTree<X> {
    pub fn leaf(x: X) -> Self {
        EvalTree::Leaf(x)
    }

    /// Leaves in sequence order `x_1, …, x_k`.
    pub fn leaves(&self) -> Vec<&X> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a X>) {
        match self {
            EvalTree::Leaf(x) => out.push(x),
            EvalTree::Concat(right, left) => {
                left.collect(out);
                right.collect(out);
            }
        }
    }

    pub fn len(&self) -> usize {
        match self {
            EvalTree::Leaf(_) => 1,
            EvalTree::Concat(r, l) => r.len() + l.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Relabels leaves, keeping the shape.
    pub fn map<Z>(&self, f: &mut impl FnMut(&X) -> Z) -> EvalTree<Z> {
        match self {
            EvalTree::Leaf(x) => EvalTree::Leaf(f(x)),
            EvalTree::Concat(r, l) => {
                let l2 = l.map(f);
                let r2 = r.map(f);
                EvalTree::Concat(Box::new(r2), Box::new(l2))
            }
        }
    }

    /// Folds the tree along its shape, `node(right, left)` at each concat.
    pub fn fold<Z>(&self, leaf: &mut impl FnMut(&X) -> Z, node: &mut impl FnMut(Z, Z) -> Z) -> Z {
        match self {
            EvalTree::Leaf(x) => leaf(x),
            EvalTree::Concat(r, l) => {
                let lz = l.fold(leaf, node);
                let rz = r.fold(leaf, node);
                node(rz, lz)
            }
        }
    }
}

/// `(s̃, t̃)` of a tree, checking compatibility of adjacent leaves.
pub fn boundaries<X, Y: PartialEq + std::fmt::Debug>(tree: &EvalTree<X>, ends: &Ends<'_, X, Y>) -> Result<(Y, Y)> {
    let leaves = tree.leaves();
    for (i, w) in leaves.windows(2).enumerate() {
        let (t, s) = ((ends.target)(w[0]), (ends.source)(w[1]));
        if t != s {
            return Err(Error::compat(format!("leaf {}", i + 1), format!("target {t:?} of leaf {} differs from source {s:?} of leaf {}", i + 1, i + 2)));
        }
    }
    let first = leaves.first().expect("trees are nonempty");
    let last = leaves.last().expect("trees are nonempty");
    Ok(((ends.source)(first), (ends.target)(last)))
}

/// `right ∗ left` as a new node; the junction must match.
pub fn concat<X: Clone, Y: PartialEq + std::fmt::Debug>(right: &EvalTree<X>, left: &EvalTree<X>, ends: &Ends<'_, X, Y>) -> Result<EvalTree<X>> {
    let (_, lt) = boundaries(left, ends)?;
    let (rs, _) = boundaries(right, ends)?;
    if lt != rs {
        return Err(Error::compat("junction", format!("target {lt:?} of the left tree differs from source {rs:?} of the right tree")));
    }
    Ok(EvalTree::Concat(Box::new(right.clone()), Box::new(left.clone())))
}

/// The lift of a compatible pair `(phi, psi)`: relabels leaves by `phi`, after
/// checking `s'(phi x) = psi(s x)` and `t'(phi x) = psi(t x)` on every leaf.
pub fn mu<X, X2, Y, Y2: PartialEq + std::fmt::Debug>(
    phi: &dyn Fn(&X) -> X2,
    psi: &dyn Fn(&Y) -> Y2,
    tree: &EvalTree<X>,
    ends: &Ends<'_, X, Y>,
    ends2: &Ends<'_, X2, Y2>,
) -> Result<EvalTree<X2>> {
    let mut err = None;
    let mut index = 0usize;
    let out = tree.map(&mut |x| {
        index += 1;
        let y = phi(x);
        if err.is_none() {
            let (s, s2) = (psi(&(ends.source)(x)), (ends2.source)(&y));
            let (t, t2) = (psi(&(ends.target)(x)), (ends2.target)(&y));
            if s != s2 || t != t2 {
                err = Some(Error::compat(format!("leaf {index}"), format!("pair is not compatible: ({s2:?}, {t2:?}) against ({s:?}, {t:?})")));
            }
        }
        y
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}
