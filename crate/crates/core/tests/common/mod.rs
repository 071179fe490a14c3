//! Independent models used as oracles.

#![allow(dead_code)]

use dblcat::CellExpr;

/// `n ↦ e·n + c` on Z/4. End(id_a) in the free construction on `z2` is the
/// dihedral group of order 8, realised by these maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Affine {
    pub e: i8,
    pub c: u8,
}

pub const ONE: Affine = Affine { e: 1, c: 0 };
/// The 2-cell `-1`.
pub const A: Affine = Affine { e: -1, c: 0 };
/// The formal identity `i[-1]`.
pub const B: Affine = Affine { e: -1, c: 1 };

impl Affine {
    /// `self ∘ inner`.
    pub fn after(self, inner: Affine) -> Affine {
        let c = (self.e as i16 * inner.c as i16 + self.c as i16).rem_euclid(4) as u8;
        Affine { e: self.e * inner.e, c }
    }

    /// 0 on cells with vertical sides `1`, 1 on cells with sides `-1`.
    pub fn parity(self) -> u8 {
        self.c % 2
    }

    pub fn all() -> Vec<Affine> {
        let mut v = Vec::new();
        for e in [1, -1] {
            for c in 0..4 {
                v.push(Affine { e, c });
            }
        }
        v
    }
}

/// Vertical composite in the model.
pub fn vcomp(upper: Affine, lower: Affine) -> Affine {
    upper.after(lower)
}

/// Horizontal composite in the model; defined when the parities agree.
pub fn hcomp(right: Affine, left: Affine) -> Option<Affine> {
    if right.parity() != left.parity() {
        return None;
    }
    Some(if left.parity() == 0 { right.after(left) } else { right.after(B).after(left) })
}

/// Value of a well-formed `z2` cell in the model.
pub fn d4(e: &CellExpr) -> Affine {
    match e {
        CellExpr::Gen(n) | CellExpr::FId(n) if n == "1" => ONE,
        CellExpr::Gen(n) if n == "-1" => A,
        CellExpr::FId(n) if n == "-1" => B,
        CellExpr::VComp(u, l) => vcomp(d4(u), d4(l)),
        CellExpr::HComp(r, l) => hcomp(d4(r), d4(l)).expect("well-formed horizontal composite"),
        other => panic!("not a z2 leaf: {other}"),
    }
}

pub fn a() -> CellExpr {
    CellExpr::gen("-1")
}

pub fn b() -> CellExpr {
    CellExpr::fid("-1")
}

/// Vertical word, read top to bottom.
pub fn word(letters: &str) -> CellExpr {
    CellExpr::v_chain(letters.chars().map(|ch| match ch {
        'a' => a(),
        'b' => b(),
        _ => panic!("letter {ch}"),
    }))
    .expect("nonempty word")
}

/// Alternating words of length 1 to 4: a, b, ab, ba, aba, bab, abab, baba.
pub fn alternating_words() -> Vec<String> {
    let mut out = Vec::new();
    for len in 1..=4 {
        for first in ['a', 'b'] {
            let w: String = (0..len).map(|i| if (i % 2 == 0) == (first == 'a') { 'a' } else { 'b' }).collect();
            out.push(w);
        }
    }
    out
}
