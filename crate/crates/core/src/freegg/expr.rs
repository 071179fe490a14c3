use std::fmt;

/// A cell expression over globular generators and formal horizontal
/// identities.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellExpr {
    /// A globular 2-cell of the presentation.
    Gen(String),
    /// The formal horizontal identity `i[α]` of a vertical morphism.
    FId(String),
    /// `upper • lower`.
    VComp(Box<CellExpr>, Box<CellExpr>),
    /// `right ∗ left`.
    HComp(Box<CellExpr>, Box<CellExpr>),
}

impl CellExpr {
    pub fn gen(name: &str) -> Self {
        CellExpr::Gen(name.to_string())
    }

    pub fn fid(name: &str) -> Self {
        CellExpr::FId(name.to_string())
    }

    pub fn v(upper: CellExpr, lower: CellExpr) -> Self {
        CellExpr::VComp(Box::new(upper), Box::new(lower))
    }

    pub fn h(right: CellExpr, left: CellExpr) -> Self {
        CellExpr::HComp(Box::new(right), Box::new(left))
    }

    /// Left-nested vertical chain, first item on top.
    pub fn v_chain(items: impl IntoIterator<Item = CellExpr>) -> Option<Self> {
        items.into_iter().reduce(CellExpr::v)
    }

    /// Left-nested horizontal chain, first item rightmost.
    pub fn h_chain(items: impl IntoIterator<Item = CellExpr>) -> Option<Self> {
        items.into_iter().reduce(CellExpr::h)
    }

    /// Number of leaves.
    pub fn size(&self) -> usize {
        match self {
            CellExpr::Gen(_) | CellExpr::FId(_) => 1,
            CellExpr::VComp(a, b) | CellExpr::HComp(a, b) => a.size() + b.size(),
        }
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, CellExpr::Gen(_) | CellExpr::FId(_))
    }

    /// Rebuilds the tree with leaves replaced by `f`.
    pub fn map_leaves<E>(&self, f: &mut impl FnMut(&CellExpr) -> Result<CellExpr, E>) -> Result<CellExpr, E> {
        Ok(match self {
            CellExpr::Gen(_) | CellExpr::FId(_) => f(self)?,
            CellExpr::VComp(a, b) => CellExpr::v(a.map_leaves(f)?, b.map_leaves(f)?),
            CellExpr::HComp(a, b) => CellExpr::h(a.map_leaves(f)?, b.map_leaves(f)?),
        })
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, prec: u8) -> fmt::Result {
        // prec 0: vchain position, 1: hchain position, 2: atom position
        match self {
            CellExpr::Gen(n) => write!(f, "{n}"),
            CellExpr::FId(n) => write!(f, "i[{n}]"),
            CellExpr::VComp(a, b) => {
                if prec > 0 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 0)?;
                write!(f, " . ")?;
                b.fmt_prec(f, 1)?;
                if prec > 0 {
                    write!(f, ")")?;
                }
                Ok(())
            }
            CellExpr::HComp(a, b) => {
                if prec > 1 {
                    write!(f, "(")?;
                }
                a.fmt_prec(f, 1)?;
                write!(f, " * ")?;
                b.fmt_prec(f, 2)?;
                if prec > 1 {
                    write!(f, ")")?;
                }
                Ok(())
            }
        }
    }
}

/// Prints in the concrete grammar with the fewest parentheses that reparse
/// to the same tree.
impl fmt::Display for CellExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, 0)
    }
}
