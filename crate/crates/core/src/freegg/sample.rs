use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::expr::CellExpr;
use super::frame_at;
use super::tables::{Frame, Tables};
use crate::error::Result;
use crate::presentation::Presentation;

/// Seeded generator of random well-formed expressions.
///
/// Keeps a pool of expressions, starting from the leaves, and grows it by
/// composing random pool members that fit together.
pub struct Sampler {
    tables: Tables,
    pool: Vec<(CellExpr, Frame, usize)>,
    max_size: usize,
    rng: ChaCha8Rng,
}

const POOL_LIMIT: usize = 4000;

impl Sampler {
    pub fn new(p: &Presentation, seed: u64, max_size: usize) -> Result<Self> {
        let tables = Tables::compile(p)?;
        let mut pool = Vec::new();
        for n in tables.cells.names.clone() {
            let e = CellExpr::Gen(n);
            let f = frame_at(&tables, &e, "root")?;
            pool.push((e, f, 1));
        }
        for n in tables.vert.names.clone() {
            let e = CellExpr::FId(n);
            let f = frame_at(&tables, &e, "root")?;
            pool.push((e, f, 1));
        }
        Ok(Sampler { tables, pool, max_size: max_size.max(1), rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    /// A random expression with at most `max_size` leaves.
    pub fn next_expr(&mut self) -> CellExpr {
        for _ in 0..64 {
            if let Some((e, _)) = self.grow() {
                return e;
            }
        }
        self.pool.choose(&mut self.rng).expect("nonempty pool").0.clone()
    }

    /// A random expression with the given frame, if one turns up.
    pub(crate) fn with_frame(&mut self, want: impl Fn(Frame) -> bool, tries: usize) -> Option<(CellExpr, Frame)> {
        let hits: Vec<usize> = (0..self.pool.len()).filter(|&i| want(self.pool[i].1)).collect();
        if !hits.is_empty() && self.rng.random_bool(0.5) {
            let i = *hits.choose(&mut self.rng).expect("nonempty");
            return Some((self.pool[i].0.clone(), self.pool[i].1));
        }
        for _ in 0..tries {
            if let Some((e, f)) = self.grow() {
                if want(f) {
                    return Some((e, f));
                }
            }
        }
        let i = *hits.choose(&mut self.rng)?;
        Some((self.pool[i].0.clone(), self.pool[i].1))
    }

    pub(crate) fn frame_of(&self, e: &CellExpr) -> Result<Frame> {
        frame_at(&self.tables, e, "root")
    }

    fn grow(&mut self) -> Option<(CellExpr, Frame)> {
        let i = self.rng.random_range(0..self.pool.len());
        let (x, fx, sx) = self.pool[i].clone();
        if sx >= self.max_size {
            return None;
        }
        let vertical = self.rng.random_bool(0.5);
        let x_first = self.rng.random_bool(0.5);
        let fits: Vec<usize> = (0..self.pool.len())
            .filter(|&j| {
                let (_, fy, sy) = &self.pool[j];
                if sx + sy > self.max_size {
                    return false;
                }
                let (a, b) = if x_first { (fx, *fy) } else { (*fy, fx) };
                if vertical { self.tables.v_frame(a, b).is_some() } else { self.tables.h_frame(a, b).is_some() }
            })
            .collect();
        let j = *fits.choose(&mut self.rng)?;
        let (y, fy, sy) = self.pool[j].clone();
        let ((a, fa), (b, fb)) = if x_first { ((x, fx), (y, fy)) } else { ((y, fy), (x, fx)) };
        let (e, f) = if vertical {
            (CellExpr::v(a, b), self.tables.v_frame(fa, fb)?)
        } else {
            (CellExpr::h(a, b), self.tables.h_frame(fa, fb)?)
        };
        if self.pool.len() < POOL_LIMIT {
            self.pool.push((e.clone(), f, sx + sy));
        } else {
            // overwrite a composite, keeping the leaves available
            let leaves = self.tables.cells.len() + self.tables.vert.len();
            let k = self.rng.random_range(leaves..self.pool.len());
            self.pool[k] = (e.clone(), f, sx + sy);
        }
        Some((e, f))
    }
}
