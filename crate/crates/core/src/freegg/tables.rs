//! Index-based view of a presentation used by the engine.

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::presentation::{FinCategory, Mode, Presentation};

/// The four sides of a cell, as table indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frame {
    pub d: u32,
    pub c: u32,
    pub s: u32,
    pub t: u32,
}

pub(crate) struct Cat {
    pub names: Vec<String>,
    pub index: FxHashMap<String, u32>,
    pub dom: Vec<u32>,
    pub cod: Vec<u32>,
    pub ident: Vec<u32>,
    pub is_ident: Vec<bool>,
    comp: Vec<u32>,
    /// For each morphism, the pairs `(g, f)` with `g∘f` equal to it.
    pub factors: Vec<Vec<(u32, u32)>>,
}

const NONE: u32 = u32::MAX;

impl Cat {
    fn build(c: &FinCategory, objects: &FxHashMap<String, u32>, what: &str) -> Result<Cat> {
        let n = c.morphisms.len();
        let mut index = FxHashMap::default();
        let mut names = Vec::with_capacity(n);
        let (mut dom, mut cod) = (Vec::with_capacity(n), Vec::with_capacity(n));
        for (i, m) in c.morphisms.iter().enumerate() {
            index.insert(m.name.clone(), i as u32);
            names.push(m.name.clone());
            dom.push(*objects.get(&m.dom).ok_or_else(|| Error::unknown("object", &m.dom))?);
            cod.push(*objects.get(&m.cod).ok_or_else(|| Error::unknown("object", &m.cod))?);
        }
        let mut ident = vec![NONE; objects.len()];
        let mut is_ident = vec![false; n];
        for (o, i) in &c.identities {
            let oi = *objects.get(o).ok_or_else(|| Error::unknown("object", o))?;
            let ii = *index.get(i).ok_or_else(|| Error::unknown(what, i))?;
            ident[oi as usize] = ii;
            is_ident[ii as usize] = true;
        }
        if let Some(pos) = ident.iter().position(|&i| i == NONE) {
            return Err(Error::MissingEntry(format!("{what}: identity of object #{pos}")));
        }
        let mut comp = vec![NONE; n * n];
        let mut factors = vec![Vec::new(); n];
        for [g, f, r] in &c.compose {
            let look = |x: &String| index.get(x).copied().ok_or_else(|| Error::unknown(what, x));
            let (g, f, r) = (look(g)?, look(f)?, look(r)?);
            comp[g as usize * n + f as usize] = r;
            factors[r as usize].push((g, f));
        }
        Ok(Cat { names, index, dom, cod, ident, is_ident, comp, factors })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// `g∘f`; panics on a table gap, which validation rules out.
    pub fn comp(&self, g: u32, f: u32) -> u32 {
        let r = self.comp[g as usize * self.len() + f as usize];
        assert!(r != NONE, "missing composite ({})∘({})", self.names[g as usize], self.names[f as usize]);
        r
    }

    pub fn try_comp(&self, g: u32, f: u32) -> Option<u32> {
        if self.cod[f as usize] != self.dom[g as usize] {
            return None;
        }
        let r = self.comp[g as usize * self.len() + f as usize];
        (r != NONE).then_some(r)
    }

    pub fn lookup(&self, name: &str, what: &str) -> Result<u32> {
        self.index.get(name).copied().ok_or_else(|| Error::unknown(what, name))
    }
}

pub(crate) struct Coh {
    pub lam: Vec<(u32, u32)>,
    pub rho: Vec<(u32, u32)>,
    pub assoc: FxHashMap<(u32, u32, u32), (u32, u32)>,
}

pub(crate) struct Tables {
    pub objects: Vec<String>,
    pub vert: Cat,
    pub one: Cat,
    /// 2-cells under vertical composition; its objects are the 1-cells.
    pub cells: Cat,
    hcomp: FxHashMap<(u32, u32), u32>,
    pub hfactors: Vec<Vec<(u32, u32)>>,
    pub strict: bool,
    pub coh: Option<Coh>,
}

impl Tables {
    pub fn compile(p: &Presentation) -> Result<Tables> {
        let objects: FxHashMap<String, u32> = p.objects.iter().enumerate().map(|(i, o)| (o.clone(), i as u32)).collect();
        let vert = Cat::build(&p.decoration, &objects, "vertical morphism")?;
        let one = Cat::build(&p.horizontal, &objects, "1-cell")?;
        let one_ix: FxHashMap<String, u32> = one.index.clone();
        let glob = FinCategory {
            objects: p.horizontal.morphisms.iter().map(|m| m.name.clone()).collect(),
            morphisms: p.globular.cells.clone(),
            identities: p.globular.identities.clone(),
            compose: p.globular.vcompose.clone(),
        };
        let cells = Cat::build(&glob, &one_ix, "2-cell")?;
        let mut hcomp = FxHashMap::default();
        let mut hfactors = vec![Vec::new(); cells.len()];
        for [r, l, x] in &p.globular.hcompose {
            let (r, l, x) = (cells.lookup(r, "2-cell")?, cells.lookup(l, "2-cell")?, cells.lookup(x, "2-cell")?);
            hcomp.insert((r, l), x);
            hfactors[x as usize].push((r, l));
        }
        let coh = match (p.mode, &p.coherence) {
            (Mode::Weak, Some(c)) => {
                let pair = |cc: &crate::presentation::CoherenceCell| -> Result<(u32, u32)> {
                    Ok((cells.lookup(&cc.cell, "2-cell")?, cells.lookup(&cc.inverse, "2-cell")?))
                };
                let mut lam = vec![(NONE, NONE); one.len()];
                let mut rho = vec![(NONE, NONE); one.len()];
                for (f, cc) in &c.left_unitors {
                    lam[one.lookup(f, "1-cell")? as usize] = pair(cc)?;
                }
                for (f, cc) in &c.right_unitors {
                    rho[one.lookup(f, "1-cell")? as usize] = pair(cc)?;
                }
                if lam.iter().chain(rho.iter()).any(|x| x.0 == NONE) {
                    return Err(Error::MissingEntry("unitor component".into()));
                }
                let mut assoc = FxHashMap::default();
                for a in &c.associators {
                    let k = (one.lookup(&a.cells1[0], "1-cell")?, one.lookup(&a.cells1[1], "1-cell")?, one.lookup(&a.cells1[2], "1-cell")?);
                    assoc.insert(k, (cells.lookup(&a.cell, "2-cell")?, cells.lookup(&a.inverse, "2-cell")?));
                }
                Some(Coh { lam, rho, assoc })
            }
            (Mode::Weak, None) => return Err(Error::MissingEntry("weak mode requires coherence tables".into())),
            _ => None,
        };
        Ok(Tables { objects: p.objects.clone(), vert, one, cells, hcomp, hfactors, strict: p.mode == Mode::Strict, coh })
    }

    pub fn hcomp(&self, right: u32, left: u32) -> u32 {
        *self.hcomp.get(&(right, left)).unwrap_or_else(|| {
            panic!("missing horizontal composite ({})∗({})", self.cells.names[right as usize], self.cells.names[left as usize])
        })
    }

    /// Frame of a globular generator.
    pub fn gen_frame(&self, g: u32) -> Frame {
        let d = self.cells.dom[g as usize];
        let c = self.cells.cod[g as usize];
        let a = self.one.dom[d as usize];
        let b = self.one.cod[d as usize];
        Frame { d, c, s: self.vert.ident[a as usize], t: self.vert.ident[b as usize] }
    }

    /// Frame of a formal horizontal identity.
    pub fn fid_frame(&self, alpha: u32) -> Frame {
        let x = self.vert.dom[alpha as usize];
        let y = self.vert.cod[alpha as usize];
        Frame { d: self.one.ident[x as usize], c: self.one.ident[y as usize], s: alpha, t: alpha }
    }

    /// Frame of `upper • lower`, if defined.
    pub fn v_frame(&self, upper: Frame, lower: Frame) -> Option<Frame> {
        if upper.d != lower.c {
            return None;
        }
        Some(Frame { d: lower.d, c: upper.c, s: self.vert.try_comp(upper.s, lower.s)?, t: self.vert.try_comp(upper.t, lower.t)? })
    }

    /// Frame of `right ∗ left`, if defined.
    pub fn h_frame(&self, right: Frame, left: Frame) -> Option<Frame> {
        if left.t != right.s {
            return None;
        }
        Some(Frame { d: self.one.try_comp(right.d, left.d)?, c: self.one.try_comp(right.c, left.c)?, s: left.s, t: right.t })
    }

    /// The 2-cell `1_f` for a 1-cell `f`.
    pub fn id2(&self, f: u32) -> u32 {
        self.cells.ident[f as usize]
    }

    /// `1_{id_x}`, the unit for both compositions at object `x`.
    pub fn unit_at(&self, x: u32) -> u32 {
        self.id2(self.one.ident[x as usize])
    }

    pub fn frame_names(&self, f: Frame) -> [String; 4] {
        [
            self.one.names[f.d as usize].clone(),
            self.one.names[f.c as usize].clone(),
            self.vert.names[f.s as usize].clone(),
            self.vert.names[f.t as usize].clone(),
        ]
    }
}
