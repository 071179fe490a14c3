//! Hash-consed cell terms in flattened form.
//!
//! Vertical and horizontal chains are stored as n-ary nodes, so associativity
//! of both compositions is structural. The smart constructors `mk_v` and
//! `mk_h` apply the oriented rules on the fly: merging adjacent generators
//! through the composition tables, merging adjacent formal identities,
//! dropping units, and (when enabled) the Eckmann–Hilton rewrite of a
//! horizontal chain whose junction is an identity wire.

use rustc_hash::FxHashMap;

use super::expr::CellExpr;
use super::tables::{Frame, Tables};
use crate::error::{Error, Result};

pub(crate) type TermId = u32;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Node {
    Gen(u32),
    FId(u32),
    /// Top item first.
    V(Box<[TermId]>),
    /// Rightmost item first.
    H(Box<[TermId]>),
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Info {
    pub frame: Frame,
    pub size: u32,
    pub level: u16,
    pub elevel: u16,
}

pub(crate) struct Store {
    pub tables: Tables,
    /// Rewrite `X ∗ Y` to a vertical composite when the wire between them is
    /// an identity and the outer 1-cells allow it.
    pub eh: bool,
    nodes: Vec<Node>,
    infos: Vec<Info>,
    index: FxHashMap<Node, TermId>,
    vmemo: FxHashMap<Box<[TermId]>, TermId>,
    hmemo: FxHashMap<Box<[TermId]>, TermId>,
    hunit_cell: Vec<bool>,
}

impl Store {
    pub fn new(tables: Tables, eh: bool) -> Self {
        let mut hunit_cell = vec![false; tables.cells.len()];
        for x in 0..tables.objects.len() {
            hunit_cell[tables.unit_at(x as u32) as usize] = true;
        }
        Store {
            eh: eh && tables.strict,
            tables,
            nodes: Vec::new(),
            infos: Vec::new(),
            index: FxHashMap::default(),
            vmemo: FxHashMap::default(),
            hmemo: FxHashMap::default(),
            hunit_cell,
        }
    }

    pub fn node(&self, id: TermId) -> &Node {
        &self.nodes[id as usize]
    }

    pub fn frame(&self, id: TermId) -> Frame {
        self.infos[id as usize].frame
    }

    pub fn size(&self, id: TermId) -> u32 {
        self.infos[id as usize].size
    }

    fn intern(&mut self, node: Node, info: Info) -> TermId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len() as TermId;
        self.nodes.push(node.clone());
        self.infos.push(info);
        self.index.insert(node, id);
        id
    }

    pub fn gen(&mut self, g: u32) -> TermId {
        let frame = self.tables.gen_frame(g);
        self.intern(Node::Gen(g), Info { frame, size: 1, level: 1, elevel: 1 })
    }

    /// `i[α]`, or the unit `1_{id_x}` when `α` is an identity.
    pub fn fid(&mut self, alpha: u32) -> TermId {
        if self.tables.vert.is_ident[alpha as usize] {
            let x = self.tables.vert.dom[alpha as usize];
            let u = self.tables.unit_at(x);
            return self.gen(u);
        }
        let frame = self.tables.fid_frame(alpha);
        self.intern(Node::FId(alpha), Info { frame, size: 1, level: 1, elevel: 1 })
    }

    /// The vertical unit on a 1-cell.
    pub fn vunit(&mut self, f: u32) -> TermId {
        let g = self.tables.id2(f);
        self.gen(g)
    }

    pub fn is_vunit(&self, id: TermId) -> bool {
        matches!(self.nodes[id as usize], Node::Gen(g) if self.tables.cells.is_ident[g as usize])
    }

    pub fn is_hunit(&self, id: TermId) -> bool {
        match self.nodes[id as usize] {
            Node::FId(_) => self.tables.strict,
            Node::Gen(g) => self.tables.strict && self.hunit_cell[g as usize],
            _ => false,
        }
    }

    fn chain_v_frame(&self, items: &[TermId]) -> Frame {
        let mut acc = self.frame(items[0]);
        for &x in &items[1..] {
            acc = self.tables.v_frame(acc, self.frame(x)).expect("vertically composable items");
        }
        acc
    }

    fn chain_h_frame(&self, items: &[TermId]) -> Frame {
        let mut acc = self.frame(items[0]);
        for &x in &items[1..] {
            acc = self.tables.h_frame(acc, self.frame(x)).expect("horizontally composable items");
        }
        acc
    }

    fn push_v(&mut self, stack: &mut Vec<TermId>, x: TermId) {
        if self.is_vunit(x) {
            return;
        }
        if let Some(&top) = stack.last() {
            match (&self.nodes[top as usize], &self.nodes[x as usize]) {
                (Node::Gen(a), Node::Gen(b)) => {
                    let r = self.tables.cells.comp(*a, *b);
                    stack.pop();
                    let r = self.gen(r);
                    if !self.is_vunit(r) {
                        stack.push(r);
                    }
                    return;
                }
                (Node::FId(b), Node::FId(a)) => {
                    let r = self.tables.vert.comp(*b, *a);
                    stack.pop();
                    let r = self.fid(r);
                    if !self.is_vunit(r) {
                        stack.push(r);
                    }
                    return;
                }
                _ => {}
            }
        }
        stack.push(x);
    }

    /// Vertical composite of `items`, top first.
    pub fn mk_v(&mut self, items: &[TermId]) -> TermId {
        if items.len() == 1 {
            return items[0];
        }
        if let Some(&r) = self.vmemo.get(items) {
            return r;
        }
        let frame = self.chain_v_frame(items);
        let mut stack = Vec::with_capacity(items.len() + 4);
        for &it in items {
            if let Node::V(sub) = &self.nodes[it as usize] {
                let sub = sub.clone();
                for &x in sub.iter() {
                    self.push_v(&mut stack, x);
                }
            } else {
                self.push_v(&mut stack, it);
            }
        }
        let r = match stack.len() {
            0 => self.vunit(frame.d),
            1 => stack[0],
            _ => {
                let level = stack.iter().map(|&x| self.infos[x as usize].level).max().unwrap_or(1);
                let size = stack.iter().map(|&x| self.infos[x as usize].size).sum();
                self.intern(Node::V(stack.into_boxed_slice()), Info { frame, size, level, elevel: level + 1 })
            }
        };
        self.vmemo.insert(items.into(), r);
        r
    }

    fn push_h(&mut self, stack: &mut Vec<TermId>, x: TermId) {
        if self.is_hunit(x) {
            return;
        }
        if let Some(&top) = stack.last() {
            if let (Node::Gen(a), Node::Gen(b)) = (&self.nodes[top as usize], &self.nodes[x as usize]) {
                let r = self.tables.hcomp(*a, *b);
                stack.pop();
                let r = self.gen(r);
                if !self.is_hunit(r) {
                    stack.push(r);
                }
                return;
            }
        }
        stack.push(x);
    }

    /// Horizontal composite of `items`, rightmost first.
    pub fn mk_h(&mut self, items: &[TermId]) -> TermId {
        if items.len() == 1 {
            return items[0];
        }
        if let Some(&r) = self.hmemo.get(items) {
            return r;
        }
        let frame = self.chain_h_frame(items);
        let r = if self.tables.strict { self.mk_h_strict(items, frame) } else { self.mk_h_weak(items, frame) };
        self.hmemo.insert(items.into(), r);
        r
    }

    fn mk_h_strict(&mut self, items: &[TermId], frame: Frame) -> TermId {
        let mut stack = Vec::with_capacity(items.len() + 4);
        for &it in items {
            if let Node::H(sub) = &self.nodes[it as usize] {
                let sub = sub.clone();
                for &x in sub.iter() {
                    self.push_h(&mut stack, x);
                }
            } else {
                self.push_h(&mut stack, it);
            }
        }
        match stack.len() {
            0 => return self.fid(frame.s),
            1 => return stack[0],
            _ => {}
        }
        if self.eh {
            if let Some(r) = self.eckmann_hilton(&stack) {
                return r;
            }
        }
        let elevel = stack.iter().map(|&x| self.infos[x as usize].elevel).max().unwrap_or(1);
        let size = stack.iter().map(|&x| self.infos[x as usize].size).sum();
        self.intern(Node::H(stack.into_boxed_slice()), Info { frame, size, level: elevel, elevel })
    }

    fn eckmann_hilton(&mut self, z: &[TermId]) -> Option<TermId> {
        let m = z.len();
        let mut prefix = Vec::with_capacity(m);
        let mut acc = self.frame(z[0]);
        prefix.push(acc);
        for &x in &z[1..] {
            acc = self.tables.h_frame(acc, self.frame(x))?;
            prefix.push(acc);
        }
        let mut suffix = vec![self.frame(z[m - 1]); m];
        for p in (0..m - 1).rev() {
            suffix[p] = self.tables.h_frame(self.frame(z[p]), suffix[p + 1])?;
        }
        let t = &self.tables;
        for p in 1..m {
            let (x, y) = (prefix[p - 1], suffix[p]);
            if !t.vert.is_ident[y.t as usize] {
                continue;
            }
            if t.one.is_ident[x.d as usize] && t.one.is_ident[y.c as usize] {
                let (a, b) = (self.mk_h(&z[..p]), self.mk_h(&z[p..]));
                return Some(self.mk_v(&[a, b]));
            }
            if t.one.is_ident[y.d as usize] && t.one.is_ident[x.c as usize] {
                let (a, b) = (self.mk_h(&z[..p]), self.mk_h(&z[p..]));
                return Some(self.mk_v(&[b, a]));
            }
        }
        None
    }

    fn mk_h_weak(&mut self, items: &[TermId], frame: Frame) -> TermId {
        if items.len() > 2 {
            let mut acc = items[0];
            for &x in &items[1..] {
                acc = self.mk_h(&[acc, x]);
            }
            return acc;
        }
        let (a, b) = (items[0], items[1]);
        if let (Node::Gen(x), Node::Gen(y)) = (&self.nodes[a as usize], &self.nodes[b as usize]) {
            let r = self.tables.hcomp(*x, *y);
            return self.gen(r);
        }
        let elevel = self.infos[a as usize].elevel.max(self.infos[b as usize].elevel);
        let size = self.infos[a as usize].size + self.infos[b as usize].size;
        self.intern(Node::H(Box::new([a, b])), Info { frame, size, level: elevel, elevel })
    }

    /// Interns an expression, checking well-formedness.
    pub fn add_expr(&mut self, e: &CellExpr) -> Result<TermId> {
        self.add_expr_at(e, "root")
    }

    fn add_expr_at(&mut self, e: &CellExpr, path: &str) -> Result<TermId> {
        match e {
            CellExpr::Gen(n) => {
                let g = self.tables.cells.lookup(n, "2-cell")?;
                Ok(self.gen(g))
            }
            CellExpr::FId(n) => {
                let a = self.tables.vert.lookup(n, "vertical morphism")?;
                Ok(self.fid(a))
            }
            CellExpr::VComp(u, l) => {
                let u = self.add_expr_at(u, &format!("{path}.upper"))?;
                let l = self.add_expr_at(l, &format!("{path}.lower"))?;
                if self.tables.v_frame(self.frame(u), self.frame(l)).is_none() {
                    return Err(Error::compat(path, "lower codomain 1-cell differs from upper domain 1-cell"));
                }
                Ok(self.mk_v(&[u, l]))
            }
            CellExpr::HComp(r, l) => {
                let r = self.add_expr_at(r, &format!("{path}.right"))?;
                let l = self.add_expr_at(l, &format!("{path}.left"))?;
                if self.tables.h_frame(self.frame(r), self.frame(l)).is_none() {
                    return Err(Error::compat(path, "target of the left factor differs from source of the right factor"));
                }
                Ok(self.mk_h(&[r, l]))
            }
        }
    }

    /// Left-nested expression for a term.
    pub fn to_expr(&self, id: TermId) -> CellExpr {
        match &self.nodes[id as usize] {
            Node::Gen(g) => CellExpr::Gen(self.tables.cells.names[*g as usize].clone()),
            Node::FId(a) => CellExpr::FId(self.tables.vert.names[*a as usize].clone()),
            Node::V(items) => CellExpr::v_chain(items.iter().map(|&x| self.to_expr(x))).expect("nonempty chain"),
            Node::H(items) => CellExpr::h_chain(items.iter().map(|&x| self.to_expr(x))).expect("nonempty chain"),
        }
    }

    pub fn show(&self, id: TermId) -> String {
        self.to_expr(id).to_string()
    }
}
