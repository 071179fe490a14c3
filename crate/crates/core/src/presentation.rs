//! Finite presentations of decorated bicategories and exhaustive validation
//! of their axioms.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::ValidationReport;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Morphism {
    pub name: String,
    pub dom: String,
    pub cod: String,
}

impl Morphism {
    pub fn new(name: &str, dom: &str, cod: &str) -> Self {
        Morphism { name: name.into(), dom: dom.into(), cod: cod.into() }
    }
}

/// An explicit finite category. `compose` holds triples `[g, f, g∘f]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<Morphism>,
    pub identities: BTreeMap<String, String>,
    pub compose: Vec<[String; 3]>,
}

impl FinCategory {
    pub fn morphism(&self, name: &str) -> Option<&Morphism> {
        self.morphisms.iter().find(|m| m.name == name)
    }

    pub fn identity(&self, object: &str) -> Option<&str> {
        self.identities.get(object).map(String::as_str)
    }

    pub fn is_identity(&self, name: &str) -> bool {
        self.identities.values().any(|i| i == name)
    }

    /// `g∘f`, if tabulated.
    pub fn compose(&self, g: &str, f: &str) -> Option<&str> {
        self.compose.iter().find(|e| e[0] == g && e[1] == f).map(|e| e[2].as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Strict,
    Weak,
}

/// Globular 2-cells between parallel 1-cells. `vcompose` holds
/// `[upper, lower, upper•lower]`, `hcompose` holds `[right, left, right∗left]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Globular {
    pub cells: Vec<Morphism>,
    pub identities: BTreeMap<String, String>,
    pub vcompose: Vec<[String; 3]>,
    pub hcompose: Vec<[String; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoherenceCell {
    pub cell: String,
    pub inverse: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssociatorCell {
    /// The 1-cells `[f, g, h]`, with `f` composed first.
    pub cells1: [String; 3],
    pub cell: String,
    pub inverse: String,
}

/// Coherence components for weak mode. With 1-cell composition tabulated
/// strictly, every component is an invertible endo-2-cell:
/// `left_unitors[f]` pairs `f` with `f ∗ id`, `right_unitors[f]` pairs `f` with
/// `id ∗ f`, and the associator of `(f, g, h)` pairs `h ∗ (g ∗ f)` with
/// `(h ∗ g) ∗ f`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coherence {
    #[serde(default)]
    pub left_unitors: BTreeMap<String, CoherenceCell>,
    #[serde(default)]
    pub right_unitors: BTreeMap<String, CoherenceCell>,
    #[serde(default)]
    pub associators: Vec<AssociatorCell>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub objects: Vec<String>,
    pub decoration: FinCategory,
    pub horizontal: FinCategory,
    pub globular: Globular,
    pub mode: Mode,
    pub coherence: Option<Coherence>,
}

// ---------------------------------------------------------------------------
// JSON layout

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CategoryBlock {
    morphisms: Vec<Morphism>,
    identities: BTreeMap<String, String>,
    compose: Vec<[String; 3]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GlobularBlock {
    morphisms: Vec<Morphism>,
    identities: BTreeMap<String, String>,
    compose: Vec<[String; 3]>,
    hcompose: Vec<[String; 3]>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct PresentationFile {
    objects: Vec<String>,
    decoration: CategoryBlock,
    horizontal: CategoryBlock,
    globular: GlobularBlock,
    mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coherence: Option<Coherence>,
}

impl From<PresentationFile> for Presentation {
    fn from(f: PresentationFile) -> Self {
        let cat = |b: CategoryBlock| FinCategory {
            objects: f.objects.clone(),
            morphisms: b.morphisms,
            identities: b.identities,
            compose: b.compose,
        };
        Presentation {
            objects: f.objects.clone(),
            decoration: cat(f.decoration),
            horizontal: cat(f.horizontal),
            globular: Globular {
                cells: f.globular.morphisms,
                identities: f.globular.identities,
                vcompose: f.globular.compose,
                hcompose: f.globular.hcompose,
            },
            mode: f.mode,
            coherence: f.coherence,
        }
    }
}

impl From<&Presentation> for PresentationFile {
    fn from(p: &Presentation) -> Self {
        let block = |c: &FinCategory| CategoryBlock {
            morphisms: c.morphisms.clone(),
            identities: c.identities.clone(),
            compose: c.compose.clone(),
        };
        PresentationFile {
            objects: p.objects.clone(),
            decoration: block(&p.decoration),
            horizontal: block(&p.horizontal),
            globular: GlobularBlock {
                morphisms: p.globular.cells.clone(),
                identities: p.globular.identities.clone(),
                compose: p.globular.vcompose.clone(),
                hcompose: p.globular.hcompose.clone(),
            },
            mode: p.mode,
            coherence: p.coherence.clone(),
        }
    }
}

impl Serialize for Presentation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PresentationFile::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Presentation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        PresentationFile::deserialize(d).map(Presentation::from)
    }
}

impl Presentation {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Pretty JSON with a trailing newline; the corpus files use this layout.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("presentation serializes");
        s.push('\n');
        s
    }

    pub fn cell(&self, name: &str) -> Option<&Morphism> {
        self.globular.cells.iter().find(|m| m.name == name)
    }

    pub fn identity2(&self, one_cell: &str) -> Option<&str> {
        self.globular.identities.get(one_cell).map(String::as_str)
    }

    pub fn vcompose(&self, upper: &str, lower: &str) -> Option<&str> {
        self.globular.vcompose.iter().find(|e| e[0] == upper && e[1] == lower).map(|e| e[2].as_str())
    }

    pub fn hcompose(&self, right: &str, left: &str) -> Option<&str> {
        self.globular.hcompose.iter().find(|e| e[0] == right && e[1] == left).map(|e| e[2].as_str())
    }
}

// ---------------------------------------------------------------------------
// Validation

/// Name-indexed view of a category used while checking laws.
struct CatIndex<'a> {
    morph: HashMap<&'a str, (&'a str, &'a str)>,
    comp: HashMap<(&'a str, &'a str), &'a str>,
    ident: HashMap<&'a str, &'a str>,
    order: Vec<&'a str>,
}

fn index_category<'a>(
    table: &str,
    objects: &'a [String],
    morphisms: &'a [Morphism],
    identities: &'a BTreeMap<String, String>,
    compose: &'a [[String; 3]],
    report: &mut ValidationReport,
) -> Result<CatIndex<'a>> {
    let objs: HashSet<&str> = objects.iter().map(String::as_str).collect();
    let mut morph = HashMap::new();
    let mut order = Vec::new();
    for m in morphisms {
        for o in [&m.dom, &m.cod] {
            if !objs.contains(o.as_str()) {
                return Err(Error::unknown("object", o));
            }
        }
        if morph.insert(m.name.as_str(), (m.dom.as_str(), m.cod.as_str())).is_some() {
            return Err(Error::NameClash { table: table.into(), name: m.name.clone() });
        }
        order.push(m.name.as_str());
    }
    let mut ident = HashMap::new();
    for (o, i) in identities {
        if !objs.contains(o.as_str()) {
            return Err(Error::unknown("object", o));
        }
        let Some(&(d, c)) = morph.get(i.as_str()) else {
            return Err(Error::unknown("morphism", i));
        };
        if d != o || c != o {
            report.push("identity", format!("{table}: identity `{i}` of `{o}` is not an endomorphism of `{o}`"));
        }
        ident.insert(o.as_str(), i.as_str());
    }
    for o in objects {
        if !ident.contains_key(o.as_str()) {
            return Err(Error::MissingEntry(format!("{table}: identity of object `{o}`")));
        }
    }
    let mut comp = HashMap::new();
    for [g, f, r] in compose {
        for n in [g, f, r] {
            if !morph.contains_key(n.as_str()) {
                return Err(Error::unknown("morphism", n));
            }
        }
        let (fd, fc) = morph[f.as_str()];
        let (gd, gc) = morph[g.as_str()];
        let (rd, rc) = morph[r.as_str()];
        if fc != gd {
            report.push("composition", format!("{table}: entry ({g})∘({f}) for a non-composable pair"));
            continue;
        }
        if rd != fd || rc != gc {
            report.push("composition", format!("{table}: ({g})∘({f}) = {r} has the wrong domain or codomain"));
        }
        if let Some(prev) = comp.insert((g.as_str(), f.as_str()), r.as_str()) {
            if prev != r {
                report.push("composition", format!("{table}: ({g})∘({f}) tabulated twice with different results"));
            }
        }
    }
    for g in &order {
        for f in &order {
            if morph[f].1 == morph[g].0 && !comp.contains_key(&(*g, *f)) {
                return Err(Error::MissingEntry(format!("{table}: composite ({g})∘({f})")));
            }
        }
    }
    Ok(CatIndex { morph, comp, ident, order })
}

fn check_category_laws(table: &str, ix: &CatIndex<'_>, report: &mut ValidationReport) {
    for &f in &ix.order {
        let (d, c) = ix.morph[f];
        let (id_d, id_c) = (ix.ident[d], ix.ident[c]);
        if ix.comp.get(&(f, id_d)) != Some(&f) || ix.comp.get(&(id_c, f)) != Some(&f) {
            report.push_witness("identity", format!("{table}: identities are not neutral for `{f}`"), f);
        }
    }
    for &f in &ix.order {
        for &g in &ix.order {
            if ix.morph[f].1 != ix.morph[g].0 {
                continue;
            }
            for &h in &ix.order {
                if ix.morph[g].1 != ix.morph[h].0 {
                    continue;
                }
                let gf = ix.comp.get(&(g, f));
                let hg = ix.comp.get(&(h, g));
                let (Some(&gf), Some(&hg)) = (gf, hg) else { continue };
                let left = ix.comp.get(&(hg, f));
                let right = ix.comp.get(&(h, gf));
                if left != right {
                    report.push_witness(
                        "associativity",
                        format!("{table}: associativity fails at (({h}),({g}),({f}))"),
                        format!("({h}),({g}),({f})"),
                    );
                }
            }
        }
    }
}

/// Checks the category laws exhaustively.
pub fn validate_category(c: &FinCategory) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let mut seen = HashSet::new();
    for o in &c.objects {
        if !seen.insert(o.as_str()) {
            return Err(Error::NameClash { table: "objects".into(), name: o.clone() });
        }
    }
    let ix = index_category("category", &c.objects, &c.morphisms, &c.identities, &c.compose, &mut report)?;
    check_category_laws("category", &ix, &mut report);
    Ok(report)
}

/// Checks every presentation axiom exhaustively over the finite tables.
pub fn validate_presentation(p: &Presentation) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let mut seen = HashSet::new();
    for o in &p.objects {
        if !seen.insert(o.as_str()) {
            return Err(Error::NameClash { table: "objects".into(), name: o.clone() });
        }
    }
    for (label, cat) in [("decoration", &p.decoration), ("horizontal", &p.horizontal)] {
        if cat.objects != p.objects {
            report.push("objects", format!("{label} category has a different object set"));
        }
    }
    let dec = index_category("decoration", &p.objects, &p.decoration.morphisms, &p.decoration.identities, &p.decoration.compose, &mut report)?;
    check_category_laws("decoration", &dec, &mut report);
    let hor = index_category("horizontal", &p.objects, &p.horizontal.morphisms, &p.horizontal.identities, &p.horizontal.compose, &mut report)?;
    check_category_laws("horizontal", &hor, &mut report);

    // Globular cells form a category whose objects are the 1-cells.
    let one_cells: Vec<String> = p.horizontal.morphisms.iter().map(|m| m.name.clone()).collect();
    let glob = index_category("globular", &one_cells, &p.globular.cells, &p.globular.identities, &p.globular.vcompose, &mut report)?;
    check_category_laws("globular", &glob, &mut report);
    for m in &p.globular.cells {
        if hor.morph[m.dom.as_str()] != hor.morph[m.cod.as_str()] {
            report.push("parallel", format!("2-cell `{}` joins non-parallel 1-cells", m.name));
        }
    }

    // Horizontal composition of 2-cells.
    let mut hcomp: HashMap<(&str, &str), &str> = HashMap::new();
    for [r, l, x] in &p.globular.hcompose {
        for n in [r, l, x] {
            if !glob.morph.contains_key(n.as_str()) {
                return Err(Error::unknown("2-cell", n));
            }
        }
        let (rd, rc) = glob.morph[r.as_str()];
        let (ld, lc) = glob.morph[l.as_str()];
        let (xd, xc) = glob.morph[x.as_str()];
        if hor.morph[ld].1 != hor.morph[rd].0 {
            report.push("hcompose", format!("entry ({r})∗({l}) for a non-composable pair"));
            continue;
        }
        if hor.comp.get(&(rd, ld)) != Some(&xd) || hor.comp.get(&(rc, lc)) != Some(&xc) {
            report.push("hcompose", format!("({r})∗({l}) = {x} has the wrong 1-cell boundary"));
        }
        if let Some(prev) = hcomp.insert((r.as_str(), l.as_str()), x.as_str()) {
            if prev != x {
                report.push("hcompose", format!("({r})∗({l}) tabulated twice with different results"));
            }
        }
    }
    let h_ok = |r: &str, l: &str| hor.morph[glob.morph[l].0].1 == hor.morph[glob.morph[r].0].0;
    for &r in &glob.order {
        for &l in &glob.order {
            if h_ok(r, l) && !hcomp.contains_key(&(r, l)) {
                return Err(Error::MissingEntry(format!("hcompose: ({r})∗({l})")));
            }
        }
    }

    // Functoriality of ∗ with respect to •: identities and interchange.
    for &f in &hor.order {
        for &g in &hor.order {
            if hor.morph[f].1 != hor.morph[g].0 {
                continue;
            }
            let gf = hor.comp[&(g, f)];
            if hcomp.get(&(glob.ident[g], glob.ident[f])) != Some(&glob.ident[gf]) {
                report.push("interchange", format!("1_{g} ∗ 1_{f} is not 1_({gf})"));
            }
        }
    }
    let cells = &glob.order;
    for &p2 in cells {
        for &p1 in cells {
            if !h_ok(p2, p1) {
                continue;
            }
            for &f2 in cells {
                if glob.morph[p2].0 != glob.morph[f2].1 {
                    continue;
                }
                for &f1 in cells {
                    if glob.morph[p1].0 != glob.morph[f1].1 {
                        continue;
                    }
                    let lhs = glob.comp.get(&(hcomp[&(p2, p1)], hcomp[&(f2, f1)]));
                    let rhs = hcomp.get(&(glob.comp[&(p2, f2)], glob.comp[&(p1, f1)]));
                    if lhs != rhs {
                        report.push_witness(
                            "interchange",
                            format!("({p2} ∗ {p1}) • ({f2} ∗ {f1}) differs from ({p2} • {f2}) ∗ ({p1} • {f1})"),
                            format!("{p2},{p1},{f2},{f1}"),
                        );
                    }
                }
            }
        }
    }

    match p.mode {
        Mode::Strict => check_strict(p, &hor, &glob, &hcomp, &mut report),
        Mode::Weak => check_weak(p, &hor, &glob, &hcomp, &mut report)?,
    }
    Ok(report)
}

type HComp<'a> = HashMap<(&'a str, &'a str), &'a str>;

fn check_strict(p: &Presentation, hor: &CatIndex<'_>, glob: &CatIndex<'_>, hcomp: &HComp<'_>, report: &mut ValidationReport) {
    let h_ok = |r: &str, l: &str| hor.morph[glob.morph[l].0].1 == hor.morph[glob.morph[r].0].0;
    for &x in &glob.order {
        let d = glob.morph[x].0;
        let (a, b) = hor.morph[d];
        let (ia, ib) = (glob.ident[hor.ident[a]], glob.ident[hor.ident[b]]);
        if hcomp.get(&(x, ia)) != Some(&x) || hcomp.get(&(ib, x)) != Some(&x) {
            report.push_witness("unit", format!("identity 2-cells of identity 1-cells are not ∗-neutral for `{x}`"), x);
        }
    }
    for &x in &glob.order {
        for &y in &glob.order {
            if !h_ok(y, x) {
                continue;
            }
            for &z in &glob.order {
                if !h_ok(z, y) {
                    continue;
                }
                if hcomp.get(&(hcomp[&(z, y)], x)) != hcomp.get(&(z, hcomp[&(y, x)])) {
                    report.push_witness("associativity", format!("∗ is not associative at ({z}, {y}, {x})"), format!("{z},{y},{x}"));
                }
            }
        }
    }
    if let Some(c) = &p.coherence {
        for (f, cell) in c.left_unitors.iter().chain(c.right_unitors.iter()) {
            let id = glob.ident.get(f.as_str()).copied();
            if id != Some(cell.cell.as_str()) || id != Some(cell.inverse.as_str()) {
                report.push("coherence", format!("strict mode requires identity unitors at `{f}`"));
            }
        }
        for a in &c.associators {
            let [f, g, h] = &a.cells1;
            let one = hor.comp.get(&(g.as_str(), f.as_str())).and_then(|gf| hor.comp.get(&(h.as_str(), *gf)));
            let id = one.and_then(|o| glob.ident.get(o)).copied();
            if id.is_none() || id != Some(a.cell.as_str()) || id != Some(a.inverse.as_str()) {
                report.push("coherence", format!("strict mode requires identity associators at {:?}", a.cells1));
            }
        }
    }
}

fn check_weak(p: &Presentation, hor: &CatIndex<'_>, glob: &CatIndex<'_>, hcomp: &HComp<'_>, report: &mut ValidationReport) -> Result<()> {
    let Some(coh) = &p.coherence else {
        return Err(Error::MissingEntry("weak mode requires coherence tables".into()));
    };
    let cell_on = |name: &str, f: &str, what: &str, report: &mut ValidationReport| -> Result<()> {
        let Some(&(d, c)) = glob.morph.get(name) else {
            return Err(Error::unknown("2-cell", name));
        };
        if d != f || c != f {
            report.push("coherence", format!("{what} `{name}` is not an endo-2-cell of `{f}`"));
        }
        Ok(())
    };
    let inverse_pair = |a: &str, b: &str, f: &str, report: &mut ValidationReport| {
        let id = glob.ident[f];
        if glob.comp.get(&(a, b)) != Some(&id) || glob.comp.get(&(b, a)) != Some(&id) {
            report.push("coherence", format!("`{a}` and `{b}` are not mutually inverse"));
        }
    };
    let mut lam = HashMap::new();
    let mut rho = HashMap::new();
    for (table, map, out) in [("left unitor", &coh.left_unitors, &mut lam), ("right unitor", &coh.right_unitors, &mut rho)] {
        for &f in &hor.order {
            let Some(cc) = map.get(f) else {
                return Err(Error::MissingEntry(format!("{table} for `{f}`")));
            };
            cell_on(&cc.cell, f, table, report)?;
            cell_on(&cc.inverse, f, table, report)?;
            if report.is_empty() {
                inverse_pair(&cc.cell, &cc.inverse, f, report);
            }
            out.insert(f, cc.cell.as_str());
        }
    }
    let mut assoc: HashMap<(&str, &str, &str), &str> = HashMap::new();
    for a in &coh.associators {
        let [f, g, h] = &a.cells1;
        for n in [f, g, h] {
            if !hor.morph.contains_key(n.as_str()) {
                return Err(Error::unknown("1-cell", n));
            }
        }
        let (Some(&gf), Some(&hg)) = (hor.comp.get(&(g.as_str(), f.as_str())), hor.comp.get(&(h.as_str(), g.as_str()))) else {
            report.push("coherence", format!("associator on non-composable 1-cells {:?}", a.cells1));
            continue;
        };
        let hgf = hor.comp[&(h.as_str(), gf)];
        debug_assert_eq!(Some(&hgf), hor.comp.get(&(hg, f.as_str())));
        cell_on(&a.cell, hgf, "associator", report)?;
        cell_on(&a.inverse, hgf, "associator", report)?;
        inverse_pair(&a.cell, &a.inverse, hgf, report);
        assoc.insert((f.as_str(), g.as_str(), h.as_str()), a.cell.as_str());
    }
    let composable = |f: &str, g: &str| hor.morph[f].1 == hor.morph[g].0;
    for &f in &hor.order {
        for &g in &hor.order {
            if !composable(f, g) {
                continue;
            }
            for &h in &hor.order {
                if composable(g, h) && !assoc.contains_key(&(f, g, h)) {
                    return Err(Error::MissingEntry(format!("associator for ({f}, {g}, {h})")));
                }
            }
        }
    }
    if !report.is_empty() {
        return Ok(());
    }
    let v = |a: &str, b: &str| glob.comp.get(&(a, b)).copied();
    let h = |a: &str, b: &str| hcomp.get(&(a, b)).copied();
    let id1 = |x: &str| hor.ident[x];
    let id2 = |f: &str| glob.ident[f];
    // Naturality of the unitors and associator.
    for &x in &glob.order {
        let (d, c) = glob.morph[x];
        let (a, b) = hor.morph[d];
        let l = h(x, id2(id1(a))).and_then(|xi| v(lam[c], xi));
        if l != v(x, lam[d]) {
            report.push_witness("naturality", format!("left unitor is not natural at `{x}`"), x);
        }
        let r = h(id2(id1(b)), x).and_then(|ix| v(rho[c], ix));
        if r != v(x, rho[d]) {
            report.push_witness("naturality", format!("right unitor is not natural at `{x}`"), x);
        }
    }
    let hok = |r: &str, l: &str| composable(glob.morph[l].0, glob.morph[r].0);
    for &x in &glob.order {
        for &y in &glob.order {
            if !hok(y, x) {
                continue;
            }
            for &z in &glob.order {
                if !hok(z, y) {
                    continue;
                }
                let (dx, cx) = glob.morph[x];
                let (dy, cy) = glob.morph[y];
                let (dz, cz) = glob.morph[z];
                let lhs = h(y, x).and_then(|yx| h(z, yx)).and_then(|zyx| v(assoc[&(cx, cy, cz)], zyx));
                let rhs = h(z, y).and_then(|zy| h(zy, x)).and_then(|zyx| v(zyx, assoc[&(dx, dy, dz)]));
                if lhs != rhs {
                    report.push_witness("naturality", format!("associator is not natural at ({z}, {y}, {x})"), format!("{z},{y},{x}"));
                }
            }
        }
    }
    // Triangle: (λ_g ∗ 1_f) • A_{f,id,g} = 1_g ∗ ρ_f.
    for &f in &hor.order {
        for &g in &hor.order {
            if !composable(f, g) {
                continue;
            }
            let mid = id1(hor.morph[f].1);
            let lhs = h(lam[g], id2(f)).and_then(|x| v(x, assoc[&(f, mid, g)]));
            let rhs = h(id2(g), rho[f]);
            if lhs != rhs {
                report.push_witness("triangle", format!("triangle identity fails at ({f}, {g})"), format!("{f},{g}"));
            }
        }
    }
    // Pentagon: A_{f,g,kh} • A_{gf,h,k} = (A_{g,h,k} ∗ 1_f) • A_{f,hg,k} • (1_k ∗ A_{f,g,h}).
    for &f in &hor.order {
        for &g in &hor.order {
            if !composable(f, g) {
                continue;
            }
            for &hh in &hor.order {
                if !composable(g, hh) {
                    continue;
                }
                for &k in &hor.order {
                    if !composable(hh, k) {
                        continue;
                    }
                    let gf = hor.comp[&(g, f)];
                    let kh = hor.comp[&(k, hh)];
                    let hg = hor.comp[&(hh, g)];
                    let lhs = v(assoc[&(f, g, kh)], assoc[&(gf, hh, k)]);
                    let rhs = h(assoc[&(g, hh, k)], id2(f))
                        .and_then(|x| v(x, assoc[&(f, hg, k)]))
                        .and_then(|x| h(id2(k), assoc[&(f, g, hh)]).and_then(|y| v(x, y)));
                    if lhs != rhs {
                        report.push_witness("pentagon", format!("pentagon fails at ({f}, {g}, {hh}, {k})"), format!("{f},{g},{hh},{k}"));
                    }
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Decorated functors

/// A decorated bifunctor between two presentations, given by name maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecoratedFunctorSpec {
    pub source: Presentation,
    pub target: Presentation,
    pub objects: BTreeMap<String, String>,
    pub vertical: BTreeMap<String, String>,
    pub cells1: BTreeMap<String, String>,
    pub cells2: BTreeMap<String, String>,
}

fn lookup<'a>(map: &'a BTreeMap<String, String>, key: &str, what: &str) -> Result<&'a str> {
    map.get(key).map(String::as_str).ok_or_else(|| Error::MissingEntry(format!("{what} image of `{key}`")))
}

/// Checks that the maps form a decorated bifunctor.
pub fn validate_functor(g: &DecoratedFunctorSpec) -> Result<ValidationReport> {
    let mut report = ValidationReport::new();
    let (s, t) = (&g.source, &g.target);
    for o in &s.objects {
        let img = lookup(&g.objects, o, "object")?;
        if !t.objects.iter().any(|x| x == img) {
            return Err(Error::unknown("object", img));
        }
    }
    let obj = |o: &str| g.objects[o].as_str();

    // Object functions induced by the decoration map and the 1-cell map must
    // both agree with the declared one.
    let mut mismatch = Vec::new();
    for m in &s.decoration.morphisms {
        let img = lookup(&g.vertical, &m.name, "vertical morphism")?;
        let tm = t.decoration.morphism(img).ok_or_else(|| Error::unknown("vertical morphism", img))?;
        if tm.dom != obj(&m.dom) || tm.cod != obj(&m.cod) {
            mismatch.push(format!("decoration sends `{}` to `{img}`", m.name));
        }
    }
    for m in &s.horizontal.morphisms {
        let img = lookup(&g.cells1, &m.name, "1-cell")?;
        let tm = t.horizontal.morphism(img).ok_or_else(|| Error::unknown("1-cell", img))?;
        if tm.dom != obj(&m.dom) || tm.cod != obj(&m.cod) {
            mismatch.push(format!("1-cell map sends `{}` to `{img}`", m.name));
        }
    }
    if !mismatch.is_empty() {
        return Err(Error::DecorationMismatch(mismatch.join("; ")));
    }

    for (label, sc, tc, map) in [
        ("decoration", &s.decoration, &t.decoration, &g.vertical),
        ("horizontal", &s.horizontal, &t.horizontal, &g.cells1),
    ] {
        for (o, i) in &sc.identities {
            if tc.identity(obj(o)) != Some(map[i].as_str()) {
                report.push("identity", format!("{label}: identity of `{o}` is not preserved"));
            }
        }
        for [a, b, c] in &sc.compose {
            if tc.compose(&map[a], &map[b]) != Some(map[c].as_str()) {
                report.push_witness("composition", format!("{label}: ({a})∘({b}) is not preserved"), format!("{a},{b}"));
            }
        }
    }
    for m in &s.globular.cells {
        let img = lookup(&g.cells2, &m.name, "2-cell")?;
        let tm = t.cell(img).ok_or_else(|| Error::unknown("2-cell", img))?;
        if tm.dom != g.cells1[&m.dom] || tm.cod != g.cells1[&m.cod] {
            report.push_witness("boundary", format!("2-cell `{}` maps to `{img}` with a different 1-cell boundary", m.name), m.name.clone());
        }
    }
    for (f, i) in &s.globular.identities {
        if t.identity2(&g.cells1[f]) != Some(g.cells2[i].as_str()) {
            report.push("identity", format!("identity 2-cell of `{f}` is not preserved"));
        }
    }
    for [a, b, c] in &s.globular.vcompose {
        if t.vcompose(&g.cells2[a], &g.cells2[b]) != Some(g.cells2[c].as_str()) {
            report.push_witness("composition", format!("({a})•({b}) is not preserved"), format!("{a},{b}"));
        }
    }
    for [a, b, c] in &s.globular.hcompose {
        if t.hcompose(&g.cells2[a], &g.cells2[b]) != Some(g.cells2[c].as_str()) {
            report.push_witness("composition", format!("({a})∗({b}) is not preserved"), format!("{a},{b}"));
        }
    }
    if let (Some(sc), Mode::Weak) = (&s.coherence, s.mode) {
        let tc = t.coherence.clone().unwrap_or_default();
        for (label, smap, tmap) in [("left unitor", &sc.left_unitors, &tc.left_unitors), ("right unitor", &sc.right_unitors, &tc.right_unitors)] {
            for (f, cc) in smap {
                let want = match t.mode {
                    Mode::Weak => tmap.get(&g.cells1[f]).map(|c| c.cell.clone()),
                    Mode::Strict => t.identity2(&g.cells1[f]).map(String::from),
                };
                if want.as_deref() != Some(g.cells2[&cc.cell].as_str()) {
                    report.push("coherence", format!("{label} at `{f}` is not preserved"));
                }
            }
        }
        for a in &sc.associators {
            let img = [0, 1, 2].map(|i| g.cells1[&a.cells1[i]].clone());
            let want = match t.mode {
                Mode::Weak => tc.associators.iter().find(|x| x.cells1 == img).map(|x| x.cell.clone()),
                Mode::Strict => t
                    .horizontal
                    .compose(&img[1], &img[0])
                    .and_then(|gf| t.horizontal.compose(&img[2], gf))
                    .and_then(|hgf| t.identity2(hgf))
                    .map(String::from),
            };
            if want.as_deref() != Some(g.cells2[&a.cell].as_str()) {
                report.push("coherence", format!("associator at {:?} is not preserved", a.cells1));
            }
        }
    }
    Ok(report)
}

/// Component-wise composite `second ∘ first`.
pub fn compose_specs(first: &DecoratedFunctorSpec, second: &DecoratedFunctorSpec) -> Result<DecoratedFunctorSpec> {
    if first.target != second.source {
        return Err(Error::Composition("target of the first functor is not the source of the second".into()));
    }
    let comp = |a: &BTreeMap<String, String>, b: &BTreeMap<String, String>, what: &str| -> Result<BTreeMap<String, String>> {
        a.iter()
            .map(|(k, v)| Ok((k.clone(), lookup(b, v, what)?.to_string())))
            .collect()
    };
    Ok(DecoratedFunctorSpec {
        source: first.source.clone(),
        target: second.target.clone(),
        objects: comp(&first.objects, &second.objects, "object")?,
        vertical: comp(&first.vertical, &second.vertical, "vertical morphism")?,
        cells1: comp(&first.cells1, &second.cells1, "1-cell")?,
        cells2: comp(&first.cells2, &second.cells2, "2-cell")?,
    })
}

/// The identity decorated bifunctor on `p`.
pub fn identity_spec(p: &Presentation) -> DecoratedFunctorSpec {
    let diag = |names: Vec<&String>| names.into_iter().map(|n| (n.clone(), n.clone())).collect();
    DecoratedFunctorSpec {
        source: p.clone(),
        target: p.clone(),
        objects: diag(p.objects.iter().collect()),
        vertical: diag(p.decoration.morphisms.iter().map(|m| &m.name).collect()),
        cells1: diag(p.horizontal.morphisms.iter().map(|m| &m.name).collect()),
        cells2: diag(p.globular.cells.iter().map(|m| &m.name).collect()),
    }
}
