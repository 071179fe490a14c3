//! Bundled examples and the JSON formats for quotients and functors.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::presentation::{validate_functor, validate_presentation, DecoratedFunctorSpec, Presentation};
use crate::quotient::QuotientSpec;
use crate::syntax::parse_expr;

/// Names of the bundled artifacts.
pub const NAMES: [&str; 6] = ["point", "z2", "z2-abelian", "collapse", "id-point", "id-z2"];

/// Raw JSON of a bundled artifact.
pub fn source(name: &str) -> Option<&'static str> {
    Some(match name {
        "point" => include_str!("../examples/point.json"),
        "z2" => include_str!("../examples/z2.json"),
        "z2-abelian" => include_str!("../examples/z2-abelian.json"),
        "collapse" => include_str!("../examples/collapse.json"),
        "id-point" => include_str!("../examples/id-point.json"),
        "id-z2" => include_str!("../examples/id-z2.json"),
        _ => return None,
    })
}

/// A presentation given by name (bundled or a path) or inline.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresRef {
    Name(String),
    Inline(Box<Presentation>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuotientFile {
    pub base: PresRef,
    pub relations: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorFile {
    pub source: PresRef,
    pub target: PresRef,
    pub objects: BTreeMap<String, String>,
    pub vertical: BTreeMap<String, String>,
    pub cells1: BTreeMap<String, String>,
    pub cells2: BTreeMap<String, String>,
}

/// Any loadable artifact.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Artifact {
    Presentation(Presentation),
    Quotient(QuotientSpec),
    Functor(DecoratedFunctorSpec),
}

/// Serializes in the canonical layout used by the bundled files.
pub fn to_pretty<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn checked(p: Presentation, what: &str) -> Result<Presentation> {
    let report = validate_presentation(&p)?;
    if !report.is_empty() {
        return Err(Error::Invalid(format!("{what} does not validate:\n{report}")));
    }
    Ok(p)
}

/// Resolves names against the bundled corpus first, then as paths relative
/// to `dir`.
#[derive(Debug, Clone, Default)]
pub struct Loader {
    pub dir: Option<PathBuf>,
}

impl Loader {
    pub fn in_dir(dir: impl Into<PathBuf>) -> Self {
        Loader { dir: Some(dir.into()) }
    }

    fn path(&self, reference: &str) -> PathBuf {
        match &self.dir {
            Some(d) => d.join(reference),
            None => PathBuf::from(reference),
        }
    }

    pub fn text(&self, reference: &str) -> Result<String> {
        if let Some(s) = source(reference) {
            return Ok(s.to_string());
        }
        let path = self.path(reference);
        if path.is_file() {
            return Ok(std::fs::read_to_string(&path)?);
        }
        Err(Error::unknown("artifact", reference))
    }

    /// Nested references resolve next to the referring file.
    pub fn child(&self, reference: &str) -> Loader {
        if source(reference).is_some() {
            return self.clone();
        }
        Loader { dir: self.path(reference).parent().map(Path::to_path_buf) }
    }

    pub fn presentation_ref(&self, r: &PresRef) -> Result<Presentation> {
        match r {
            PresRef::Name(n) => self.presentation(n),
            PresRef::Inline(p) => checked((**p).clone(), "inline presentation"),
        }
    }

    pub fn presentation(&self, reference: &str) -> Result<Presentation> {
        checked(Presentation::from_json(&self.text(reference)?)?, reference)
    }

    pub fn quotient(&self, reference: &str) -> Result<QuotientSpec> {
        let f: QuotientFile = serde_json::from_str(&self.text(reference)?)?;
        self.child(reference).quotient_file(&f)
    }

    pub fn quotient_file(&self, f: &QuotientFile) -> Result<QuotientSpec> {
        let base = self.presentation_ref(&f.base)?;
        let relations = f.relations.iter().map(|[a, b]| Ok((parse_expr(a)?, parse_expr(b)?))).collect::<Result<Vec<_>>>()?;
        QuotientSpec::new(base, relations)
    }

    pub fn functor(&self, reference: &str) -> Result<DecoratedFunctorSpec> {
        let f: FunctorFile = serde_json::from_str(&self.text(reference)?)?;
        self.child(reference).functor_file(&f)
    }

    pub fn functor_file(&self, f: &FunctorFile) -> Result<DecoratedFunctorSpec> {
        let spec = DecoratedFunctorSpec {
            source: self.presentation_ref(&f.source)?,
            target: self.presentation_ref(&f.target)?,
            objects: f.objects.clone(),
            vertical: f.vertical.clone(),
            cells1: f.cells1.clone(),
            cells2: f.cells2.clone(),
        };
        let report = validate_functor(&spec)?;
        if !report.is_empty() {
            return Err(Error::Invalid(format!("functor does not validate:\n{report}")));
        }
        Ok(spec)
    }

    /// Loads whichever kind of artifact the document holds.
    pub fn any(&self, reference: &str) -> Result<Artifact> {
        let text = self.text(reference)?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        let has = |k: &str| value.get(k).is_some();
        let here = self.child(reference);
        if has("relations") {
            Ok(Artifact::Quotient(here.quotient_file(&serde_json::from_value(value)?)?))
        } else if has("cells2") {
            Ok(Artifact::Functor(here.functor_file(&serde_json::from_value(value)?)?))
        } else {
            Ok(Artifact::Presentation(checked(Presentation::from_json(&text)?, reference)?))
        }
    }
}

/// A bundled artifact, validated.
pub fn load(name: &str) -> Result<Artifact> {
    if source(name).is_none() {
        return Err(Error::unknown("example", name));
    }
    Loader::default().any(name)
}

pub fn presentation(name: &str) -> Result<Presentation> {
    match load(name)? {
        Artifact::Presentation(p) => Ok(p),
        _ => Err(Error::unknown("presentation", name)),
    }
}

pub fn quotient(name: &str) -> Result<QuotientSpec> {
    match load(name)? {
        Artifact::Quotient(q) => Ok(q),
        _ => Err(Error::unknown("quotient", name)),
    }
}

pub fn functor(name: &str) -> Result<DecoratedFunctorSpec> {
    match load(name)? {
        Artifact::Functor(f) => Ok(f),
        _ => Err(Error::unknown("functor", name)),
    }
}
