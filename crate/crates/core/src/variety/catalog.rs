//! Catalog files: a JSON list of labelled variety descriptors.
//!
//! ```json
//! [
//!   {"label": "P2", "ambient": [2]},
//!   {"label": "cubic3", "ambient": [3], "cuts": [[3]]},
//!   {"label": "P2xcubic3", "product": ["P2", "cubic3"]},
//!   {"label": "two lines", "union": [{"ambient": [1]}, {"ambient": [1]}]}
//! ]
//! ```
//!
//! A string inside `product` or `union` refers to an earlier label.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::chow::Ambient;
use super::model::{CompleteIntersection, Variety};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Descriptor {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub cuts: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<Vec<Node>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub union: Option<Vec<Node>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Node {
    Ref(String),
    Inline(Box<Descriptor>),
}

impl Descriptor {
    pub fn leaf(label: impl Into<String>, ambient: Vec<usize>, cuts: Vec<Vec<u32>>) -> Self {
        Descriptor { label: Some(label.into()), ambient: Some(ambient), cuts, product: None, union: None }
    }

    pub fn product_of(label: impl Into<String>, factors: &[&str]) -> Self {
        Descriptor {
            label: Some(label.into()),
            ambient: None,
            cuts: Vec::new(),
            product: Some(factors.iter().map(|f| Node::Ref(f.to_string())).collect()),
            union: None,
        }
    }

    fn resolve(&self, known: &HashMap<String, Variety>) -> Result<Variety> {
        let where_ = || self.label.clone().unwrap_or_else(|| "<inline>".into());
        match (&self.ambient, &self.product, &self.union) {
            (Some(dims), None, None) => {
                Ok(CompleteIntersection::new(Ambient::new(dims.clone()), self.cuts.clone())?.into())
            }
            (None, Some(nodes), None) if self.cuts.is_empty() => {
                Ok(Variety::Product(nodes.iter().map(|n| n.resolve(known)).collect::<Result<_>>()?))
            }
            (None, None, Some(nodes)) if self.cuts.is_empty() => {
                Ok(Variety::Union(nodes.iter().map(|n| n.resolve(known)).collect::<Result<_>>()?))
            }
            _ => Err(Error::Catalog(format!(
                "`{}`: exactly one of ambient/product/union is required (cuts only with ambient)",
                where_()
            ))),
        }
    }
}

impl Node {
    fn resolve(&self, known: &HashMap<String, Variety>) -> Result<Variety> {
        match self {
            Node::Ref(label) => {
                known.get(label).cloned().ok_or_else(|| Error::Catalog(format!("unknown label `{label}`")))
            }
            Node::Inline(d) => d.resolve(known),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub label: String,
    pub variety: Variety,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn from_descriptors(descriptors: &[Descriptor]) -> Result<Self> {
        let mut known = HashMap::new();
        let mut entries = Vec::with_capacity(descriptors.len());
        for (i, d) in descriptors.iter().enumerate() {
            let label = d.label.clone().ok_or_else(|| Error::Catalog(format!("entry {i} has no label")))?;
            let variety = d.resolve(&known)?;
            if known.insert(label.clone(), variety.clone()).is_some() {
                return Err(Error::Catalog(format!("duplicate label `{label}`")));
            }
            entries.push(CatalogEntry { label, variety });
        }
        Ok(Catalog { entries })
    }

    /// Parses a catalog file; syntax errors carry serde_json's line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        let descriptors: Vec<Descriptor> = serde_json::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        Self::from_descriptors(&descriptors)
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&Variety> {
        self.entries.iter().find(|e| e.label == label).map(|e| &e.variety)
    }

    pub fn require(&self, label: &str) -> Result<&Variety> {
        self.get(label).ok_or_else(|| Error::Catalog(format!("no variety labelled `{label}`")))
    }
}

fn hypersurface_name(degree: u32) -> &'static str {
    match degree {
        2 => "quadric",
        3 => "cubic",
        4 => "quartic",
        5 => "quintic",
        _ => unreachable!("standard catalog uses degrees 2..=5"),
    }
}

/// Descriptors of the standard catalog:
/// `P^n` for `n <= 8`, hypersurfaces of degree 2..=5 in `P^{n+1}` for `n <= 7`,
/// the `(1,1)` hypersurfaces `H_{m,n}` (`m <= n`, `m + n <= 9`), and all
/// binary products of those with positive-dimensional factors and total
/// dimension at most 8.
pub fn standard_descriptors() -> Vec<Descriptor> {
    let mut leaves: Vec<(Descriptor, usize)> = Vec::new();
    for n in 1..=8 {
        leaves.push((Descriptor::leaf(format!("P{n}"), vec![n], Vec::new()), n));
    }
    for n in 1..=7 {
        for a in 2..=5u32 {
            let label = format!("{}{}", hypersurface_name(a), n + 1);
            leaves.push((Descriptor::leaf(label, vec![n + 1], vec![vec![a]]), n));
        }
    }
    for m in 1..=8 {
        for n in m..=(9 - m) {
            leaves.push((Descriptor::leaf(format!("H{m}_{n}"), vec![m, n], vec![vec![1, 1]]), m + n - 1));
        }
    }
    let mut out: Vec<Descriptor> = leaves.iter().map(|(d, _)| d.clone()).collect();
    for (i, (a, da)) in leaves.iter().enumerate() {
        for (b, db) in &leaves[i..] {
            if da + db <= 8 {
                let la = a.label.as_deref().unwrap();
                let lb = b.label.as_deref().unwrap();
                out.push(Descriptor::product_of(format!("{la}x{lb}"), &[la, lb]));
            }
        }
    }
    out
}

pub fn standard_catalog() -> Catalog {
    Catalog::from_descriptors(&standard_descriptors()).expect("standard catalog is well formed")
}

pub fn standard_catalog_json() -> String {
    serde_json::to_string_pretty(&standard_descriptors()).expect("descriptors serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_example() {
        let text = r#"[
            {"label": "P2", "ambient": [2]},
            {"label": "cubic3", "ambient": [3], "cuts": [[3]]},
            {"label": "P2xcubic3", "product": ["P2", "cubic3"]},
            {"label": "two lines", "union": [{"ambient": [1]}, {"ambient": [1]}]}
        ]"#;
        let c = Catalog::from_json(text).unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.require("P2xcubic3").unwrap().dimension().unwrap(), 4);
        assert_eq!(c.require("two lines").unwrap().components().len(), 2);
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = Catalog::from_json("[\n  {\"label\": \"P1\", \"ambient\": [1]\n").unwrap_err();
        assert!(err.to_string().contains("line"), "{err}");
    }

    #[test]
    fn unknown_reference() {
        let err = Catalog::from_json(r#"[{"label": "x", "product": ["P9"]}]"#).unwrap_err();
        assert_eq!(err, Error::Catalog("unknown label `P9`".into()));
    }

    #[test]
    fn duplicate_label() {
        let err =
            Catalog::from_json(r#"[{"label": "a", "ambient": [1]}, {"label": "a", "ambient": [2]}]"#).unwrap_err();
        assert!(matches!(err, Error::Catalog(_)));
    }

    #[test]
    fn ambiguous_descriptor() {
        let err = Catalog::from_json(r#"[{"label": "a", "ambient": [1], "union": []}]"#).unwrap_err();
        assert!(matches!(err, Error::Catalog(_)));
    }

    #[test]
    fn standard_catalog_shape() {
        let c = standard_catalog();
        assert!(c.len() >= 60);
        for e in c.entries() {
            let d = e.variety.dimension().unwrap();
            assert!((1..=8).contains(&d), "{} has dimension {d}", e.label);
        }
        assert!(c.get("cubic3").is_some());
        assert!(c.get("H2_3").is_some());
        assert!(c.get("P1xP1").is_some());
        let text = standard_catalog_json();
        assert_eq!(Catalog::from_json(&text).unwrap(), c);
    }
}
