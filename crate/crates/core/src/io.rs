//! JSON documents read and written by the command-line tool, and the glue
//! that turns them into fans, skeletons and group actions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::fan::{fan_from_stratification, fan_product, FanPoint, KatoFan, ProductFan, StratifiedModel};
use crate::skeleton::PolyhedralComplex;
use crate::topology::{CellComplex, GroupAction, SimplicialComplex};
use crate::weight::LogDivisor;
use crate::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Document {
    Model(ModelDoc),
    Product(ProductDoc),
    Complex(ComplexDoc),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDoc {
    pub model: StratifiedModel,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub divisors: BTreeMap<String, LogDivisor>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorPair {
    pub left: LogDivisor,
    pub right: LogDivisor,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductDoc {
    pub left: StratifiedModel,
    pub right: StratifiedModel,
    /// Branch counts `n(x, y)` keyed `"x|y"` by point ids; missing pairs get 1.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub counts: BTreeMap<String, usize>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub divisors: BTreeMap<String, DivisorPair>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionSpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub complex: CellComplex,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub actions: BTreeMap<String, ActionSpec>,
}

/// A finite group action. On fans it is given by branch relabelings applied
/// to every point id; on cell complexes by generating cell permutations.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ActionSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub branch_swaps: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub generators: Vec<Vec<usize>>,
}

pub fn parse_document(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Pretty JSON with a trailing newline; the canonical on-disk form.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

impl Document {
    pub fn actions(&self) -> &BTreeMap<String, ActionSpec> {
        match self {
            Document::Model(d) => &d.actions,
            Document::Product(d) => &d.actions,
            Document::Complex(d) => &d.actions,
        }
    }
}

impl ModelDoc {
    pub fn fan(&self) -> Result<KatoFan> {
        fan_from_stratification(&self.model)
    }
}

pub struct BuiltProduct {
    pub left: KatoFan,
    pub right: KatoFan,
    pub product: ProductFan,
}

impl ProductDoc {
    pub fn build(&self) -> Result<BuiltProduct> {
        let left = fan_from_stratification(&self.left)?;
        let right = fan_from_stratification(&self.right)?;
        let counts = &self.counts;
        let rule = |x: &FanPoint, y: &FanPoint| counts.get(&format!("{}|{}", x.id, y.id)).copied().unwrap_or(1);
        let product = if counts.is_empty() {
            fan_product(&left, &right, None)?
        } else {
            fan_product(&left, &right, Some(&rule))?
        };
        Ok(BuiltProduct { left, right, product })
    }
}

/// Applies branch relabelings to every `#branch` token of an id.
pub fn rename_branches(id: &str, swaps: &[(String, String)]) -> String {
    let mut out = String::with_capacity(id.len());
    let mut rest = id;
    while let Some(p) = rest.find('#') {
        out.push_str(&rest[..=p]);
        rest = &rest[p + 1..];
        let end = rest.find([';', ')', '#', ',']).unwrap_or(rest.len());
        let token = &rest[..end];
        let mapped = swaps
            .iter()
            .find_map(|(a, b)| {
                if token == a {
                    Some(b.as_str())
                } else if token == b {
                    Some(a.as_str())
                } else {
                    None
                }
            })
            .unwrap_or(token);
        out.push_str(mapped);
        rest = &rest[end..];
    }
    out.push_str(rest);
    out
}

/// The permutation of skeleton faces induced by branch relabelings.
pub fn face_permutation(sk: &PolyhedralComplex, swaps: &[(String, String)]) -> Result<Vec<usize>> {
    sk.faces
        .iter()
        .map(|f| {
            let target = rename_branches(&f.point, swaps);
            sk.index_of(&target)
                .ok_or_else(|| Error::InvalidAction(format!("{} maps to unknown face {target}", f.point)))
        })
        .collect()
}

/// The bounded part of a skeleton as a cell complex together with the
/// order complex and the induced group action on it.
pub fn skeleton_action(sk: &PolyhedralComplex, spec: &ActionSpec) -> Result<(CellComplex, SimplicialComplex, GroupAction)> {
    let (cells, back) = sk.bounded_cell_complex();
    let pos: BTreeMap<usize, usize> = back.iter().enumerate().map(|(i, &f)| (f, i)).collect();
    let mut gens = Vec::new();
    if !spec.branch_swaps.is_empty() {
        let perm = face_permutation(sk, &spec.branch_swaps)?;
        let on_cells: Vec<usize> = back
            .iter()
            .map(|f| pos.get(&perm[*f]).copied())
            .collect::<Option<_>>()
            .ok_or_else(|| Error::InvalidAction("action does not preserve the bounded part".into()))?;
        gens.push(on_cells);
    }
    gens.extend(spec.generators.iter().cloned());
    complex_action(cells, &gens)
}

/// A cell complex with a group generated by cellular automorphisms.
pub fn complex_action(cells: CellComplex, gens: &[Vec<usize>]) -> Result<(CellComplex, SimplicialComplex, GroupAction)> {
    for g in gens {
        if !cells.is_automorphism(g) {
            return Err(Error::InvalidAction("generator is not a cellular automorphism".into()));
        }
    }
    let action = GroupAction::generate(cells.len(), gens)?;
    let k = cells.order_complex();
    Ok((cells, k, action))
}
