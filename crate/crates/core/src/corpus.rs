//! Built-in example inputs. The JSON files under `corpus/` are the canonical
//! serializations of these documents.

use std::collections::BTreeMap;

use crate::fan::{StratifiedModel, Stratum};
use crate::io::{ActionSpec, ComplexDoc, Document, ModelDoc, ProductDoc};
use crate::topology::{product_complex, CellComplex, SimplicialComplex};
use crate::weight::LogDivisor;

pub const NAMES: &[&str] = &[
    "p1_ex47",
    "p1_ex48",
    "quartic_Y",
    "quartic_YxY",
    "double_lines_XxX",
    "kulikov_I",
    "kulikov_II",
    "kulikov_III",
    "node_segment",
    "abelian_torus",
];

/// The projective line over the valuation ring with horizontal sections.
pub fn projective_line(sections: &[&str]) -> StratifiedModel {
    let mut comps = vec![StratifiedModel::vertical("V", 1)];
    comps.extend(sections.iter().map(|h| StratifiedModel::horizontal(h)));
    let mut strata: Vec<Vec<&str>> = vec![vec!["V"]];
    for h in sections {
        strata.push(vec![h]);
        strata.push(vec![h, "V"]);
    }
    let refs: Vec<&[&str]> = strata.iter().map(|s| s.as_slice()).collect();
    StratifiedModel::simple(comps, &refs)
}

/// Two vertical components of the given multiplicities meeting in one point.
pub fn two_components(m1: i64, m2: i64) -> StratifiedModel {
    StratifiedModel::simple(
        vec![StratifiedModel::vertical("A", m1), StratifiedModel::vertical("B", m2)],
        &[&["A"], &["B"], &["A", "B"]],
    )
}

/// Two reduced lines meeting in two points `pA`, `pB`.
pub fn quartic_y() -> StratifiedModel {
    let mut m = StratifiedModel::simple(
        vec![StratifiedModel::vertical("E1", 1), StratifiedModel::vertical("E2", 1)],
        &[&["E1"], &["E2"]],
    );
    m.strata.push(Stratum {
        components: vec!["E1".into(), "E2".into()],
        branches: vec!["pA".into(), "pB".into()],
    });
    m
}

fn segment() -> CellComplex {
    CellComplex::new(vec![0, 0, 1], vec![vec![], vec![], vec![0, 1]], vec!["v0".into(), "v1".into(), "e".into()])
}

/// A circle with `n ≥ 2` vertices.
pub fn polygon(n: usize) -> CellComplex {
    let mut dims = vec![0; n];
    dims.extend(std::iter::repeat_n(1, n));
    let mut facets = vec![Vec::new(); n];
    facets.extend((0..n).map(|i| {
        let mut f = vec![i, (i + 1) % n];
        f.sort_unstable();
        f
    }));
    let mut labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    labels.extend((0..n).map(|i| format!("e{i}")));
    CellComplex::new(dims, facets, labels)
}

pub fn tetrahedron_boundary() -> CellComplex {
    let k = SimplicialComplex::from_facets(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]])
        .expect("valid facets");
    CellComplex::from_simplicial(&k)
}

pub fn document(name: &str) -> Option<Document> {
    let model = |model: StratifiedModel, divisors: BTreeMap<String, LogDivisor>| {
        Document::Model(ModelDoc {
            model,
            divisors,
            actions: BTreeMap::new(),
        })
    };
    let complex = |complex: CellComplex| {
        Document::Complex(ComplexDoc {
            complex,
            actions: BTreeMap::new(),
        })
    };
    Some(match name {
        "p1_ex47" => model(
            projective_line(&["H0", "Hinf"]),
            BTreeMap::from([("omega".into(), LogDivisor::zero(1))]),
        ),
        "p1_ex48" => model(
            projective_line(&["H0", "H1", "Hinf"]),
            BTreeMap::from([(
                "omega".into(),
                LogDivisor::with(3, &[("H0", 1), ("H1", 1), ("Hinf", 1)]),
            )]),
        ),
        "quartic_Y" => model(quartic_y(), BTreeMap::new()),
        "quartic_YxY" => Document::Product(ProductDoc {
            left: quartic_y(),
            right: quartic_y(),
            counts: BTreeMap::new(),
            divisors: BTreeMap::new(),
            actions: BTreeMap::from([(
                "z2_swap".into(),
                ActionSpec {
                    branch_swaps: vec![("pA".into(), "pB".into())],
                    generators: Vec::new(),
                },
            )]),
        }),
        "double_lines_XxX" => Document::Product(ProductDoc {
            left: two_components(2, 2),
            right: two_components(2, 2),
            counts: BTreeMap::from([("A,B|A,B".into(), 2)]),
            divisors: BTreeMap::new(),
            actions: BTreeMap::new(),
        }),
        "kulikov_I" => complex(CellComplex::new(vec![0], vec![vec![]], vec!["v".into()])),
        "kulikov_II" => complex(segment()),
        "kulikov_III" => complex(tetrahedron_boundary()),
        "node_segment" => model(
            two_components(1, 1),
            BTreeMap::from([("trivial".into(), LogDivisor::zero(1))]),
        ),
        "abelian_torus" => {
            let c = polygon(3);
            complex(product_complex(&[&c, &c]).0)
        }
        _ => return None,
    })
}
