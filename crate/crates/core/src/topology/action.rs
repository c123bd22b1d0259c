use std::collections::{BTreeSet, HashMap};

use super::SimplicialComplex;
use crate::{Error, Result};

/// A finite group acting on the vertices of a simplicial complex. Element 0
/// is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    pub elements: Vec<Vec<usize>>,
}

const MAX_ORDER: usize = 100_000;

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a ∘ b)(v) = a(b(v))
    b.iter().map(|&v| a[v]).collect()
}

impl GroupAction {
    pub fn trivial(n: usize) -> Self {
        GroupAction {
            elements: vec![(0..n).collect()],
        }
    }

    /// The group generated by the given permutations of `0..n`.
    pub fn generate(n: usize, generators: &[Vec<usize>]) -> Result<Self> {
        for g in generators {
            let s: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != n || s.len() != n || s.iter().next_back().is_some_and(|&m| m >= n) {
                return Err(Error::InvalidAction("generator is not a permutation".into()));
            }
        }
        let id: Vec<usize> = (0..n).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
        let mut elements = vec![id];
        let mut i = 0;
        while i < elements.len() {
            for g in generators {
                let h = compose(g, &elements[i]);
                if seen.insert(h.clone()) {
                    elements.push(h);
                    if elements.len() > MAX_ORDER {
                        return Err(Error::SizeCapExceeded {
                            what: "group order".into(),
                            count: elements.len(),
                            cap: MAX_ORDER,
                        });
                    }
                }
            }
            i += 1;
        }
        Ok(GroupAction { elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements.first().map_or(0, |e| e.len())
    }

    /// `table[i][j]` is the index of `elements[i] ∘ elements[j]`.
    pub fn composition_table(&self) -> Result<Vec<Vec<usize>>> {
        let index: HashMap<&Vec<usize>, usize> = self.elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
        self.elements
            .iter()
            .map(|a| {
                self.elements
                    .iter()
                    .map(|b| {
                        index
                            .get(&compose(a, b))
                            .copied()
                            .ok_or_else(|| Error::InvalidAction("not closed under composition".into()))
                    })
                    .collect()
            })
            .collect()
    }

    /// Identity present, closed under composition, simplicial on `k`.
    pub fn validate(&self, k: &SimplicialComplex) -> Result<()> {
        let n = k.num_vertices();
        let id: Vec<usize> = (0..n).collect();
        if self.elements.first() != Some(&id) {
            return Err(Error::InvalidAction("first element is not the identity".into()));
        }
        self.composition_table()?;
        for (i, g) in self.elements.iter().enumerate() {
            if !k.is_simplicial_automorphism(g) {
                return Err(Error::InvalidAction(format!("element {i} does not preserve simplices")));
            }
        }
        Ok(())
    }

    /// Vertex orbit index of each vertex, numbered by first occurrence.
    pub fn vertex_orbits(&self) -> Vec<usize> {
        let n = self.degree();
        let mut orbit = vec![usize::MAX; n];
        let mut next = 0;
        for v in 0..n {
            if orbit[v] == usize::MAX {
                for g in &self.elements {
                    orbit[g[v]] = next;
                }
                next += 1;
            }
        }
        orbit
    }

    /// The induced action on the barycentric subdivision, whose vertices are
    /// the simplices `old` of `k`.
    pub fn lift_to_subdivision(&self, k: &SimplicialComplex, old: &[(usize, usize)]) -> GroupAction {
        let index = k.index_maps();
        let mut offset = vec![0; k.dim() + 2];
        for d in 0..=k.dim() {
            offset[d + 1] = offset[d] + k.simplices(d).len();
        }
        let elements = self
            .elements
            .iter()
            .map(|g| {
                old.iter()
                    .map(|&(d, i)| {
                        let mut img: Vec<usize> = k.simplices(d)[i].iter().map(|&v| g[v]).collect();
                        img.sort_unstable();
                        offset[d] + index[d][&img]
                    })
                    .collect()
            })
            .collect();
        GroupAction { elements }
    }
}
