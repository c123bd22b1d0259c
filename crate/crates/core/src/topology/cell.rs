use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::SimplicialComplex;
use crate::{Error, Result};

/// A regular cell complex given by its face poset: each cell lists its
/// codimension-one faces.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellComplex {
    pub dims: Vec<usize>,
    pub facets: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

impl CellComplex {
    /// Panics on malformed input; use [`CellComplex::checked`] for untrusted data.
    pub fn new(dims: Vec<usize>, facets: Vec<Vec<usize>>, labels: Vec<String>) -> Self {
        Self::checked(dims, facets, labels).expect("malformed cell complex")
    }

    pub fn checked(dims: Vec<usize>, facets: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = dims.len();
        if facets.len() != n || labels.len() != n {
            return Err(Error::DimensionMismatch("cell complex arrays differ in length".into()));
        }
        for (c, fs) in facets.iter().enumerate() {
            if dims[c] > 0 && fs.is_empty() {
                return Err(Error::DimensionMismatch(format!("cell {} has no facets", labels[c])));
            }
            for &f in fs {
                if f >= n || dims[f] + 1 != dims[c] {
                    return Err(Error::DimensionMismatch(format!("bad facet of cell {}", labels[c])));
                }
            }
        }
        Ok(CellComplex { dims, facets, labels })
    }

    /// One cell per simplex.
    pub fn from_simplicial(k: &SimplicialComplex) -> Self {
        let index = k.index_maps();
        let mut offset = vec![0; k.dim() + 2];
        for d in 0..=k.dim() {
            offset[d + 1] = offset[d] + k.simplices(d).len();
        }
        let mut dims = Vec::new();
        let mut facets = Vec::new();
        let mut labels = Vec::new();
        for d in 0..=k.dim() {
            for s in k.simplices(d) {
                dims.push(d);
                facets.push(if d == 0 {
                    Vec::new()
                } else {
                    (0..s.len())
                        .map(|j| {
                            let mut f = s.clone();
                            f.remove(j);
                            offset[d - 1] + index[d - 1][&f]
                        })
                        .collect()
                });
                let n: Vec<&str> = s.iter().map(|&v| k.labels[v].as_str()).collect();
                labels.push(n.join(","));
            }
        }
        CellComplex { dims, facets, labels }
    }

    /// Number of chains in the face poset, the simplex count of the order complex.
    pub fn flag_count(&self) -> usize {
        let below = self.closures();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&c| self.dims[c]);
        let mut top = vec![0usize; self.len()];
        for c in order {
            top[c] = 1 + below[c].iter().filter(|&&f| f != c).map(|&f| top[f]).fold(0usize, |a, b| a.saturating_add(b));
        }
        top.iter().fold(0usize, |a, &b| a.saturating_add(b))
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().copied().max().unwrap_or(0)
    }

    pub fn counts(&self) -> Vec<usize> {
        let mut c = vec![0; self.dim() + 1];
        for &d in &self.dims {
            c[d] += 1;
        }
        c
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().map(|&d| if d % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// All faces of each cell, itself included.
    pub fn closures(&self) -> Vec<BTreeSet<usize>> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&c| self.dims[c]);
        let mut out = vec![BTreeSet::new(); self.len()];
        for c in order {
            let mut s = BTreeSet::from([c]);
            for &f in &self.facets[c] {
                s.extend(out[f].iter().copied());
            }
            out[c] = s;
        }
        out
    }

    /// The order complex of the face poset: one vertex per cell, one simplex
    /// per chain. Cell `i` becomes vertex `i`.
    pub fn order_complex(&self) -> SimplicialComplex {
        let below = self.closures();
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&c| self.dims[c]);
        // Chains with top element c, each stored bottom to top.
        let mut top: Vec<Vec<Vec<usize>>> = vec![Vec::new(); self.len()];
        let mut all = Vec::new();
        for c in order {
            let mut chains = vec![vec![c]];
            for &f in below[c].iter().filter(|&&f| f != c) {
                for ch in &top[f] {
                    let mut ch = ch.clone();
                    ch.push(c);
                    chains.push(ch);
                }
            }
            for ch in &chains {
                let mut s = ch.clone();
                s.sort_unstable();
                all.push(s);
            }
            top[c] = chains;
        }
        SimplicialComplex::from_closed(self.labels.clone(), all)
    }

    /// Whether a permutation of cells preserves dimensions and the facet relation.
    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.len() {
            return false;
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p >= perm.len() || seen[p] {
                return false;
            }
            seen[p] = true;
        }
        (0..self.len()).all(|c| {
            self.dims[perm[c]] == self.dims[c] && {
                let a: BTreeSet<usize> = self.facets[c].iter().map(|&f| perm[f]).collect();
                let b: BTreeSet<usize> = self.facets[perm[c]].iter().copied().collect();
                a == b
            }
        })
    }
}

/// The product cell complex. Cell `k` of the result is the tuple `tuples[k]`
/// of factor cells.
pub fn product_complex(factors: &[&CellComplex]) -> (CellComplex, Vec<Vec<usize>>) {
    let mut tuples: Vec<Vec<usize>> = vec![Vec::new()];
    for f in factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                (0..f.len()).map(move |c| {
                    let mut t = t.clone();
                    t.push(c);
                    t
                })
            })
            .collect();
    }
    let stride: Vec<usize> = {
        let mut s = vec![1; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            s[i] = s[i + 1] * factors[i + 1].len();
        }
        s
    };
    let index = |t: &[usize]| t.iter().zip(&stride).map(|(a, b)| a * b).sum::<usize>();
    let mut dims = Vec::with_capacity(tuples.len());
    let mut facets = Vec::with_capacity(tuples.len());
    let mut labels = Vec::with_capacity(tuples.len());
    for t in &tuples {
        dims.push(t.iter().zip(factors).map(|(&c, f)| f.dims[c]).sum());
        let mut fs = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            for &g in &f.facets[t[i]] {
                let mut u = t.clone();
                u[i] = g;
                fs.push(index(&u));
            }
        }
        fs.sort_unstable();
        facets.push(fs);
        let parts: Vec<&str> = t.iter().zip(factors).map(|(&c, f)| f.labels[c].as_str()).collect();
        labels.push(format!("({})", parts.join(";")));
    }
    (CellComplex { dims, facets, labels }, tuples)
}
