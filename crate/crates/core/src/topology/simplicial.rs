use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A finite abstract simplicial complex. Simplices are sorted vertex lists,
/// grouped by dimension and sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub labels: Vec<String>,
    simplices: Vec<Vec<Vec<usize>>>,
}

/// Serialized form: vertex labels and maximal simplices.
#[derive(Serialize, Deserialize)]
struct FacetList {
    vertices: Vec<String>,
    facets: Vec<Vec<usize>>,
}

fn subset(s: &[usize], mask: u64) -> Vec<usize> {
    s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect()
}

impl Serialize for SimplicialComplex {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FacetList {
            vertices: self.labels.clone(),
            facets: self.facets(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SimplicialComplex {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let f = FacetList::deserialize(d)?;
        SimplicialComplex::from_maximal(f.vertices, f.facets).map_err(serde::de::Error::custom)
    }
}

impl SimplicialComplex {
    /// Builds from a face-closed list of simplices, sorting and deduplicating.
    pub(crate) fn from_closed(labels: Vec<String>, all: Vec<Vec<usize>>) -> Self {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        for s in all {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize(d + 1, BTreeSet::new());
            }
            by_dim[d].insert(s);
        }
        SimplicialComplex {
            labels,
            simplices: by_dim.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }

    /// The complex generated by the given simplices.
    pub fn from_maximal(labels: Vec<String>, maximal: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        let mut all = BTreeSet::new();
        for mut s in maximal {
            s.sort_unstable();
            if s.is_empty() || s.windows(2).any(|w| w[0] == w[1]) || s.iter().any(|&v| v >= n) {
                return Err(Error::DimensionMismatch(format!("bad simplex {s:?}")));
            }
            for mask in 1u64..(1 << s.len()) {
                all.insert(subset(&s, mask));
            }
        }
        for v in 0..n {
            all.insert(vec![v]);
        }
        Ok(Self::from_closed(labels, all.into_iter().collect()))
    }

    /// An unlabeled complex on vertices `0..n`.
    pub fn from_facets(n: usize, maximal: Vec<Vec<usize>>) -> Result<Self> {
        Self::from_maximal((0..n).map(|i| i.to_string()).collect(), maximal)
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], |s| s.as_slice())
    }

    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(|s| s.len()).collect()
    }

    pub fn total(&self) -> usize {
        self.simplices.iter().map(|s| s.len()).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    pub fn index_maps(&self) -> Vec<HashMap<Vec<usize>, usize>> {
        self.simplices
            .iter()
            .map(|ss| ss.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect()
    }

    pub fn contains(&self, s: &[usize]) -> bool {
        let mut s = s.to_vec();
        s.sort_unstable();
        s.len()
            .checked_sub(1)
            .and_then(|d| self.simplices.get(d))
            .is_some_and(|ss| ss.binary_search(&s).is_ok())
    }

    /// Maximal simplices, in dimension order.
    pub fn facets(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for d in 0..self.simplices.len() {
            let mut covered: BTreeSet<Vec<usize>> = BTreeSet::new();
            if d + 1 < self.simplices.len() {
                for t in &self.simplices[d + 1] {
                    for k in 0..t.len() {
                        let mut f = t.clone();
                        f.remove(k);
                        covered.insert(f);
                    }
                }
            }
            out.extend(self.simplices[d].iter().filter(|s| !covered.contains(*s)).cloned());
        }
        out
    }

    /// One line per maximal simplex, vertex labels separated by spaces.
    pub fn to_facet_text(&self) -> String {
        let mut s = String::new();
        for f in self.facets() {
            let names: Vec<&str> = f.iter().map(|&v| self.labels[v].as_str()).collect();
            s.push_str(&names.join(" "));
            s.push('\n');
        }
        s
    }

    /// Barycentric subdivision. New vertex `k` is the barycenter of the old
    /// simplex `old[k] = (dim, index)`.
    pub fn barycentric_subdivision(&self) -> (SimplicialComplex, Vec<(usize, usize)>) {
        let mut old = Vec::new();
        let mut labels = Vec::new();
        let mut offset = Vec::new();
        for (d, ss) in self.simplices.iter().enumerate() {
            offset.push(old.len());
            for (i, s) in ss.iter().enumerate() {
                old.push((d, i));
                labels.push(if d == 0 {
                    self.labels[s[0]].clone()
                } else {
                    let n: Vec<&str> = s.iter().map(|&v| self.labels[v].as_str()).collect();
                    format!("[{}]", n.join(","))
                });
            }
        }
        let index = self.index_maps();
        // Chains of faces, built from the top element downwards.
        let mut all = Vec::new();
        let mut chains_top: Vec<Vec<Vec<Vec<usize>>>> = Vec::new();
        for (d, ss) in self.simplices.iter().enumerate() {
            let mut level = Vec::with_capacity(ss.len());
            for (i, s) in ss.iter().enumerate() {
                let me = offset[d] + i;
                let mut chains = vec![vec![me]];
                if d > 0 {
                    for mask in 1u64..(1 << s.len()) - 1 {
                        let f = subset(s, mask);
                        let fd = f.len() - 1;
                        let fi = index[fd][&f];
                        for ch in &chains_top[fd][fi] {
                            let mut c = ch.clone();
                            c.push(me);
                            chains.push(c);
                        }
                    }
                }
                for c in &chains {
                    let mut c = c.clone();
                    c.sort_unstable();
                    all.push(c);
                }
                level.push(chains);
            }
            chains_top.push(level);
        }
        (SimplicialComplex::from_closed(labels, all), old)
    }

    /// Whether `f` sends every simplex to a simplex of the same dimension.
    pub fn is_simplicial_automorphism(&self, f: &[usize]) -> bool {
        f.len() == self.num_vertices()
            && self.simplices.iter().flatten().all(|s| {
                let img: BTreeSet<usize> = s.iter().map(|&v| f[v]).collect();
                img.len() == s.len() && self.contains(&img.into_iter().collect::<Vec<_>>())
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tetrahedron_boundary() {
        let k = SimplicialComplex::from_facets(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        assert_eq!(k.counts(), vec![4, 6, 4]);
        assert_eq!(k.euler_characteristic(), 2);
        assert_eq!(k.facets().len(), 4);
        let (b, old) = k.barycentric_subdivision();
        assert_eq!(b.counts(), vec![14, 36, 24]);
        assert_eq!(old.len(), 14);
    }

    #[test]
    fn serde_round_trip() {
        let k = SimplicialComplex::from_facets(3, vec![vec![0, 1], vec![1, 2]]).unwrap();
        let s = serde_json::to_string(&k).unwrap();
        let back: SimplicialComplex = serde_json::from_str(&s).unwrap();
        assert_eq!(k, back);
    }
}
