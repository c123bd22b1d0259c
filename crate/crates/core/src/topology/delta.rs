use std::collections::BTreeMap;

use super::SimplicialComplex;

/// A Δ-complex (semi-simplicial set): `faces[d][i][k]` is the index of the
/// `k`-th face of the `i`-th `d`-simplex, the face opposite vertex `k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeltaComplex {
    pub faces: Vec<Vec<Vec<usize>>>,
}

/// A sparse integer matrix stored by columns.
pub type SparseColumns = Vec<Vec<(usize, i64)>>;

impl DeltaComplex {
    pub fn from_simplicial(k: &SimplicialComplex) -> Self {
        let index = k.index_maps();
        let mut faces = Vec::new();
        for d in 0..=k.dim() {
            let level = k
                .simplices(d)
                .iter()
                .map(|s| {
                    if d == 0 {
                        return Vec::new();
                    }
                    (0..s.len())
                        .map(|j| {
                            let mut f = s.clone();
                            f.remove(j);
                            index[d - 1][&f]
                        })
                        .collect()
                })
                .collect();
            faces.push(level);
        }
        DeltaComplex { faces }
    }

    pub fn dim(&self) -> usize {
        self.faces.len().saturating_sub(1)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.faces.iter().map(|l| l.len()).collect()
    }

    pub fn total(&self) -> usize {
        self.faces.iter().map(|l| l.len()).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts()
            .iter()
            .enumerate()
            .map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// `∂_d : C_d → C_{d-1}` by columns. Empty for `d = 0`.
    pub fn boundary(&self, d: usize) -> SparseColumns {
        if d == 0 || d >= self.faces.len() {
            return vec![Vec::new(); self.faces.get(d).map_or(0, |l| l.len())];
        }
        self.faces[d]
            .iter()
            .map(|fs| {
                let mut m: BTreeMap<usize, i64> = BTreeMap::new();
                for (k, &f) in fs.iter().enumerate() {
                    *m.entry(f).or_insert(0) += if k % 2 == 0 { 1 } else { -1 };
                }
                m.into_iter().filter(|&(_, v)| v != 0).collect()
            })
            .collect()
    }

    /// Whether `∂_{d-1} ∘ ∂_d = 0` in every degree.
    pub fn boundary_squares_to_zero(&self) -> bool {
        (2..self.faces.len()).all(|d| {
            let hi = self.boundary(d);
            let lo = self.boundary(d - 1);
            hi.iter().all(|col| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(r, a) in col {
                    for &(s, b) in &lo[r] {
                        *acc.entry(s).or_insert(0) += a * b;
                    }
                }
                acc.values().all(|&v| v == 0)
            })
        })
    }
}

impl From<&SimplicialComplex> for DeltaComplex {
    fn from(k: &SimplicialComplex) -> Self {
        DeltaComplex::from_simplicial(k)
    }
}
