//! Triangulations of the cone over `Δ^{n1-1} × Δ^{n2-1}`, spanned by the
//! vectors `x_ij = e_i + f_j`. Maximal simplices correspond to spanning
//! trees of the complete bipartite graph `K_{n1,n2}`.

use crate::cone::{pulling_triangulation, FaceLattice};
use crate::lattice::{self, IMat, IVec};
use crate::lp::open_cones_meet;
use crate::{Error, Result};

/// A spanning tree as a list of edges `(i, j)` with `i < n1`, `j < n2`.
pub type Tree = Vec<(usize, usize)>;

pub fn edge_vector(n1: usize, n2: usize, (i, j): (usize, usize)) -> IVec {
    let mut v = vec![0; n1 + n2];
    v[i] = 1;
    v[n1 + j] = 1;
    v
}

fn all_edges(n1: usize, n2: usize) -> Vec<(usize, usize)> {
    (0..n1).flat_map(|i| (0..n2).map(move |j| (i, j))).collect()
}

fn check_tree(n1: usize, n2: usize, t: &Tree) -> Result<()> {
    let n = n1 + n2;
    if t.len() != n - 1 {
        return Err(Error::NotSpanningTree(format!(
            "{} edges, expected {}",
            t.len(),
            n - 1
        )));
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(i, j) in t {
        if i >= n1 || j >= n2 {
            return Err(Error::NotSpanningTree(format!("edge ({i},{j}) out of range")));
        }
        let (a, b) = (find(&mut parent, i), find(&mut parent, n1 + j));
        if a == b {
            return Err(Error::NotSpanningTree(format!("edge ({i},{j}) closes a cycle")));
        }
        parent[a] = b;
    }
    Ok(())
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Checks that `trees` subdivide the cone over `K_{n1,n2}` and returns
/// whether every tree cone is unimodular in the lattice generated by all
/// `x_ij`.
pub fn bipartite_unimodularity_check(n1: usize, n2: usize, subdivision: &[Tree]) -> Result<bool> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::NotSpanningTree("empty side".into()));
    }
    for t in subdivision {
        check_tree(n1, n2, t)?;
    }
    let d = n1 + n2;
    let all: IMat = all_edges(n1, n2).into_iter().map(|e| edge_vector(n1, n2, e)).collect();
    let basis = lattice::lattice_basis(&all, d);
    let coords = |t: &Tree| -> IMat {
        t.iter()
            .map(|&e| lattice::coords_in_basis(&basis, &edge_vector(n1, n2, e)).unwrap())
            .collect()
    };
    let dets: Vec<i64> = subdivision.iter().map(|t| lattice::det(&coords(t)).abs()).collect();
    // Normalized volume of a product of simplices.
    let total = binomial(n1 + n2 - 2, n1 - 1);
    let sum: i64 = dets.iter().sum();
    if sum != total {
        return Err(Error::NotASubdivision(format!(
            "tree volumes sum to {sum}, the cone has volume {total}"
        )));
    }
    let vecs: Vec<IMat> = subdivision
        .iter()
        .map(|t| t.iter().map(|&e| edge_vector(n1, n2, e)).collect())
        .collect();
    for a in 0..vecs.len() {
        for b in a + 1..vecs.len() {
            if open_cones_meet(&vecs[a], &vecs[b], d) {
                return Err(Error::NotASubdivision(format!("trees {a} and {b} overlap")));
            }
        }
    }
    Ok(dets.iter().all(|&x| x == 1))
}

/// The pulling triangulation of the cone over `K_{n1,n2}` for the given
/// order of edges (indices into the row-major edge list).
pub fn pulling_trees(n1: usize, n2: usize, order: &[usize]) -> Vec<Tree> {
    let edges = all_edges(n1, n2);
    let d = n1 + n2;
    let all: IMat = edges.iter().map(|&e| edge_vector(n1, n2, e)).collect();
    let basis = lattice::lattice_basis(&all, d);
    let local: IMat = all
        .iter()
        .map(|v| lattice::coords_in_basis(&basis, v).unwrap())
        .collect();
    let lat = FaceLattice::new(&local, basis.len());
    // Every x_ij is an extreme ray; map lattice ray indices back to edges.
    let ray_edge: Vec<usize> = lat
        .rays
        .iter()
        .map(|r| local.iter().position(|v| v == r).unwrap())
        .collect();
    let ray_order: Vec<usize> = order
        .iter()
        .map(|e| ray_edge.iter().position(|x| x == e).unwrap())
        .collect();
    pulling_triangulation(&lat, &ray_order)
        .into_iter()
        .map(|s| {
            let mut t: Tree = s.iter().map(|&i| edges[ray_edge[i]]).collect();
            t.sort();
            t
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_subdivisions_are_unimodular() {
        let a = pulling_trees(2, 2, &[0, 1, 2, 3]);
        let b = pulling_trees(2, 2, &[1, 0, 2, 3]);
        assert_eq!(a.len(), 2);
        assert_ne!(a, b);
        assert!(bipartite_unimodularity_check(2, 2, &a).unwrap());
        assert!(bipartite_unimodularity_check(2, 2, &b).unwrap());
    }

    #[test]
    fn star_is_trivial() {
        let t = pulling_trees(1, 4, &[0, 1, 2, 3]);
        assert_eq!(t.len(), 1);
        assert!(bipartite_unimodularity_check(1, 4, &t).unwrap());
    }

    #[test]
    fn bad_inputs() {
        let cyc = vec![vec![(0, 0), (0, 1), (1, 0), (1, 1)]];
        assert!(matches!(
            bipartite_unimodularity_check(2, 2, &cyc),
            Err(Error::NotSpanningTree(_))
        ));
        let a = pulling_trees(2, 2, &[0, 1, 2, 3]);
        let b = pulling_trees(2, 2, &[1, 0, 2, 3]);
        let mixed = vec![a[0].clone(), b[0].clone()];
        assert!(matches!(
            bipartite_unimodularity_check(2, 2, &mixed),
            Err(Error::NotASubdivision(_))
        ));
        assert!(matches!(
            bipartite_unimodularity_check(2, 2, &a[..1]),
            Err(Error::NotASubdivision(_))
        ));
    }
}
