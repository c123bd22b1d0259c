//! Rational polyhedral cones in a lattice `Z^r`: facets, extreme rays, the
//! face lattice, pulling triangulations and Hilbert bases.
//!
//! All routines here expect a pointed cone of full dimension `r` unless
//! stated otherwise.

use std::collections::{BTreeSet, HashSet};

use crate::lattice::{self, det, dot, integer_kernel, primitive, IMat, IVec};

/// Calls `f` on every `k`-subset of `0..n` in lexicographic order.
pub(crate) fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        f(&idx);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 && idx[0] == n - k {
                return;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Primitive inward facet normals of the full-dimensional cone spanned by `gens`.
pub fn facets(gens: &[IVec], r: usize) -> IMat {
    let mut out: Vec<IVec> = Vec::new();
    let mut seen = HashSet::new();
    let distinct: Vec<IVec> = {
        let mut s = BTreeSet::new();
        for g in gens {
            if !lattice::is_zero(g) {
                s.insert(primitive(g));
            }
        }
        s.into_iter().collect()
    };
    if r == 0 {
        return out;
    }
    for_each_subset(distinct.len(), r - 1, |sub| {
        let rows: Vec<IVec> = sub.iter().map(|&i| distinct[i].clone()).collect();
        let ker = integer_kernel(&rows, r);
        if ker.len() != 1 {
            return;
        }
        let mut n = primitive(&ker[0]);
        let vals: Vec<i64> = distinct.iter().map(|g| dot(&n, g)).collect();
        if vals.iter().all(|&v| v >= 0) {
        } else if vals.iter().all(|&v| v <= 0) {
            n = lattice::vscale(-1, &n);
        } else {
            return;
        }
        if seen.insert(n.clone()) {
            out.push(n);
        }
    });
    out.sort();
    out
}

pub fn in_cone(normals: &[IVec], v: &[i64]) -> bool {
    normals.iter().all(|n| dot(n, v) >= 0)
}

pub fn in_interior(normals: &[IVec], v: &[i64]) -> bool {
    normals.iter().all(|n| dot(n, v) > 0)
}

/// Primitive extreme rays of the pointed full-dimensional cone spanned by `gens`.
pub fn extreme_rays(gens: &[IVec], normals: &[IVec], r: usize) -> IMat {
    let mut out = BTreeSet::new();
    for g in gens {
        if lattice::is_zero(g) {
            continue;
        }
        let tight: Vec<IVec> = normals
            .iter()
            .filter(|n| dot(n, g) == 0)
            .cloned()
            .collect();
        if r == 1 || lattice::rank(&tight, r) == r - 1 {
            out.insert(primitive(g));
        }
    }
    out.into_iter().collect()
}

/// The face lattice of a pointed full-dimensional cone, each face given by
/// the sorted indices of the extreme rays it contains. Includes the apex
/// (empty set) and the cone itself. Sorted by dimension, then lexicographically.
#[derive(Debug, Clone)]
pub struct FaceLattice {
    pub rays: IMat,
    pub normals: IMat,
    pub faces: Vec<Vec<usize>>,
    pub dims: Vec<usize>,
}

impl FaceLattice {
    pub fn new(gens: &[IVec], r: usize) -> Self {
        let normals = facets(gens, r);
        let rays = extreme_rays(gens, &normals, r);
        Self::from_rays_and_normals(rays, normals, r)
    }

    pub fn from_rays_and_normals(rays: IMat, normals: IMat, r: usize) -> Self {
        let full: Vec<usize> = (0..rays.len()).collect();
        let facet_sets: Vec<Vec<usize>> = normals
            .iter()
            .map(|n| full.iter().copied().filter(|&i| dot(n, &rays[i]) == 0).collect())
            .collect();
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        found.insert(full.clone());
        let mut stack = vec![full];
        while let Some(f) = stack.pop() {
            for fs in &facet_sets {
                let g: Vec<usize> = f.iter().copied().filter(|i| fs.contains(i)).collect();
                if found.insert(g.clone()) {
                    stack.push(g);
                }
            }
        }
        let mut faces: Vec<(usize, Vec<usize>)> = found
            .into_iter()
            .map(|f| {
                let rs: Vec<IVec> = f.iter().map(|&i| rays[i].clone()).collect();
                (lattice::rank(&rs, r), f)
            })
            .collect();
        faces.sort();
        let dims = faces.iter().map(|(d, _)| *d).collect();
        let faces = faces.into_iter().map(|(_, f)| f).collect();
        FaceLattice {
            rays,
            normals,
            faces,
            dims,
        }
    }

    /// Faces of dimension `dim(face) - 1` contained in `face`.
    pub fn facets_of(&self, face: usize) -> Vec<usize> {
        let d = self.dims[face];
        (0..self.faces.len())
            .filter(|&g| {
                self.dims[g] + 1 == d && self.faces[g].iter().all(|i| self.faces[face].contains(i))
            })
            .collect()
    }

    pub fn index_of(&self, rays: &[usize]) -> Option<usize> {
        self.faces.iter().position(|f| f == rays)
    }
}

/// Pulling triangulation of a face of `lat` using the ray order `order`
/// (earlier rays are pulled first). Returns maximal simplicial cones as
/// sorted ray-index sets.
pub fn pulling_triangulation(lat: &FaceLattice, order: &[usize]) -> Vec<Vec<usize>> {
    let top = lat.faces.len() - 1;
    let mut out = triangulate_face(lat, top, order);
    for s in &mut out {
        s.sort_unstable();
    }
    out.sort();
    out
}

fn triangulate_face(lat: &FaceLattice, face: usize, order: &[usize]) -> Vec<Vec<usize>> {
    let rays = &lat.faces[face];
    let d = lat.dims[face];
    if rays.len() == d {
        return vec![rays.clone()];
    }
    let v = *order
        .iter()
        .find(|i| rays.contains(i))
        .expect("ray order must cover the face");
    let mut out = Vec::new();
    for g in lat.facets_of(face) {
        if lat.faces[g].contains(&v) {
            continue;
        }
        for mut s in triangulate_face(lat, g, order) {
            s.push(v);
            out.push(s);
        }
    }
    out
}

/// Lattice points of `Z^r` in the half-open parallelepiped spanned by the
/// linearly independent primitive vectors `rays` (`r` of them).
pub fn parallelepiped_points(rays: &[IVec], r: usize) -> IMat {
    // Coset representatives of Z^r / L with L the row lattice of `rays`.
    let basis = lattice::lattice_basis(rays, r);
    debug_assert_eq!(basis.len(), r);
    let diag: Vec<i64> = (0..r).map(|i| basis[i][i]).collect();
    let vol = det(rays).abs();
    // a[j][i] = vol * (coefficient of rays[i] in e_j) = ±adj(R)[j][i].
    let sign = det(rays).signum();
    let minor = |skip_r: usize, skip_c: usize| -> IMat {
        rays.iter()
            .enumerate()
            .filter(|(i, _)| *i != skip_r)
            .map(|(_, row)| row.iter().enumerate().filter(|(j, _)| *j != skip_c).map(|(_, &x)| x).collect())
            .collect()
    };
    let adj: Vec<Vec<i128>> = (0..r)
        .map(|j| {
            (0..r)
                .map(|i| {
                    let c = if (i + j) % 2 == 0 { 1 } else { -1 };
                    (sign * c * det(&minor(i, j))) as i128
                })
                .collect()
        })
        .collect();
    let d = vol as i128;
    let mut out = Vec::with_capacity(vol as usize);
    let mut x = vec![0i64; r];
    loop {
        // x = Σ λ_i ray_i; keep Σ frac(λ_i) ray_i.
        let mut p = vec![0i128; r];
        for i in 0..r {
            let num: i128 = (0..r).map(|j| x[j] as i128 * adj[j][i]).sum();
            let fr = num.rem_euclid(d);
            for (pj, &rj) in p.iter_mut().zip(&rays[i]) {
                *pj += fr * rj as i128;
            }
        }
        out.push(
            p.iter()
                .map(|&v| {
                    debug_assert_eq!(v % d, 0);
                    i64::try_from(v / d).expect("lattice arithmetic overflow")
                })
                .collect(),
        );
        // next box vector 0 <= x_i < diag_i
        let mut i = 0;
        loop {
            if i == r {
                out.sort();
                out.dedup();
                debug_assert_eq!(out.len() as i64, vol);
                return out;
            }
            x[i] += 1;
            if x[i] < diag[i] {
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

/// Hilbert basis of the saturated monoid `cone(gens) ∩ Z^r` for a pointed
/// full-dimensional cone. Candidates come from the parallelepipeds of a
/// pulling triangulation; the irreducible ones are kept.
pub fn hilbert_basis(gens: &[IVec], r: usize) -> IMat {
    if r == 0 {
        return Vec::new();
    }
    let lat = FaceLattice::new(gens, r);
    hilbert_basis_of_lattice(&lat, r)
}

pub fn hilbert_basis_of_lattice(lat: &FaceLattice, r: usize) -> IMat {
    let order: Vec<usize> = (0..lat.rays.len()).collect();
    let simplices = pulling_triangulation(lat, &order);
    let mut cand: BTreeSet<IVec> = lat.rays.iter().cloned().collect();
    for s in &simplices {
        let rs: Vec<IVec> = s.iter().map(|&i| lat.rays[i].clone()).collect();
        for p in parallelepiped_points(&rs, r) {
            if !lattice::is_zero(&p) {
                cand.insert(p);
            }
        }
    }
    let cand: Vec<IVec> = cand.into_iter().collect();
    irreducible_elements(&cand, &lat.normals)
}

/// Elements of `cand` that are not `y + z` with `y` in `cand \ {x}` and `z`
/// in the cone (`cand` must contain the Hilbert basis).
pub fn irreducible_elements(cand: &[IVec], normals: &[IVec]) -> IMat {
    let mut out: Vec<IVec> = cand
        .iter()
        .filter(|x| {
            !cand.iter().any(|y| {
                y != *x && in_cone(normals, &lattice::vsub(x, y))
            })
        })
        .cloned()
        .collect();
    out.sort();
    out
}
