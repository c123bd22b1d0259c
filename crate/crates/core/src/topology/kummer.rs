//! The kernel of summation `{(v_1, …, v_{n+1}) : Σ v_i = 0}` on a product of
//! circles or 2-tori, with the symmetric group permuting coordinates.
//!
//! On the circle `R/Z` each coordinate is cut at the grid `(1/N)Z` with
//! `N = n + 2`. A cell is a type vector: entry `2k` means `v_i = k/N`, entry
//! `2k + 1` means `v_i ∈ (k/N, (k+1)/N)`. Cells are convex and lie in a box of
//! side `1/N`, so this is a regular cell complex invariant under all
//! coordinate permutations.

use std::collections::HashMap;

use super::{product_complex, CellComplex, GroupAction, SimplicialComplex};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct KernelComplex {
    pub n: usize,
    pub complex: CellComplex,
    /// The symmetric group `S_{n+1}` as permutations of cells, which are also
    /// the vertices of the order complex.
    pub action: GroupAction,
}

impl KernelComplex {
    pub fn order_complex(&self) -> SimplicialComplex {
        self.complex.order_complex()
    }
}

fn closure_types(t: usize, m: usize) -> [usize; 2] {
    // Endpoints of an open interval type, modulo m = 2N.
    [(t + m - 1) % m, (t + 1) % m]
}

/// The circle kernel. `drop` is the coordinate eliminated through the sum
/// condition when enumerating cells; the result does not depend on it up to
/// relabeling.
pub fn circle_kernel(n: usize, drop: usize) -> Result<KernelComplex> {
    if n == 0 || drop > n {
        return Err(Error::DimensionMismatch(format!("kernel of {} coordinates, drop {drop}", n + 1)));
    }
    let grid = (n + 2) as i64;
    let m = 2 * grid as usize;
    let free: Vec<usize> = (0..=n).filter(|&i| i != drop).collect();
    let mut types: Vec<Vec<usize>> = Vec::new();
    let mut dims = Vec::new();
    let mut t = vec![0usize; n];
    loop {
        // Range of Σ v_i over the free coordinates, in units of 1/N.
        let lo: i64 = t.iter().map(|&x| (x / 2) as i64).sum();
        let open = t.iter().filter(|&&x| x % 2 == 1).count();
        let hi = lo + open as i64;
        let mut drop_types = Vec::new();
        if open == 0 {
            drop_types.push((2 * (-lo).rem_euclid(grid)) as usize);
        } else {
            for j in -hi..-lo {
                drop_types.push((2 * j.rem_euclid(grid) + 1) as usize);
                if j > -hi {
                    drop_types.push((2 * j.rem_euclid(grid)) as usize);
                }
            }
        }
        for d in drop_types {
            let mut full = vec![0; n + 1];
            for (k, &i) in free.iter().enumerate() {
                full[i] = t[k];
            }
            full[drop] = d;
            let dim = if open == 0 { 0 } else if d % 2 == 0 { open - 1 } else { open };
            types.push(full);
            dims.push(dim);
        }
        // Next type vector of the free coordinates.
        let mut k = 0;
        while k < n {
            t[k] += 1;
            if t[k] < m {
                break;
            }
            t[k] = 0;
            k += 1;
        }
        if k == n {
            break;
        }
    }
    let index: HashMap<Vec<usize>, usize> = types.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let mut facets = vec![Vec::new(); types.len()];
    for (c, tc) in types.iter().enumerate() {
        if dims[c] == 0 {
            continue;
        }
        // Faces: replace some open coordinates by an endpoint.
        let opens: Vec<usize> = (0..=n).filter(|&i| tc[i] % 2 == 1).collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; opens.len()];
        loop {
            let mut u = tc.clone();
            for (k, &i) in opens.iter().enumerate() {
                if choice[k] > 0 {
                    u[i] = closure_types(tc[i], m)[choice[k] - 1];
                }
            }
            if let Some(&f) = index.get(&u) {
                if dims[f] + 1 == dims[c] {
                    out.push(f);
                }
            }
            let mut k = 0;
            while k < opens.len() {
                choice[k] += 1;
                if choice[k] < 3 {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
            if k == opens.len() {
                break;
            }
        }
        out.sort_unstable();
        out.dedup();
        facets[c] = out;
    }
    let labels = types
        .iter()
        .map(|t| t.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("."))
        .collect();
    let complex = CellComplex::checked(dims, facets, labels)?;
    let permute = |p: &[usize]| -> Vec<usize> {
        types
            .iter()
            .map(|t| {
                let u: Vec<usize> = p.iter().map(|&i| t[i]).collect();
                index[&u]
            })
            .collect()
    };
    let mut swap: Vec<usize> = (0..=n).collect();
    swap.swap(0, 1);
    let cycle: Vec<usize> = (1..=n).chain([0]).collect();
    let action = GroupAction::generate(types.len(), &[permute(&swap), permute(&cycle)])?;
    Ok(KernelComplex { n, complex, action })
}

/// The kernel on `(R²/Z²)^{n+1}`: the product of two circle kernels with
/// the diagonal action.
pub fn torus_kernel(n: usize, drop: usize, max_cells: usize) -> Result<KernelComplex> {
    let c = circle_kernel(n, drop)?;
    let count = c.complex.len() * c.complex.len();
    if count > max_cells {
        return Err(Error::SizeCapExceeded {
            what: "cells".into(),
            count,
            cap: max_cells,
        });
    }
    let (prod, tuples) = product_complex(&[&c.complex, &c.complex]);
    let k = c.complex.len();
    let elements = c
        .action
        .elements
        .iter()
        .map(|g| tuples.iter().map(|t| g[t[0]] * k + g[t[1]]).collect())
        .collect();
    Ok(KernelComplex {
        n,
        complex: prod,
        action: GroupAction { elements },
    })
}

/// The triangulated torus kernel with its `S_{n+1}` action.
pub fn kummer_kernel(n: usize, max_simplices: usize) -> Result<(SimplicialComplex, GroupAction)> {
    let k = torus_kernel(n, n, max_simplices)?;
    let flags = k.complex.flag_count();
    if flags > max_simplices {
        return Err(Error::SizeCapExceeded {
            what: "simplices".into(),
            count: flags,
            cap: max_simplices,
        });
    }
    Ok((k.order_complex(), k.action))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_counts() {
        let c = circle_kernel(1, 1).unwrap();
        assert_eq!(c.complex.counts(), vec![3, 3]);
        assert_eq!(c.action.order(), 2);
        let c2 = circle_kernel(2, 2).unwrap();
        assert_eq!(c2.complex.counts(), vec![16, 48, 32]);
        assert_eq!(c2.action.order(), 6);
        for g in &c2.action.elements {
            assert!(c2.complex.is_automorphism(g));
        }
    }

    #[test]
    fn drop_choice_gives_same_cells() {
        let a = circle_kernel(2, 2).unwrap();
        let b = circle_kernel(2, 1).unwrap();
        let mut la = a.complex.labels.clone();
        let mut lb = b.complex.labels.clone();
        la.sort();
        lb.sort();
        assert_eq!(la, lb);
    }
}
