//! Oracles and model families shared by the integration tests. Nothing here
//! calls into the library's own algorithms for the values it checks.
#![allow(dead_code)]

use std::collections::BTreeSet;

use katoskel::fan::{Stratum, StratifiedModel};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Graph shapes of the special fiber used in the product sweep.
pub const SHAPES: &[&str] = &["point", "edge", "double", "path", "cycle", "filled"];

fn shape_size(shape: &str) -> usize {
    match shape {
        "point" => 1,
        "edge" | "double" => 2,
        _ => 3,
    }
}

/// A model whose vertical components `E1..Ek` meet along `shape`, with the
/// given multiplicities and optionally a horizontal section `H` through `E1`.
pub fn shaped_model(shape: &str, mults: &[i64], section: bool) -> StratifiedModel {
    let k = shape_size(shape);
    assert_eq!(mults.len(), k);
    let names: Vec<String> = (1..=k).map(|i| format!("E{i}")).collect();
    let mut comps: Vec<_> = names.iter().zip(mults).map(|(n, &m)| StratifiedModel::vertical(n, m)).collect();
    let mut strata: Vec<Vec<&str>> = names.iter().map(|n| vec![n.as_str()]).collect();
    match shape {
        "edge" => strata.push(vec!["E1", "E2"]),
        "path" => strata.extend([vec!["E1", "E2"], vec!["E2", "E3"]]),
        "cycle" => strata.extend([vec!["E1", "E2"], vec!["E2", "E3"], vec!["E1", "E3"]]),
        "filled" => strata.extend([vec!["E1", "E2"], vec!["E2", "E3"], vec!["E1", "E3"], vec!["E1", "E2", "E3"]]),
        _ => {}
    }
    if section {
        comps.push(StratifiedModel::horizontal("H"));
        strata.extend([vec!["H"], vec!["H", "E1"]]);
    }
    let refs: Vec<&[&str]> = strata.iter().map(|s| s.as_slice()).collect();
    let mut m = StratifiedModel::simple(comps, &refs);
    if shape == "double" {
        m.strata.push(Stratum {
            components: vec!["E1".into(), "E2".into()],
            branches: vec!["p".into(), "q".into()],
        });
    }
    m
}

/// Every shaped model with multiplicities in `1..=max_mult`.
pub fn model_family(max_mult: i64) -> Vec<(String, StratifiedModel)> {
    let mut out = Vec::new();
    for shape in SHAPES {
        let k = shape_size(shape) as u32;
        let mm = max_mult as usize;
        for code in 0..mm.pow(k) {
            let mults: Vec<i64> = (0..k).map(|i| (code / mm.pow(i) % mm) as i64 + 1).collect();
            for section in [false, true] {
                let name = format!("{shape}{mults:?}{}", if section { "+H" } else { "" });
                out.push((name, shaped_model(shape, &mults, section)));
            }
        }
    }
    out
}

// ---- Hilbert bases by brute force ----

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        2 => m[0][0] * m[1][1] - m[0][1] * m[1][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

/// Row-reduced integer basis of the span of `vs` (echelon form by gcd steps).
pub fn integer_row_basis(vs: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = vs.iter().filter(|v| v.iter().any(|&x| x != 0)).cloned().collect();
    let mut basis = Vec::new();
    for col in 0..n {
        loop {
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&i) = nz.first() {
                    let mut r = rows.remove(i);
                    if r[col] < 0 {
                        r.iter_mut().for_each(|x| *x = -*x);
                    }
                    basis.push(r);
                }
                break;
            }
            nz.sort_by_key(|&i| rows[i][col].abs());
            let p = nz[0];
            for &i in &nz[1..] {
                let q = rows[i][col] / rows[p][col];
                let pr = rows[p].clone();
                rows[i].iter_mut().zip(&pr).for_each(|(x, y)| *x -= q * y);
            }
            rows.retain(|r| r.iter().any(|&x| x != 0));
        }
    }
    basis
}

/// Whether `v` is an integer combination of the echelon `basis`.
pub fn in_lattice(basis: &[Vec<i64>], v: &[i64]) -> bool {
    let mut v = v.to_vec();
    for b in basis {
        let col = b.iter().position(|&x| x != 0).unwrap();
        if v[col] % b[col] != 0 {
            return false;
        }
        let q = v[col] / b[col];
        v.iter_mut().zip(b).for_each(|(x, y)| *x -= q * y);
    }
    v.iter().all(|&x| x == 0)
}

/// Whether `v` is a nonnegative real combination of `gens`, by Carathéodory:
/// some linearly independent subset writes `v` with nonnegative coefficients.
pub fn in_cone(gens: &[Vec<i64>], v: &[i64]) -> bool {
    let n = v.len();
    if v.iter().all(|&x| x == 0) {
        return true;
    }
    let g = gens.len();
    for mask in 1u32..(1 << g) {
        let sub: Vec<&Vec<i64>> = (0..g).filter(|i| mask >> i & 1 == 1).map(|i| &gens[i]).collect();
        let k = sub.len();
        if k > n {
            continue;
        }
        // Pick k coordinates where the subset is independent and solve by Cramer.
        let coords: Vec<usize> = (0..n).collect();
        let mut solved = false;
        for cmask in 1u32..(1 << n) {
            if cmask.count_ones() as usize != k {
                continue;
            }
            let cs: Vec<usize> = coords.iter().copied().filter(|c| cmask >> c & 1 == 1).collect();
            let a: Vec<Vec<i64>> = cs.iter().map(|&c| sub.iter().map(|s| s[c]).collect()).collect();
            let d = det(&a);
            if d == 0 {
                continue;
            }
            solved = true;
            // λ_j = det(A_j) / d
            let lambda: Vec<(i64, i64)> = (0..k)
                .map(|j| {
                    let aj: Vec<Vec<i64>> = cs
                        .iter()
                        .enumerate()
                        .map(|(r, &c)| (0..k).map(|jj| if jj == j { v[c] } else { a[r][jj] }).collect())
                        .collect();
                    (det(&aj), d)
                })
                .collect();
            if lambda.iter().any(|&(num, den)| num * den.signum() < 0) {
                break;
            }
            // Check the remaining coordinates.
            let ok = (0..n).all(|c| {
                let lhs: i64 = (0..k).map(|j| lambda[j].0 * sub[j][c]).sum();
                lhs == v[c] * d
            });
            if ok {
                return true;
            }
            break;
        }
        let _ = solved;
    }
    false
}

/// Whether the cone contains no line: a line forces `-g` into the cone for
/// some generator `g`.
pub fn is_pointed(gens: &[Vec<i64>]) -> bool {
    gens.iter().all(|g| !in_cone(gens, &g.iter().map(|x| -x).collect::<Vec<_>>()))
}

/// A functional positive on every generator of a pointed cone, searched in
/// growing boxes.
pub fn positive_functional(gens: &[Vec<i64>], n: usize) -> Option<Vec<i64>> {
    if !is_pointed(gens) {
        return None;
    }
    let mut r = 1i64;
    loop {
        let mut c = vec![-r; n];
        loop {
            if gens.iter().all(|g| g.iter().zip(&c).map(|(a, b)| a * b).sum::<i64>() > 0) {
                return Some(c);
            }
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                if c[i] < r {
                    c[i] += 1;
                    break;
                }
                c[i] = -r;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        r *= 2;
    }
}

/// Minimal generators of `cone(gens) ∩ ZZ gens`, by enumerating the lattice
/// points of the bounding box of the zonotope `Σ [0,1] g` in degree order.
/// `None` if the cone is not pointed.
pub fn brute_force_hilbert_basis(gens: &[Vec<i64>], n: usize) -> Option<BTreeSet<Vec<i64>>> {
    let gens: Vec<Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).cloned().collect();
    let phi = positive_functional(&gens, n)?;
    let basis = integer_row_basis(&gens, n);
    let lo: Vec<i64> = (0..n).map(|c| gens.iter().map(|g| g[c].min(0)).sum()).collect();
    let hi: Vec<i64> = (0..n).map(|c| gens.iter().map(|g| g[c].max(0)).sum()).collect();
    let mut pts = Vec::new();
    let mut p = lo.clone();
    'outer: loop {
        if p.iter().any(|&x| x != 0) && in_lattice(&basis, &p) && in_cone(&gens, &p) {
            pts.push(p.clone());
        }
        for i in 0..n {
            if p[i] < hi[i] {
                p[i] += 1;
                continue 'outer;
            }
            p[i] = lo[i];
        }
        break;
    }
    let deg = |v: &Vec<i64>| v.iter().zip(&phi).map(|(a, b)| a * b).sum::<i64>();
    pts.sort_by_key(deg);
    let mut hb: Vec<Vec<i64>> = Vec::new();
    for x in pts {
        let reducible = hb.iter().any(|h| {
            let d: Vec<i64> = x.iter().zip(h).map(|(a, b)| a - b).collect();
            in_lattice(&basis, &d) && in_cone(&gens, &d)
        });
        if !reducible {
            hb.push(x);
        }
    }
    Some(hb.into_iter().collect())
}

// ---- Smith invariants by determinantal divisors ----

fn big_det(m: Vec<Vec<BigInt>>) -> BigInt {
    // Bareiss elimination.
    let n = m.len();
    let mut a = m;
    let mut sign = BigInt::from(1);
    let mut prev = BigInt::from(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn choose(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn matrix_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            let f = a[i][c].clone();
            let pv = a[rank][c].clone();
            for j in 0..cols {
                a[i][j] = &a[i][j] * &pv - &f * &a[rank][j];
            }
        }
        rank += 1;
    }
    rank
}

/// Nonzero invariant factors of a small dense integer matrix as
/// `d_k / d_{k-1}`, where `d_k` is the gcd of the `k × k` minors.
pub fn invariant_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut prev = BigInt::from(1);
    for k in 1..=matrix_rank(m) {
        let mut g = BigInt::zero();
        for rs in choose(rows, k) {
            for cs in choose(cols, k) {
                let sub: Vec<Vec<BigInt>> =
                    rs.iter().map(|&r| cs.iter().map(|&c| BigInt::from(m[r][c])).collect()).collect();
                g = g.gcd(&big_det(sub));
                if g == BigInt::from(1) {
                    break;
                }
            }
            if g == BigInt::from(1) {
                break;
            }
        }
        if g.is_zero() {
            break;
        }
        out.push((&g / &prev).abs());
        prev = g;
    }
    out
}

/// Betti numbers and torsion of a simplicial complex given by all its
/// simplices (sorted vertex lists), via determinantal divisors. Small inputs only.
pub fn homology_oracle(simplices: &[Vec<usize>]) -> Vec<(usize, Vec<BigInt>)> {
    let top = simplices.iter().map(|s| s.len()).max().unwrap_or(1) - 1;
    let by_dim: Vec<Vec<&Vec<usize>>> =
        (0..=top).map(|d| simplices.iter().filter(|s| s.len() == d + 1).collect()).collect();
    let boundary = |d: usize| -> Vec<Vec<i64>> {
        // rows: (d-1)-simplices, cols: d-simplices
        let lower = &by_dim[d - 1];
        let mut m = vec![vec![0i64; by_dim[d].len()]; lower.len()];
        for (j, s) in by_dim[d].iter().enumerate() {
            for k in 0..s.len() {
                let mut f = (*s).clone();
                f.remove(k);
                let i = lower.iter().position(|t| **t == f).unwrap();
                m[i][j] = if k % 2 == 0 { 1 } else { -1 };
            }
        }
        m
    };
    let factors: Vec<Vec<BigInt>> = (0..=top + 1)
        .map(|d| if d == 0 || d > top { Vec::new() } else { invariant_factors(&boundary(d)) })
        .collect();
    (0..=top)
        .map(|d| {
            let cycles = by_dim[d].len() - factors[d].len();
            let betti = cycles - factors[d + 1].len();
            let torsion = factors[d + 1].iter().filter(|x| **x > BigInt::from(1)).cloned().collect();
            (betti, torsion)
        })
        .collect()
}

/// All faces of the given maximal simplices.
pub fn closure(maximal: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut all = BTreeSet::new();
    for s in maximal {
        for mask in 1u32..(1 << s.len()) {
            all.insert(s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect::<Vec<_>>());
        }
    }
    all.into_iter().collect()
}

/// The 6-vertex projective plane (half the icosahedron).
pub fn rp2_six() -> Vec<Vec<usize>> {
    vec![
        vec![0, 1, 2],
        vec![0, 2, 3],
        vec![0, 3, 4],
        vec![0, 4, 5],
        vec![0, 1, 5],
        vec![1, 2, 4],
        vec![2, 3, 5],
        vec![1, 3, 4],
        vec![1, 3, 5],
        vec![2, 4, 5],
    ]
}
