//! Integer and rational linear algebra on small dense matrices.
//!
//! Lattice vectors are `i64`; every product and sum goes through checked
//! arithmetic and aborts loudly on overflow instead of wrapping. Rational
//! work (solving, ranks) is done in `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type IVec = Vec<i64>;
pub type IMat = Vec<IVec>;
pub type QVec = Vec<BigRational>;

#[inline]
pub(crate) fn mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b).expect("lattice arithmetic overflow")
}

#[inline]
pub(crate) fn add(a: i64, b: i64) -> i64 {
    a.checked_add(b).expect("lattice arithmetic overflow")
}

#[inline]
pub(crate) fn sub(a: i64, b: i64) -> i64 {
    a.checked_sub(b).expect("lattice arithmetic overflow")
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).fold(0, |acc, (&x, &y)| add(acc, mul(x, y)))
}

pub fn vadd(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(&x, &y)| add(x, y)).collect()
}

pub fn vsub(a: &[i64], b: &[i64]) -> IVec {
    a.iter().zip(b).map(|(&x, &y)| sub(x, y)).collect()
}

pub fn vscale(c: i64, a: &[i64]) -> IVec {
    a.iter().map(|&x| mul(c, x)).collect()
}

pub fn is_zero(v: &[i64]) -> bool {
    v.iter().all(|&x| x == 0)
}

pub fn content(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides out the gcd of the entries. The zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> IVec {
    let g = content(v);
    if g == 0 {
        v.to_vec()
    } else {
        v.iter().map(|&x| x / g).collect()
    }
}

/// Matrix-vector product `m * v` where `m` is given by rows.
pub fn mat_vec(m: &[IVec], v: &[i64]) -> IVec {
    m.iter().map(|row| dot(row, v)).collect()
}

/// Transposed product `m^T * v`.
pub fn mat_t_vec(m: &[IVec], v: &[i64], cols: usize) -> IVec {
    let mut out = vec![0i64; cols];
    for (row, &c) in m.iter().zip(v) {
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(row) {
            *o = add(*o, mul(c, x));
        }
    }
    out
}

pub fn mat_mul(a: &[IVec], b: &[IVec], b_cols: usize) -> IMat {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .fold(0, |acc, (&x, brow)| add(acc, mul(x, brow[j])))
                })
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[IVec], cols: usize) -> IMat {
    (0..cols).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

pub fn identity(n: usize) -> IMat {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

/// Row Hermite normal form together with the unimodular transform.
///
/// Returns `(h, u)` with `u * m = h`, `h` in row echelon form with positive
/// pivots and entries above each pivot reduced into `[0, pivot)`. Zero rows
/// of `h` sit at the bottom, and the matching rows of `u` span the left
/// kernel of `m`.
pub fn hnf_with_transform(m: &[IVec], cols: usize) -> (IMat, IMat) {
    let rows = m.len();
    let mut h: IMat = m.to_vec();
    let mut u = identity(rows);
    let mut pivot_row = 0usize;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for col in 0..cols {
        if pivot_row >= rows {
            break;
        }
        // Euclid-style reduction of the column below pivot_row.
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..rows {
                if h[r][col] != 0 && best.is_none_or(|b| h[r][col].abs() < h[b][col].abs()) {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            h.swap(pivot_row, b);
            u.swap(pivot_row, b);
            let p = h[pivot_row][col];
            let mut done = true;
            for r in pivot_row + 1..rows {
                let x = h[r][col];
                if x != 0 {
                    let q = x.div_euclid(p);
                    let (hp, up) = (h[pivot_row].clone(), u[pivot_row].clone());
                    h[r] = vsub(&h[r], &vscale(q, &hp));
                    u[r] = vsub(&u[r], &vscale(q, &up));
                    if h[r][col] != 0 {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if h[pivot_row][col] == 0 {
            continue;
        }
        if h[pivot_row][col] < 0 {
            h[pivot_row] = vscale(-1, &h[pivot_row]);
            u[pivot_row] = vscale(-1, &u[pivot_row]);
        }
        pivots.push((pivot_row, col));
        pivot_row += 1;
    }
    // Reduce entries above pivots.
    for &(pr, pc) in &pivots {
        let p = h[pr][pc];
        for r in 0..pr {
            let q = h[r][pc].div_euclid(p);
            if q != 0 {
                let (hp, up) = (h[pr].clone(), u[pr].clone());
                h[r] = vsub(&h[r], &vscale(q, &hp));
                u[r] = vsub(&u[r], &vscale(q, &up));
            }
        }
    }
    (h, u)
}

/// Canonical basis (nonzero HNF rows) of the lattice spanned by `gens`.
pub fn lattice_basis(gens: &[IVec], cols: usize) -> IMat {
    let (h, _) = hnf_with_transform(gens, cols);
    h.into_iter().filter(|r| !is_zero(r)).collect()
}

/// A Z-basis of `{x in Z^n : a x = 0}` where `a` is given by rows.
pub fn integer_kernel(a: &[IVec], n: usize) -> IMat {
    if a.is_empty() {
        return identity(n);
    }
    let at = transpose(a, n);
    let (h, u) = hnf_with_transform(&at, a.len());
    h.iter()
        .zip(u)
        .filter(|(row, _)| is_zero(row))
        .map(|(_, urow)| urow)
        .collect()
}

/// Coordinates of `v` in the row basis `basis` if `v` lies in the integer
/// span, `None` otherwise.
pub fn coords_in_basis(basis: &[IVec], v: &[i64]) -> Option<IVec> {
    if let Some(pivots) = echelon_pivots(basis) {
        // Peel off one basis row per pivot column.
        let mut rest: Vec<i128> = v.iter().map(|&x| x as i128).collect();
        let mut c = Vec::with_capacity(basis.len());
        for (row, &p) in basis.iter().zip(&pivots) {
            if rest[..p].iter().any(|&x| x != 0) || rest[p] % row[p] as i128 != 0 {
                return None;
            }
            let k = rest[p] / row[p] as i128;
            for (x, &y) in rest.iter_mut().zip(row) {
                *x -= k * y as i128;
            }
            c.push(i64::try_from(k).expect("lattice arithmetic overflow"));
        }
        return rest.iter().all(|&x| x == 0).then_some(c);
    }
    let q = solve_rational_rows(basis, &to_q(v))?;
    q.iter()
        .map(|x| {
            if x.is_integer() {
                Some(i64::try_from(x.to_integer()).expect("lattice arithmetic overflow"))
            } else {
                None
            }
        })
        .collect()
}

/// Pivot columns if `rows` is in row echelon form.
fn echelon_pivots(rows: &[IVec]) -> Option<Vec<usize>> {
    let mut out: Vec<usize> = Vec::with_capacity(rows.len());
    for r in rows {
        let p = r.iter().position(|&x| x != 0)?;
        if out.last().is_some_and(|&q| q >= p) {
            return None;
        }
        out.push(p);
    }
    Some(out)
}

pub fn to_q(v: &[i64]) -> QVec {
    v.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect()
}

pub fn q(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

pub fn qdot(a: &[BigRational], b: &[i64]) -> BigRational {
    a.iter()
        .zip(b)
        .fold(BigRational::zero(), |acc, (x, &y)| acc + x * q(y))
}

pub fn qqdot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).fold(BigRational::zero(), |acc, (x, y)| acc + x * y)
}

/// Row reduction over Q. Returns the reduced row echelon form and pivot columns.
pub fn rref(m: &[QVec], cols: usize) -> (Vec<QVec>, Vec<usize>) {
    let mut a: Vec<QVec> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                let pr = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pr) {
                    *x = &*x - &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    (a, pivots)
}

pub fn rank(m: &[IVec], cols: usize) -> usize {
    rank_i128(m, cols).unwrap_or_else(|| {
        let qm: Vec<QVec> = m.iter().map(|r| to_q(r)).collect();
        rref(&qm, cols).1.len()
    })
}

/// Fraction-free elimination with rows kept primitive; `None` on overflow.
fn rank_i128(m: &[IVec], cols: usize) -> Option<usize> {
    let mut rows: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            let a = row[c];
            if a == 0 {
                continue;
            }
            let mut g = 0i128;
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = x.checked_mul(pivot[c])?.checked_sub(a.checked_mul(y)?)?;
                g = num_integer::Integer::gcd(&g, x);
            }
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    Some(rank)
}

/// Solves `sum_i x_i * rows[i] = v` over Q. Returns one solution (free
/// variables set to zero) or `None` when inconsistent.
pub fn solve_rational_rows(rows: &[IVec], v: &[BigRational]) -> Option<QVec> {
    let n = rows.len();
    let dim = v.len();
    // System: columns are the rows; equations indexed by coordinate.
    let aug: Vec<QVec> = (0..dim)
        .map(|j| {
            let mut e: QVec = rows.iter().map(|r| q(r[j])).collect();
            e.push(v[j].clone());
            e
        })
        .collect();
    solve_augmented(aug, n)
}

/// Solves `a x = b` with `a` given by integer rows and `b` rational.
pub fn solve_rational(a: &[IVec], b: &[BigRational], n: usize) -> Option<QVec> {
    let aug: Vec<QVec> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut e = to_q(row);
            e.push(bi.clone());
            e
        })
        .collect();
    solve_augmented(aug, n)
}

fn solve_augmented(aug: Vec<QVec>, n: usize) -> Option<QVec> {
    let (red, pivots) = rref(&aug, n + 1);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = red[i][n].clone();
    }
    Some(x)
}

/// Integral solution of `a x = b` when the rational solution (with free
/// variables set to zero) is integral.
pub fn solve_integer(a: &[IVec], b: &[i64], n: usize) -> Option<IVec> {
    let x = solve_rational(a, &to_q(b), n)?;
    x.iter()
        .map(|v| {
            v.is_integer()
                .then(|| i64::try_from(v.to_integer()).expect("lattice arithmetic overflow"))
        })
        .collect()
}

/// An integer matrix `s` with `p s = I` for a surjective `p: Z^n -> Z^k`
/// (given by `k` rows of length `n`).
pub fn right_inverse(p: &[IVec], n: usize) -> IMat {
    let k = p.len();
    let (h, u) = hnf_with_transform(&transpose(p, n), k);
    debug_assert!(h[..k] == identity(k)[..], "map is not surjective");
    // u p^T = [I; 0], so p u^T = [I 0].
    transpose(&u[..k], n)
}

/// Determinant of a square integer matrix (Bareiss, exact).
pub fn det(m: &[IVec]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| i128::from(x)).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j]
                    .checked_mul(a[k][k])
                    .and_then(|x| x.checked_sub(a[i][k].checked_mul(a[k][j])?))
                    .expect("lattice arithmetic overflow");
                a[i][j] = v / prev;
            }
        }
        prev = a[k][k];
    }
    i64::try_from(sign * a[n - 1][n - 1]).expect("lattice arithmetic overflow")
}

/// A unimodular matrix whose first row is the primitive vector `u`.
pub fn complete_to_unimodular(u: &[i64]) -> IMat {
    let n = u.len();
    debug_assert_eq!(content(u).abs(), 1);
    // Row operations U bring the column u^T to e_1: U u = e_1. Then U^{-1}
    // has u as first column, so its transpose has u as first row.
    let col: IMat = u.iter().map(|&x| vec![x]).collect();
    let (h, t) = hnf_with_transform(&col, 1);
    debug_assert_eq!(h[0][0], 1);
    let inv = inverse_unimodular(&t);
    transpose(&inv, n)
}

/// Inverse of a unimodular integer matrix.
pub fn inverse_unimodular(m: &[IVec]) -> IMat {
    let n = m.len();
    let (h, u) = hnf_with_transform(m, n);
    debug_assert!(h == identity(n), "matrix is not unimodular");
    // u m = I so u = m^{-1}.
    u
}

pub fn qvec_to_strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(rational_string).collect()
}

pub fn rational_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(BigRational::new(n, d))
    } else {
        Some(BigRational::from_integer(s.parse().ok()?))
    }
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return a.max(b).abs();
    }
    mul(a / a.gcd(&b), b).abs()
}

pub fn is_positive(x: &BigRational) -> bool {
    x.is_positive()
}

pub fn one() -> BigRational {
    BigRational::one()
}
