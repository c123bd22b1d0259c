//! Exact feasibility of `A x = b, x >= 0` by phase-one simplex over the
//! rationals with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Returns a feasible point if one exists.
pub fn feasible_point(a: &[Vec<BigRational>], b: &[BigRational], n: usize) -> Option<Vec<BigRational>> {
    let m = a.len();
    // Tableau rows: [A | I | b] with b >= 0.
    let width = n + m + 1;
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(m + 1);
    for (i, (row, bi)) in a.iter().zip(b).enumerate() {
        let neg = bi.is_negative();
        let mut r = Vec::with_capacity(width);
        for x in row.iter().take(n) {
            r.push(if neg { -x.clone() } else { x.clone() });
        }
        for j in 0..m {
            r.push(if i == j { BigRational::one() } else { BigRational::zero() });
        }
        r.push(if neg { -bi.clone() } else { bi.clone() });
        t.push(r);
    }
    // Objective: minimise sum of artificials, written as reduced costs.
    let mut obj = vec![BigRational::zero(); width];
    for r in &t {
        for j in 0..n {
            obj[j] -= &r[j];
        }
        obj[width - 1] -= &r[width - 1];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    loop {
        let Some(enter) = (0..n + m).find(|&j| obj[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for (i, r) in t.iter().enumerate() {
            if r[enter].is_positive() {
                let ratio = &r[width - 1] / &r[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((li, _)) = leave else {
            // Unbounded below cannot happen for phase one.
            break;
        };
        pivot(&mut t, &mut obj, li, enter);
        basis[li] = enter;
    }
    if !obj[width - 1].is_zero() {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (i, &bj) in basis.iter().enumerate() {
        if bj < n {
            x[bj] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<BigRational>], obj: &mut [BigRational], row: usize, col: usize) {
    let p = t[row][col].clone();
    for x in t[row].iter_mut() {
        *x /= &p;
    }
    let prow = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i != row && !r[col].is_zero() {
            let f = r[col].clone();
            for (x, y) in r.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        for (x, y) in obj.iter_mut().zip(&prow) {
            *x -= &f * y;
        }
    }
}

/// Whether the relative interiors of the simplicial cones spanned by the
/// rows of `a` and `b` meet.
pub fn open_cones_meet(a: &[Vec<i64>], b: &[Vec<i64>], dim: usize) -> bool {
    // sum l_i a_i = sum m_j b_j with l, m >= 1; shift to l', m' >= 0.
    let q = |x: i64| BigRational::from_integer(x.into());
    let n = a.len() + b.len();
    let mut rows = Vec::with_capacity(dim);
    let mut rhs = Vec::with_capacity(dim);
    for k in 0..dim {
        let mut row = Vec::with_capacity(n);
        let mut s = BigRational::zero();
        for v in a {
            row.push(q(v[k]));
            s += q(v[k]);
        }
        for v in b {
            row.push(q(-v[k]));
            s -= q(v[k]);
        }
        rows.push(row);
        rhs.push(-s);
    }
    feasible_point(&rows, &rhs, n).is_some()
}
