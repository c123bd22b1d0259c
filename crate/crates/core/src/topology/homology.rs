use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::delta::SparseColumns;
use super::DeltaComplex;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub betti: usize,
    /// Invariant factors greater than one.
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyResult {
    pub groups: Vec<HomologyGroup>,
}

impl Serialize for HomologyResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, &HomologyGroup> =
            self.groups.iter().enumerate().map(|(d, g)| (d.to_string(), g)).collect();
        m.serialize(s)
    }
}

impl HomologyResult {
    pub fn betti(&self) -> Vec<usize> {
        self.groups.iter().map(|g| g.betti).collect()
    }

    pub fn torsion(&self, d: usize) -> &[u64] {
        self.groups.get(d).map_or(&[], |g| g.torsion.as_slice())
    }

    pub fn is_torsion_free(&self) -> bool {
        self.groups.iter().all(|g| g.torsion.is_empty())
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .enumerate()
            .map(|(d, g)| if d % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }

    /// Whether this is the homology of a point.
    pub fn is_acyclic(&self) -> bool {
        self.is_torsion_free() && self.betti().iter().enumerate().all(|(d, &b)| b == usize::from(d == 0))
    }

    /// Betti numbers with trailing zeros removed.
    pub fn trimmed_betti(&self) -> Vec<usize> {
        let mut b = self.betti();
        while b.len() > 1 && b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    /// Human-readable form such as `Z, Z^2 + Z/2, 0`.
    pub fn describe(&self) -> String {
        self.groups
            .iter()
            .map(|g| {
                let mut parts = Vec::new();
                match g.betti {
                    0 => {}
                    1 => parts.push("Z".to_string()),
                    b => parts.push(format!("Z^{b}")),
                }
                parts.extend(g.torsion.iter().map(|t| format!("Z/{t}")));
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join(" + ")
                }
            })
            .collect::<Vec<_>>()
            .join(", ")
    }
}

pub fn euler_characteristic(k: &DeltaComplex) -> i64 {
    k.euler_characteristic()
}

/// Integral homology, one boundary matrix per thread up to the
/// `KATOSKEL_THREADS` limit.
pub fn homology(k: &DeltaComplex) -> HomologyResult {
    let threads = std::env::var("KATOSKEL_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or(1);
    homology_threads(k, threads)
}

pub fn homology_threads(k: &DeltaComplex, threads: usize) -> HomologyResult {
    let n = k.counts();
    let top = n.len();
    // invariants[d] describes ∂_d for d in 1..=top-1.
    let work: Vec<usize> = (1..top).collect();
    let mut invariants: Vec<(usize, Vec<BigInt>)> = vec![(0, Vec::new()); top + 1];
    let compute = |d: usize| smith_invariants(k.boundary(d), n[d - 1]);
    if threads <= 1 || work.len() <= 1 {
        for &d in &work {
            invariants[d] = compute(d);
        }
    } else {
        let chunks: Vec<Vec<usize>> = (0..threads.min(work.len()))
            .map(|t| work.iter().copied().skip(t).step_by(threads).collect())
            .collect();
        let results: Vec<Vec<(usize, (usize, Vec<BigInt>))>> = std::thread::scope(|s| {
            let handles: Vec<_> = chunks
                .iter()
                .map(|c| s.spawn(|| c.iter().map(|&d| (d, compute(d))).collect::<Vec<_>>()))
                .collect();
            handles.into_iter().map(|h| h.join().expect("homology worker panicked")).collect()
        });
        for (d, r) in results.into_iter().flatten() {
            invariants[d] = r;
        }
    }
    let groups = (0..top)
        .map(|d| {
            let rank_out = invariants[d].0;
            let rank_in = invariants[d + 1].0;
            HomologyGroup {
                betti: n[d] - rank_out - rank_in,
                torsion: invariants[d + 1]
                    .1
                    .iter()
                    .map(|t| t.to_u64().expect("torsion coefficient exceeds u64"))
                    .collect(),
            }
        })
        .collect();
    HomologyResult { groups }
}

/// Rank and invariant factors greater than one of a sparse integer matrix
/// with `rows` rows. Unit pivots are eliminated sparsely first; whatever is
/// left goes through a dense Smith normal form over big integers.
pub fn smith_invariants(cols: SparseColumns, rows: usize) -> (usize, Vec<BigInt>) {
    let mut m: Vec<BTreeMap<usize, i64>> = cols.into_iter().map(|c| c.into_iter().collect()).collect();
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows];
    for (c, col) in m.iter().enumerate() {
        for &r in col.keys() {
            row_cols[r].insert(c);
        }
    }
    let mut alive: Vec<bool> = vec![true; m.len()];
    let mut rank = 0;
    'sweep: loop {
        let mut progress = false;
        for c in 0..m.len() {
            if !alive[c] || m[c].is_empty() {
                continue;
            }
            let Some((&r, &u)) = m[c]
                .iter()
                .filter(|(_, v)| v.abs() == 1)
                .min_by_key(|(r, _)| row_cols[**r].len())
            else {
                continue;
            };
            // Clear row r from the other columns; on overflow nothing is
            // committed and the dense phase takes over.
            let others: Vec<usize> = row_cols[r].iter().copied().filter(|&o| o != c).collect();
            let mut updates = Vec::with_capacity(others.len());
            for &o in &others {
                let f = m[o][&r] * u;
                let mut new = m[o].clone();
                for (&rr, &v) in &m[c] {
                    let Some(prod) = f.checked_mul(v) else {
                        break 'sweep;
                    };
                    let e = new.entry(rr).or_insert(0);
                    let Some(x) = e.checked_sub(prod) else {
                        break 'sweep;
                    };
                    *e = x;
                }
                updates.push((o, new));
            }
            for (o, new) in updates {
                for (&rr, _) in &m[o] {
                    row_cols[rr].remove(&o);
                }
                let new: BTreeMap<usize, i64> = new.into_iter().filter(|&(_, v)| v != 0).collect();
                for &rr in new.keys() {
                    row_cols[rr].insert(o);
                }
                m[o] = new;
            }
            for &rr in m[c].keys() {
                row_cols[rr].remove(&c);
            }
            m[c].clear();
            alive[c] = false;
            rank += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let rest_cols: Vec<usize> = (0..m.len()).filter(|&c| alive[c] && !m[c].is_empty()).collect();
    let rest_rows: Vec<usize> = (0..rows).filter(|&r| !row_cols[r].is_empty()).collect();
    if rest_cols.is_empty() {
        return (rank, Vec::new());
    }
    let row_pos: BTreeMap<usize, usize> = rest_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut dense = vec![vec![BigInt::zero(); rest_cols.len()]; rest_rows.len()];
    for (j, &c) in rest_cols.iter().enumerate() {
        for (&r, &v) in &m[c] {
            dense[row_pos[&r]][j] = BigInt::from(v);
        }
    }
    let diag = dense_smith(dense);
    let mut torsion = Vec::new();
    for d in diag {
        rank += 1;
        if !d.is_one() {
            torsion.push(d);
        }
    }
    (rank, torsion)
}

/// Nonzero diagonal of the Smith normal form, each entry dividing the next.
fn dense_smith(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry in the trailing block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let p = a[t][t].clone();
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&p);
                    for j in t..cols {
                        let v = &q * &a[t][j];
                        a[i][j] -= v;
                    }
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&p);
                    for row in a.iter_mut().skip(t) {
                        let v = &q * &row[t];
                        row[j] -= v;
                    }
                    dirty |= !a[t][j].is_zero();
                }
            }
            if !dirty {
                // Enforce divisibility of the rest of the block.
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&a[i][j] % &p).is_zero()));
                match bad {
                    Some(i) => {
                        for j in t..cols {
                            let v = a[i][j].clone();
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
            // Move the smallest entry of row/column t to the pivot.
            let mut bi = t;
            let mut bj = t;
            let mut bv = a[t][t].abs();
            for i in t..rows {
                if !a[i][t].is_zero() && (bv.is_zero() || a[i][t].abs() < bv) {
                    bv = a[i][t].abs();
                    bi = i;
                    bj = t;
                }
            }
            for j in t..cols {
                if !a[t][j].is_zero() && (bv.is_zero() || a[t][j].abs() < bv) {
                    bv = a[t][j].abs();
                    bi = t;
                    bj = j;
                }
            }
            a.swap(t, bi);
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}
