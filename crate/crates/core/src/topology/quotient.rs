use std::collections::{BTreeSet, HashMap};

use super::{DeltaComplex, GroupAction, SimplicialComplex};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuotientOptions {
    pub max_subdivisions: usize,
    pub max_simplices: usize,
}

impl Default for QuotientOptions {
    fn default() -> Self {
        QuotientOptions {
            max_subdivisions: 3,
            max_simplices: 500_000,
        }
    }
}

fn image(g: &[usize], s: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = s.iter().map(|&v| g[v]).collect();
    t.sort_unstable();
    t
}

/// Vertices of every simplex lie in distinct orbits. Then a simplex's
/// stabilizer fixes it pointwise and orbit labels order its vertices
/// invariantly.
fn orbits_separate(k: &SimplicialComplex, orbit: &[usize]) -> bool {
    (1..=k.dim()).all(|d| {
        k.simplices(d).iter().all(|s| {
            let o: BTreeSet<usize> = s.iter().map(|&v| orbit[v]).collect();
            o.len() == s.len()
        })
    })
}

/// Simplices with the same vertex orbits lie in one orbit.
fn orbit_keys_injective(k: &SimplicialComplex, a: &GroupAction, orbit: &[usize]) -> bool {
    (0..=k.dim()).all(|d| {
        let mut key_rep: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
        k.simplices(d).iter().all(|s| {
            let rep = a.elements.iter().map(|g| image(g, s)).min().expect("group has an identity");
            let mut key: Vec<usize> = s.iter().map(|&v| orbit[v]).collect();
            key.sort_unstable();
            match key_rep.get(&key) {
                Some(r) => *r == rep,
                None => {
                    key_rep.insert(key, rep);
                    true
                }
            }
        })
    })
}

fn subdivide(
    k: &SimplicialComplex,
    a: &GroupAction,
    opts: &QuotientOptions,
    done: &mut usize,
) -> Result<(SimplicialComplex, GroupAction)> {
    if *done >= opts.max_subdivisions {
        return Err(Error::SizeCapExceeded {
            what: "regularizing subdivisions".into(),
            count: *done + 1,
            cap: opts.max_subdivisions,
        });
    }
    let (b, old) = k.barycentric_subdivision();
    if b.total() > opts.max_simplices {
        return Err(Error::SizeCapExceeded {
            what: "simplices".into(),
            count: b.total(),
            cap: opts.max_simplices,
        });
    }
    let lifted = a.lift_to_subdivision(k, &old);
    *done += 1;
    Ok((b, lifted))
}

/// `|K|/G` as a simplicial complex: subdivides barycentrically until the
/// action is regular, then identifies vertex orbits.
pub fn group_quotient(k: &SimplicialComplex, a: &GroupAction, opts: &QuotientOptions) -> Result<SimplicialComplex> {
    a.validate(k)?;
    let mut k = k.clone();
    let mut a = a.clone();
    let mut done = 0;
    loop {
        let orbit = a.vertex_orbits();
        if orbits_separate(&k, &orbit) && orbit_keys_injective(&k, &a, &orbit) {
            let n = orbit.iter().copied().max().map_or(0, |m| m + 1);
            let mut labels = vec![String::new(); n];
            for v in (0..k.num_vertices()).rev() {
                labels[orbit[v]] = k.labels[v].clone();
            }
            let mut all = Vec::new();
            for d in 0..=k.dim() {
                for s in k.simplices(d) {
                    let mut key: Vec<usize> = s.iter().map(|&v| orbit[v]).collect();
                    key.sort_unstable();
                    all.push(key);
                }
            }
            return Ok(SimplicialComplex::from_closed(labels, all));
        }
        (k, a) = subdivide(&k, &a, opts, &mut done)?;
    }
}

/// `|K|/G` as a Δ-complex with one simplex per orbit of simplices. Needs only
/// that each simplex has its vertices in distinct orbits, which holds for
/// order complexes acted on cellularly; otherwise subdivides first.
pub fn orbit_complex(k: &SimplicialComplex, a: &GroupAction, opts: &QuotientOptions) -> Result<DeltaComplex> {
    a.validate(k)?;
    let mut k = k.clone();
    let mut a = a.clone();
    let mut done = 0;
    let mut orbit = a.vertex_orbits();
    while !orbits_separate(&k, &orbit) {
        (k, a) = subdivide(&k, &a, opts, &mut done)?;
        orbit = a.vertex_orbits();
    }
    let mut index: Vec<HashMap<Vec<usize>, usize>> = Vec::new();
    let mut faces: Vec<Vec<Vec<usize>>> = Vec::new();
    for d in 0..=k.dim() {
        let mut idx = HashMap::new();
        let mut level = Vec::new();
        for s in k.simplices(d) {
            let rep = a.elements.iter().map(|g| image(g, s)).min().expect("group has an identity");
            if idx.contains_key(&rep) {
                continue;
            }
            let mut ordered = rep.clone();
            ordered.sort_by_key(|&v| orbit[v]);
            let fs = if d == 0 {
                Vec::new()
            } else {
                (0..ordered.len())
                    .map(|j| {
                        let mut f = ordered.clone();
                        f.remove(j);
                        let frep = a.elements.iter().map(|g| image(g, &f)).min().expect("group has an identity");
                        index[d - 1][&frep]
                    })
                    .collect()
            };
            idx.insert(rep, level.len());
            level.push(fs);
        }
        index.push(idx);
        faces.push(level);
    }
    Ok(DeltaComplex { faces })
}
