use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use super::SimplicialComplex;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SurfaceClass {
    Sphere,
    Torus,
    ProjectivePlane,
    KleinBottle,
    /// Orientable of genus at least two.
    Genus(usize),
    /// Connected sum of this many projective planes, at least three.
    NonOrientable(usize),
    NotASurface(String),
}

impl fmt::Display for SurfaceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceClass::Sphere => write!(f, "sphere"),
            SurfaceClass::Torus => write!(f, "torus"),
            SurfaceClass::ProjectivePlane => write!(f, "projective"),
            SurfaceClass::KleinBottle => write!(f, "klein"),
            SurfaceClass::Genus(g) => write!(f, "genus-{g}"),
            SurfaceClass::NonOrientable(k) => write!(f, "nonorientable-{k}"),
            SurfaceClass::NotASurface(w) => write!(f, "not a surface: {w}"),
        }
    }
}

fn single_cycle(edges: &[(usize, usize)]) -> bool {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    if adj.values().any(|n| n.len() != 2) {
        return false;
    }
    let start = *adj.keys().next().expect("link is nonempty");
    let mut seen = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(v) = stack.pop() {
        for &w in &adj[&v] {
            if seen.insert(w) {
                stack.push(w);
            }
        }
    }
    seen.len() == adj.len()
}

/// Closed-surface test followed by classification via orientability and χ.
pub fn classify_closed_surface(k: &SimplicialComplex) -> SurfaceClass {
    let not = |s: String| SurfaceClass::NotASurface(s);
    if k.dim() != 2 {
        return not(format!("dimension {}", k.dim()));
    }
    let tris = k.simplices(2);
    let mut edge_tris: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut vertex_link: Vec<Vec<(usize, usize)>> = vec![Vec::new(); k.num_vertices()];
    for (t, s) in tris.iter().enumerate() {
        let (a, b, c) = (s[0], s[1], s[2]);
        for e in [(a, b), (a, c), (b, c)] {
            edge_tris.entry(e).or_default().push(t);
        }
        vertex_link[a].push((b, c));
        vertex_link[b].push((a, c));
        vertex_link[c].push((a, b));
    }
    for (v, link) in vertex_link.iter().enumerate() {
        if link.is_empty() || !single_cycle(link) {
            return not(format!("link of vertex {} is not a cycle", k.labels[v]));
        }
    }
    for e in k.simplices(1) {
        let n = edge_tris.get(&(e[0], e[1])).map_or(0, |v| v.len());
        if n != 2 {
            return not(format!(
                "edge {}-{} lies in {n} triangles",
                k.labels[e[0]], k.labels[e[1]]
            ));
        }
    }
    // Orient triangles coherently by breadth-first search.
    let sign_in = |t: &[usize], e: (usize, usize)| -> i32 {
        // Coefficient of the sorted edge in the boundary of the sorted triangle.
        let missing = t.iter().position(|&v| v != e.0 && v != e.1).expect("edge of triangle");
        if missing % 2 == 0 { 1 } else { -1 }
    };
    let mut orient = vec![0i32; tris.len()];
    let mut orientable = true;
    let mut reached = 0;
    orient[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(t) = queue.pop_front() {
        reached += 1;
        let s = &tris[t];
        for e in [(s[0], s[1]), (s[0], s[2]), (s[1], s[2])] {
            for &u in &edge_tris[&e] {
                if u == t {
                    continue;
                }
                let want = -orient[t] * sign_in(s, e) * sign_in(&tris[u], e);
                if orient[u] == 0 {
                    orient[u] = want;
                    queue.push_back(u);
                } else if orient[u] != want {
                    orientable = false;
                }
            }
        }
    }
    if reached != tris.len() {
        return not("disconnected".into());
    }
    let chi = k.euler_characteristic();
    if orientable {
        match chi {
            2 => SurfaceClass::Sphere,
            0 => SurfaceClass::Torus,
            c => SurfaceClass::Genus(((2 - c) / 2) as usize),
        }
    } else {
        match chi {
            1 => SurfaceClass::ProjectivePlane,
            0 => SurfaceClass::KleinBottle,
            c => SurfaceClass::NonOrientable((2 - c) as usize),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        let s2 = SimplicialComplex::from_facets(4, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]]).unwrap();
        assert_eq!(classify_closed_surface(&s2), SurfaceClass::Sphere);
        let bowtie = SimplicialComplex::from_facets(5, vec![vec![0, 1, 2], vec![0, 3, 4]]).unwrap();
        assert!(matches!(classify_closed_surface(&bowtie), SurfaceClass::NotASurface(_)));
    }

    #[test]
    fn seven_vertex_torus() {
        let f: Vec<Vec<usize>> = (0..7)
            .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
            .collect();
        let t = SimplicialComplex::from_facets(7, f).unwrap();
        assert_eq!(classify_closed_surface(&t), SurfaceClass::Torus);
    }
}
