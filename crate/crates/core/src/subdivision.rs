//! Star and barycentric subdivisions of Kato fans, and resolution by
//! repeated star subdivision.
//!
//! A point `x` of a fan is viewed through its cone `σ_x^∨` in the dual
//! lattice `N_x = Hom(C_x^gp, Z)`, spanned by the rays of the height-one
//! points it specializes. Subdivision rays are elements of these cones.

use std::collections::{BTreeMap, BTreeSet};

use crate::cone;
use crate::fan::{FanPoint, KatoFan, Origin};
use crate::lattice::{self, IMat, IVec};
use crate::monoid::AffineMonoid;
use crate::{Error, Result};
use num_traits::Signed;

/// A cone of the subdivided fan, described inside an old point.
struct NewCone {
    host: usize,
    basis: IMat,
    /// Ray identifiers: old height-one points, or `usize::MAX` for the new ray.
    rays: BTreeSet<usize>,
    point: Option<FanPoint>,
}

const NEW_RAY: usize = usize::MAX;

fn vec_label(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Saturated sublattice `span(rows) ∩ Z^n`.
fn saturated_span(rows: &[IVec], n: usize) -> IMat {
    let ann = lattice::integer_kernel(rows, n);
    let basis = lattice::integer_kernel(&ann, n);
    lattice::lattice_basis(&basis, n)
}

/// The fan obtained by inserting the ray `ray ∈ N_x` and starring every cone
/// that contains it.
pub fn star_subdivision(f: &KatoFan, x: usize, ray: &[i64]) -> Result<KatoFan> {
    let px = &f.points[x];
    if ray.len() != px.rank() {
        return Err(Error::DimensionMismatch(format!(
            "ray has length {}, stalk at {} has rank {}",
            ray.len(),
            px.id,
            px.rank()
        )));
    }
    if lattice::is_zero(ray) || px.stalk.generators().iter().any(|g| lattice::dot(ray, g) < 0) {
        return Err(Error::RayOutsideCone(format!("{ray:?} at {}", px.id)));
    }
    let ray = lattice::primitive(ray);
    // Carrier: the point whose open cone contains the ray.
    let face: IMat = px
        .stalk
        .generators()
        .iter()
        .filter(|g| lattice::dot(&ray, g) == 0)
        .cloned()
        .collect();
    let face_rank = lattice::rank(&face, px.rank());
    let w = std::iter::once(x)
        .chain(f.generizations(x))
        .find(|&y| {
            f.points[y].rank() + face_rank == px.rank() && {
                let t = f.tau(x, y);
                face.iter().all(|g| lattice::is_zero(&lattice::mat_vec(&t, g)))
            }
        })
        .ok_or_else(|| Error::RayOutsideCone(format!("no point of the fan carries {ray:?}")))?;
    let t_xw = f.tau(x, w);
    let ray_w = lattice::coords_in_basis(&t_xw, &ray)
        .ok_or_else(|| Error::RayOutsideCone(format!("{ray:?} is not in the carrier lattice")))?;
    // The new ray may already be a ray of the fan.
    let existing = (f.points[w].rank() == 1 && f.ray_in(w, w) == ray_w).then_some(w);
    let new_ray_id = existing.unwrap_or(NEW_RAY);

    let affected: Vec<usize> = (0..f.len()).filter(|&y| f.is_generization(y, w)).collect();
    let mut cones: Vec<NewCone> = Vec::new();
    let mut index_of_old: BTreeMap<usize, usize> = BTreeMap::new();
    for y in 0..f.len() {
        if !f.is_generization(y, w) {
            index_of_old.insert(y, cones.len());
            cones.push(NewCone {
                host: y,
                basis: lattice::identity(f.points[y].rank()),
                rays: f.height_one(y).into_iter().collect(),
                point: Some(f.points[y].clone()),
            });
        }
    }
    // Faces of affected cones that avoid the carrier, with the generic point as None.
    let mut bases: BTreeSet<Option<usize>> = BTreeSet::new();
    for &y in &affected {
        bases.insert(None);
        for y2 in std::iter::once(y).chain(f.generizations(y)) {
            if !f.is_generization(y2, w) {
                bases.insert(Some(y2));
            }
        }
    }
    let ray_label = match existing {
        Some(e) => f.points[e].id.clone(),
        None => format!("[{}:{}]", f.points[w].id, vec_label(&ray_w)),
    };
    let mut new_points: Vec<(Option<usize>, usize)> = Vec::new();
    for &b in &bases {
        let host = affected
            .iter()
            .copied()
            .filter(|&h| b.is_none_or(|b| f.is_generization(h, b)))
            .min_by_key(|&h| (f.points[h].rank(), h))
            .expect("the carrier itself is affected");
        let mut rays: BTreeSet<usize> = b.map(|b| f.height_one(b)).unwrap_or_default().into_iter().collect();
        rays.insert(new_ray_id);
        let rh = f.points[host].rank();
        let mut vecs: IMat = rays
            .iter()
            .filter(|&&c| c != NEW_RAY)
            .map(|&c| f.ray_in(host, c))
            .collect();
        if existing.is_none() {
            vecs.push(lattice::mat_t_vec(&f.tau(host, w), &ray_w, rh));
        }
        let host_rays: BTreeSet<usize> = f.height_one(host).into_iter().collect();
        if rays == host_rays {
            // The cone is an old cone left intact.
            index_of_old.insert(host, cones.len());
            cones.push(NewCone {
                host,
                basis: lattice::identity(rh),
                rays,
                point: Some(f.points[host].clone()),
            });
            continue;
        }
        let basis = saturated_span(&vecs, rh);
        new_points.push((b, cones.len()));
        cones.push(NewCone {
            host,
            basis,
            rays,
            point: None,
        });
        let c = cones.last_mut().unwrap();
        let d = c.basis.len();
        let coords: IMat = vecs
            .iter()
            .map(|v| lattice::coords_in_basis(&c.basis, v).expect("ray lies in its span"))
            .collect();
        let normals = cone::facets(&coords, d);
        let hb = cone::hilbert_basis(&normals, d);
        let stalk = AffineMonoid::new(d, &hb)?;
        let pi: IVec = c.basis.iter().map(|bv| lattice::dot(bv, &f.points[host].pi)).collect();
        let id = match b {
            None => ray_label.clone(),
            Some(b) => format!("{}+{}", f.points[b].id, ray_label),
        };
        c.point = Some(FanPoint {
            id,
            branch: String::new(),
            stalk,
            pi,
            origin: None,
        });
    }
    // The new ray, when genuinely new, is the cone over the generic face.
    let n = cones.len();
    // Ray identifiers of the new fan: map NEW_RAY to its cone index later.
    let mut cospec: Vec<BTreeMap<usize, IMat>> = vec![BTreeMap::new(); n];
    for p in 0..n {
        for q in 0..n {
            if p == q || !cones[q].rays.is_subset(&cones[p].rays) || cones[q].rays == cones[p].rays {
                continue;
            }
            let (hp, hq) = (cones[p].host, cones[q].host);
            let t = f.tau(hp, hq);
            let rp = f.points[hp].rank();
            let rows: IMat = cones[q]
                .basis
                .iter()
                .map(|bq| {
                    let v = lattice::mat_t_vec(&t, bq, rp);
                    lattice::coords_in_basis(&cones[p].basis, &v).expect("face lattice embeds")
                })
                .collect();
            cospec[p].insert(q, rows);
        }
    }
    let points: Vec<FanPoint> = cones
        .iter()
        .map(|c| {
            let mut pt = c.point.clone().expect("every cone has a point");
            let host = &f.points[c.host];
            pt.origin = Some(match &host.origin {
                Some(o) => Origin {
                    point: o.point.clone(),
                    basis: lattice::mat_mul(&c.basis, &o.basis, o.basis.first().map_or(0, |r| r.len())),
                },
                None => Origin {
                    point: host.id.clone(),
                    basis: c.basis.clone(),
                },
            });
            pt
        })
        .collect();
    KatoFan::new(points, cospec)
}

/// The barycenter of the cone of `x`: the sum of its primitive rays.
pub fn barycenter(f: &KatoFan, x: usize) -> IVec {
    let r = f.points[x].rank();
    f.height_one(x)
        .into_iter()
        .fold(vec![0; r], |acc, c| lattice::vadd(&acc, &f.ray_in(x, c)))
}

/// Star subdivisions at the barycenters of all cones of dimension at least
/// two, largest first.
pub fn barycentric_subdivision(f: &KatoFan) -> Result<KatoFan> {
    let mut order: Vec<usize> = (0..f.len()).filter(|&x| f.points[x].rank() >= 2).collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(f.points[x].rank()), x));
    let targets: Vec<(String, IVec)> = order
        .into_iter()
        .map(|x| (f.points[x].id.clone(), barycenter(f, x)))
        .collect();
    let mut cur = f.clone();
    for (id, v) in targets {
        let x = cur.index_of(&id).expect("smaller cones survive larger stars");
        cur = star_subdivision(&cur, x, &v)?;
    }
    Ok(cur)
}

/// The ray `resolve` inserts into the cone of a non-regular point: a
/// non-ray Hilbert basis element of minimal multiplicity, or failing that
/// (a non-simplicial cone all of whose Hilbert basis elements are rays) a
/// ray of minimal multiplicity. Ties go to the lexicographically smallest.
pub fn resolution_ray(f: &KatoFan, x: usize) -> IVec {
    let p = &f.points[x];
    let r = p.rank();
    let rays: IMat = f.height_one(x).into_iter().map(|c| f.ray_in(x, c)).collect();
    let hb = cone::hilbert_basis(&rays, r);
    let interior: Vec<&IVec> = hb.iter().filter(|v| !rays.contains(v)).collect();
    let pool: Vec<&IVec> = if interior.is_empty() { rays.iter().collect() } else { interior };
    pool.into_iter()
        .min_by_key(|v| (lattice::dot(v, &p.pi), (*v).clone()))
        .expect("a non-regular cone has rays")
        .clone()
}

/// Repeated star subdivision until every stalk is free.
pub fn resolve(f: &KatoFan, cap: usize) -> Result<KatoFan> {
    let mut cur = f.clone();
    let mut steps = 0;
    loop {
        let Some(x) = (0..cur.len())
            .filter(|&x| !cur.points[x].stalk.is_free())
            .min_by_key(|&x| (cur.points[x].rank(), x))
        else {
            return Ok(cur);
        };
        if steps == cap {
            return Err(Error::ResolutionCapExceeded(cap));
        }
        let v = resolution_ray(&cur, x);
        cur = star_subdivision(&cur, x, &v)?;
        steps += 1;
    }
}

/// Whether `v ∈ N_x` (for a point `x` of the fan `old`) lies in the cone of
/// some point of `new` that came from `x` by subdivision.
pub fn covered_by_subdivision(old: &KatoFan, new: &KatoFan, x: usize, v: &[i64]) -> bool {
    let id = &old.points[x].id;
    new.points.iter().any(|p| {
        let (point, basis) = match &p.origin {
            Some(o) => (&o.point, o.basis.clone()),
            None => (&p.id, lattice::identity(p.rank())),
        };
        if point != id || basis.len() != p.rank() {
            return false;
        }
        let Some(c) = lattice::solve_rational_rows(&basis, &lattice::to_q(v)) else {
            return false;
        };
        p.stalk
            .generators()
            .iter()
            .all(|g| !lattice::qdot(&c, g).is_negative())
    })
}
