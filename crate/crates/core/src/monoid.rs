//! Sharp fine monoids as finitely generated submonoids of `Z^d`.
//!
//! An [`AffineMonoid`] keeps its minimal generators in ambient coordinates
//! together with the Hermite normal form basis of the group it generates.
//! Cone computations run in coordinates with respect to that basis, where
//! the cone is full dimensional.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::cone::{self, FaceLattice};
use crate::lattice::{self, content, coords_in_basis, dot, IMat, IVec};
use crate::{Error, Result};

#[derive(Clone)]
pub struct AffineMonoid {
    ambient_rank: usize,
    generators: IMat,
    group_basis: IMat,
    hilbert_basis: IMat,
    saturated: bool,
    local_gens: IMat,
    normals: IMat,
}

impl PartialEq for AffineMonoid {
    fn eq(&self, other: &Self) -> bool {
        self.ambient_rank == other.ambient_rank && self.generators == other.generators
    }
}

impl Eq for AffineMonoid {}

impl std::hash::Hash for AffineMonoid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient_rank.hash(state);
        self.generators.hash(state);
    }
}

impl fmt::Debug for AffineMonoid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineMonoid")
            .field("ambient_rank", &self.ambient_rank)
            .field("generators", &self.generators)
            .field("saturated", &self.saturated)
            .finish()
    }
}

/// A face of a monoid, given by the minimal generators lying on it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Face {
    pub dim: usize,
    pub members: IMat,
    /// Minimal generators off the face; they generate the complementary prime ideal.
    pub complement: IMat,
}

/// A homomorphism `v -> matrix * v` between ambient lattices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidHom {
    pub source: AffineMonoid,
    pub target: AffineMonoid,
    /// `target.ambient_rank()` rows, `source.ambient_rank()` columns.
    pub matrix: IMat,
}

impl MonoidHom {
    pub fn new(source: AffineMonoid, target: AffineMonoid, matrix: IMat) -> Result<Self> {
        if matrix.len() != target.ambient_rank
            || matrix.iter().any(|r| r.len() != source.ambient_rank)
        {
            return Err(Error::DimensionMismatch("homomorphism matrix shape".into()));
        }
        for g in &source.generators {
            if !target.contains(&lattice::mat_vec(&matrix, g)) {
                return Err(Error::DimensionMismatch(
                    "generator image lies outside the target monoid".into(),
                ));
            }
        }
        Ok(MonoidHom {
            source,
            target,
            matrix,
        })
    }

    /// The homomorphism from `N` sending `1` to `pi`.
    pub fn from_nat(target: AffineMonoid, pi: IVec) -> Result<Self> {
        if pi.len() != target.ambient_rank {
            return Err(Error::DimensionMismatch("uniformizer length".into()));
        }
        let matrix = pi.iter().map(|&x| vec![x]).collect();
        MonoidHom::new(AffineMonoid::free(1), target, matrix)
    }

    pub fn apply(&self, v: &[i64]) -> IVec {
        lattice::mat_vec(&self.matrix, v)
    }

    /// Image of `1` for a homomorphism out of `N`.
    pub fn image_of_one(&self) -> IVec {
        self.matrix.iter().map(|r| r[0]).collect()
    }
}

pub fn monoid_from_generators(rank: usize, gens: &[IVec]) -> Result<AffineMonoid> {
    AffineMonoid::new(rank, gens)
}

impl AffineMonoid {
    pub fn new(rank: usize, gens: &[IVec]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| g.len() != rank) {
            return Err(Error::DimensionMismatch(format!(
                "generator {g:?} has length {}, expected {rank}",
                g.len()
            )));
        }
        let nonzero: Vec<IVec> = gens
            .iter()
            .filter(|g| !lattice::is_zero(g))
            .cloned()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let group_basis = lattice::lattice_basis(&nonzero, rank);
        let g = group_basis.len();
        let local: Vec<IVec> = nonzero
            .iter()
            .map(|v| coords_in_basis(&group_basis, v).expect("generator lies in its group"))
            .collect();
        let normals = cone::facets(&local, g);
        if g > 0 && lattice::rank(&normals, g) < g {
            return Err(Error::NotSharp(format!(
                "the cone spanned by {nonzero:?} contains a line"
            )));
        }
        let mut m = AffineMonoid {
            ambient_rank: rank,
            generators: Vec::new(),
            group_basis,
            hilbert_basis: Vec::new(),
            saturated: false,
            local_gens: Vec::new(),
            normals,
        };
        // Drop generators that lie in the monoid generated by the others.
        let mut keep = local.clone();
        keep.sort_by_key(|v| std::cmp::Reverse(m.degree(v)));
        let mut i = 0;
        while i < keep.len() {
            let v = keep.remove(i);
            if in_generated(&keep, &m.normals, &v) {
                continue;
            }
            keep.insert(i, v);
            i += 1;
        }
        m.local_gens = keep;
        m.generators = m.local_gens.iter().map(|v| m.from_local(v)).collect();
        m.generators.sort();
        m.local_gens = m.generators.iter().map(|v| m.to_local(v).unwrap()).collect();
        let sat = cone::hilbert_basis(&m.local_gens, g);
        m.saturated = sat.iter().all(|v| in_generated(&m.local_gens, &m.normals, v));
        m.hilbert_basis = sat.iter().map(|v| m.from_local(v)).collect();
        m.hilbert_basis.sort();
        Ok(m)
    }

    /// `N^r` with its standard basis.
    pub fn free(r: usize) -> Self {
        AffineMonoid::new(r, &lattice::identity(r)).expect("free monoids are sharp")
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    /// Rank of the group generated by the monoid.
    pub fn rank(&self) -> usize {
        self.group_basis.len()
    }

    /// Minimal generators in ambient coordinates, sorted.
    pub fn generators(&self) -> &IMat {
        &self.generators
    }

    /// Hilbert basis of the saturation, in ambient coordinates, sorted.
    pub fn hilbert_basis(&self) -> &IMat {
        &self.hilbert_basis
    }

    pub fn group_basis(&self) -> &IMat {
        &self.group_basis
    }

    /// Primitive inward facet normals in group coordinates.
    pub fn normals(&self) -> &IMat {
        &self.normals
    }

    /// Minimal generators in group coordinates.
    pub fn local_generators(&self) -> &IMat {
        &self.local_gens
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    pub fn is_free(&self) -> bool {
        self.saturated && self.generators.len() == self.rank()
    }

    /// Whether the group lattice is all of `Z^d`.
    pub fn is_full_rank(&self) -> bool {
        self.group_basis == lattice::identity(self.ambient_rank)
    }

    pub fn to_local(&self, v: &[i64]) -> Option<IVec> {
        if self.group_basis.is_empty() {
            return lattice::is_zero(v).then(Vec::new);
        }
        coords_in_basis(&self.group_basis, v)
    }

    pub fn from_local(&self, c: &[i64]) -> IVec {
        lattice::mat_t_vec(&self.group_basis, c, self.ambient_rank)
    }

    /// The same monoid written in coordinates of its group basis.
    pub fn in_group_coordinates(&self) -> AffineMonoid {
        if self.is_full_rank() {
            return self.clone();
        }
        AffineMonoid::new(self.rank(), &self.local_gens).expect("sharpness is intrinsic")
    }

    /// Sum of facet normals; positive on every nonzero element.
    fn degree(&self, local: &[i64]) -> i64 {
        self.normals.iter().map(|n| dot(n, local)).sum()
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        match self.to_local(v) {
            Some(c) => in_generated(&self.local_gens, &self.normals, &c),
            None => false,
        }
    }

    /// Membership in the saturation `cone(M) ∩ M^gp`.
    pub fn saturation_contains(&self, v: &[i64]) -> bool {
        match self.to_local(v) {
            Some(c) => cone::in_cone(&self.normals, &c),
            None => false,
        }
    }

    pub fn face_lattice(&self) -> FaceLattice {
        FaceLattice::new(&self.local_gens, self.rank())
    }

    /// All faces, from `{0}` up to the monoid itself, sorted by dimension.
    pub fn faces(&self) -> Vec<Face> {
        let lat = self.face_lattice();
        lat.faces
            .iter()
            .zip(&lat.dims)
            .map(|(f, &d)| self.face_from_rays(&lat, f, d))
            .collect()
    }

    fn face_from_rays(&self, lat: &FaceLattice, rays: &[usize], dim: usize) -> Face {
        let tight: Vec<&IVec> = lat
            .normals
            .iter()
            .filter(|n| rays.iter().all(|&i| dot(n, &lat.rays[i]) == 0))
            .collect();
        let (mut members, mut complement) = (Vec::new(), Vec::new());
        for (v, g) in self.local_gens.iter().zip(&self.generators) {
            if tight.iter().all(|n| dot(n, v) == 0) {
                members.push(g.clone());
            } else {
                complement.push(g.clone());
            }
        }
        Face {
            dim,
            members,
            complement,
        }
    }

    /// The smallest face containing `v` (an element of the saturation).
    pub fn face_containing(&self, v: &[i64]) -> Option<Face> {
        let c = self.to_local(v)?;
        self.faces().into_iter().find(|f| {
            let basis: Vec<IVec> = f.members.iter().map(|m| self.to_local(m).unwrap()).collect();
            let mut rows = basis.clone();
            rows.push(c.clone());
            lattice::rank(&rows, self.rank()) == lattice::rank(&basis, self.rank())
        })
    }

    /// Whether there is a group isomorphism carrying `self` onto `other`.
    pub fn is_isomorphic(&self, other: &AffineMonoid) -> bool {
        let r = self.rank();
        if r != other.rank() || self.generators.len() != other.generators.len() {
            return false;
        }
        if r == 0 {
            return true;
        }
        // Pick r independent generators of self and try all images among
        // the generators of other.
        let mut basis_idx = Vec::new();
        let mut rows: IMat = Vec::new();
        for (i, g) in self.local_gens.iter().enumerate() {
            rows.push(g.clone());
            if lattice::rank(&rows, r) == rows.len() {
                basis_idx.push(i);
            } else {
                rows.pop();
            }
        }
        let src: IMat = basis_idx.iter().map(|&i| self.local_gens[i].clone()).collect();
        let n = other.local_gens.len();
        let mut choice = vec![0usize; r];
        loop {
            let distinct = choice.iter().collect::<BTreeSet<_>>().len() == r;
            if distinct && self.try_map(&src, &choice, other) {
                return true;
            }
            let mut i = 0;
            loop {
                if i == r {
                    return false;
                }
                choice[i] += 1;
                if choice[i] < n {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    fn try_map(&self, src: &IMat, choice: &[usize], other: &AffineMonoid) -> bool {
        let r = self.rank();
        let dst: IMat = choice.iter().map(|&j| other.local_gens[j].clone()).collect();
        // Solve for the linear map A with A src_k = dst_k, column by column.
        let mut images = Vec::new();
        for g in &self.local_gens {
            let lam = match lattice::solve_rational_rows(src, &lattice::to_q(g)) {
                Some(l) => l,
                None => return false,
            };
            let mut img = vec![num_rational::BigRational::from_integer(0.into()); r];
            for (l, d) in lam.iter().zip(&dst) {
                for (a, &x) in img.iter_mut().zip(d) {
                    *a += l * lattice::q(x);
                }
            }
            if img.iter().any(|x| !x.is_integer()) {
                return false;
            }
            let v: IVec = img
                .iter()
                .map(|x| i64::try_from(x.to_integer()).expect("lattice arithmetic overflow"))
                .collect();
            images.push(v);
        }
        let a: BTreeSet<IVec> = images.iter().cloned().collect();
        let b: BTreeSet<IVec> = other.local_gens.iter().cloned().collect();
        if a != b {
            return false;
        }
        // Integral images generate the target group, so the map is onto;
        // equal ranks make it an isomorphism.
        lattice::lattice_basis(&images, r).len() == r
            && lattice::det(&lattice::lattice_basis(&images, r)).abs() == 1
    }
}

/// Whether `target` is a nonnegative integer combination of `gens`, all
/// in full-rank group coordinates of a pointed cone with inward `normals`.
fn in_generated(gens: &[IVec], normals: &[IVec], target: &[i64]) -> bool {
    fn go(
        gens: &[IVec],
        normals: &[IVec],
        t: &IVec,
        memo: &mut HashMap<IVec, bool>,
    ) -> bool {
        if lattice::is_zero(t) {
            return true;
        }
        if let Some(&b) = memo.get(t) {
            return b;
        }
        let mut found = false;
        for g in gens {
            let rest = lattice::vsub(t, g);
            if cone::in_cone(normals, &rest) && go(gens, normals, &rest, memo) {
                found = true;
                break;
            }
        }
        memo.insert(t.clone(), found);
        found
    }
    if !cone::in_cone(normals, target) {
        return false;
    }
    let mut memo = HashMap::new();
    go(gens, normals, &target.to_vec(), &mut memo)
}

pub fn saturate(m: &AffineMonoid) -> AffineMonoid {
    if m.saturated {
        return m.clone();
    }
    AffineMonoid::new(m.ambient_rank, &m.hilbert_basis).expect("saturation of a sharp monoid")
}

pub fn is_saturated(m: &AffineMonoid) -> bool {
    m.is_saturated()
}

pub fn is_free(m: &AffineMonoid) -> bool {
    m.is_free()
}

pub fn faces(m: &AffineMonoid) -> Vec<Face> {
    m.faces()
}

/// The sharp quotient `M / F` with its projection. The projection is the
/// integer annihilator of the span of `F` in the ambient lattice.
pub fn quotient_by_face(m: &AffineMonoid, f: &Face) -> Result<(AffineMonoid, MonoidHom)> {
    if !m.faces().contains(f) {
        return Err(Error::NotAFace);
    }
    let d = m.ambient_rank;
    // Functionals vanishing on the face; their rows map Z^d onto Z^k.
    let p = lattice::integer_kernel(&f.members, d);
    let images: IMat = m.generators.iter().map(|g| lattice::mat_vec(&p, g)).collect();
    let q = saturate(&AffineMonoid::new(p.len(), &images)?);
    let hom = MonoidHom {
        source: m.clone(),
        target: q.clone(),
        matrix: p,
    };
    Ok((q, hom))
}

/// The marked pushout `Q1 ⊕_N Q2` with its structure maps.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub monoid: AffineMonoid,
    pub pi: IVec,
    /// Order of the torsion subgroup killed when identifying the two uniformizers.
    pub torsion: i64,
    /// Ambient maps from `Q1` and `Q2` into the pushout.
    pub inj1: IMat,
    pub inj2: IMat,
    /// A section of the quotient map from the direct sum of the ambient
    /// lattices, as rows of the `(d1 + d2) x (d1 + d2 - 1)` matrix.
    pub section: IMat,
}

pub fn pushout_over_base(u1: &MonoidHom, u2: &MonoidHom, saturated: bool) -> Result<Pushout> {
    let (q1, q2) = (&u1.target, &u2.target);
    let (pi1, pi2) = (u1.image_of_one(), u2.image_of_one());
    if lattice::is_zero(&pi1) || lattice::is_zero(&pi2) {
        return Err(Error::ZeroUniformizer);
    }
    let (d1, d2) = (q1.ambient_rank, q2.ambient_rank);
    let mut v = pi1.clone();
    v.extend(pi2.iter().map(|&x| -x));
    let mut v_local = q1.to_local(&pi1).expect("uniformizer in group");
    v_local.extend(q2.to_local(&pi2).expect("uniformizer in group").iter().map(|&x| -x));
    let torsion = content(&v_local).abs();
    let u = lattice::primitive(&v);
    // t u = e_1 with t unimodular; rows 1.. of t give the quotient map.
    let col: IMat = u.iter().map(|&x| vec![x]).collect();
    let (_, t) = lattice::hnf_with_transform(&col, 1);
    let q: IMat = t[1..].to_vec();
    let t_inv = lattice::inverse_unimodular(&t);
    let n = d1 + d2;
    let section: IMat = t_inv.iter().map(|row| row[1..].to_vec()).collect();
    let inj1: IMat = q.iter().map(|row| row[..d1].to_vec()).collect();
    let inj2: IMat = q.iter().map(|row| row[d1..].to_vec()).collect();
    let mut images: IMat = q1.generators.iter().map(|g| lattice::mat_vec(&inj1, g)).collect();
    images.extend(q2.generators.iter().map(|g| lattice::mat_vec(&inj2, g)));
    let mut monoid = AffineMonoid::new(n - 1, &images)?;
    if saturated {
        monoid = saturate(&monoid);
    }
    let pi = lattice::mat_vec(&inj1, &pi1);
    Ok(Pushout {
        monoid,
        pi,
        torsion,
        inj1,
        inj2,
        section,
    })
}

/// Least common multiple of the multiplicities of `pi` along the facets.
pub fn saturation_index(u: &MonoidHom) -> Result<i64> {
    let pi = u.image_of_one();
    if lattice::is_zero(&pi) {
        return Err(Error::ZeroUniformizer);
    }
    let c = u.target.to_local(&pi).expect("uniformizer in group");
    Ok(multiplicities(&u.target, &c)
        .into_iter()
        .filter(|&x| x > 0)
        .fold(1, lattice::lcm))
}

/// `<n, pi>` for each facet normal `n`, with `pi` in group coordinates.
pub fn multiplicities(m: &AffineMonoid, pi_local: &[i64]) -> Vec<i64> {
    m.normals.iter().map(|n| dot(n, pi_local)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mk(r: usize, g: &[&[i64]]) -> AffineMonoid {
        AffineMonoid::new(r, &g.iter().map(|v| v.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn free_plane() {
        let m = mk(2, &[&[1, 0], &[0, 1]]);
        assert!(m.is_free());
        assert_eq!(m.hilbert_basis(), &vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(m.faces().len(), 4);
    }

    #[test]
    fn units_rejected() {
        assert!(matches!(
            AffineMonoid::new(1, &[vec![1], vec![-1]]),
            Err(Error::NotSharp(_))
        ));
        assert!(matches!(
            AffineMonoid::new(2, &[vec![1, 0], vec![1]]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn numerical_semigroup() {
        let m = mk(1, &[&[2], &[3]]);
        assert!(!m.is_saturated());
        assert_eq!(m.generators(), &vec![vec![2], vec![3]]);
        let s = saturate(&m);
        assert_eq!(s.generators(), &vec![vec![1]]);
        assert!(s.is_free());
        assert!(!m.contains(&[1]));
        assert!(m.contains(&[5]));
    }

    #[test]
    fn even_sum_lattice() {
        let m = mk(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        assert!(m.is_saturated());
        assert_eq!(m.rank(), 2);
        assert_eq!(m.hilbert_basis().len(), 3);
    }

    #[test]
    fn redundant_generators_dropped() {
        let m = mk(2, &[&[1, 0], &[0, 1], &[1, 1], &[2, 3]]);
        assert_eq!(m.generators().len(), 2);
    }

    #[test]
    fn quotient_of_a1() {
        let m = mk(2, &[&[1, 0], &[1, 1], &[1, 2]]);
        let faces = m.faces();
        assert_eq!(faces.len(), 4);
        let ray = faces.iter().find(|f| f.members == vec![vec![1, 0]]).unwrap();
        let (q, h) = quotient_by_face(&m, ray).unwrap();
        assert_eq!(q.rank(), 1);
        assert!(q.is_free());
        let imgs: Vec<IVec> = m.generators().iter().map(|g| h.apply(g)).collect();
        let mut abs: Vec<i64> = imgs.iter().map(|v| v[0].abs()).collect();
        abs.sort();
        assert_eq!(abs, vec![0, 1, 2]);
    }

    #[test]
    fn quotient_by_whole_and_apex() {
        let m = mk(2, &[&[1, 0], &[0, 1]]);
        let faces = m.faces();
        let (q, _) = quotient_by_face(&m, &faces[0]).unwrap();
        assert_eq!(q, m);
        let (q, _) = quotient_by_face(&m, faces.last().unwrap()).unwrap();
        assert_eq!(q.rank(), 0);
        let bogus = Face {
            dim: 1,
            members: vec![vec![1, 1]],
            complement: vec![],
        };
        assert_eq!(quotient_by_face(&m, &bogus).unwrap_err(), Error::NotAFace);
    }

    #[test]
    fn pushouts() {
        let n2 = AffineMonoid::free(2);
        let n1 = AffineMonoid::free(1);
        let u1 = MonoidHom::from_nat(n2.clone(), vec![1, 1]).unwrap();
        let u2 = MonoidHom::from_nat(n1.clone(), vec![1]).unwrap();
        let p = pushout_over_base(&u1, &u2, false).unwrap();
        assert!(p.monoid.is_free());
        assert_eq!(p.monoid.rank(), 2);
        assert_eq!(p.torsion, 1);

        let u2 = MonoidHom::from_nat(n1.clone(), vec![2]).unwrap();
        let plain = pushout_over_base(&u1, &u2, false).unwrap();
        let sat = pushout_over_base(&u1, &u2, true).unwrap();
        assert_eq!(plain.monoid, sat.monoid);
        assert_eq!(sat.monoid.generators().len(), 3);
        let a1 = mk(2, &[&[1, 0], &[0, 1], &[-1, 2]]);
        assert!(sat.monoid.is_isomorphic(&a1));

        let u1 = MonoidHom::from_nat(n1.clone(), vec![2]).unwrap();
        let u2 = MonoidHom::from_nat(n1.clone(), vec![1]).unwrap();
        let p = pushout_over_base(&u1, &u2, false).unwrap();
        assert!(p.monoid.is_free());
        assert_eq!(p.pi.iter().map(|x| x.abs()).sum::<i64>(), 2);
    }

    #[test]
    fn torsion_reported() {
        let n1 = AffineMonoid::free(1);
        let u1 = MonoidHom::from_nat(n1.clone(), vec![2]).unwrap();
        let u2 = MonoidHom::from_nat(n1.clone(), vec![2]).unwrap();
        let p = pushout_over_base(&u1, &u2, false).unwrap();
        assert_eq!(p.torsion, 2);
        assert_eq!(p.monoid.rank(), 1);
    }

    #[test]
    fn saturation_indices() {
        let n2 = AffineMonoid::free(2);
        let idx = |pi: IVec| saturation_index(&MonoidHom::from_nat(n2.clone(), pi).unwrap());
        assert_eq!(idx(vec![1, 1]).unwrap(), 1);
        assert_eq!(idx(vec![2, 3]).unwrap(), 6);
        assert_eq!(idx(vec![0, 0]).unwrap_err(), Error::ZeroUniformizer);
    }

    #[test]
    fn isomorphism_detects_shape() {
        let a = mk(2, &[&[1, 0], &[1, 1], &[1, 2]]);
        let b = mk(2, &[&[0, 1], &[1, 1], &[2, 1]]);
        let c = mk(2, &[&[1, 0], &[1, 1], &[1, 2], &[1, 3]]);
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&c));
    }
}
