//! Kato fans as finite posets of points carrying a sharp fs stalk `C_x`, the
//! class `π_x` of the uniformizer, and cospecialization maps
//! `τ_{x,y}: C_x -> C_y` towards every generization `y` of `x`.
//!
//! Stalks always live in their own group, so `C_x ⊂ Z^{r(x)}` spans
//! `Z^{r(x)}` and `τ_{x,y}` is an `r(y) × r(x)` integer matrix. The generic
//! point (rank zero) is implicit.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::cone::for_each_subset;
use crate::lattice::{self, IMat, IVec};
use crate::monoid::{pushout_over_base, quotient_by_face, AffineMonoid, MonoidHom};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanPoint {
    pub id: String,
    pub branch: String,
    pub stalk: AffineMonoid,
    pub pi: IVec,
    /// For points created by subdivision: the point of the original fan whose
    /// cone contains this one, and a basis of this point's dual lattice
    /// written in the dual lattice of that point.
    pub origin: Option<Origin>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Origin {
    pub point: String,
    pub basis: IMat,
}

impl FanPoint {
    pub fn rank(&self) -> usize {
        self.stalk.rank()
    }

    /// Whether the point lies in the special fiber.
    pub fn is_vertical(&self) -> bool {
        !lattice::is_zero(&self.pi)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KatoFan {
    pub points: Vec<FanPoint>,
    /// `cospec[x][&y]` is `τ_{x,y}` for every generization `y ≠ x` of `x`.
    pub cospec: Vec<BTreeMap<usize, IMat>>,
}

impl KatoFan {
    /// Assembles a fan and checks the stalk, uniformizer and functoriality
    /// conditions.
    pub fn new(points: Vec<FanPoint>, cospec: Vec<BTreeMap<usize, IMat>>) -> Result<Self> {
        let fan = KatoFan { points, cospec };
        fan.validate()?;
        Ok(fan)
    }

    fn validate(&self) -> Result<()> {
        let bad = |s: String| Err(Error::InconsistentStratification(s));
        let mut ids = BTreeSet::new();
        for p in &self.points {
            if !ids.insert(p.id.as_str()) {
                return bad(format!("duplicate point id {}", p.id));
            }
            if !p.stalk.is_full_rank() {
                return bad(format!("stalk at {} is not written in its own group", p.id));
            }
            if p.pi.len() != p.rank() || !p.stalk.contains(&p.pi) {
                return bad(format!("uniformizer at {} is not in the stalk", p.id));
            }
        }
        for (x, maps) in self.cospec.iter().enumerate() {
            let px = &self.points[x];
            for (&y, t) in maps {
                let py = &self.points[y];
                if t.len() != py.rank() || t.iter().any(|r| r.len() != px.rank()) {
                    return bad(format!("τ from {} to {} has the wrong shape", px.id, py.id));
                }
                if py.rank() >= px.rank() {
                    return bad(format!("{} is not a proper generization of {}", py.id, px.id));
                }
                if lattice::mat_vec(t, &px.pi) != py.pi {
                    return bad(format!("τ from {} to {} does not preserve π", px.id, py.id));
                }
                if px.stalk.generators().iter().any(|g| !py.stalk.contains(&lattice::mat_vec(t, g))) {
                    return bad(format!("τ from {} to {} leaves the stalk", px.id, py.id));
                }
                for (&z, t2) in &self.cospec[y] {
                    match maps.get(&z) {
                        Some(t3) if lattice::mat_mul(t2, t, px.rank()) == *t3 => {}
                        _ => {
                            return bad(format!(
                                "τ is not functorial along {} > {} > {}",
                                px.id, py.id, self.points[z].id
                            ))
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The fan `Spec C` of a single stalk: one point for each face of `C`
    /// other than `C` itself. The closed point is named `id`; the point for
    /// the face with index `i` in `C.faces()` is `id.i`. A stalk not spanning
    /// its ambient lattice is first rewritten in coordinates of its group.
    pub fn affine(id: &str, stalk: AffineMonoid, pi: IVec) -> Result<Self> {
        let pi = stalk
            .to_local(&pi)
            .ok_or_else(|| Error::DimensionMismatch("uniformizer outside the stalk group".into()))?;
        let stalk = stalk.in_group_coordinates();
        let faces = stalk.faces();
        let faces = &faces[..faces.len() - 1];
        let mut points = Vec::new();
        let mut proj: Vec<IMat> = Vec::new();
        for (i, face) in faces.iter().enumerate() {
            let (q, hom) = quotient_by_face(&stalk, face)?;
            points.push(FanPoint {
                id: if i == 0 { id.to_string() } else { format!("{id}.{i}") },
                branch: String::new(),
                pi: hom.apply(&pi),
                stalk: q,
                origin: None,
            });
            proj.push(hom.matrix);
        }
        let mut cospec = vec![BTreeMap::new(); points.len()];
        for a in 0..faces.len() {
            let section = lattice::right_inverse(&proj[a], stalk.ambient_rank());
            for b in 0..faces.len() {
                if a != b && faces[a].members.iter().all(|m| faces[b].members.contains(m)) {
                    let t = lattice::mat_mul(&proj[b], &section, points[a].rank());
                    cospec[a].insert(b, t);
                }
            }
        }
        KatoFan::new(points, cospec)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.points.iter().position(|p| p.id == id)
    }

    /// Generizations of `x` other than `x` itself.
    pub fn generizations(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.cospec[x].keys().copied()
    }

    /// Whether `y` is `x` or a generization of it.
    pub fn is_generization(&self, x: usize, y: usize) -> bool {
        x == y || self.cospec[x].contains_key(&y)
    }

    pub fn tau(&self, x: usize, y: usize) -> IMat {
        if x == y {
            lattice::identity(self.points[x].rank())
        } else {
            self.cospec[x][&y].clone()
        }
    }

    /// Height-one points among `x` and its generizations.
    pub fn height_one(&self, x: usize) -> Vec<usize> {
        let mut out: Vec<usize> = std::iter::once(x)
            .chain(self.generizations(x))
            .filter(|&c| self.points[c].rank() == 1)
            .collect();
        out.sort_unstable();
        out
    }

    /// The primitive generator of the ray of the height-one point `c` in the
    /// dual lattice `N_x = Hom(C_x^gp, Z)`.
    pub fn ray_in(&self, x: usize, c: usize) -> IVec {
        let normal = self.points[c].stalk.normals()[0][0];
        lattice::vscale(normal, &self.tau(x, c)[0])
    }

    /// Multiplicity of `π` along a height-one point.
    pub fn multiplicity(&self, c: usize) -> i64 {
        let p = &self.points[c];
        p.stalk.normals()[0][0] * p.pi[0]
    }

    /// All vertical height-one points have multiplicity one.
    pub fn is_semistable(&self) -> bool {
        (0..self.len())
            .filter(|&c| self.points[c].rank() == 1 && self.points[c].is_vertical())
            .all(|c| self.multiplicity(c) == 1)
    }

    pub fn is_regular(&self) -> bool {
        self.points.iter().all(|p| p.stalk.is_free())
    }

    /// Points grouped by stalk rank.
    pub fn rank_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for p in &self.points {
            *m.entry(p.rank()).or_insert(0) += 1;
        }
        m
    }
}

pub fn is_regular(f: &KatoFan) -> bool {
    f.is_regular()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Vertical,
    Horizontal,
}

fn one() -> i64 {
    1
}

fn is_one(x: &i64) -> bool {
    *x == 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub name: String,
    pub kind: ComponentKind,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub multiplicity: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stratum {
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub branches: Vec<String>,
}

/// Which branch of the stratum on `face` contains the branch `branch` of the
/// stratum on `components`. Needed only when `face` has several branches.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchLink {
    pub components: Vec<String>,
    pub branch: String,
    pub face: Vec<String>,
    pub face_branch: String,
}

/// A non-default stalk. `normals` gives, for each component of the stratum,
/// the valuation along that component as a functional on `Z^rank`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StalkOverride {
    pub components: Vec<String>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub branch: String,
    pub generators: IMat,
    pub pi: IVec,
    pub normals: BTreeMap<String, IVec>,
}

fn version_one() -> u32 {
    1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratifiedModel {
    #[serde(default = "version_one")]
    pub version: u32,
    pub components: Vec<Component>,
    pub strata: Vec<Stratum>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub links: Vec<BranchLink>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub stalks: Vec<StalkOverride>,
}

impl StratifiedModel {
    /// A model whose strata are all the given component sets, each with a
    /// single branch.
    pub fn simple(components: Vec<Component>, strata: &[&[&str]]) -> Self {
        StratifiedModel {
            version: 1,
            components,
            strata: strata
                .iter()
                .map(|s| Stratum {
                    components: s.iter().map(|x| x.to_string()).collect(),
                    branches: Vec::new(),
                })
                .collect(),
            links: Vec::new(),
            stalks: Vec::new(),
        }
    }

    pub fn vertical(name: &str, multiplicity: i64) -> Component {
        Component {
            name: name.into(),
            kind: ComponentKind::Vertical,
            multiplicity,
        }
    }

    pub fn horizontal(name: &str) -> Component {
        Component {
            name: name.into(),
            kind: ComponentKind::Horizontal,
            multiplicity: 1,
        }
    }
}

pub fn point_id(components: &[String], branch: &str) -> String {
    let base = components.join(",");
    if branch.is_empty() {
        base
    } else {
        format!("{base}#{branch}")
    }
}

/// Builds the fan with one point per stratum branch.
pub fn fan_from_stratification(m: &StratifiedModel) -> Result<KatoFan> {
    let bad = |s: String| Err(Error::InconsistentStratification(s));
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, c) in m.components.iter().enumerate() {
        if index.insert(c.name.as_str(), i).is_some() {
            return bad(format!("duplicate component {}", c.name));
        }
        if c.kind == ComponentKind::Vertical && c.multiplicity < 1 {
            return bad(format!("component {} has multiplicity {}", c.name, c.multiplicity));
        }
    }
    // Component sets as sorted index lists.
    let mut strata: BTreeMap<Vec<usize>, Vec<String>> = BTreeMap::new();
    for s in &m.strata {
        let mut set = Vec::new();
        for n in &s.components {
            match index.get(n.as_str()) {
                Some(&i) => set.push(i),
                None => return bad(format!("unknown component {n}")),
            }
        }
        set.sort_unstable();
        set.dedup();
        if set.is_empty() {
            return bad("stratum with no components".into());
        }
        let mut branches = s.branches.clone();
        if branches.is_empty() {
            branches.push(String::new());
        }
        if set.len() == 1 && branches.len() > 1 {
            return bad(format!("component {} has several branches", s.components[0]));
        }
        if strata.insert(set, branches).is_some() {
            return bad(format!("stratum {:?} listed twice", s.components));
        }
    }
    let names = |set: &[usize]| -> Vec<String> {
        set.iter().map(|&i| m.components[i].name.clone()).collect()
    };
    let set_of = |list: &[String]| -> Result<Vec<usize>> {
        let mut v = Vec::new();
        for n in list {
            match index.get(n.as_str()) {
                Some(&i) => v.push(i),
                None => return Err(Error::InconsistentStratification(format!("unknown component {n}"))),
            }
        }
        v.sort_unstable();
        v.dedup();
        Ok(v)
    };

    // Points with their stalks and valuation functionals.
    struct Raw {
        set: Vec<usize>,
        branch: String,
        normals: IMat,
    }
    let mut raws: Vec<Raw> = Vec::new();
    let mut points: Vec<FanPoint> = Vec::new();
    let mut lookup: BTreeMap<(Vec<usize>, String), usize> = BTreeMap::new();
    for (set, branches) in &strata {
        for b in branches {
            let ov = m
                .stalks
                .iter()
                .find(|o| set_of(&o.components).ok().as_ref() == Some(set) && &o.branch == b);
            let (stalk, pi, normals) = match ov {
                None => {
                    let r = set.len();
                    let pi: IVec = set
                        .iter()
                        .map(|&i| match m.components[i].kind {
                            ComponentKind::Vertical => m.components[i].multiplicity,
                            ComponentKind::Horizontal => 0,
                        })
                        .collect();
                    (AffineMonoid::free(r), pi, lattice::identity(r))
                }
                Some(o) => {
                    let r = o.pi.len();
                    let stalk = AffineMonoid::new(r, &o.generators)?;
                    if !stalk.is_full_rank() {
                        return bad(format!(
                            "override stalk at {:?} does not generate Z^{r}",
                            o.components
                        ));
                    }
                    let mut normals = Vec::new();
                    for &i in set {
                        let Some(n) = o.normals.get(&m.components[i].name) else {
                            return bad(format!(
                                "override stalk at {:?} lacks a normal for {}",
                                o.components, m.components[i].name
                            ));
                        };
                        normals.push(n.clone());
                    }
                    let mut given: Vec<IVec> = normals.clone();
                    given.sort();
                    if &given != stalk.normals() {
                        return bad(format!(
                            "override normals at {:?} are not the facet normals of the stalk",
                            o.components
                        ));
                    }
                    (stalk, o.pi.clone(), normals)
                }
            };
            for (k, &i) in set.iter().enumerate() {
                let c = &m.components[i];
                let v = lattice::dot(&normals[k], &pi);
                let expected = match c.kind {
                    ComponentKind::Vertical => c.multiplicity,
                    ComponentKind::Horizontal => 0,
                };
                if v != expected {
                    return bad(format!(
                        "π has multiplicity {v} along {} at {}, expected {expected}",
                        c.name,
                        point_id(&names(set), b)
                    ));
                }
            }
            lookup.insert((set.clone(), b.clone()), points.len());
            points.push(FanPoint {
                id: point_id(&names(set), b),
                branch: b.clone(),
                stalk,
                pi,
                origin: None,
            });
            raws.push(Raw {
                set: set.clone(),
                branch: b.clone(),
                normals,
            });
        }
    }

    let mut links: BTreeMap<(Vec<usize>, String, Vec<usize>), String> = BTreeMap::new();
    for l in &m.links {
        links.insert(
            (set_of(&l.components)?, l.branch.clone(), set_of(&l.face)?),
            l.face_branch.clone(),
        );
    }

    let mut cospec: Vec<BTreeMap<usize, IMat>> = vec![BTreeMap::new(); points.len()];
    for x in 0..points.len() {
        let raw = &raws[x];
        let s = raw.set.len();
        for k in 1..s {
            let mut subsets = Vec::new();
            for_each_subset(s, k, |sub| subsets.push(sub.to_vec()));
            for sub in subsets {
                let t: Vec<usize> = sub.iter().map(|&i| raw.set[i]).collect();
                let Some(branches) = strata.get(&t) else {
                    return bad(format!(
                        "stratum {} has no face stratum {}",
                        names(&raw.set).join(","),
                        names(&t).join(",")
                    ));
                };
                let b = if branches.len() == 1 {
                    branches[0].clone()
                } else {
                    match links.get(&(raw.set.clone(), raw.branch.clone(), t.clone())) {
                        Some(b) if branches.contains(b) => b.clone(),
                        _ => {
                            return bad(format!(
                                "no branch of {} is assigned to {}",
                                names(&t).join(","),
                                points[x].id
                            ))
                        }
                    }
                };
                let y = lookup[&(t.clone(), b)];
                let ry = points[y].rank();
                // τ(v) solves N_y w = (<n^x_c, v>)_{c in t}.
                let ny: IMat = raws[y].normals.clone();
                let rows_x: Vec<&IVec> = sub.iter().map(|&i| &raw.normals[i]).collect();
                let mut cols: Vec<IVec> = Vec::new();
                for j in 0..points[x].rank() {
                    let vals: IVec = rows_x.iter().map(|n| n[j]).collect();
                    match lattice::solve_integer(&ny, &vals, ry) {
                        Some(w) if lattice::mat_vec(&ny, &w) == vals => cols.push(w),
                        _ => {
                            return bad(format!(
                                "valuations at {} do not descend to {}",
                                points[x].id, points[y].id
                            ))
                        }
                    }
                }
                let tau = lattice::transpose(&cols, ry);
                cospec[x].insert(y, tau);
            }
        }
    }
    KatoFan::new(points, cospec)
}

/// A fan `F_X ×_{F_S} F_Y` with the data linking each point to its factors.
#[derive(Debug, Clone)]
pub struct ProductFan {
    pub fan: KatoFan,
    /// The factor points of each point; `None` is the generic point.
    pub factors: Vec<(Option<usize>, Option<usize>)>,
    /// Which of the `n(x, y)` points over the pair this is.
    pub copy: Vec<usize>,
    /// `n(x, y)` for the pair under each point.
    pub count: Vec<usize>,
    /// Maps `C_x -> C_z` and `C_y -> C_z` (`r(z) × r(x)` and `r(z) × r(y)`).
    pub inj: Vec<(IMat, IMat)>,
    /// For vertical points: a section `Z^{r(z)} -> Z^{r(x) + r(y)}` of the
    /// quotient map `[inj_x | inj_y]`.
    pub section: Vec<Option<IMat>>,
}

/// `n(x, y)` for a pair of vertical points.
pub type BranchRule<'a> = &'a dyn Fn(&FanPoint, &FanPoint) -> usize;

/// The fs fibre product of two fans over the base. Pairs over the generic
/// point of the base get one point with stalk `C_x ⊕ C_y`; pairs of vertical
/// points get `n(x, y)` points with the saturated pushout stalk. With a
/// semistable factor `n ≡ 1` and the rule is not consulted.
pub fn fan_product(f: &KatoFan, g: &KatoFan, rule: Option<BranchRule>) -> Result<ProductFan> {
    let semistable = f.is_semistable() || g.is_semistable();
    if !semistable && rule.is_none() {
        return Err(Error::MissingBranchRule);
    }
    let vert = |fan: &KatoFan, x: Option<usize>| x.is_some_and(|i| fan.points[i].is_vertical());
    let n_of = |x: Option<usize>, y: Option<usize>| -> usize {
        match (x, y) {
            (Some(a), Some(b)) if !semistable && f.points[a].is_vertical() => {
                rule.unwrap()(&f.points[a], &g.points[b]).max(1)
            }
            _ => 1,
        }
    };
    let fx: Vec<Option<usize>> = std::iter::once(None).chain((0..f.len()).map(Some)).collect();
    let gy: Vec<Option<usize>> = std::iter::once(None).chain((0..g.len()).map(Some)).collect();
    let rank = |fan: &KatoFan, x: Option<usize>| x.map_or(0, |i| fan.points[i].rank());
    let name = |fan: &KatoFan, x: Option<usize>| x.map_or("*".to_string(), |i| fan.points[i].id.clone());

    let mut pairs: Vec<(Option<usize>, Option<usize>)> = Vec::new();
    for &x in &fx {
        for &y in &gy {
            if x.is_none() && y.is_none() {
                continue;
            }
            if vert(f, x) != vert(g, y) {
                continue;
            }
            pairs.push((x, y));
        }
    }
    let mut points = Vec::new();
    let mut factors = Vec::new();
    let mut copy = Vec::new();
    let mut count = Vec::new();
    let mut inj = Vec::new();
    let mut section = Vec::new();
    let mut quot: Vec<Option<IMat>> = Vec::new();
    let mut lookup: BTreeMap<(Option<usize>, Option<usize>, usize), usize> = BTreeMap::new();
    for &(x, y) in &pairs {
        let n = n_of(x, y);
        let (rx, ry) = (rank(f, x), rank(g, y));
        let (stalk, pi, ix, iy, sec, q) = if vert(f, x) {
            let (a, b) = (&f.points[x.unwrap()], &g.points[y.unwrap()]);
            let u1 = MonoidHom::from_nat(a.stalk.clone(), a.pi.clone())?;
            let u2 = MonoidHom::from_nat(b.stalk.clone(), b.pi.clone())?;
            let p = pushout_over_base(&u1, &u2, true)?;
            let q: IMat = p
                .inj1
                .iter()
                .zip(&p.inj2)
                .map(|(r1, r2)| r1.iter().chain(r2).copied().collect())
                .collect();
            (p.monoid, p.pi, p.inj1, p.inj2, Some(p.section), Some(q))
        } else {
            let mut gens: IMat = Vec::new();
            let mut pi = vec![0; rx + ry];
            if let Some(i) = x {
                for gen in f.points[i].stalk.generators() {
                    let mut v = gen.clone();
                    v.resize(rx + ry, 0);
                    gens.push(v);
                }
                pi[..rx].copy_from_slice(&f.points[i].pi);
            }
            if let Some(j) = y {
                for gen in g.points[j].stalk.generators() {
                    let mut v = vec![0; rx];
                    v.extend(gen);
                    gens.push(v);
                }
                pi[rx..].copy_from_slice(&g.points[j].pi);
            }
            let id = lattice::identity(rx + ry);
            let ix: IMat = id.iter().map(|r| r[..rx].to_vec()).collect();
            let iy: IMat = id.iter().map(|r| r[rx..].to_vec()).collect();
            (AffineMonoid::new(rx + ry, &gens)?, pi, ix, iy, None, None)
        };
        for k in 0..n {
            let base = format!("({};{})", name(f, x), name(g, y));
            let id = if n > 1 { format!("{base}#{k}") } else { base };
            lookup.insert((x, y, k), points.len());
            points.push(FanPoint {
                id,
                branch: if n > 1 { k.to_string() } else { String::new() },
                stalk: stalk.clone(),
                pi: pi.clone(),
                origin: None,
            });
            factors.push((x, y));
            copy.push(k);
            count.push(n);
            inj.push((ix.clone(), iy.clone()));
            section.push(sec.clone());
            quot.push(q.clone());
        }
    }

    let gen_or_self = |fan: &KatoFan, x: Option<usize>| -> Vec<Option<usize>> {
        match x {
            None => vec![None],
            Some(i) => std::iter::once(None)
                .chain(std::iter::once(Some(i)))
                .chain(fan.generizations(i).map(Some))
                .collect(),
        }
    };
    let tau_or_zero = |fan: &KatoFan, x: Option<usize>, x2: Option<usize>| -> IMat {
        match (x, x2) {
            (Some(a), Some(b)) => fan.tau(a, b),
            (_, None) => Vec::new(),
            (None, Some(_)) => unreachable!("the generic point has no specializations"),
        }
    };
    let mut cospec: Vec<BTreeMap<usize, IMat>> = vec![BTreeMap::new(); points.len()];
    for z in 0..points.len() {
        let (x, y) = factors[z];
        let (rx, ry) = (rank(f, x), rank(g, y));
        for &x2 in &gen_or_self(f, x) {
            for &y2 in &gen_or_self(g, y) {
                if (x2, y2) == (x, y) || (x2.is_none() && y2.is_none()) {
                    continue;
                }
                if vert(f, x2) != vert(g, y2) {
                    continue;
                }
                let n2 = n_of(x2, y2);
                let z2 = lookup[&(x2, y2, copy[z] % n2)];
                let (rx2, ry2) = (rank(f, x2), rank(g, y2));
                // Block diagonal τ_x ⊕ τ_y.
                let tx = tau_or_zero(f, x, x2);
                let ty = tau_or_zero(g, y, y2);
                let mut d: IMat = Vec::with_capacity(rx2 + ry2);
                for r in &tx {
                    let mut row = r.clone();
                    row.resize(rx + ry, 0);
                    d.push(row);
                }
                for r in &ty {
                    let mut row = vec![0; rx];
                    row.extend(r);
                    d.push(row);
                }
                let mut t = d;
                if let Some(s) = &section[z] {
                    t = lattice::mat_mul(&t, s, points[z].rank());
                }
                if let Some(q2) = &quot[z2] {
                    t = lattice::mat_mul(q2, &t, points[z].rank());
                }
                cospec[z].insert(z2, t);
            }
        }
    }
    let fan = KatoFan::new(points, cospec)?;
    Ok(ProductFan {
        fan,
        factors,
        copy,
        count,
        inj,
        section,
    })
}

/// Outcome of checking that `n` never drops under specialization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityReport {
    pub monotone: bool,
    /// A pair `(special, generic)` of point ids with `n(special) < n(generic)`.
    pub violation: Option<(String, String)>,
}

pub fn n_monotonicity_check(p: &ProductFan) -> MonotonicityReport {
    for z in 0..p.fan.len() {
        for z2 in p.fan.generizations(z) {
            if p.count[z] < p.count[z2] {
                return MonotonicityReport {
                    monotone: false,
                    violation: Some((p.fan.points[z].id.clone(), p.fan.points[z2].id.clone())),
                };
            }
        }
    }
    MonotonicityReport {
        monotone: true,
        violation: None,
    }
}
