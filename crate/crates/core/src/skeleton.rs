//! Skeletons of Kato fans. The cell of a vertical point `x` is the polyhedron
//! `σ_x = {α ∈ Hom(C_x, R≥0) : α(π) = 1}`, written in the coordinates of
//! `N_x ⊗ Q`. A generization `y` of `x` embeds `σ_y` as a face of `σ_x` by
//! `α ↦ τ_{x,y}^T α`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;

use crate::fan::{KatoFan, ProductFan};
use crate::lattice::{self, IMat, IVec, QVec};
use crate::topology::CellComplex;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkeletonFace {
    pub point: String,
    pub fan_index: usize,
    pub dim: usize,
    pub vertices: Vec<QVec>,
    /// The vertical height-one fan point behind each vertex.
    pub vertex_points: Vec<usize>,
    /// Recession directions, one per horizontal height-one point.
    pub rays: IMat,
    pub ray_points: Vec<usize>,
    /// H-representation: `α(g) ≥ 0` for these generators and `α(pi) = 1`.
    pub generators: IMat,
    pub pi: IVec,
}

impl SkeletonFace {
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn contains(&self, alpha: &[BigRational]) -> bool {
        lattice::qdot(alpha, &self.pi) == lattice::one()
            && self
                .generators
                .iter()
                .all(|g| !num_traits::Signed::is_negative(&lattice::qdot(alpha, g)))
    }

    /// Whether `v` is a recession direction: `α(g) ≥ 0` and `α(π) = 0`.
    pub fn recedes_along(&self, v: &[i64]) -> bool {
        lattice::dot(v, &self.pi) == 0 && self.generators.iter().all(|g| lattice::dot(v, g) >= 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedralComplex {
    pub faces: Vec<SkeletonFace>,
    /// `inclusions[&(x, y)]` embeds `σ_y` into `σ_x` (an `r(x) × r(y)` matrix)
    /// for every proper face `y` of `x`.
    pub inclusions: BTreeMap<(usize, usize), IMat>,
}

impl PolyhedralComplex {
    pub fn index_of(&self, point: &str) -> Option<usize> {
        self.faces.iter().position(|f| f.point == point)
    }

    pub fn face_of_fan_point(&self, x: usize) -> Option<usize> {
        self.faces.iter().position(|f| f.fan_index == x)
    }

    /// Cells grouped by dimension.
    pub fn dim_counts(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for f in &self.faces {
            *m.entry(f.dim).or_insert(0) += 1;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.faces.iter().map(|f| f.dim).max().unwrap_or(0)
    }

    /// Proper faces of dimension one less.
    pub fn facets_of(&self, x: usize) -> Vec<usize> {
        let d = self.faces[x].dim;
        let mut out: Vec<usize> = self
            .inclusions
            .keys()
            .filter(|(a, b)| *a == x && self.faces[*b].dim + 1 == d)
            .map(|&(_, b)| b)
            .collect();
        out.sort_unstable();
        out
    }

    /// The bounded cells as a regular cell complex, with the map from its
    /// cells back to faces of `self`.
    pub fn bounded_cell_complex(&self) -> (CellComplex, Vec<usize>) {
        self.cell_complex_of(&(0..self.faces.len()).filter(|&i| self.faces[i].is_bounded()).collect::<Vec<_>>())
    }

    /// The regular cell complex formed by the given (closed) set of faces.
    pub fn cell_complex_of(&self, cells: &[usize]) -> (CellComplex, Vec<usize>) {
        let pos: BTreeMap<usize, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let dims = cells.iter().map(|&c| self.faces[c].dim).collect();
        let facets = cells
            .iter()
            .map(|&c| self.facets_of(c).iter().filter_map(|f| pos.get(f).copied()).collect())
            .collect();
        let labels = cells.iter().map(|&c| self.faces[c].point.clone()).collect();
        (CellComplex::new(dims, facets, labels), cells.to_vec())
    }

    /// The smallest set of faces closed under taking faces that contains `cells`.
    pub fn closure(&self, cells: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = cells.clone();
        for &(a, b) in self.inclusions.keys() {
            if cells.contains(&a) {
                out.insert(b);
            }
        }
        out
    }
}

/// One face per vertical fan point, glued along the τ-induced embeddings.
pub fn skeleton_of_fan(f: &KatoFan) -> PolyhedralComplex {
    let mut faces = Vec::new();
    let mut index = BTreeMap::new();
    for (x, p) in f.points.iter().enumerate() {
        if !p.is_vertical() {
            continue;
        }
        let mut vertices = Vec::new();
        let mut vertex_points = Vec::new();
        let mut rays = Vec::new();
        let mut ray_points = Vec::new();
        for c in f.height_one(x) {
            let rho = f.ray_in(x, c);
            let v = lattice::dot(&rho, &p.pi);
            if v > 0 {
                let q = lattice::q(v);
                vertices.push(rho.iter().map(|&a| lattice::q(a) / &q).collect());
                vertex_points.push(c);
            } else {
                rays.push(rho);
                ray_points.push(c);
            }
        }
        index.insert(x, faces.len());
        faces.push(SkeletonFace {
            point: p.id.clone(),
            fan_index: x,
            dim: p.rank() - 1,
            vertices,
            vertex_points,
            rays,
            ray_points,
            generators: p.stalk.generators().clone(),
            pi: p.pi.clone(),
        });
    }
    let mut inclusions = BTreeMap::new();
    for (&x, &i) in &index {
        for y in f.generizations(x) {
            if let Some(&j) = index.get(&y) {
                let t = f.tau(x, y);
                inclusions.insert((i, j), lattice::transpose(&t, f.points[x].rank()));
            }
        }
    }
    PolyhedralComplex { faces, inclusions }
}

/// The skeleton of a product fan with the cellwise linear map
/// `α ↦ (ι_x^T α, ι_y^T α)` to the product of the factor skeletons.
#[derive(Debug, Clone)]
pub struct ProductSkeleton {
    pub complex: PolyhedralComplex,
    pub factor_x: PolyhedralComplex,
    pub factor_y: PolyhedralComplex,
    /// For each face: the target faces in the factors and the two matrices.
    pub maps: Vec<CellMap>,
    /// Whether some factor is semistable.
    pub semistable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellMap {
    pub x_face: usize,
    pub y_face: usize,
    /// `r(x) × r(z)` and `r(y) × r(z)`.
    pub to_x: IMat,
    pub to_y: IMat,
}

impl CellMap {
    pub fn apply(&self, alpha: &[BigRational]) -> (QVec, QVec) {
        let m = |a: &IMat| -> QVec { a.iter().map(|row| lattice::qdot(alpha, row)).collect() };
        (m(&self.to_x), m(&self.to_y))
    }
}

pub fn product_skeleton(
    fx: &KatoFan,
    fy: &KatoFan,
    prod: &ProductFan,
) -> Result<ProductSkeleton> {
    let factor_x = skeleton_of_fan(fx);
    let factor_y = skeleton_of_fan(fy);
    let complex = skeleton_of_fan(&prod.fan);
    let mut maps = Vec::new();
    for face in &complex.faces {
        let z = face.fan_index;
        let (Some(x), Some(y)) = prod.factors[z] else {
            return Err(Error::NotAProductFan(format!("{} has no factor pair", face.point)));
        };
        let (Some(xf), Some(yf)) = (factor_x.face_of_fan_point(x), factor_y.face_of_fan_point(y)) else {
            return Err(Error::NotAProductFan(format!("factors of {} are not vertical", face.point)));
        };
        let (ix, iy) = &prod.inj[z];
        let rz = prod.fan.points[z].rank();
        if ix.len() != rz || iy.len() != rz {
            return Err(Error::NotAProductFan(format!("injections at {} have the wrong shape", face.point)));
        }
        maps.push(CellMap {
            x_face: xf,
            y_face: yf,
            to_x: lattice::transpose(ix, fx.points[x].rank()),
            to_y: lattice::transpose(iy, fy.points[y].rank()),
        });
    }
    Ok(ProductSkeleton {
        complex,
        factor_x,
        factor_y,
        maps,
        semistable: fx.is_semistable() || fy.is_semistable(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductCheck {
    pub holds: bool,
    pub witness: Option<String>,
}

fn fail(w: String) -> ProductCheck {
    ProductCheck {
        holds: false,
        witness: Some(w),
    }
}

fn primitive_q(v: &QVec) -> QVec {
    // Scale a nonzero rational vector so its first nonzero entry is ±1.
    let lead = v.iter().find(|x| !x.is_zero()).cloned().unwrap_or_else(lattice::one);
    let s = num_traits::Signed::abs(&lead);
    v.iter().map(|x| x / &s).collect()
}

/// Checks that the product map is a bijection on cells, an affine
/// isomorphism on each cell, and compatible with the gluing maps.
pub fn check_product_homeomorphism(ps: &ProductSkeleton) -> ProductCheck {
    // (i) cells over each pair of factor cells
    let mut over: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (z, m) in ps.maps.iter().enumerate() {
        over.entry((m.x_face, m.y_face)).or_default().push(z);
    }
    for xf in 0..ps.factor_x.faces.len() {
        for yf in 0..ps.factor_y.faces.len() {
            match over.get(&(xf, yf)).map_or(0, |v| v.len()) {
                1 => {}
                k => {
                    return fail(format!(
                        "{} cells over ({}, {})",
                        k, ps.factor_x.faces[xf].point, ps.factor_y.faces[yf].point
                    ))
                }
            }
        }
    }
    // (ii) each cell maps isomorphically onto the product cell
    for (z, m) in ps.maps.iter().enumerate() {
        let face = &ps.complex.faces[z];
        let (fx, fy) = (&ps.factor_x.faces[m.x_face], &ps.factor_y.faces[m.y_face]);
        let rz = face.pi.len();
        let mut stacked = m.to_x.clone();
        stacked.extend(m.to_y.iter().cloned());
        if lattice::rank(&stacked, rz) != rz {
            return fail(format!("map on {} is not injective", face.point));
        }
        if face.dim != fx.dim + fy.dim {
            return fail(format!("dimension mismatch at {}", face.point));
        }
        let images: BTreeSet<(QVec, QVec)> = face.vertices.iter().map(|v| m.apply(v)).collect();
        let expected: BTreeSet<(QVec, QVec)> = fx
            .vertices
            .iter()
            .flat_map(|a| fy.vertices.iter().map(move |b| (a.clone(), b.clone())))
            .collect();
        if images != expected {
            return fail(format!("vertices of {} do not map onto the product cell", face.point));
        }
        let zero_x: QVec = vec![BigRational::zero(); fx.pi.len()];
        let zero_y: QVec = vec![BigRational::zero(); fy.pi.len()];
        let ray_images: BTreeSet<(QVec, QVec)> = face
            .rays
            .iter()
            .map(|r| {
                let (a, b) = m.apply(&lattice::to_q(r));
                let mut both = a.clone();
                both.extend(b.iter().cloned());
                let p = primitive_q(&both);
                (p[..a.len()].to_vec(), p[a.len()..].to_vec())
            })
            .collect();
        let mut expected_rays = BTreeSet::new();
        for r in &fx.rays {
            expected_rays.insert((primitive_q(&lattice::to_q(r)), zero_y.clone()));
        }
        for r in &fy.rays {
            expected_rays.insert((zero_x.clone(), primitive_q(&lattice::to_q(r))));
        }
        if ray_images != expected_rays {
            return fail(format!("rays of {} do not map onto the product cell", face.point));
        }
    }
    // (iii) gluing compatibility
    for (&(z, z2), inc) in &ps.complex.inclusions {
        let (m, m2) = (&ps.maps[z], &ps.maps[z2]);
        let rz2 = ps.complex.faces[z2].pi.len();
        let ix = ps.factor_x.inclusions.get(&(m.x_face, m2.x_face));
        let iy = ps.factor_y.inclusions.get(&(m.y_face, m2.y_face));
        let lhs_x = lattice::mat_mul(&m.to_x, inc, rz2);
        let lhs_y = lattice::mat_mul(&m.to_y, inc, rz2);
        let rhs_x = match ix {
            Some(i) => lattice::mat_mul(i, &m2.to_x, rz2),
            None if m.x_face == m2.x_face => m2.to_x.clone(),
            None => return fail(format!("no factor gluing under {}", ps.complex.faces[z].point)),
        };
        let rhs_y = match iy {
            Some(i) => lattice::mat_mul(i, &m2.to_y, rz2),
            None if m.y_face == m2.y_face => m2.to_y.clone(),
            None => return fail(format!("no factor gluing under {}", ps.complex.faces[z].point)),
        };
        if lhs_x != rhs_x || lhs_y != rhs_y {
            return fail(format!(
                "gluing of {} into {} does not commute with the product map",
                ps.complex.faces[z2].point, ps.complex.faces[z].point
            ));
        }
    }
    ProductCheck {
        holds: true,
        witness: None,
    }
}

/// The skeleton of a subdivided fan, after checking that each new cell lies
/// in the cell it came from and that old vertices survive.
pub fn subdivide_complex(old_fan: &KatoFan, new_fan: &KatoFan) -> Result<PolyhedralComplex> {
    let old = skeleton_of_fan(old_fan);
    let new = skeleton_of_fan(new_fan);
    for face in &new.faces {
        let p = &new_fan.points[face.fan_index];
        let (origin, basis) = match &p.origin {
            Some(o) => (o.point.clone(), o.basis.clone()),
            None => (p.id.clone(), lattice::identity(p.rank())),
        };
        let Some(of) = old.index_of(&origin) else {
            return Err(Error::NotASubdivision(format!("{} has no origin cell", face.point)));
        };
        let target = &old.faces[of];
        let r = target.pi.len();
        let lift = |v: &QVec| -> QVec {
            (0..r)
                .map(|j| {
                    v.iter()
                        .zip(&basis)
                        .fold(BigRational::zero(), |acc, (c, row)| acc + c * lattice::q(row[j]))
                })
                .collect()
        };
        for v in &face.vertices {
            if !target.contains(&lift(v)) {
                return Err(Error::NotASubdivision(format!("vertex of {} leaves {}", face.point, origin)));
            }
        }
        for ray in &face.rays {
            let l = lift(&lattice::to_q(ray));
            let li: IVec = l.iter().map(|x| i64::try_from(x.to_integer()).expect("lattice arithmetic overflow")).collect();
            if !target.recedes_along(&li) {
                return Err(Error::NotASubdivision(format!("ray of {} leaves {}", face.point, origin)));
            }
        }
    }
    for face in old.faces.iter().filter(|f| f.dim == 0) {
        if new.index_of(&face.point).is_none() {
            return Err(Error::NotASubdivision(format!("vertex {} disappeared", face.point)));
        }
    }
    Ok(new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{fan_from_stratification, fan_product, StratifiedModel, Stratum};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn node(m1: i64, m2: i64) -> KatoFan {
        fan_from_stratification(&StratifiedModel::simple(
            vec![StratifiedModel::vertical("A", m1), StratifiedModel::vertical("B", m2)],
            &[&["A"], &["B"], &["A", "B"]],
        ))
        .unwrap()
    }

    #[test]
    fn segment_vertices() {
        let sk = skeleton_of_fan(&node(1, 2));
        let e = sk.index_of("A,B").unwrap();
        let mut vs = sk.faces[e].vertices.clone();
        vs.sort();
        assert_eq!(vs, vec![vec![q(0, 1), q(1, 2)], vec![q(1, 1), q(0, 1)]]);
        assert_eq!(sk.dim_counts(), BTreeMap::from([(0, 2), (1, 1)]));
    }

    #[test]
    fn quartic_circle() {
        let mut m = StratifiedModel::simple(
            vec![StratifiedModel::vertical("E1", 1), StratifiedModel::vertical("E2", 1)],
            &[&["E1"], &["E2"]],
        );
        m.strata.push(Stratum {
            components: vec!["E1".into(), "E2".into()],
            branches: vec!["pA".into(), "pB".into()],
        });
        let f = fan_from_stratification(&m).unwrap();
        let sk = skeleton_of_fan(&f);
        assert_eq!(sk.dim_counts(), BTreeMap::from([(0, 2), (1, 2)]));
        let p = fan_product(&f, &f, None).unwrap();
        let ps = product_skeleton(&f, &f, &p).unwrap();
        assert_eq!(ps.complex.dim_counts(), BTreeMap::from([(0, 4), (1, 8), (2, 4)]));
        assert!(check_product_homeomorphism(&ps).holds);
    }

    #[test]
    fn line_with_rays() {
        let f = fan_from_stratification(&StratifiedModel::simple(
            vec![
                StratifiedModel::horizontal("H0"),
                StratifiedModel::horizontal("H1"),
                StratifiedModel::vertical("V", 1),
            ],
            &[&["H0"], &["H1"], &["V"], &["H0", "V"], &["H1", "V"]],
        ))
        .unwrap();
        let sk = skeleton_of_fan(&f);
        assert_eq!(sk.faces.len(), 3);
        assert_eq!(sk.faces.iter().filter(|f| !f.is_bounded()).count(), 2);
    }

    #[test]
    fn square_product() {
        let a = node(1, 1);
        let p = fan_product(&a, &a, None).unwrap();
        let ps = product_skeleton(&a, &a, &p).unwrap();
        assert_eq!(ps.complex.dim_counts(), BTreeMap::from([(0, 4), (1, 4), (2, 1)]));
        assert!(check_product_homeomorphism(&ps).holds);
    }

    #[test]
    fn double_lines_fail_injectivity() {
        let x = node(2, 2);
        let rule = |a: &crate::fan::FanPoint, b: &crate::fan::FanPoint| {
            if a.rank() == 2 && b.rank() == 2 { 2 } else { 1 }
        };
        let p = fan_product(&x, &x, Some(&rule)).unwrap();
        let ps = product_skeleton(&x, &x, &p).unwrap();
        assert_eq!(ps.complex.dim_counts(), BTreeMap::from([(0, 4), (1, 4), (2, 2)]));
        let c = check_product_homeomorphism(&ps);
        assert!(!c.holds);
        assert!(c.witness.unwrap().starts_with("2 cells"));
    }
}
