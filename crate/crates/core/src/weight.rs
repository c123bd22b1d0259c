//! Weight functions of divisors on skeletons. A divisor with rational
//! multiplicities `a_c` along the height-one points is, at every point `x`,
//! a linear form `ℓ_x` on `N_x ⊗ Q` with `ℓ_x(ρ_c) = a_c` for each ray `ρ_c`
//! of `x`. On the cell `σ_x` the weight is `α ↦ ℓ_x(α) + m`.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::fan::{KatoFan, ProductFan};
use crate::lattice::{self, QVec};
use crate::skeleton::{PolyhedralComplex, ProductSkeleton};
use crate::{Error, Result};

/// Multiplicities of a logarithmic `m`-pluricanonical form, keyed by
/// height-one fan point id. Missing keys mean multiplicity zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogDivisor {
    pub m: i64,
    pub mults: BTreeMap<String, BigRational>,
}

#[derive(Serialize, Deserialize)]
struct DivisorJson {
    m: i64,
    #[serde(default)]
    mults: BTreeMap<String, String>,
}

impl Serialize for LogDivisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DivisorJson {
            m: self.m,
            mults: self
                .mults
                .iter()
                .map(|(k, v)| (k.clone(), lattice::rational_string(v)))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LogDivisor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = DivisorJson::deserialize(d)?;
        if j.m < 1 {
            return Err(serde::de::Error::custom("index m must be positive"));
        }
        let mut mults = BTreeMap::new();
        for (k, v) in j.mults {
            let q = lattice::parse_rational(&v)
                .ok_or_else(|| serde::de::Error::custom(format!("bad rational {v:?}")))?;
            mults.insert(k, q);
        }
        Ok(LogDivisor { m: j.m, mults })
    }
}

impl LogDivisor {
    pub fn zero(m: i64) -> Self {
        LogDivisor {
            m,
            mults: BTreeMap::new(),
        }
    }

    pub fn with(m: i64, mults: &[(&str, i64)]) -> Self {
        LogDivisor {
            m,
            mults: mults
                .iter()
                .map(|(k, v)| (k.to_string(), lattice::q(*v)))
                .collect(),
        }
    }

    pub fn mult(&self, id: &str) -> BigRational {
        self.mults.get(id).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Every key must be a height-one point of `f`.
    pub fn check_support(&self, f: &KatoFan) -> Result<()> {
        if self.m < 1 {
            return Err(Error::UnsupportedDivisorComponent(format!("index m = {}", self.m)));
        }
        for k in self.mults.keys() {
            match f.index_of(k) {
                Some(c) if f.points[c].rank() == 1 => {}
                Some(_) => return Err(Error::UnsupportedDivisorComponent(format!("{k} is not a height-one point"))),
                None => return Err(Error::UnsupportedDivisorComponent(k.clone())),
            }
        }
        Ok(())
    }

    /// Range check `a_i ≥ m (1 - c_i)` against boundary coefficients of
    /// horizontal components.
    pub fn check_coefficients(&self, coefficients: &BTreeMap<String, BigRational>) -> Result<()> {
        let m = lattice::q(self.m);
        for (k, c) in coefficients {
            let bound = &m * (lattice::one() - c);
            if self.mult(k) < bound {
                return Err(Error::UnsupportedDivisorComponent(format!(
                    "{k}: multiplicity below m(1 - a)"
                )));
            }
        }
        Ok(())
    }
}

/// The linear forms `ℓ_x` at every fan point.
pub fn divisor_functionals(f: &KatoFan, d: &LogDivisor) -> Result<Vec<QVec>> {
    d.check_support(f)?;
    (0..f.len())
        .map(|x| {
            let hs = f.height_one(x);
            let rows: Vec<_> = hs.iter().map(|&c| f.ray_in(x, c)).collect();
            let rhs: QVec = hs.iter().map(|&c| d.mult(&f.points[c].id)).collect();
            lattice::solve_rational(&rows, &rhs, f.points[x].rank())
                .ok_or_else(|| Error::NotQCartier(f.points[x].id.clone()))
        })
        .collect()
}

/// One affine functional per face of a skeleton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLWeight {
    pub m: i64,
    pub linear: Vec<QVec>,
}

impl PLWeight {
    pub fn value(&self, face: usize, alpha: &[BigRational]) -> BigRational {
        lattice::qqdot(alpha, &self.linear[face]) + lattice::q(self.m)
    }

    pub fn slope(&self, face: usize, ray: &[i64]) -> BigRational {
        lattice::qdot(&self.linear[face], ray)
    }

    /// Restrictions to shared faces agree.
    pub fn is_continuous(&self, sk: &PolyhedralComplex) -> bool {
        sk.inclusions.iter().all(|(&(x, y), inc)| {
            let ry = sk.faces[y].pi.len();
            let pulled: QVec = (0..ry)
                .map(|j| {
                    inc.iter()
                        .zip(&self.linear[x])
                        .fold(BigRational::zero(), |acc, (row, l)| acc + l * lattice::q(row[j]))
                })
                .collect();
            pulled == self.linear[y]
        })
    }

    /// Values at the vertices of a face.
    pub fn vertex_values(&self, sk: &PolyhedralComplex, face: usize) -> Vec<BigRational> {
        sk.faces[face].vertices.iter().map(|v| self.value(face, v)).collect()
    }
}

pub fn weight_function(f: &KatoFan, sk: &PolyhedralComplex, d: &LogDivisor) -> Result<PLWeight> {
    let ls = divisor_functionals(f, d)?;
    let w = PLWeight {
        m: d.m,
        linear: sk.faces.iter().map(|face| ls[face.fan_index].clone()).collect(),
    };
    debug_assert!(w.is_continuous(sk));
    Ok(w)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MinimalityLocus {
    /// The minimum value and the closed subcomplex where it is attained.
    Attained { min: BigRational, cells: BTreeSet<usize> },
    /// The weight decreases without bound along this ray of this face.
    MinusInfinity { face: String, ray: usize },
}

impl MinimalityLocus {
    pub fn cells(&self) -> Option<&BTreeSet<usize>> {
        match self {
            MinimalityLocus::Attained { cells, .. } => Some(cells),
            MinimalityLocus::MinusInfinity { .. } => None,
        }
    }
}

/// The Kontsevich–Soibelman skeleton: the closed set of cells on which the
/// weight is minimal.
pub fn minimality_locus(sk: &PolyhedralComplex, w: &PLWeight) -> MinimalityLocus {
    for (i, face) in sk.faces.iter().enumerate() {
        for (j, r) in face.rays.iter().enumerate() {
            if w.slope(i, r).is_negative() {
                return MinimalityLocus::MinusInfinity {
                    face: face.point.clone(),
                    ray: j,
                };
            }
        }
    }
    let min = (0..sk.faces.len())
        .flat_map(|i| w.vertex_values(sk, i))
        .min()
        .unwrap_or_else(BigRational::zero);
    let cells = (0..sk.faces.len())
        .filter(|&i| {
            w.vertex_values(sk, i).iter().all(|v| *v == min)
                && sk.faces[i].rays.iter().all(|r| w.slope(i, r).is_zero())
        })
        .collect();
    MinimalityLocus::Attained { min, cells }
}

/// Rescales by the least `d` making everything integral and subtracts
/// `n·div(π)` so that vertical multiplicities are nonnegative with one zero.
pub fn normalize_divisor(f: &KatoFan, d: &LogDivisor) -> Result<LogDivisor> {
    d.check_support(f)?;
    let vertical: Vec<usize> = (0..f.len())
        .filter(|&c| f.points[c].rank() == 1 && f.points[c].is_vertical())
        .collect();
    let ratio = |c: usize| d.mult(&f.points[c].id) / lattice::q(f.multiplicity(c));
    let nmin = vertical.iter().map(|&c| ratio(c)).min().unwrap_or_else(BigRational::zero);
    let scale = d
        .mults
        .values()
        .chain(std::iter::once(&nmin))
        .fold(BigRational::from_integer(1.into()), |acc, x| {
            BigRational::from_integer(acc.to_integer().lcm(x.denom()))
        });
    let n = &nmin * &scale;
    let mut mults = BTreeMap::new();
    for c in 0..f.len() {
        if f.points[c].rank() != 1 {
            continue;
        }
        let id = &f.points[c].id;
        let mut a = d.mult(id) * &scale;
        if f.points[c].is_vertical() {
            a -= &n * lattice::q(f.multiplicity(c));
        }
        if !a.is_zero() {
            mults.insert(id.clone(), a);
        }
    }
    let s = i64::try_from(scale.to_integer()).expect("lattice arithmetic overflow");
    Ok(LogDivisor { m: d.m * s, mults })
}

/// Union of the minimality loci of a finite list of forms. Forms whose weight
/// is unbounded below contribute nothing.
pub fn essential_skeleton(f: &KatoFan, sk: &PolyhedralComplex, forms: &[LogDivisor]) -> Result<BTreeSet<usize>> {
    if forms.is_empty() {
        return Err(Error::EmptyFormList);
    }
    let mut out = BTreeSet::new();
    for d in forms {
        let w = weight_function(f, sk, d)?;
        if let MinimalityLocus::Attained { cells, .. } = minimality_locus(sk, &w) {
            out.extend(cells);
        }
    }
    Ok(out)
}

/// The pullback `pr_X^* D_X + pr_Y^* D_Y` to a product fan.
pub fn product_divisor(fx: &KatoFan, fy: &KatoFan, prod: &ProductFan, dx: &LogDivisor, dy: &LogDivisor) -> Result<LogDivisor> {
    if dx.m != dy.m {
        return Err(Error::DimensionMismatch(format!("indices {} and {} differ", dx.m, dy.m)));
    }
    let lx = divisor_functionals(fx, dx)?;
    let ly = divisor_functionals(fy, dy)?;
    let mut mults = BTreeMap::new();
    for (z, p) in prod.fan.points.iter().enumerate() {
        if p.rank() != 1 {
            continue;
        }
        let (x, y) = prod.factors[z];
        let (ix, iy) = &prod.inj[z];
        let mut l = BigRational::zero();
        if let Some(x) = x {
            l += lattice::qdot(&lx[x], &ix[0]);
        }
        if let Some(y) = y {
            l += lattice::qdot(&ly[y], &iy[0]);
        }
        // ℓ_z = ι_x ℓ_x + ι_y ℓ_y on a rank-one lattice, evaluated on the ray.
        let a = l * lattice::q(p.stalk.normals()[0][0]);
        if !a.is_zero() {
            mults.insert(p.id.clone(), a);
        }
    }
    Ok(LogDivisor { m: dx.m, mults })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductWeightReport {
    pub identity_holds: bool,
    pub ks_bijection: bool,
    pub witness: Option<String>,
}

/// Checks `wt_Z = wt_X + wt_Y - m` at every vertex and along every ray, and
/// that the minimality locus of `Z` maps bijectively onto the product of
/// the factor loci.
pub fn product_weight_check(
    ps: &ProductSkeleton,
    wx: &PLWeight,
    wy: &PLWeight,
    wz: &PLWeight,
) -> ProductWeightReport {
    let m = lattice::q(wz.m);
    let mut witness = None;
    'faces: for (z, map) in ps.maps.iter().enumerate() {
        let face = &ps.complex.faces[z];
        for v in &face.vertices {
            let (a, b) = map.apply(v);
            if wz.value(z, v) != wx.value(map.x_face, &a) + wy.value(map.y_face, &b) - &m {
                witness = Some(format!("value at a vertex of {}", face.point));
                break 'faces;
            }
        }
        for r in &face.rays {
            let (a, b) = map.apply(&lattice::to_q(r));
            let sx = lattice::qqdot(&a, &wx.linear[map.x_face]);
            let sy = lattice::qqdot(&b, &wy.linear[map.y_face]);
            if wz.slope(z, r) != sx + sy {
                witness = Some(format!("slope along a ray of {}", face.point));
                break 'faces;
            }
        }
    }
    let identity_holds = witness.is_none();
    let lz = minimality_locus(&ps.complex, wz);
    let lx = minimality_locus(&ps.factor_x, wx);
    let ly = minimality_locus(&ps.factor_y, wy);
    let ks_bijection = match (lz.cells(), lx.cells(), ly.cells()) {
        (Some(cz), Some(cx), Some(cy)) => {
            let images: BTreeSet<(usize, usize)> = cz.iter().map(|&z| (ps.maps[z].x_face, ps.maps[z].y_face)).collect();
            let expected: BTreeSet<(usize, usize)> =
                cx.iter().flat_map(|&a| cy.iter().map(move |&b| (a, b))).collect();
            images.len() == cz.len() && images == expected
        }
        (None, a, b) => a.is_none() || b.is_none(),
        _ => false,
    };
    if ks_bijection || witness.is_some() {
        return ProductWeightReport {
            identity_holds,
            ks_bijection,
            witness,
        };
    }
    ProductWeightReport {
        identity_holds,
        ks_bijection,
        witness: Some("minimality loci do not correspond".into()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::{fan_from_stratification, StratifiedModel};
    use crate::skeleton::skeleton_of_fan;

    fn p1(horizontal: &[&str]) -> KatoFan {
        let mut comps = vec![StratifiedModel::vertical("V", 1)];
        comps.extend(horizontal.iter().map(|h| StratifiedModel::horizontal(h)));
        let mut strata: Vec<Vec<&str>> = vec![vec!["V"]];
        for h in horizontal {
            strata.push(vec![h]);
            strata.push(vec![h, "V"]);
        }
        let refs: Vec<&[&str]> = strata.iter().map(|s| s.as_slice()).collect();
        fan_from_stratification(&StratifiedModel::simple(comps, &refs)).unwrap()
    }

    #[test]
    fn line_with_zero_divisor() {
        let f = p1(&["H0", "H1"]);
        let sk = skeleton_of_fan(&f);
        let w = weight_function(&f, &sk, &LogDivisor::zero(1)).unwrap();
        let MinimalityLocus::Attained { min, cells } = minimality_locus(&sk, &w) else { panic!() };
        assert_eq!(min, lattice::q(1));
        assert_eq!(cells.len(), 3);
    }

    #[test]
    fn three_sections() {
        let f = p1(&["H0", "H1", "H2"]);
        let sk = skeleton_of_fan(&f);
        let d = LogDivisor::with(3, &[("H0", 1), ("H1", 1), ("H2", 1)]);
        let w = weight_function(&f, &sk, &d).unwrap();
        let MinimalityLocus::Attained { min, cells } = minimality_locus(&sk, &w) else { panic!() };
        assert_eq!(min, lattice::q(3));
        assert_eq!(cells.len(), 1);
        for (i, face) in sk.faces.iter().enumerate() {
            for r in &face.rays {
                assert_eq!(w.slope(i, r), lattice::q(1));
            }
        }
        assert_eq!(normalize_divisor(&f, &d).unwrap(), d);
    }

    #[test]
    fn normalization() {
        let f = fan_from_stratification(&StratifiedModel::simple(
            vec![StratifiedModel::vertical("A", 1), StratifiedModel::vertical("B", 1)],
            &[&["A"], &["B"], &["A", "B"]],
        ))
        .unwrap();
        let n = normalize_divisor(&f, &LogDivisor::with(1, &[("A", 3), ("B", 5)])).unwrap();
        assert_eq!(n, LogDivisor::with(1, &[("B", 2)]));
        let n = normalize_divisor(&f, &LogDivisor::with(1, &[("A", 2), ("B", 2)])).unwrap();
        assert_eq!(n, LogDivisor::zero(1));
    }

    #[test]
    fn unknown_component() {
        let f = p1(&["H0"]);
        let sk = skeleton_of_fan(&f);
        assert!(matches!(
            weight_function(&f, &sk, &LogDivisor::with(1, &[("Q", 1)])),
            Err(Error::UnsupportedDivisorComponent(_))
        ));
        assert_eq!(essential_skeleton(&f, &sk, &[]), Err(Error::EmptyFormList));
    }
}
