mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use katoskel::corpus;
use katoskel::fan::{fan_from_stratification, KatoFan};
use katoskel::io::{face_permutation, Document};
use katoskel::lattice;
use katoskel::skeleton::{product_skeleton, skeleton_of_fan};
use katoskel::weight::{
    minimality_locus, normalize_divisor, product_divisor, product_weight_check, weight_function, LogDivisor,
    MinimalityLocus,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn family() -> &'static [KatoFan] {
    static FANS: OnceLock<Vec<KatoFan>> = OnceLock::new();
    FANS.get_or_init(|| {
        common::model_family(3)
            .into_iter()
            .map(|(_, m)| fan_from_stratification(&m).unwrap())
            .collect()
    })
}

fn divisor(f: &KatoFan, m: i64, coeffs: &[i64]) -> LogDivisor {
    let mut d = LogDivisor::zero(m);
    for (p, &a) in f.points.iter().filter(|p| p.rank() == 1).zip(coeffs.iter().cycle()) {
        if a != 0 {
            d.mults.insert(p.id.clone(), BigRational::from_integer(a.into()));
        }
    }
    d
}

/// `D + c·div(π)`: every vertical multiplicity moves by `c` times the
/// multiplicity of its component.
fn shift(f: &KatoFan, d: &LogDivisor, c: i64) -> LogDivisor {
    let mut out = d.clone();
    for (x, p) in f.points.iter().enumerate() {
        if p.rank() == 1 && p.is_vertical() {
            let a = d.mult(&p.id) + lattice::q(c * f.multiplicity(x));
            out.mults.insert(p.id.clone(), a);
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn weights_are_continuous_and_shift(
        idx in 0usize..204,
        m in 1i64..=3,
        coeffs in prop::collection::vec(-3i64..=3, 4),
        c in -3i64..=3,
    ) {
        let fans = family();
        let f = &fans[idx];
        let sk = skeleton_of_fan(f);
        let d = divisor(f, m, &coeffs);
        let w = weight_function(f, &sk, &d).unwrap();
        prop_assert!(w.is_continuous(&sk));
        let ws = weight_function(f, &sk, &shift(f, &d, c)).unwrap();
        for i in 0..sk.faces.len() {
            let shifted: Vec<_> = w.vertex_values(&sk, i).into_iter().map(|v| v + lattice::q(c)).collect();
            prop_assert_eq!(ws.vertex_values(&sk, i), shifted);
            for r in &sk.faces[i].rays {
                prop_assert_eq!(ws.slope(i, r), w.slope(i, r));
            }
        }
        let (l0, l1) = (minimality_locus(&sk, &w), minimality_locus(&sk, &ws));
        prop_assert_eq!(l0.cells(), l1.cells());
    }

    #[test]
    fn minimal_faces_are_where_normalized_multiplicities_vanish(
        idx in 0usize..204,
        m in 1i64..=3,
        coeffs in prop::collection::vec(0i64..=3, 4),
    ) {
        let fans = family();
        let f = &fans[idx];
        let sk = skeleton_of_fan(f);
        let d = divisor(f, m, &coeffs);
        let w = weight_function(f, &sk, &d).unwrap();
        let MinimalityLocus::Attained { cells, .. } = minimality_locus(&sk, &w) else {
            panic!("nonnegative horizontal multiplicities keep the weight bounded below");
        };
        let n = normalize_divisor(f, &d).unwrap();
        let zero = |c: &usize| n.mult(&f.points[*c].id) == lattice::q(0);
        for (i, face) in sk.faces.iter().enumerate() {
            let predicted = face.vertex_points.iter().all(zero) && face.ray_points.iter().all(zero);
            prop_assert_eq!(cells.contains(&i), predicted, "face {}", face.point);
        }
    }

    #[test]
    fn quartic_product_identity(
        a in prop::collection::vec(-3i64..=3, 2),
        b in prop::collection::vec(-3i64..=3, 2),
        m in 1i64..=3,
    ) {
        let Document::Product(doc) = corpus::document("quartic_YxY").unwrap() else { unreachable!() };
        let built = doc.build().unwrap();
        let ps = product_skeleton(&built.left, &built.right, &built.product).unwrap();
        let dx = divisor(&built.left, m, &a);
        let dy = divisor(&built.right, m, &b);
        let dz = product_divisor(&built.left, &built.right, &built.product, &dx, &dy).unwrap();
        let wx = weight_function(&built.left, &ps.factor_x, &dx).unwrap();
        let wy = weight_function(&built.right, &ps.factor_y, &dy).unwrap();
        let wz = weight_function(&built.product.fan, &ps.complex, &dz).unwrap();
        let r = product_weight_check(&ps, &wx, &wy, &wz);
        prop_assert!(r.identity_holds && r.ks_bijection, "{:?}", r.witness);

        // The swap of the two intersection points fixes every component, so
        // every divisor is invariant and the weight is constant on orbits.
        let perm = face_permutation(&ps.complex, &doc.actions["z2_swap"].branch_swaps).unwrap();
        for (i, &j) in perm.iter().enumerate() {
            let vi: BTreeSet<_> = wz.vertex_values(&ps.complex, i).into_iter().collect();
            let vj: BTreeSet<_> = wz.vertex_values(&ps.complex, j).into_iter().collect();
            prop_assert_eq!(vi, vj);
        }
        let locus: BTreeSet<usize> = minimality_locus(&ps.complex, &wz).cells().cloned().unwrap_or_default();
        let image: BTreeSet<usize> = locus.iter().map(|&i| perm[i]).collect();
        prop_assert_eq!(locus, image);
    }
}
