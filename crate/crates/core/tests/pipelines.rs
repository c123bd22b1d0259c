use std::collections::BTreeMap;

use katoskel::corpus;
use katoskel::io::{skeleton_action, Document};
use katoskel::skeleton::{check_product_homeomorphism, product_skeleton, skeleton_of_fan};
use katoskel::topology::{
    circle_kernel, classify_closed_surface, group_quotient, homology, orbit_complex, symmetric_product,
    torus_kernel, triangulate, DeltaComplex, QuotientOptions, SurfaceClass,
};

fn yy() -> Document {
    corpus::document("quartic_YxY").unwrap()
}

#[test]
fn quartic_torus_and_sphere_quotient() {
    let Document::Product(doc) = yy() else { panic!() };
    let built = doc.build().unwrap();
    let ps = product_skeleton(&built.left, &built.right, &built.product).unwrap();
    assert_eq!(ps.complex.dim_counts(), BTreeMap::from([(0, 4), (1, 8), (2, 4)]));
    assert!(check_product_homeomorphism(&ps).holds);
    let k = triangulate(&ps.complex).unwrap();
    assert_eq!(k.counts(), vec![16, 48, 32]);
    assert_eq!(classify_closed_surface(&k), SurfaceClass::Torus);
    assert_eq!(homology(&DeltaComplex::from_simplicial(&k)).betti(), vec![1, 2, 1]);
    let (_, k, a) = skeleton_action(&ps.complex, &doc.actions["z2_swap"]).unwrap();
    assert_eq!(a.order(), 2);
    let q = group_quotient(&k, &a, &QuotientOptions::default()).unwrap();
    assert_eq!(classify_closed_surface(&q), SurfaceClass::Sphere);
    let h = homology(&DeltaComplex::from_simplicial(&q));
    assert_eq!(h.betti(), vec![1, 0, 1]);
    assert!(h.is_torsion_free());
    let d = orbit_complex(&k, &a, &QuotientOptions::default()).unwrap();
    assert_eq!(homology(&d), h);
}

#[test]
fn quartic_circle() {
    let Document::Model(doc) = corpus::document("quartic_Y").unwrap() else { panic!() };
    let sk = skeleton_of_fan(&doc.fan().unwrap());
    assert_eq!(sk.dim_counts(), BTreeMap::from([(0, 2), (1, 2)]));
}

#[test]
fn sym2_of_sphere_is_cp2() {
    let s = symmetric_product(&corpus::tetrahedron_boundary(), 2, &QuotientOptions::default()).unwrap();
    let h = homology(&s.complex);
    assert_eq!(h.betti(), vec![1, 0, 1, 0, 1]);
    assert!(h.is_torsion_free());
    assert_eq!(s.complex.euler_characteristic(), 3);
}

#[test]
fn kummer_quotients() {
    let t = torus_kernel(1, 1, 1_000).unwrap();
    let k = t.order_complex();
    let q = group_quotient(&k, &t.action, &QuotientOptions::default()).unwrap();
    assert_eq!(classify_closed_surface(&q), SurfaceClass::Sphere);
    for n in [1, 2] {
        let c = circle_kernel(n, n).unwrap();
        let d = orbit_complex(&c.order_complex(), &c.action, &QuotientOptions::default()).unwrap();
        assert_eq!(d.dim(), n);
        assert!(homology(&d).is_acyclic());
    }
}
