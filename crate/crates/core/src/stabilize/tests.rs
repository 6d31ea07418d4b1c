use std::collections::BTreeMap;

use super::*;
use crate::exactcore::{ExactMatrix, FieldKind, Scalar};
use crate::polyring::{parse_poly, Ring};

fn vars(ring: &RingRef) -> Vec<Poly> {
    (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect()
}

fn residue_field(vs: &[&str], sigma: &str) -> Stabilisation {
    let r = Ring::new(vs, FieldKind::Rat).unwrap();
    let s = parse_poly(&r, sigma).unwrap();
    stabilise(&r, &vars(&r), &s).unwrap()
}

#[test]
fn x_squared_gives_x_x() {
    let st = residue_field(&["x"], "x^2");
    assert_eq!(st.mf.phi().to_strings(), vec![vec!["x".to_string()]]);
    assert_eq!(st.mf.psi().to_strings(), vec![vec!["x".to_string()]]);
    assert!(st.squares_to_sigma());
}

#[test]
fn xy_with_cofactors_y_zero() {
    let st = residue_field(&["x", "y"], "x*y");
    assert_eq!(st.cofactor_choice().coeffs, vec!["y".to_string(), "0".to_string()]);
    assert_eq!(st.mf.rank(), 2);
    assert!(st.mf.is_valid());
    assert_eq!(st.even_basis, vec![vec![], vec![0, 1]]);
    assert_eq!(st.odd_basis, vec![vec![0], vec![1]]);
}

#[test]
fn not_in_ideal() {
    let r = Ring::new(&["x", "y"], FieldKind::Rat).unwrap();
    let x = parse_poly(&r, "x").unwrap();
    let s = parse_poly(&r, "y^2").unwrap();
    assert!(matches!(stabilise(&r, &[x], &s), Err(crate::Error::NotInIdeal)));
}

#[test]
fn stabilisations_square_to_sigma() {
    for (vs, s) in [(&["x"][..], "x^2"), (&["x", "y"][..], "x*y"), (&["x"][..], "x^3"), (&["x", "y", "z"][..], "x^2+y^2+z^3")] {
        let st = residue_field(vs, s);
        assert!(st.squares_to_sigma());
        assert!(st.mf.is_valid());
        assert_eq!(st.mf.rank(), 1 << (vs.len() - 1));
    }
}

#[test]
fn cokernel_of_residue_stabilisation_is_k() {
    for s in ["x^2", "x^3", "x^5"] {
        let st = residue_field(&["x"], s);
        let c = st.mf.cokernel().unwrap();
        let dims = c.slice_dims(-6, 6).unwrap();
        let nz: Vec<(i64, usize)> = dims.into_iter().filter(|(_, d)| *d > 0).collect();
        assert_eq!(nz, vec![(0, 1)], "{s}");
    }
    // in more variables the residue field is not maximal Cohen-Macaulay and the
    // cokernel is its approximation: k[x,y]/xy gives k + R in each weight
    let st = residue_field(&["x", "y"], "x*y");
    let c = st.mf.cokernel().unwrap();
    assert_eq!(c.generators(), 2);
    let dims = c.slice_dims(0, 4).unwrap();
    assert_eq!(dims.values().copied().collect::<Vec<_>>(), vec![2, 2, 2, 2, 2]);
}

#[test]
fn weyl_relations() {
    let r = Ring::new(&["x"], FieldKind::Rat).unwrap();
    let th = PolyRElement::theta(&r, 2, 0);
    let t = PolyRElement::t(&r, 2, 0);
    let th2 = PolyRElement::theta(&r, 2, 1);
    let t2 = PolyRElement::t(&r, 2, 1);
    let one = PolyRElement::one(&r, 2);
    assert_eq!(t.mul(&th), one.sub(&th.mul(&t)));
    assert!(th.mul(&th).is_zero());
    assert!(t.mul(&t).is_zero());
    let p = th.mul(&t);
    assert_eq!(p.mul(&p), p);
    assert_eq!(th.mul(&th2), th2.mul(&th).neg());
    assert_eq!(t.mul(&t2), t2.mul(&t).neg());
    assert!(t.mul(&th2).add(&th2.mul(&t)).is_zero());
    assert_eq!(t.mul(&th).to_string(), "1-θ1*T1");
}

#[test]
fn associativity_on_basis() {
    let r = Ring::new(&["x"], FieldKind::Rat).unwrap();
    let keys: Vec<BasisKey> = (0..4u32).flat_map(|s| (0..4u32).map(move |u| (s, u))).collect();
    let b = |k| PolyRElement::basis(&r, 2, k, Poly::one(&r));
    for &a in &keys {
        for &c in &keys {
            for &d in &keys {
                assert_eq!(b(a).mul(&b(c)).mul(&b(d)), b(a).mul(&b(c).mul(&b(d))));
            }
        }
    }
}

#[test]
fn delta_on_theta_t() {
    let r = Ring::new(&["x"], FieldKind::Rat).unwrap();
    let x = parse_poly(&r, "x").unwrap();
    let e = EndDgAlgebra::new(&r, &[x.clone()], &[x.clone()]).unwrap();
    let th = PolyRElement::theta(&r, 1, 0);
    let t = PolyRElement::t(&r, 1, 0);
    let d = e.delta(&th.mul(&t));
    assert_eq!(d, t.sub(&th).scale_poly(&x));
    assert_eq!(e.delta(&t.mul(&th)), d.neg());
    assert!(e.delta(&d).is_zero());
    assert!(e.delta_squared_zero());
    assert!(e.delta_is_inner());
}

#[test]
fn delta_rank_two_by_expansion() {
    let st = residue_field(&["x", "y"], "x*y");
    let e = st.end_algebra().unwrap();
    assert!(e.delta_squared_zero());
    assert!(e.delta_is_inner());
    let r = st.mf.ring().clone();
    // δ(θ1 θ2 T2) = x θ2 T2 - y θ1 T2 + 0
    let w = PolyRElement::theta(&r, 2, 0).mul(&PolyRElement::theta(&r, 2, 1)).mul(&PolyRElement::t(&r, 2, 1));
    let x = Poly::var(&r, 0);
    let y = Poly::var(&r, 1);
    let expect = PolyRElement::theta(&r, 2, 1)
        .mul(&PolyRElement::t(&r, 2, 1))
        .scale_poly(&x)
        .sub(&PolyRElement::theta(&r, 2, 0).mul(&PolyRElement::t(&r, 2, 1)).scale_poly(&y));
    assert_eq!(e.delta(&w), expect);
}

#[test]
fn end_cohomology_of_x_squared() {
    let st = residue_field(&["x"], "x^2");
    let e = st.end_algebra().unwrap();
    let t = end_cohomology(&e, -4, 4).unwrap();
    assert_eq!(t.nonzero(), BTreeMap::from([((0, 0), 1), ((1, 0), 1)]));
    let r = st.mf.ring().clone();
    let rep = &t.reps[&(1, 0)][0];
    assert_eq!(*rep, PolyRElement::t(&r, 1, 0).sub(&PolyRElement::theta(&r, 1, 0)));
    assert_eq!(rep.mul(rep), PolyRElement::one(&r, 1).neg());
    let odd = ClassRef { parity: 1, weight: 0, index: 0 };
    let even = ClassRef { parity: 0, weight: 0, index: 0 };
    assert_eq!(t.reps[&(0, 0)][0], PolyRElement::one(&r, 1));
    assert_eq!(t.product(odd, odd).unwrap().result, vec![(even, Scalar::int(-1))]);
}

#[test]
fn end_cohomology_matches_hom_complex() {
    for (vs, s) in [(&["x"][..], "x^2"), (&["x"][..], "x^3"), (&["x", "y"][..], "x*y")] {
        let st = residue_field(vs, s);
        let t = end_cohomology(&st.end_algebra().unwrap(), -6, 6).unwrap();
        let h = crate::matfac::MatrixFactorisation::hom_complex(&st.mf, &st.mf).unwrap();
        for p in 0..2u8 {
            for w in -6..=6 {
                assert_eq!(t.dim(p, w), h.cohomology_dim(p as i64, w).unwrap(), "{s} parity {p} weight {w}");
            }
        }
    }
}

#[test]
fn end_cohomology_of_x_cubed() {
    let st = residue_field(&["x"], "x^3");
    let t = end_cohomology(&st.end_algebra().unwrap(), -6, 6).unwrap();
    assert_eq!((t.scale, t.shift, t.theta_weights.clone()), (2, 3, vec![-1]));
    // k[x]/x^3 has stable endomorphisms k[x]/x of the residue field in each parity
    assert_eq!(t.parity_total(0), 1);
    assert_eq!(t.parity_total(1), 1);
}

#[test]
fn non_homogeneous_needs_truncation() {
    let r = Ring::new(&["x", "y"], FieldKind::Rat).unwrap();
    let s = parse_poly(&r, "y^2-x^2-x^3").unwrap();
    let st = stabilise(&r, &vars(&r), &s).unwrap();
    let e = st.end_algebra().unwrap();
    assert!(matches!(end_cohomology(&e, -2, 2), Err(crate::Error::NotHomogeneous(_))));
    let t = end_cohomology_truncated(&e, 3).unwrap();
    assert_eq!(t.truncated_at, 3);
}

#[test]
fn clifford_presentations() {
    let r = Ring::new(&["x"], FieldKind::Rat).unwrap();
    let c = clifford_of_quadratic(&parse_poly(&r, "x^2").unwrap()).unwrap();
    assert_eq!(c.relations(), vec!["G1*G1 = -1".to_string()]);
    let r2 = Ring::new(&["u", "v"], FieldKind::Rat).unwrap();
    let c2 = clifford_of_quadratic(&parse_poly(&r2, "u^2-v^2").unwrap()).unwrap();
    assert_eq!(c2.relations(), vec!["G1*G1 = -1", "G1*G2 + G2*G1 = 0", "G2*G2 = 1"]);
    let u = ExactMatrix::from_i64(FieldKind::Rat, &[&[0, 1], &[-1, 0]]);
    let v = ExactMatrix::from_i64(FieldKind::Rat, &[&[0, 1], &[1, 0]]);
    assert!(c2.matrix_images_define_isomorphism(&[u.clone(), v.clone()]));
    assert!(!c2.matrix_images_define_isomorphism(&[v, u]));
    let r3 = Ring::new(&["x", "y", "z"], FieldKind::Rat).unwrap();
    let c3 = clifford_of_quadratic(&parse_poly(&r3, "x^2+y^2+z^2").unwrap()).unwrap();
    assert_eq!(c3.dim(), 8);
    let mut span = crate::exactcore::Echelon::new(8, FieldKind::Rat);
    for s in 0..8u32 {
        for t in 0..8u32 {
            let p = c3.product(s, t);
            let mut v = vec![Scalar::int(0); 8];
            for (k, c) in p {
                v[k as usize] = c;
            }
            span.insert(&v);
        }
    }
    assert_eq!(span.rank(), 8);
    assert!(matches!(clifford_of_quadratic(&parse_poly(&r, "x^3").unwrap()), Err(crate::Error::NotQuadratic)));
}

#[test]
fn clifford_matches_cohomology() {
    let st = residue_field(&["u", "v"], "u^2-v^2");
    let cmp = clifford_comparison(&st, 4).unwrap();
    assert_eq!(cmp.cohomology_dim, 4);
    assert!(cmp.is_isomorphism());
    assert_eq!(cmp.generators[0].to_string(), "T1-θ1");
    assert_eq!(cmp.generators[1].to_string(), "T2+θ2");
    let st3 = residue_field(&["x", "y", "z"], "x^2+y^2+z^2");
    let c3 = clifford_comparison(&st3, 2).unwrap();
    assert_eq!(c3.cohomology_dim, 8);
    assert!(c3.is_isomorphism());
}

#[test]
fn cohomology_algebra_of_x_squared() {
    let st = residue_field(&["x"], "x^2");
    let t = end_cohomology(&st.end_algebra().unwrap(), 0, 0).unwrap();
    let a = t.cohomology_algebra().unwrap();
    assert_eq!(a.dim(), 2);
    assert_eq!(a.degrees(), &[0, 1]);
    assert_eq!(a.unit(), &[Scalar::one(), Scalar::zero()]);
    assert_eq!(a.mul_basis(1, 1), &[Scalar::int(-1), Scalar::zero()]);
    assert_eq!(a.names()[1], "[T1-θ1]");
}
