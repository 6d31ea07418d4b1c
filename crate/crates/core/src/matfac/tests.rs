use std::collections::BTreeMap;

use super::*;
use crate::exactcore::FieldKind;
use crate::polyring::{parse_poly, Ring};

fn nodal(field: FieldKind) -> MatrixFactorisation {
    let r = Ring::new(&["x", "y"], field).unwrap();
    let m = [["y", "x+x^2"], ["-x", "-y"]];
    let rows: Vec<&[&str]> = m.iter().map(|r| &r[..]).collect();
    MatrixFactorisation::parse(&r, "y^2-x^2-x^3", &rows, &rows).unwrap()
}

fn x_squared() -> MatrixFactorisation {
    let r = Ring::new(&["x"], FieldKind::Rat).unwrap();
    MatrixFactorisation::parse(&r, "x^2", &[&["x"]], &[&["x"]]).unwrap()
}

#[test]
fn nodal_cubic_verifies() {
    assert!(nodal(FieldKind::Rat).verify().ok);
    assert!(nodal(FieldKind::Rat).grading().is_none());
}

#[test]
fn tangent_cone_matrices_fail_with_witness() {
    let r = Ring::new(&["x", "y"], FieldKind::Rat).unwrap();
    let m = MatrixFactorisation::parse(&r, "y^2-x^2-x^3", &[&["y", "x"], &["-x", "-y"]], &[&["y", "x"], &["-x", "-y"]])
        .unwrap();
    let v = m.verify();
    assert!(!v.ok);
    let w = v.witness.unwrap();
    assert_eq!((w.product.as_str(), w.row, w.col), ("phi*psi", 0, 0));
    assert_eq!(w.found, "-x^2+y^2");
    assert_eq!(w.expected, m.sigma().to_string());
}

#[test]
fn shift_twice_is_identity() {
    let n = nodal(FieldKind::Rat);
    assert_eq!(n.shift().shift(), n);
    assert_eq!(n.shift().phi(), n.psi());
    let x = MatrixFactorisation::parse(
        &Ring::new(&["x"], FieldKind::Rat).unwrap(),
        "x^4",
        &[&["x"]],
        &[&["x^3"]],
    )
    .unwrap();
    assert_eq!(x.shift().shift(), x);
}

#[test]
fn sum_adds_rank() {
    let n = nodal(FieldKind::Rat);
    let s = n.sum(&n.shift()).unwrap();
    assert_eq!(s.rank(), 4);
    assert!(s.is_valid());
    let z = MatrixFactorisation::zero(n.ring(), n.sigma().clone());
    assert_eq!(n.sum(&z).unwrap(), n);
    assert!(matches!(n.sum(&MatrixFactorisation::zero(n.ring(), Poly::int(n.ring(), 1))), Err(Error::SigmaMismatch)));
}

#[test]
fn end_complex_of_x() {
    let x = x_squared();
    let g = x.grading().unwrap();
    assert_eq!((g.shift, g.scale), (1, 1));
    let h = MatrixFactorisation::hom_complex(&x, &x).unwrap();
    assert!(h.is_complex());
    let t = h.slice_cohomology(-3, 3).unwrap();
    assert_eq!(t.nonzero(), BTreeMap::from([((0, 0), 1), ((1, 0), 1)]));
    let c = h.cohomology_at(1, 0).unwrap();
    let v = c.to_polys(x.ring(), 2, &c.reps[0]);
    let tm = MfMorphism::from_hom_element(&x, &x, 1, &v).unwrap();
    assert!(tm.is_closed());
    let sq = tm.then(&tm).unwrap();
    let c0 = h.cohomology_at(0, 0).unwrap();
    let id = MfMorphism::identity(&x);
    assert!(id.is_closed());
    let idv = c0.coordinates(&[crate::exactcore::Scalar::one(), crate::exactcore::Scalar::one()]).unwrap();
    let sqv = c0.coordinates(&[sq.f0.get(0, 0).constant_term(), sq.f1.get(0, 0).constant_term()]).unwrap();
    assert_eq!(sqv, idv.iter().map(|s| -s).collect::<Vec<_>>());
}

#[test]
fn hom_between_factorisations_of_x4() {
    let r = Ring::new(&["x"], FieldKind::Rat).unwrap();
    let a = MatrixFactorisation::parse(&r, "x^4", &[&["x"]], &[&["x^3"]]).unwrap();
    let b = MatrixFactorisation::parse(&r, "x^4", &[&["x^2"]], &[&["x^2"]]).unwrap();
    let h = MatrixFactorisation::hom_complex(&a, &b.shift()).unwrap();
    assert!(h.is_complex());
    let t = h.slice_cohomology(-8, 8).unwrap();
    // Hom(R/x, R/x^2) over k[x]/x^4 is one-dimensional in each parity
    assert_eq!(t.degree_total(0) + t.degree_total(1), 2);
}

#[test]
fn unfold_is_periodic_and_acyclic() {
    let x = x_squared();
    let u = x.unfold(4).unwrap();
    assert!(u.is_complex());
    assert_eq!(u.diff(-2), u.diff(0));
    assert_eq!(u.diff(-1), u.diff(1));
    for d in -3..=3 {
        for w in -8..=8 {
            assert_eq!(u.cohomology_dim(d, w).unwrap(), 0);
        }
    }
    let z = MatrixFactorisation::zero(x.ring(), x.sigma().clone());
    assert!(z.unfold(3).unwrap().degrees().is_empty());
}

#[test]
fn unfold_of_shift_is_shifted_unfold() {
    let r = Ring::new(&["x"], FieldKind::Rat).unwrap();
    let a = MatrixFactorisation::parse(&r, "x^4", &[&["x"]], &[&["x^3"]]).unwrap();
    let u = a.unfold(5).unwrap().shift(1);
    let v = a.shift().unfold(5).unwrap();
    for d in -3..=3 {
        for w in -10..=10 {
            // the shifted unfolding sits one half-weight of sigma lower
            assert_eq!(u.slice_basis(d, w).len(), v.slice_basis(d, w + 2).len());
            assert_eq!(u.slice_map(d, w).unwrap().rank(), v.slice_map(d, w + 2).unwrap().rank());
        }
    }
}

#[test]
fn nodal_initial_form_unfolds_acyclically() {
    let n = nodal(FieldKind::Rat);
    let i = n.initial_form().unwrap();
    assert_eq!(i.sigma().to_string(), "-x^2+y^2");
    let g = i.grading().unwrap();
    assert_eq!((g.even.clone(), g.shift), (vec![0, 0], 1));
    let u = i.unfold(4).unwrap();
    assert!(u.is_complex());
    for d in -3..=3 {
        for w in -6..=10 {
            assert_eq!(u.cohomology_dim(d, w).unwrap(), 0, "degree {d} weight {w}");
        }
    }
}

#[test]
fn cokernels() {
    let x = x_squared();
    let c = x.cokernel().unwrap();
    assert_eq!(c.slice_dims(-2, 4).unwrap().into_iter().filter(|(_, d)| *d > 0).collect::<Vec<_>>(), vec![(0, 1)]);
    let t = MatrixFactorisation::trivial(x.ring(), x.sigma().clone());
    assert!(t.is_valid());
    let ct = t.cokernel().unwrap();
    assert!(ct.is_zero_module());
    assert!(ct.slice_dims(-4, 4).unwrap().values().all(|&d| d == 0));
    let n = nodal(FieldKind::Rat).cokernel().unwrap();
    assert_eq!((n.generators(), n.relations()), (2, 2));
    assert!(!n.is_zero_module());
}

#[test]
fn tensor_products() {
    let x = x_squared();
    let ry = Ring::new(&["y"], FieldKind::Rat).unwrap();
    let y = MatrixFactorisation::parse(&ry, "y^2", &[&["y"]], &[&["y"]]).unwrap();
    let t = MatrixFactorisation::tensor(&x, &y).unwrap();
    assert_eq!(t.rank(), 2);
    assert!(t.is_valid());
    assert_eq!(t.sigma().to_string(), "x^2+y^2");
    assert!(matches!(MatrixFactorisation::tensor(&x, &x), Err(Error::VariableClash(_))));
    let rz = Ring::new(&["z"], FieldKind::Rat).unwrap();
    let z = MatrixFactorisation::parse(&rz, "z^2", &[&["z"]], &[&["z"]]).unwrap();
    let nz = MatrixFactorisation::tensor(&nodal(FieldKind::Rat), &z).unwrap();
    assert_eq!(nz.rank(), 4);
    assert!(nz.is_valid());
    let e = MatrixFactorisation::zero(&rz, parse_poly(&rz, "z^2").unwrap());
    assert_eq!(MatrixFactorisation::tensor(&x, &e).unwrap().rank(), 0);
}

#[test]
fn knoerrer_constructions_verify() {
    let n = nodal(FieldKind::Rat);
    let g = knoerrer_g(&n, "z").unwrap();
    assert_eq!(g.rank(), 4);
    assert!(g.is_valid());
    let h = knoerrer_h(&n, "u", "v").unwrap();
    assert!(h.is_valid());
    assert!(matches!(knoerrer_g(&n, "y"), Err(Error::VariableClash(_))));
    let z = MatrixFactorisation::zero(n.ring(), n.sigma().clone());
    assert_eq!(knoerrer_g(&z, "z").unwrap().rank(), 0);
    let t = tau(&g, "z").unwrap();
    assert!(t.is_valid());
    assert_eq!(tau(&t, "z").unwrap(), g);
    assert!(restrict_rho(&g, "z").unwrap().is_valid());
}

#[test]
fn knoerrer_certificates() {
    let n = nodal(FieldKind::Rat);
    let c = rho_g_certificate(&n, "z").unwrap();
    assert!(c.is_closed());
    assert!(c.certify_isomorphism());
    let d = rho_rho_h_certificate(&n, "u", "v").unwrap();
    assert!(d.certify_isomorphism());
    assert!(matches!(sigma_g_certificate(&n, "z"), Err(Error::FieldLacksI)));
    let ng = nodal(FieldKind::Gauss);
    assert!(sigma_g_certificate(&ng, "z").unwrap().certify_isomorphism());
    let np = nodal(FieldKind::Fp(13));
    assert!(sigma_g_certificate(&np, "z").unwrap().certify_isomorphism());
}

#[test]
fn graded_knoerrer_keeps_grading() {
    let x = x_squared();
    let g = knoerrer_g(&x, "y").unwrap();
    assert!(g.grading().is_some());
    assert!(rho_g_certificate(&x, "y").unwrap().certify_isomorphism());
}

#[test]
fn isomorphism_search() {
    let n = nodal(FieldKind::Rat);
    let g = restrict_rho(&knoerrer_g(&n, "z").unwrap(), "z").unwrap();
    let target = n.sum(&n.shift()).unwrap();
    match find_isomorphism(&g, &target, 0, 7).unwrap() {
        IsoSearch::Found(m) => {
            assert!(m.is_closed());
            assert!(m.certify_isomorphism());
        }
        IsoSearch::Unknown => panic!("expected an isomorphism"),
    }
    let x = x_squared();
    let r = x.ring();
    let big = MatrixFactorisation::trivial(r, x.sigma().clone());
    assert!(matches!(find_isomorphism(&x, &big, 1, 1).unwrap(), IsoSearch::Unknown));
}

#[test]
fn composition_of_closed_is_closed() {
    let n = nodal(FieldKind::Rat);
    let c = rho_g_certificate(&n, "z").unwrap();
    let inv = c.constant_inverse().unwrap();
    assert!(inv.is_closed());
    assert!(c.then(&inv).unwrap().is_closed());
}
