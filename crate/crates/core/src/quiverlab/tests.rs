use super::*;
use crate::exactcore::{ExactMatrix, FieldKind, Scalar};
use crate::polyring::{milnor_algebra, parse_poly, Ring};

fn a2() -> Quiver {
    Quiver::new(&["1", "2"], &[("a", 0, 1)]).unwrap()
}

fn zeros(n: usize) -> Vec<Scalar> {
    vec![Scalar::zero(); n]
}

fn w(texts: &[&str]) -> Vec<Scalar> {
    parse_weights(&texts.iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap()
}

/// Number of paths of each length, as entry sums of powers of the adjacency matrix.
fn path_counts(q: &Quiver, max_len: usize) -> Vec<usize> {
    let n = q.num_vertices();
    let mut adj = vec![vec![0usize; n]; n];
    for a in &q.arrows {
        adj[a.from][a.to] += 1;
    }
    let mut pow: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| usize::from(i == j)).collect()).collect();
    let mut out = Vec::new();
    for _ in 0..=max_len {
        out.push(pow.iter().flatten().sum());
        pow = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| pow[i][k] * adj[k][j]).sum()).collect()).collect();
    }
    out
}

#[test]
fn idempotents_and_composition() {
    let q = a2();
    let (e1, e2) = (Path::trivial(0), Path::trivial(1));
    assert_eq!(path_multiply(&e1, &e2), None);
    assert_eq!(path_multiply(&e1, &e1), Some(e1.clone()));
    let a = Path::arrow(&q, 0);
    assert_eq!(path_multiply(&e1, &a), Some(a.clone()));
    assert_eq!(path_multiply(&e2, &a), None);
    assert_eq!(path_multiply(&a, &e2), Some(a.clone()));
    let basis = path_basis(&q, 2);
    assert_eq!(basis.len(), 3);
    let one: PathElement = (0..2).fold(PathElement::zero(), |s, v| s.add(&PathElement::from_path(Path::trivial(v), Scalar::one())));
    let dq = q.double();
    for p in path_basis(&dq, 4) {
        let x = PathElement::from_path(p, Scalar::one());
        assert_eq!(one.mul(&x), x);
        assert_eq!(x.mul(&one), x);
    }
}

#[test]
fn json_round_trip() {
    let text = r#"{"vertices":["0","1"],"arrows":[{"name":"a","from":0,"to":1},{"name":"b","from":0,"to":1}],"extending":0}"#;
    let q = Quiver::from_json(text).unwrap();
    assert_eq!(q.extending, Some(0));
    assert_eq!(serde_json::to_string(&q).unwrap(), text);
    let bad = r#"{"vertices":["0"],"arrows":[{"name":"a","from":0,"to":3}]}"#;
    assert!(matches!(Quiver::from_json(bad), Err(crate::Error::Invalid(_))));
    assert!(matches!(Quiver::from_json("{"), Err(crate::Error::Parse(_))));
}

#[test]
fn free_path_algebra_counts() {
    for q in [a2(), extended_dynkin("Atilde2".parse().unwrap()).double(), extended_dynkin("Dtilde4".parse().unwrap())] {
        let d = truncated_algebra_dim(&q, &[], 4);
        let counts = path_counts(&q, 4);
        assert_eq!(d.by_length, counts.iter().map(|&c| c as i64).collect::<Vec<_>>());
    }
}

#[test]
fn preprojective_a2_is_four_dimensional() {
    let q = a2();
    let rels = preprojective_relations(&q, &zeros(2)).unwrap();
    let dq = q.double();
    assert_eq!(rels[0].display(&dq), "a.a*");
    assert_eq!(rels[1].display(&dq), "-a*.a");
    let d4 = truncated_algebra_dim(&dq, &rels, 4);
    let d6 = truncated_algebra_dim(&dq, &rels, 6);
    assert_eq!(d4.cumulative[..], d6.cumulative[..5]);
    assert_eq!(d6.cumulative[6], 4);
    assert_eq!(d6.by_length, vec![2, 2, 0, 0, 0, 0, 0]);
    let alg = quotient_algebra(&dq, &rels, 3).unwrap();
    assert_eq!(alg.dim(), 4);
    assert!(alg.associativity_witness().is_none());
}

#[test]
fn preprojective_atilde1_grows_linearly() {
    let q = extended_dynkin("Atilde1".parse().unwrap());
    let rels = preprojective_relations(&q, &zeros(2)).unwrap();
    let dq = q.double();
    assert_eq!(rels[0].display(&dq), "a1.a1*+a0.a0*");
    assert_eq!(rels[1].display(&dq), "-a1*.a1-a0*.a0");
    let d5 = truncated_algebra_dim(&dq, &rels, 5);
    let d6 = truncated_algebra_dim(&dq, &rels, 6);
    assert_eq!(d5.by_length[..], d6.by_length[..6]);
    let steps: Vec<i64> = d6.by_length.windows(2).map(|p| p[1] - p[0]).collect();
    assert!(steps.iter().all(|&s| s == steps[0] && s > 0), "{:?}", d6.by_length);
}

#[test]
fn deformed_relation_is_inhomogeneous() {
    let q = a2();
    let lam = w(&["1", "-1"]);
    let r0 = preprojective_relations(&q, &zeros(2)).unwrap();
    let r1 = preprojective_relations(&q, &lam).unwrap();
    for i in 0..2 {
        let diff = r1[i].add(&r0[i].scale(&-Scalar::one()));
        assert_eq!(diff, PathElement::from_path(Path::trivial(i), -lam[i].clone()));
        assert!(r1[i].length() <= 2);
        assert!(!r1[i].is_length_homogeneous());
    }
}

#[test]
fn derived_h0_matches_relations() {
    let cases: Vec<(Quiver, Vec<Scalar>)> = vec![
        (a2(), zeros(2)),
        (a2(), w(&["1", "-1"])),
        (a2(), w(&["1", "2"])),
        (extended_dynkin("Atilde1".parse().unwrap()), zeros(2)),
        (extended_dynkin("Atilde2".parse().unwrap()), w(&["i", "0", "-i"])),
        (Quiver::new(&["1", "2", "3"], &[("a", 0, 1), ("b", 1, 2)]).unwrap(), zeros(3)),
    ];
    for (q, lam) in cases {
        let dg = derived_preprojective(&q, &lam).unwrap();
        let rels = preprojective_relations(&q, &lam).unwrap();
        assert_eq!(dg.h0_truncated_dims(5), truncated_algebra_dim(&q.double(), &rels, 5));
        assert!(dg.d_squared_zero_up_to(4, 2));
        for i in 0..q.num_vertices() {
            let t = Path::arrow(&dg.quiver, dg.loop_index(i));
            assert_eq!(dg.degree(&t), -1);
            let dt = dg.differential(&PathElement::from_path(t, Scalar::one()));
            assert!(dt.terms.keys().all(|p| dg.degree(p) == 0));
            assert_eq!(dt, rels[i]);
        }
    }
}

#[test]
fn dynkin_h0_eventually_constant() {
    let a3 = Quiver::new(&["1", "2", "3"], &[("a", 0, 1), ("b", 1, 2)]).unwrap();
    for q in [a2(), a3] {
        let dg = derived_preprojective(&q, &zeros(q.num_vertices())).unwrap();
        let d = dg.h0_truncated_dims(7);
        assert_eq!(d.cumulative[6], d.cumulative[7]);
    }
}

#[test]
fn quasi_dominance() {
    assert!(quasi_dominant(&w(&["0", "1", "0"])));
    assert!(!quasi_dominant(&w(&["-1", "0"])));
    assert!(quasi_dominant(&w(&["i", "2"])));
    assert_eq!(first_non_quasi_dominant(&w(&["1", "-i"])), Some(1));
    assert!(quasi_dominant(&w(&["-1+1/2*i"])) == false);
}

#[test]
fn classify_standard_diagrams() {
    for t in [DynkinType::A(1), DynkinType::A(5), DynkinType::D(4), DynkinType::D(7), DynkinType::E(6), DynkinType::E(7), DynkinType::E(8)] {
        assert_eq!(classify_graph(t.rank(), &t.edges()), Some(t));
        // relabel by reversing the vertices
        let n = t.rank();
        let rev: Vec<(usize, usize)> = t.edges().iter().map(|&(a, b)| (n - 1 - b, n - 1 - a)).collect();
        assert_eq!(classify_graph(n, &rev), Some(t));
    }
    // a triangle and the star with four arms are not Dynkin
    assert_eq!(classify_graph(3, &[(0, 1), (1, 2), (0, 2)]), None);
    assert_eq!(classify_graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]), None);
}

#[test]
fn atilde3_two_a1_blocks() {
    let r = dsg_blocks("Atilde3".parse().unwrap(), &w(&["0", "1", "0"])).unwrap();
    let types: Vec<(&str, &str)> = r.blocks.iter().map(|b| (b.dynkin.as_str(), b.polynomial.as_str())).collect();
    assert_eq!(types, vec![("A1", "x^2+y^2+z^2"), ("A1", "x^2+y^2+z^2")]);
    assert_eq!(r.quiver, "Atilde3");
    let json = serde_json::to_value(&r.blocks[0]).unwrap();
    assert_eq!(json["type"], "A1");
}

#[test]
fn zero_weight_gives_full_type() {
    for (label, t) in [
        ("Atilde1", DynkinType::A(1)),
        ("Atilde4", DynkinType::A(4)),
        ("Dtilde4", DynkinType::D(4)),
        ("Dtilde6", DynkinType::D(6)),
        ("Etilde6", DynkinType::E(6)),
        ("Etilde7", DynkinType::E(7)),
        ("Etilde8", DynkinType::E(8)),
    ] {
        let e: ExtendedType = label.parse().unwrap();
        assert_eq!(e.to_string(), label);
        let r = dsg_blocks(e, &zeros(t.rank())).unwrap();
        assert_eq!(r.blocks.len(), 1);
        assert_eq!(r.blocks[0].dynkin, t.to_string());
        let ring = Ring::new(&["x", "y", "z"], FieldKind::Rat).unwrap();
        let mu = milnor_algebra(&parse_poly(&ring, &r.blocks[0].polynomial).unwrap()).unwrap().number;
        assert_eq!(mu, Some(t.rank()), "{label}");
    }
}

#[test]
fn nonzero_weights_are_smooth_and_refusal() {
    let r = dsg_blocks("Dtilde5".parse().unwrap(), &w(&["1", "i", "2", "1+i", "3"])).unwrap();
    assert!(r.blocks.is_empty());
    let err = dsg_blocks("Atilde3".parse().unwrap(), &w(&["0", "-1", "0"])).unwrap_err();
    assert_eq!(err, crate::Error::NotQuasiDominant(2));
    // full-length weights ignore the extending entry
    let full = dsg_blocks("Atilde3".parse().unwrap(), &w(&["-5", "0", "1", "0"])).unwrap();
    assert_eq!(full.blocks.len(), 2);
    assert!("Btilde3".parse::<ExtendedType>().is_err());
    assert!("Etilde9".parse::<ExtendedType>().is_err());
}

/// Stable Ext of the residue field over k[x]/x^n from the complete resolution
/// `… -> R --x--> R --x^{n-1}--> R --x--> R -> …`; `Hom_R(R, k) = k` via
/// evaluation at 1, and precomposition with `x^m` is the constant term of `x^m`.
fn stable_ext_oracle(n: usize, j: i64) -> usize {
    let map = |m: usize| {
        let c = if m == 0 { 1 } else { 0 };
        ExactMatrix::from_i64(FieldKind::Rat, &[&[c]]).rank()
    };
    let exp = |k: i64| if k.rem_euclid(2) == 0 { 1 } else { n - 1 };
    1 - map(exp(j)) - map(exp(j - 1))
}

#[test]
fn drinfeld_unit_idempotent_is_acyclic() {
    let a = crate::algebra::FdAlgebra::truncated_polynomial(FieldKind::Rat, 2, 0, crate::complexes::Grading::Z);
    let d = drinfeld_quotient(&a, a.unit(), 7, &TensorBase::Field).unwrap();
    assert!(d.d_squared_zero());
    let h = drinfeld_cohomology(&d, -4, 0).unwrap();
    assert!(h.dims.values().all(|&v| v == 0), "{:?}", h.dims);
    let z = drinfeld_quotient(&a, &a.zero_vec(), 4, &TensorBase::Field).unwrap();
    assert_eq!(z.component_dims(), vec![2, 0, 0, 0]);
    assert_eq!(drinfeld_cohomology(&z, -2, 0).unwrap().dims.values().copied().collect::<Vec<_>>(), vec![0, 0, 2]);
}

#[test]
fn drinfeld_end_of_r_plus_k() {
    for n in [2usize, 3] {
        let (a, e) = end_of_sum_with_residue(FieldKind::Rat, n).unwrap();
        let expected_dim = n + 2 * 1 + 1;
        assert_eq!(a.dim(), expected_dim);
        let d = drinfeld_quotient(&a, &e, 7, &TensorBase::Field).unwrap();
        assert!(d.d_squared_zero());
        assert_eq!(d.quotient_dim(), 1);
        let h = drinfeld_cohomology(&d, -5, 0).unwrap();
        for j in -5..=0 {
            assert_eq!(h.dims[&j], stable_ext_oracle(n, j), "n={n} j={j}");
        }
    }
}

#[test]
fn drinfeld_errors() {
    let a = crate::algebra::FdAlgebra::truncated_polynomial(FieldKind::Rat, 2, 0, crate::complexes::Grading::Z);
    let x = a.basis_vec(1);
    assert_eq!(drinfeld_quotient(&a, &x, 3, &TensorBase::Field).unwrap_err(), crate::Error::NotIdempotent);
    let d = drinfeld_quotient(&a, a.unit(), 4, &TensorBase::Field).unwrap();
    assert!(drinfeld_cohomology(&d, -2, 0).is_ok());
    assert_eq!(
        drinfeld_cohomology(&d, -3, 0).unwrap_err(),
        crate::Error::WindowExceedsBound { window: 3, bound: 4, needed: 4 }
    );
}

#[test]
fn drinfeld_over_vertex_ring() {
    let q = a2();
    let dq = q.double();
    let rels = preprojective_relations(&q, &zeros(2)).unwrap();
    let pi = quotient_algebra(&dq, &rels, 3).unwrap();
    let idem = |v: &str| pi.basis_vec(pi.names().iter().position(|n| n == v).unwrap());
    let (e1, e2) = (idem("e1"), idem("e2"));
    // e1 Π e1 = k, so every multiplication collapses and the complex alternates
    let d = drinfeld_quotient(&pi, &e1, 6, &TensorBase::Field).unwrap();
    assert!(d.d_squared_zero());
    let h = drinfeld_cohomology(&d, -4, 0).unwrap();
    assert_eq!(h.dims.values().copied().collect::<Vec<_>>(), vec![0, 0, 0, 1, 1]);
    let base = TensorBase::Vertices(vec![e1.clone(), e2.clone()]);
    let v = drinfeld_quotient(&pi, pi.unit(), 5, &base).unwrap();
    let f = drinfeld_quotient(&pi, pi.unit(), 5, &TensorBase::Field).unwrap();
    assert!(v.d_squared_zero());
    assert_eq!(v.base, "vertices(2)");
    assert!(v.component_dims()[2] < f.component_dims()[2]);
    for c in [&v, &f] {
        assert!(drinfeld_cohomology(c, -3, 0).unwrap().dims.values().all(|&x| x == 0));
    }
    let bad = TensorBase::Vertices(vec![e1.clone(), e1]);
    assert!(drinfeld_quotient(&pi, pi.unit(), 3, &bad).is_err());
}
