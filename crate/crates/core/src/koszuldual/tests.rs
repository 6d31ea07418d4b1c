use super::*;
use crate::complexes::Grading;
use crate::exactcore::FieldKind;

fn trunc(n: usize, deg: i64) -> AugmentedAlgebra {
    AugmentedAlgebra::new(FdAlgebra::truncated_polynomial(FieldKind::Rat, n, deg, Grading::Z)).unwrap()
}

/// `k ⊕ k x ⊕ k y` with `|x| = 0`, `|y| = 1`, `dx = y` and all products of `x, y` zero.
fn acyclic_pair() -> AugmentedAlgebra {
    let one = Scalar::one();
    let alg = FdAlgebra::from_products(
        FieldKind::Rat,
        &["1", "x", "y"],
        &[0, 0, 1],
        Grading::Z,
        &[(0, 0, vec![(0, one.clone())]), (0, 1, vec![(1, one.clone())]), (1, 0, vec![(1, one.clone())]), (0, 2, vec![(2, one.clone())]), (2, 0, vec![(2, one.clone())])],
        &[(0, one.clone())],
    )
    .unwrap();
    let mut d = vec![alg.zero_vec(); 3];
    d[1][2] = one;
    AugmentedAlgebra::with_differential(alg, d).unwrap()
}

/// `k[x,y]/(x,y)^2` in degree zero.
fn square_zero_plane() -> AugmentedAlgebra {
    let one = Scalar::one();
    let alg = FdAlgebra::from_products(
        FieldKind::Rat,
        &["1", "x", "y"],
        &[0, 0, 0],
        Grading::Z,
        &[(0, 0, vec![(0, one.clone())]), (0, 1, vec![(1, one.clone())]), (1, 0, vec![(1, one.clone())]), (0, 2, vec![(2, one.clone())]), (2, 0, vec![(2, one.clone())])],
        &[(0, one)],
    )
    .unwrap();
    AugmentedAlgebra::new(alg).unwrap()
}

fn terms(v: Vec<(Vec<usize>, Scalar)>) -> Vec<(Vec<usize>, i64)> {
    v.into_iter().map(|(w, c)| (w, if c.is_one() { 1 } else if c.is_minus_one() { -1 } else { 99 })).collect()
}

#[test]
fn bar_of_ground_field() {
    let a = AugmentedAlgebra::new(FdAlgebra::base_field(FieldKind::Rat)).unwrap();
    let pieces = bar(&a, 4).unwrap();
    assert_eq!(pieces[0].dim(), 1);
    assert!(pieces[1..].iter().all(|p| p.dim() == 0));
    let t = koszul_dual_cohomology(&a, 6, 0, 4).unwrap();
    assert_eq!(t.dims.values().copied().collect::<Vec<_>>(), vec![1, 0, 0, 0, 0]);
}

#[test]
fn bar_of_dual_numbers() {
    let a = trunc(2, 0);
    let pieces = bar(&a, 5).unwrap();
    for (n, p) in pieces.iter().enumerate() {
        assert_eq!(p.degree_dims(), BTreeMap::from([(-(n as i64), 1)]));
        assert!(p.d_external.is_zero());
    }
    assert!(a.bar_differential(&[0, 0]).is_empty());
}

#[test]
fn bar_signs_by_hand() {
    // x in degree 0: d[x|x] = [x^2], d[x|x|x] = [x^2|x] - [x|x^2]
    let a = trunc(3, 0);
    assert_eq!(terms(a.bar_differential(&[0, 0])), vec![(vec![1], 1)]);
    assert_eq!(terms(a.bar_differential(&[0, 0, 0])), vec![(vec![0, 1], -1), (vec![1, 0], 1)]);
    // x in degree -1: d[x|x] = -[x^2], d[x|x|x] = -[x^2|x] - [x|x^2]
    let b = trunc(3, -1);
    assert_eq!(terms(b.bar_differential(&[0, 0])), vec![(vec![1], -1)]);
    assert_eq!(terms(b.bar_differential(&[0, 0, 0])), vec![(vec![0, 1], -1), (vec![1, 0], -1)]);
    assert_eq!(b.word_degree(&[0, 1]), -5);
    // internal part for the acyclic pair: d[x|x] = [y|x] + [x|y] (x has shifted degree -1)
    let c = acyclic_pair();
    let (int, ext) = c.bar_parts(&[0, 0]);
    assert!(ext.is_empty());
    assert_eq!(terms(int), vec![(vec![1, 0], 1), (vec![0, 1], -1)]);
}

#[test]
fn bar_squares_to_zero() {
    for a in [trunc(3, 0), trunc(4, -1), trunc(3, 2), acyclic_pair(), square_zero_plane()] {
        assert!(a.bar_squares_to_zero(4).unwrap());
    }
}

#[test]
fn dual_numbers_dual_is_power_series() {
    let a = trunc(2, 0);
    let t = koszul_dual_cohomology(&a, 6, 0, 4).unwrap();
    assert_eq!(t.dims.values().copied().collect::<Vec<_>>(), vec![1; 5]);
    let powers = t.powers((1, 0));
    assert_eq!(powers.iter().map(|(k, _)| *k).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
    assert!(powers.iter().all(|(_, c)| c.iter().any(|x| !x.is_zero())));
    let unit_sq = t.products.iter().find(|p| p.left == (0, 0) && p.right == (0, 0)).unwrap();
    assert_eq!(unit_sq.result, vec![((0, 0), "1".to_string())]);
}

#[test]
fn odd_dual_numbers_concentrated_in_even_degrees() {
    // word length n sits in bar degree -2n
    let a = trunc(2, -1);
    let t = koszul_dual_cohomology(&a, 6, 0, 4).unwrap();
    for k in 0..=4 {
        assert_eq!(t.dim(k), usize::from(k % 2 == 0), "degree {k}");
    }
    assert_eq!(t.powers((2, 0)).len(), 2);
}

#[test]
fn dual_dims_stable_in_bound() {
    for a in [trunc(2, 0), trunc(3, 0), trunc(3, -1), square_zero_plane()] {
        let s = koszul_dual_cohomology(&a, 5, 0, 3).unwrap();
        let t = koszul_dual_cohomology(&a, 7, 0, 3).unwrap();
        assert_eq!(s.dims, t.dims);
    }
    // k[x,y]/(x,y)^2 has Koszul dual the free algebra on two generators
    let t = koszul_dual_cohomology(&square_zero_plane(), 6, 0, 4).unwrap();
    assert_eq!(t.dims.values().copied().collect::<Vec<_>>(), vec![1, 2, 4, 8, 16]);
}

#[test]
fn window_and_augmentation_errors() {
    let a = trunc(2, 0);
    assert_eq!(
        koszul_dual_cohomology(&a, 6, 0, 5).unwrap_err(),
        Error::WindowExceedsBound { window: 5, bound: 6, needed: 6 }
    );
    assert!(matches!(AugmentedAlgebra::new(FdAlgebra::matrices(FieldKind::Rat, 2)), Err(Error::NotAugmented(_))));
    let one = Scalar::one();
    let field = FdAlgebra::from_products(
        FieldKind::Rat,
        &["1", "t"],
        &[0, 0],
        Grading::Z,
        &[(0, 0, vec![(0, one.clone())]), (0, 1, vec![(1, one.clone())]), (1, 0, vec![(1, one.clone())]), (1, 1, vec![(0, -one.clone())])],
        &[(0, one)],
    )
    .unwrap();
    assert!(matches!(AugmentedAlgebra::new(field), Err(Error::NotAugmented(_))));
}

#[test]
fn double_dual_recovers_structure_constants() {
    for a in [trunc(3, 0), trunc(4, -1), square_zero_plane(), acyclic_pair()] {
        let c = ConilpotentCoalgebra::dual_of(&a).unwrap();
        assert!(c.is_coassociative());
        let back = c.dual_algebra().unwrap();
        let alg = a.algebra();
        assert_eq!(back.degrees(), alg.degrees());
        assert_eq!(back.unit(), alg.unit());
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                assert_eq!(back.mul_basis(i, j), alg.mul_basis(i, j));
            }
        }
    }
}

#[test]
fn bar_coalgebra_is_coassociative() {
    let (c, words) = ConilpotentCoalgebra::bar_of(&trunc(3, 0), 4).unwrap();
    assert_eq!(words.len(), 1 + 2 + 4 + 8 + 16);
    assert!(c.is_coassociative());
    assert!(c.d_is_coderivation());
    assert!(c.is_conilpotent());
}

#[test]
fn cobar_basics() {
    let k = ConilpotentCoalgebra::dual_of(&AugmentedAlgebra::new(FdAlgebra::base_field(FieldKind::Rat)).unwrap()).unwrap();
    let om = cobar(&k, 4).unwrap();
    assert_eq!(om.cohomology(-2, 2).unwrap().values().copied().collect::<Vec<_>>(), vec![0, 0, 1, 0, 0]);
    // length-one differential is the dual comultiplication: d<x^2*> = <x*><x*>
    let c = ConilpotentCoalgebra::dual_of(&trunc(3, 0)).unwrap();
    let om = cobar(&c, 4).unwrap();
    assert_eq!(om.differential(&[2]), vec![(vec![1, 1], Scalar::one())]);
    assert!(om.differential(&[1]).is_empty());
    assert!((0..4).all(|k| om.d_squared_zero(k)));
}

#[test]
fn cobar_of_dual_matches_koszul_dual() {
    for a in [trunc(2, 0), trunc(3, 0), trunc(3, -1), square_zero_plane()] {
        let om = cobar(&ConilpotentCoalgebra::dual_of(&a).unwrap(), 5).unwrap();
        let t = koszul_dual_cohomology(&a, 6, 0, 4).unwrap();
        assert_eq!(om.cohomology(0, 4).unwrap(), t.dims);
    }
}

#[test]
fn counit_checks() {
    for a in [AugmentedAlgebra::new(FdAlgebra::base_field(FieldKind::Rat)).unwrap(), trunc(2, 0), trunc(3, 0), square_zero_plane()] {
        let r = counit_h0_check(&a, 6).unwrap();
        assert!(r.ok(), "{r:?}");
    }
    assert!(counit_h0_check(&trunc(2, -1), 6).is_err());
}

#[test]
fn non_conilpotent_refused() {
    let one = Scalar::one();
    // g with Δg = g⊗1 + 1⊗g + g⊗g, dual to k[g]/(g^2 - g)
    let r = ConilpotentCoalgebra::new(
        FieldKind::Rat,
        vec!["1".into(), "g".into()],
        vec![0, 0],
        vec![vec![(0, 0, one.clone())], vec![(1, 0, one.clone()), (0, 1, one.clone()), (1, 1, one.clone())]],
        vec![one, Scalar::zero()],
        0,
        vec![vec![], vec![]],
    );
    assert_eq!(r.unwrap_err(), Error::NotConilpotent);
}
