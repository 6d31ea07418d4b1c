mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;

use common::*;
use singcat::algebra::FdAlgebra;
use singcat::complexes::Grading;
use singcat::exactcore::{FieldKind, Scalar};
use singcat::koszuldual::{koszul_dual_cohomology, AugmentedAlgebra};
use singcat::matfac::MatrixFactorisation;
use singcat::polyring::{milnor_algebra, tjurina_algebra, Poly, Ring};
use singcat::quiverlab::{
    derived_preprojective, drinfeld_cohomology, drinfeld_quotient, dsg_blocks_for, extended_dynkin, ExtendedType, Quiver,
    TensorBase,
};
use singcat::stabilize::stabilise;

const TYPES: [&str; 9] = ["Atilde2", "Atilde4", "Atilde5", "Dtilde4", "Dtilde5", "Dtilde6", "Etilde6", "Etilde7", "Etilde8"];

fn weight(k: u8) -> Scalar {
    match k {
        0..=2 => Scalar::zero(),
        3 => Scalar::int(1),
        4 => Scalar::int(2),
        _ => singcat::polyring::parse_scalar("1+i", FieldKind::Gauss).unwrap(),
    }
}

/// Renumbers the vertices of `q` by `perm`, keeping names and arrows.
fn relabel(q: &Quiver, perm: &[usize]) -> Quiver {
    let mut vertices = vec![String::new(); perm.len()];
    for (old, &new) in perm.iter().enumerate() {
        vertices[new] = q.vertices[old].clone();
    }
    let mut out = q.clone();
    out.vertices = vertices;
    for a in &mut out.arrows {
        a.from = perm[a.from];
        a.to = perm[a.to];
    }
    out.extending = q.extending.map(|e| perm[e]);
    out
}

fn block_set(q: &Quiver, lambda: &[Scalar]) -> BTreeSet<(String, BTreeSet<String>)> {
    dsg_blocks_for(q, lambda).unwrap().blocks.into_iter().map(|b| (b.dynkin, b.vertices.into_iter().collect())).collect()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn blocks_ignore_vertex_numbering(t in 0..TYPES.len(), ws in prop::collection::vec(0u8..6, 9), perm in Just((0..9).collect::<Vec<usize>>()).prop_shuffle()) {
        let q = extended_dynkin(TYPES[t].parse::<ExtendedType>().unwrap());
        let n = q.num_vertices();
        let perm: Vec<usize> = perm.into_iter().filter(|&p| p < n).collect();
        let lambda: Vec<Scalar> = ws[..n].iter().map(|&k| weight(k)).collect();
        let mut moved = vec![Scalar::zero(); n];
        for (old, &new) in perm.iter().enumerate() {
            moved[new] = lambda[old].clone();
        }
        prop_assert_eq!(block_set(&q, &lambda), block_set(&relabel(&q, &perm), &moved));
    }

    #[test]
    fn block_ranks_bounded_by_zero_weights(t in 0..TYPES.len(), ws in prop::collection::vec(0u8..6, 9)) {
        let q = extended_dynkin(TYPES[t].parse::<ExtendedType>().unwrap());
        let n = q.num_vertices();
        let lambda: Vec<Scalar> = ws[..n].iter().map(|&k| weight(k)).collect();
        let zeros = lambda[1..].iter().filter(|l| l.is_zero()).count();
        let report = dsg_blocks_for(&q, &lambda).unwrap();
        let covered: usize = report.blocks.iter().map(|b| b.vertices.len()).sum();
        prop_assert_eq!(covered, zeros);
    }

    #[test]
    fn derived_preprojective_squares_to_zero(t in 0..3usize, ws in prop::collection::vec(0u8..6, 6)) {
        let q = extended_dynkin(["Atilde2", "Atilde3", "Dtilde4"][t].parse::<ExtendedType>().unwrap());
        let lambda: Vec<Scalar> = ws[..q.num_vertices()].iter().map(|&k| weight(k)).collect();
        let d = derived_preprojective(&q, &lambda).unwrap();
        prop_assert!(d.d_squared_zero_up_to(3, 1));
    }

    #[test]
    fn drinfeld_h0_is_the_quotient(n in 1usize..=3, mask in 0u8..8) {
        let a = FdAlgebra::upper_triangular(FieldKind::Rat, n);
        let mut e = a.zero_vec();
        for i in (0..n).filter(|i| mask & (1 << i) != 0) {
            let name = format!("E{}{}", i + 1, i + 1);
            e[a.names().iter().position(|x| *x == name).unwrap()] = Scalar::one();
        }
        let d = drinfeld_quotient(&a, &e, 4, &TensorBase::Field).unwrap();
        prop_assert!(d.d_squared_zero());
        let h = drinfeld_cohomology(&d, -1, 0).unwrap();
        prop_assert_eq!(h.dims[&0], d.quotient_dim());
    }

    #[test]
    fn koszul_dual_stable_in_bound(n in 2usize..=4, deg in -1i64..=0) {
        let a = AugmentedAlgebra::new(FdAlgebra::truncated_polynomial(FieldKind::Rat, n, deg, Grading::Z)).unwrap();
        let small = koszul_dual_cohomology(&a, 5, 0, 3).unwrap();
        let large = koszul_dual_cohomology(&a, 6, 0, 3).unwrap();
        prop_assert_eq!(small.dims, large.dims);
    }

    #[test]
    fn stabilisations_are_factorisations(s in terms_in_max_ideal(2, 3, 4), s2 in terms_in_max_ideal(1, 3, 2)) {
        let r = ring(&["x", "y"]);
        let sigma = poly(&r, &s);
        prop_assume!(!sigma.is_zero());
        let st = stabilise(&r, &vars(&r), &sigma).unwrap();
        prop_assert!(st.mf.is_valid());
        let sh = st.mf.shift();
        prop_assert!(sh.is_valid());
        let back = sh.shift();
        prop_assert_eq!(back.phi(), st.mf.phi());
        let r2 = Ring::new(&["z"], FieldKind::Rat).unwrap();
        let tau = poly(&r2, &s2);
        prop_assume!(!tau.is_zero());
        let other = stabilise(&r2, &[Poly::var(&r2, 0)], &tau).unwrap();
        let t = MatrixFactorisation::tensor(&st.mf, &other.mf).unwrap();
        prop_assert!(t.is_valid());
        prop_assert_eq!(t.rank(), st.mf.rank() * other.mf.rank() * 2);
    }

    #[test]
    fn tjurina_at_most_milnor(s in terms_in_max_ideal(2, 3, 3)) {
        let r = ring(&["x", "y"]);
        let sigma = poly(&r, &s);
        prop_assume!(!sigma.is_zero());
        let mu = milnor_algebra(&sigma).unwrap().number;
        let tau = tjurina_algebra(&sigma).unwrap().number;
        if let Some(mu) = mu {
            prop_assert!(tau.unwrap() <= mu);
        }
    }
}
