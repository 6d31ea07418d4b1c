use super::*;
use crate::exactcore::FieldKind;

const Q: FieldKind = FieldKind::Rat;

fn cochain(a: CurvedAlgebra, l: usize) -> HochschildComplexSpec {
    HochschildComplexSpec::new(a, Variant::Cochain, l).unwrap()
}

fn chain(a: CurvedAlgebra, l: usize) -> HochschildComplexSpec {
    HochschildComplexSpec::new(a, Variant::Chain, l).unwrap()
}

fn clifford1() -> FdAlgebra {
    FdAlgebra::quadratic(Q, Scalar::int(-1), true)
}

/// Classical unnormalised complex `Hom(A^{⊗n}, A)` with
/// `(δf)(a1..a_{n+1}) = (-1)^{|a1||f|} a1 f(..) + Σ (-1)^i f(.., a_i a_{i+1}, ..) + (-1)^{n+1} f(..) a_{n+1}`,
/// returning `dim H` per (length, total parity or degree) summed by slot.
fn classical_dims(a: &FdAlgebra, max_len: usize) -> BTreeMap<i64, usize> {
    let dim = a.dim();
    let words = |n: usize| -> Vec<Vec<usize>> {
        let mut ws: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..n {
            ws = ws.into_iter().flat_map(|w| (0..dim).map(move |l| [w.clone(), vec![l]].concat())).collect();
        }
        ws
    };
    let s = |e: i64| if e.rem_euclid(2) == 0 { Scalar::one() } else { Scalar::int(-1) };
    let slot = |j: i64| match a.grading() {
        Grading::Z => j,
        Grading::Z2 => j.rem_euclid(2),
    };
    // matrix C^n -> C^{n+1}; basis (word, value)
    let delta = |n: usize| -> (Vec<(Vec<usize>, usize)>, Vec<(Vec<usize>, usize)>, ExactMatrix) {
        let src: Vec<(Vec<usize>, usize)> = words(n).into_iter().flat_map(|w| (0..dim).map(move |v| (w.clone(), v))).collect();
        let tgt: Vec<(Vec<usize>, usize)> = words(n + 1).into_iter().flat_map(|w| (0..dim).map(move |v| (w.clone(), v))).collect();
        let tpos: BTreeMap<&(Vec<usize>, usize), usize> = tgt.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = ExactMatrix::zeros(tgt.len(), src.len(), Q);
        for (col, (w, v)) in src.iter().enumerate() {
            let fdeg = a.degree(*v) - w.iter().map(|&x| a.degree(x)).sum::<i64>();
            for b in 0..dim {
                // a1 f(a2..)
                let w2 = [vec![b], w.clone()].concat();
                for (u, c) in a.mul_basis(b, *v).iter().enumerate() {
                    if !c.is_zero() {
                        m.add_to(tpos[&(w2.clone(), u)], col, &(&s(a.degree(b) * fdeg) * c));
                    }
                }
                // f(..) a_{n+1}
                let w3 = [w.clone(), vec![b]].concat();
                for (u, c) in a.mul_basis(*v, b).iter().enumerate() {
                    if !c.is_zero() {
                        m.add_to(tpos[&(w3.clone(), u)], col, &(&s(n as i64 + 1) * c));
                    }
                }
            }
            // f(.., a_i a_{i+1}, ..): target words t with t_i t_{i+1} having a component on w_i
            for t in words(n + 1) {
                for i in 0..n {
                    if t[..i] != w[..i] || t[i + 2..] != w[i + 1..] {
                        continue;
                    }
                    let c = &a.mul_basis(t[i], t[i + 1])[w[i]];
                    if !c.is_zero() {
                        m.add_to(tpos[&(t.clone(), *v)], col, &(&s(i as i64 + 1) * c));
                    }
                }
            }
        }
        (src, tgt, m)
    };
    let mut out = BTreeMap::new();
    let mut prev: Option<ExactMatrix> = None;
    for n in 0..=max_len {
        let (src, _, d) = delta(n);
        let jdeg = |(w, v): &(Vec<usize>, usize)| n as i64 + a.degree(*v) - w.iter().map(|&x| a.degree(x)).sum::<i64>();
        let slots: std::collections::BTreeSet<i64> = src.iter().map(|k| slot(jdeg(k))).collect();
        for sl in slots {
            let cols: Vec<usize> = (0..src.len()).filter(|&i| slot(jdeg(&src[i])) == sl).collect();
            let sub = ExactMatrix::from_columns(Q, d.rows(), &cols.iter().map(|&c| d.column(c)).collect::<Vec<_>>());
            let z = cols.len() - sub.rank();
            let b = match &prev {
                Some(p) => {
                    let rows: Vec<Vec<Scalar>> = cols.iter().map(|&c| p.row(c).iter().map(|(k, x)| (*k, x.clone())).fold(vec![Scalar::zero(); p.cols()], |mut v, (k, x)| {
                        v[k] = x;
                        v
                    })).collect();
                    ExactMatrix::from_rows_in(Q, rows).unwrap().rank()
                }
                None => 0,
            };
            *out.entry(sl).or_insert(0) += z - b;
        }
        prev = Some(d);
    }
    out
}

fn center_dim(a: &FdAlgebra) -> usize {
    let n = a.dim();
    let mut rows = Vec::new();
    for b in 0..n {
        let l = a.right_mul_matrix(&a.basis_vec(b));
        let r = a.left_mul_matrix(&a.basis_vec(b));
        rows.push(l.add(&r.scale(&Scalar::int(-1))).unwrap());
    }
    let mut stacked = rows[0].clone();
    for r in &rows[1..] {
        stacked = stacked.vstack(r);
    }
    n - stacked.rank()
}

#[test]
fn validation() {
    assert!(validate_curved(&CurvedAlgebra::uncurved(FdAlgebra::matrices(Q, 2))).ok);
    let a = FdAlgebra::truncated_polynomial(Q, 4, 1, Grading::Z);
    let h = a.basis_vec(2);
    let c = CurvedAlgebra::with_curvature(a.clone(), h).unwrap();
    assert!(validate_curved(&c).ok);
    let bad_h = CurvedAlgebra::with_curvature(a, FdAlgebra::truncated_polynomial(Q, 4, 1, Grading::Z).basis_vec(1)).unwrap();
    assert_eq!(validate_curved(&bad_h).witness, Some(CurvedWitness::CurvatureDegree));
    let b = FdAlgebra::truncated_polynomial(Q, 3, 1, Grading::Z2);
    let mut d = vec![b.zero_vec(); 3];
    d[1] = b.basis_vec(0);
    let broken = CurvedAlgebra::new(b, d, FdAlgebra::truncated_polynomial(Q, 3, 1, Grading::Z2).zero_vec()).unwrap();
    assert_eq!(
        validate_curved(&broken).witness,
        Some(CurvedWitness::Leibniz { left: "x".into(), right: "x^2".into() })
    );
}

#[test]
fn base_field() {
    let t = hochschild_cohomology(&cochain(CurvedAlgebra::uncurved(FdAlgebra::base_field(Q)), 5), 0, 3).unwrap();
    assert_eq!(t.dims_vec(), vec![1, 0, 0, 0]);
    assert_eq!(t.hh0_basis(), vec!["(1) [] -> 1".to_string()]);
    let h = hochschild_homology(&chain(CurvedAlgebra::uncurved(FdAlgebra::base_field(Q)), 5), 0, 3).unwrap();
    assert_eq!(h.dims_vec(), vec![1, 0, 0, 0]);
}

#[test]
fn center_of_matrix_algebras() {
    for a in [FdAlgebra::matrices(Q, 2), FdAlgebra::upper_triangular(Q, 2)] {
        let t = hochschild_cohomology(&cochain(CurvedAlgebra::uncurved(a.clone()), 4), 0, 2).unwrap();
        assert_eq!(t.dim(0), center_dim(&a));
        assert_eq!(t.dim(0), 1);
        assert_eq!((t.dim(1), t.dim(2)), (0, 0));
    }
    let c = FdAlgebra::truncated_polynomial(Q, 3, 0, Grading::Z);
    let t = hochschild_cohomology(&cochain(CurvedAlgebra::uncurved(c.clone()), 3), 0, 0).unwrap();
    assert_eq!(t.dim(0), c.dim());
}

/// `k[x]/x^N` has the periodic bimodule resolution with maps `x⊗1 - 1⊗x` and
/// `Σ x^i ⊗ x^{N-1-i}`; applying `Hom(-, A)` or `- ⊗ A` leaves `0` and `N x^{N-1}`.
fn periodic_oracle(n: usize, top: usize) -> (Vec<usize>, Vec<usize>) {
    let a = FdAlgebra::truncated_polynomial(Q, n, 0, Grading::Z);
    let mut v = a.zero_vec();
    v[n - 1] = Scalar::int(n as i64);
    let r = a.left_mul_matrix(&v).rank();
    // kernel and cokernel of N x^{N-1} have the same dimension, so both
    // sequences are n, n - r, n - r, ...
    let dims: Vec<usize> = (0..=top).map(|j| if j == 0 { n } else { n - r }).collect();
    (dims.clone(), dims)
}

#[test]
fn dual_numbers() {
    let a = CurvedAlgebra::uncurved(FdAlgebra::truncated_polynomial(Q, 2, 0, Grading::Z));
    let (coh, hom) = periodic_oracle(2, 3);
    let t = hochschild_cohomology(&cochain(a.clone(), 5), 0, 3).unwrap();
    assert_eq!(t.dims_vec(), coh);
    assert_eq!(t.dims_vec(), vec![2, 1, 1, 1]);
    let h = hochschild_homology(&chain(a.clone(), 5), 0, 3).unwrap();
    assert_eq!(h.dims_vec(), hom);
    let hp = hochschild_homology(&chain(a, 5).with_support(Support::Product), 0, 3).unwrap();
    assert_eq!(hp.dims, h.dims);
}

#[test]
fn truncated_cubic() {
    let a = CurvedAlgebra::uncurved(FdAlgebra::truncated_polynomial(Q, 3, 0, Grading::Z));
    let (coh, hom) = periodic_oracle(3, 2);
    assert_eq!(hochschild_cohomology(&cochain(a.clone(), 4), 0, 2).unwrap().dims_vec(), coh);
    assert_eq!(hochschild_homology(&chain(a, 4), 0, 2).unwrap().dims_vec(), hom);
}

#[test]
fn odd_square_root_of_minus_one() {
    let a = CurvedAlgebra::uncurved(clifford1());
    let t = hochschild_cohomology(&cochain(a.clone(), 6), 0, 4).unwrap();
    assert_eq!(t.dims_vec(), vec![1, 0, 1, 0, 1]);
    assert_eq!((t.parity_dim(0), t.parity_dim(1)), (1, 0));
    let oracle = classical_dims(&clifford1(), 5);
    assert_eq!(oracle.get(&0).copied().unwrap_or(0), 1);
    assert_eq!(oracle.get(&1).copied().unwrap_or(0), 0);
    let cup = &t.cups[0];
    assert_eq!(cup.result, Some(vec![((0, 0), "1".to_string())]));
}

#[test]
fn matches_classical_oracle() {
    let cases = vec![
        (FdAlgebra::truncated_polynomial(Q, 2, 0, Grading::Z), 4),
        (FdAlgebra::truncated_polynomial(Q, 3, 1, Grading::Z), 4),
        (FdAlgebra::truncated_polynomial(Q, 2, 1, Grading::Z2), 5),
        (FdAlgebra::upper_triangular(Q, 2), 3),
        (clifford1(), 5),
        (FdAlgebra::quadratic(Q, Scalar::int(2), false), 4),
        (FdAlgebra::super_matrices(Q, 1, 1), 3),
    ];
    for (a, l) in cases {
        let oracle = classical_dims(&a, l - 1);
        let spec = cochain(CurvedAlgebra::uncurved(a.clone()), l);
        let c = HochschildComplex::assemble(&spec, l - 1);
        for (&s, &d) in &oracle {
            if a.grading() == Grading::Z && s > l as i64 - 2 {
                continue;
            }
            if a.grading() == Grading::Z && a.degrees().iter().any(|&x| x != 0) && s > 0 {
                continue;
            }
            let sc = slot_cohomology(&c, s, c.slot_of(s - 1));
            let sc_unreduced = {
                let u = HochschildComplex::assemble(&spec.clone().unreduced(), l - 1);
                slot_cohomology(&u, s, u.slot_of(s - 1))
            };
            assert_eq!(sc.dim(), d, "{:?} slot {s}", a.names());
            assert_eq!(sc_unreduced.dim(), d, "{:?} slot {s} unreduced", a.names());
        }
    }
}

#[test]
fn window_bound() {
    let a = CurvedAlgebra::uncurved(FdAlgebra::base_field(Q));
    assert!(matches!(
        hochschild_cohomology(&cochain(a, 4), 0, 3),
        Err(Error::WindowExceedsBound { window: 3, bound: 4, needed: 4 })
    ));
}

#[test]
fn stable_in_bound() {
    let a = CurvedAlgebra::uncurved(FdAlgebra::truncated_polynomial(Q, 2, 0, Grading::Z));
    let t4 = hochschild_cohomology(&cochain(a.clone(), 4), 0, 2).unwrap();
    let t6 = hochschild_cohomology(&cochain(a, 6), 0, 4).unwrap();
    for j in 0..=2 {
        assert_eq!(t4.dim(j), t6.dim(j));
    }
}

#[test]
fn curvature_insertion_by_hand() {
    // k[x]/x^4 with x in degree 1 and h = x²; letters x, x², x³
    let a = FdAlgebra::truncated_polynomial(Q, 4, 1, Grading::Z);
    let c = CurvedAlgebra::with_curvature(a.clone(), a.basis_vec(2)).unwrap();
    let spec = cochain(c, 3);
    let cx = HochschildComplex::assemble(&spec, 2);
    // f = ([x²] -> 1) has |f| = 1 + 0 - 2 - 1 = -2, and δf() = -(-1)^{|f|} f(-s h) = f(s x²) = 1
    let f = Key::new(vec![1], 0);
    assert_eq!(cx.image(&f).unwrap().get(&Key::new(vec![], 0)), Some(&Scalar::one()));
    assert!(curvature_term_check(&spec));
    let uncurved = cochain(CurvedAlgebra::uncurved(a), 3);
    let cu = HochschildComplex::assemble(&uncurved, 2);
    assert!(cu.image(&f).unwrap().keys().all(|k| k.len >= 1));
}

#[test]
fn squares_to_zero() {
    let x2 = {
        let a = FdAlgebra::truncated_polynomial(Q, 4, 1, Grading::Z);
        CurvedAlgebra::with_curvature(a.clone(), a.basis_vec(2)).unwrap()
    };
    let sm = FdAlgebra::super_matrices(Q, 1, 1);
    let mut big_d = sm.zero_vec();
    big_d[1] = Scalar::int(2);
    big_d[2] = Scalar::int(-3);
    let inner = CurvedAlgebra::inner(sm, &big_d).unwrap();
    assert!(validate_curved(&inner).ok);
    assert!(inner.is_curved());
    for a in [x2, inner, CurvedAlgebra::uncurved(clifford1()), CurvedAlgebra::uncurved(FdAlgebra::matrices(Q, 2))] {
        for v in [Variant::Cochain, Variant::Chain] {
            let spec = HochschildComplexSpec::new(a.clone(), v, 3).unwrap();
            assert!(curvature_term_check(&spec), "{v:?} {:?}", a.algebra.names());
            assert!(curvature_term_check(&spec.clone().unreduced()), "{v:?} unreduced");
        }
    }
}

#[test]
fn cup_products_of_dual_numbers() {
    let a = CurvedAlgebra::uncurved(FdAlgebra::truncated_polynomial(Q, 2, 0, Grading::Z));
    let t = hochschild_cohomology(&cochain(a, 4), 0, 1).unwrap();
    // HH⁰ = A with its own product; the class of x squares to zero
    let zz: Vec<&CupEntry> = t.cups.iter().filter(|c| c.left.0 == 0 && c.right.0 == 0).collect();
    assert_eq!(zz.len(), 4);
    assert!(zz.iter().all(|c| c.result.is_some()));
    let reps = t.hh0_basis();
    assert_eq!(reps.len(), 2);
}
