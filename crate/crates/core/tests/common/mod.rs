#![allow(dead_code)]

use proptest::prelude::*;
use singcat::exactcore::{FieldKind, Scalar};
use singcat::polyring::{Poly, PolyMatrix, Ring, RingRef};

pub const Q: FieldKind = FieldKind::Rat;

/// Raw terms `(exponents, coefficient)` for a polynomial in `nvars` variables.
pub type Terms = Vec<(Vec<u32>, i64)>;

pub fn terms(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, nvars), -3i64..=3), 0..=max_terms)
}

/// Terms without a constant part.
pub fn terms_in_max_ideal(nvars: usize, max_exp: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    terms(nvars, max_exp, max_terms).prop_map(|ts| ts.into_iter().filter(|(e, _)| e.iter().any(|&k| k > 0)).collect())
}

pub fn poly(ring: &RingRef, t: &Terms) -> Poly {
    Poly::from_terms(ring, t.iter().map(|(e, c)| (e.clone(), Scalar::int(*c)))).unwrap()
}

pub fn matrix(ring: &RingRef, rows: usize, cols: usize, entries: &[Terms]) -> PolyMatrix {
    let mut m = PolyMatrix::zeros(ring, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, poly(ring, &entries[(i * cols + j) % entries.len()]));
        }
    }
    m
}

pub fn ring(vars: &[&str]) -> RingRef {
    Ring::new(vars, Q).unwrap()
}

pub fn vars(ring: &RingRef) -> Vec<Poly> {
    (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect()
}
