//! Hochschild cohomology of k[t]/(t^2+1) with t odd, and of a curved algebra.

use singcat::algebra::FdAlgebra;
use singcat::complexes::Grading;
use singcat::exactcore::{FieldKind, Scalar};
use singcat::hochschild::{curvature_term_check, hochschild_cohomology, CurvedAlgebra, HochschildComplexSpec, Variant};

fn main() -> singcat::Result<()> {
    let cl = FdAlgebra::quadratic(FieldKind::Rat, Scalar::int(-1), true);
    let spec = HochschildComplexSpec::new(CurvedAlgebra::uncurved(cl), Variant::Cochain, 6)?;
    let t = hochschild_cohomology(&spec, 0, 4)?;
    println!("HH dims by slot: {:?}", t.dims);
    println!("even part: {}, odd part: {}", t.parity_dim(0), t.parity_dim(1));
    println!("HH^0 basis: {:?}", t.hh0_basis());

    let a = FdAlgebra::truncated_polynomial(FieldKind::Rat, 4, 1, Grading::Z);
    let curved = CurvedAlgebra::with_curvature(a.clone(), a.basis_vec(2))?;
    for v in [Variant::Cochain, Variant::Chain] {
        let spec = HochschildComplexSpec::new(curved.clone(), v, 4)?;
        println!("{v:?} differential squares to zero with curvature: {}", curvature_term_check(&spec));
    }
    Ok(())
}
