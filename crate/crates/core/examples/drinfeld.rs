//! Drinfeld quotients of k[x]/x^2 by 1 and of End(R + k) by the projection onto R.

use singcat::algebra::FdAlgebra;
use singcat::complexes::Grading;
use singcat::exactcore::FieldKind;
use singcat::quiverlab::{drinfeld_cohomology, drinfeld_quotient, end_of_sum_with_residue, TensorBase};

fn main() -> singcat::Result<()> {
    let a = FdAlgebra::truncated_polynomial(FieldKind::Rat, 2, 0, Grading::Z);
    let d = drinfeld_quotient(&a, a.unit(), 6, &TensorBase::Field)?;
    println!("k[x]/x^2 by e = 1: {:?}", drinfeld_cohomology(&d, -4, 0)?.dims);

    let (end, e) = end_of_sum_with_residue(FieldKind::Rat, 2)?;
    let d = drinfeld_quotient(&end, &e, 6, &TensorBase::Field)?;
    println!("End(R + k) has dimension {}, A/AeA has dimension {}", end.dim(), d.quotient_dim());
    println!("component dims {:?}", d.component_dims());
    println!("cohomology {:?}", drinfeld_cohomology(&d, -4, 0)?.dims);
    Ok(())
}
