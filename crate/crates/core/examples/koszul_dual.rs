//! The Koszul dual of the dual numbers, computed through the bar construction.

use singcat::algebra::FdAlgebra;
use singcat::complexes::Grading;
use singcat::exactcore::FieldKind;
use singcat::koszuldual::{bar, cobar, counit_h0_check, koszul_dual_cohomology, AugmentedAlgebra, ConilpotentCoalgebra};

fn main() -> singcat::Result<()> {
    let a = AugmentedAlgebra::new(FdAlgebra::truncated_polynomial(FieldKind::Rat, 2, 0, Grading::Z))?;
    for piece in bar(&a, 4)? {
        println!("bar piece of dimension {}: {:?}", piece.dim(), piece.degree_dims());
    }
    let t = koszul_dual_cohomology(&a, 6, 0, 4)?;
    println!("dims of the dual: {:?}", t.dims);
    for (k, c) in t.powers((1, 0)) {
        println!("  generator^{k} has coordinates {:?}", c.iter().map(ToString::to_string).collect::<Vec<_>>());
    }

    let c = ConilpotentCoalgebra::dual_of(&a)?;
    println!("cobar of the linear dual: {:?}", cobar(&c, 6)?.cohomology(0, 4)?);
    println!("counit check: {}", counit_h0_check(&a, 6)?.ok());
    Ok(())
}
