//! The cohomology of the stabilised residue field of a quadric is a Clifford algebra.

use singcat::exactcore::{ExactMatrix, FieldKind};
use singcat::polyring::{parse_poly, Poly, Ring};
use singcat::stabilize::{clifford_comparison, clifford_of_quadratic, stabilise};

fn main() -> singcat::Result<()> {
    let r = Ring::new(&["u", "v"], FieldKind::Rat)?;
    let sigma = parse_poly(&r, "u^2-v^2")?;
    let fs: Vec<Poly> = (0..2).map(|i| Poly::var(&r, i)).collect();
    let st = stabilise(&r, &fs, &sigma)?;
    let cmp = clifford_comparison(&st, 4)?;
    println!("dim H = {}", cmp.cohomology_dim);
    for g in &cmp.generators {
        println!("generator {g}");
    }
    println!("isomorphic to the Clifford algebra: {}", cmp.is_isomorphism());

    let cl = clifford_of_quadratic(&sigma)?;
    println!("relations: {:?}", cl.relations());
    let u = ExactMatrix::from_i64(FieldKind::Rat, &[&[0, 1], &[-1, 0]]);
    let v = ExactMatrix::from_i64(FieldKind::Rat, &[&[0, 1], &[1, 0]]);
    println!("2x2 matrices give an isomorphism: {}", cl.matrix_images_define_isomorphism(&[u, v]));
    Ok(())
}
