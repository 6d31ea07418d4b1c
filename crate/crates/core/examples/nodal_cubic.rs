//! A matrix factorisation of the nodal cubic, its cokernel and its hom complex.

use singcat::exactcore::FieldKind;
use singcat::matfac::MatrixFactorisation;
use singcat::polyring::Ring;

fn main() -> singcat::Result<()> {
    let r = Ring::new(&["x", "y"], FieldKind::Rat)?;
    let entries: &[&[&str]] = &[&["y", "x+x^2"], &["-x", "-y"]];
    let m = MatrixFactorisation::parse(&r, "y^2-x^2-x^3", entries, entries)?;
    println!("phi = psi =\n{}", m.phi());
    println!("phi psi = sigma: {}", m.verify().ok);

    let bad = MatrixFactorisation::parse(&r, "y^2-x^2", entries, entries)?;
    println!("against y^2-x^2: {:?}", bad.verify().witness);

    let coker = m.cokernel()?;
    println!("cokernel: {} generators, {} relations", coker.generators(), coker.relations());

    let h = MatrixFactorisation::hom_complex(&m, &m)?;
    println!("End complex ranks: even {}, odd {}", h.rank(0), h.rank(1));
    Ok(())
}
