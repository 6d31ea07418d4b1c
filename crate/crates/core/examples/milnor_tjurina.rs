//! Milnor and Tjurina numbers of a few plane and surface singularities.

use singcat::exactcore::FieldKind;
use singcat::polyring::{milnor_algebra, milnor_algebra_truncated, parse_poly, tjurina_algebra, Ring};

fn main() -> singcat::Result<()> {
    let r = Ring::new(&["x", "y", "z"], FieldKind::Rat)?;
    for s in ["x^2+y^2+z^4", "x^2+y^2*z+z^4", "x^2+y^3+z^5"] {
        let p = parse_poly(&r, s)?;
        let mu = milnor_algebra(&p)?;
        let tau = tjurina_algebra(&p)?;
        println!("{s:>20}  mu = {:?}  tau = {:?}", mu.number, tau.number);
    }
    // local computation modulo a power of the maximal ideal
    let r2 = Ring::new(&["x", "y"], FieldKind::Rat)?;
    let p = parse_poly(&r2, "x^4+y^5+x^2*y^2")?;
    let local = milnor_algebra_truncated(&p, 8)?;
    println!("x^4+y^5+x^2*y^2 modulo m^8: mu = {:?}", local.number);
    Ok(())
}
