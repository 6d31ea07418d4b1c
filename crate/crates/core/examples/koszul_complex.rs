//! The Koszul complex of the variables and the homotopy given by wedging with sigma.

use singcat::exactcore::FieldKind;
use singcat::koszul::{koszul_complex, sigma_homotopy};
use singcat::polyring::{division_coefficients, parse_poly, Poly, Ring};

fn main() -> singcat::Result<()> {
    let r = Ring::new(&["x", "y", "z"], FieldKind::Rat)?;
    let fs: Vec<Poly> = (0..3).map(|i| Poly::var(&r, i)).collect();
    let k = koszul_complex(&r, &fs)?;
    for j in 0..=3 {
        println!("degree -{j}: rank {}", k.complex.rank(-(j as i64)));
    }
    println!("d^2 = 0: {}", k.complex.is_complex());

    let sigma = parse_poly(&r, "x^2+y^2+z^3")?;
    let coeffs = division_coefficients(&sigma, &fs)?;
    let h = sigma_homotopy(&k, &sigma, &coeffs)?;
    println!("dh + hd = sigma: {}", h.verify_null_homotopy());
    println!("h^2 = 0: {}", h.h_squared_zero());
    println!("(d + h)^2 = sigma: {}", h.total_squares_to_sigma());
    Ok(())
}
