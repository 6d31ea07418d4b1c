//! Knörrer's functors applied to the nodal cubic, with isomorphism certificates.

use singcat::exactcore::FieldKind;
use singcat::matfac::{knoerrer_g, knoerrer_h, rho_g_certificate, rho_rho_h_certificate, MatrixFactorisation};
use singcat::polyring::{format_poly, Ring};

fn main() -> singcat::Result<()> {
    let r = Ring::new(&["x", "y"], FieldKind::Rat)?;
    let entries: &[&[&str]] = &[&["y", "x+x^2"], &["-x", "-y"]];
    let m = MatrixFactorisation::parse(&r, "y^2-x^2-x^3", entries, entries)?;

    let g = knoerrer_g(&m, "z")?;
    println!("G(M) over {}: rank {}, valid {}", format_poly(g.sigma()), g.rank(), g.is_valid());
    let cert = rho_g_certificate(&m, "z")?;
    println!("rho G(M) = M + shift(M): {}", cert.certify_isomorphism());

    let h = knoerrer_h(&m, "u", "v")?;
    println!("H(M) over {}: rank {}, valid {}", format_poly(h.sigma()), h.rank(), h.is_valid());
    let cert = rho_rho_h_certificate(&m, "u", "v")?;
    println!("rho rho H(M) = M + shift(M): {}", cert.certify_isomorphism());
    Ok(())
}
