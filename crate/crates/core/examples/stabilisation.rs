//! Stabilising the residue field of k[x]/(x^2) and of k[x,y]/(xy).

use singcat::exactcore::FieldKind;
use singcat::polyring::{parse_poly, Poly, Ring};
use singcat::stabilize::{end_cohomology, stabilise};

fn main() -> singcat::Result<()> {
    for (vars, s) in [(&["x"][..], "x^2"), (&["x", "y"][..], "x*y")] {
        let r = Ring::new(vars, FieldKind::Rat)?;
        let fs: Vec<Poly> = (0..r.nvars()).map(|i| Poly::var(&r, i)).collect();
        let st = stabilise(&r, &fs, &parse_poly(&r, s)?)?;
        println!("sigma = {s}: rank {}, squares to sigma {}", st.mf.rank(), st.squares_to_sigma());
        let t = end_cohomology(&st.end_algebra()?, -4, 4)?;
        for ((parity, weight), dim) in t.nonzero() {
            println!("  H^{parity} at weight {weight}: {dim}");
            for rep in &t.reps[&(parity, weight)] {
                println!("    {rep}");
            }
        }
    }
    Ok(())
}
