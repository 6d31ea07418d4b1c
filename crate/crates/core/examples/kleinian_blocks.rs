//! Blocks of deformed Kleinian singularities from weights on an extended Dynkin quiver.

use singcat::quiverlab::{dsg_blocks, parse_weights, ExtendedType};

fn main() -> singcat::Result<()> {
    let cases = [
        ("Atilde3", vec!["0", "1", "0"]),
        ("Dtilde4", vec!["0", "0", "0", "0"]),
        ("Dtilde5", vec!["1", "0", "0", "i", "0"]),
        ("Etilde8", vec!["0", "0", "1", "0", "0", "0", "0", "0"]),
    ];
    for (t, lambda) in cases {
        let t: ExtendedType = t.parse()?;
        let lambda = parse_weights(&lambda.into_iter().map(String::from).collect::<Vec<_>>())?;
        let report = dsg_blocks(t, &lambda)?;
        println!("{} with {:?}", report.quiver, report.lambda);
        for b in report.blocks {
            println!("  {} on {:?}: {}", b.dynkin, b.vertices, b.polynomial);
        }
    }
    Ok(())
}
