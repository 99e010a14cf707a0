// Independence polynomials and the region where games are lost.
//
// `cargo run --example independence_region`

use hatguess::graph::make_cycle;
use hatguess::numerics::rat;
use hatguess::polynomial::{region_oracle, univariate_polynomial, z_eval, RegionQuery};

fn main() -> anyhow::Result<()> {
    let c4 = make_cycle(4)?;
    println!("U(C4) coefficients: {}", univariate_polynomial(&c4)?);
    for r in [rat(1, 4), rat(3, 10), rat(1, 3)] {
        let inside = region_oracle(&RegionQuery::uniform(c4.clone(), r.clone())?)?;
        let z = z_eval(&c4, &vec![r.clone(); 4])?;
        println!("ratio {r}: Z = {z}, in region = {inside}");
    }
    Ok(())
}
