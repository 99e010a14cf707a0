// The three-vertex path family whose ratios approach the golden bound.
//
// `cargo run --example fibonacci_p3`

use hatguess::graph::make_path;
use hatguess::strategy::game_of;
use hatguess::synthesis::{fibonacci_game, p3_strategy};
use hatguess::verifier::exhaustive_verify;
use num_traits::ToPrimitive;

fn main() -> anyhow::Result<()> {
    let path = make_path(3)?;
    for i in 1..=4 {
        let (h, g) = fibonacci_game(i);
        let (h, g) = (h.to_u64().unwrap(), g.to_u64().unwrap());
        let strategy = p3_strategy(h, g)?;
        let spec = game_of(&strategy, &path)?;
        println!(
            "i={i} h={h} g={g} h/g={:.6} arrangements={} {:?}",
            h as f64 / g as f64,
            spec.arrangement_count().unwrap(),
            exhaustive_verify(&spec, &strategy)?
        );
    }
    println!("limit (3 + sqrt 5)/2 = {:.6}", (3.0 + 5f64.sqrt()) / 2.0);
    Ok(())
}
