// Gluing two winning edge games into a winning path on three vertices.
//
// `cargo run --example clique_join`

use hatguess::graph::make_clique;
use hatguess::strategy::game_of;
use hatguess::synthesis::{clique_join, clique_strategy, Game};
use hatguess::verifier::exhaustive_verify;

fn main() -> anyhow::Result<()> {
    let edge = || -> anyhow::Result<Game> {
        Ok(Game {
            graph: make_clique(2)?,
            strategy: clique_strategy(&[2, 2], &[1, 1])?,
        })
    };
    // Vertex 1 of the left edge takes the place of vertex 0 of the right one.
    let joined = clique_join(&edge()?, &edge()?, &[1], 0)?;
    let spec = game_of(&joined.strategy, &joined.graph)?;
    println!("edges {:?}", joined.graph.edges());
    println!("hatness {:?} guesses {:?}", spec.hatness(), spec.guesses());
    println!(
        "ratios {:?}",
        spec.ratios()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
    );
    println!("{:?}", exhaustive_verify(&spec, &joined.strategy)?);
    Ok(())
}
