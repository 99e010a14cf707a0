// Long paths whose every ratio stays close to one quarter.
//
// `cargo run --example path_game`

use hatguess::numerics::rat;
use hatguess::strategy::game_of;
use hatguess::synthesis::path_game;
use hatguess::verifier::exhaustive_verify;

fn main() -> anyhow::Result<()> {
    let eps = rat(1, 8);
    for steps in [1, 2] {
        let game = path_game(&eps, Some(steps))?;
        let spec = game_of(&game.strategy, &game.graph)?;
        let ratios: Vec<String> = spec.ratios().iter().map(ToString::to_string).collect();
        println!(
            "{steps} step(s): h {:?} g {:?}",
            spec.hatness(),
            spec.guesses()
        );
        println!("  ratios {}", ratios.join(" "));
        println!("  {:?}", exhaustive_verify(&spec, &game.strategy)?);
    }
    let auto = path_game(&rat(1, 12), None)?;
    let spec = game_of(&auto.strategy, &auto.graph)?;
    println!(
        "epsilon 1/12 builds a path on {} vertices, hatness {:?}",
        spec.vertex_count(),
        spec.hatness()
    );
    Ok(())
}
