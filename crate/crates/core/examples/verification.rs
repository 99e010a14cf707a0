// Exhaustive checking, counterexamples and a brute-force losing proof.
//
// `cargo run --example verification`

use hatguess::graph::make_clique;
use hatguess::strategy::{deserialize, game_of, GameSpec};
use hatguess::verifier::{
    brute_force_losing, exhaustive_verify, random_falsify, VerificationResult, VerifyConfig,
};

const BROKEN: &str = "CLIQUE 2\nV 0 1\nH 2 2\nG 1 0\nEND\n";

fn main() -> anyhow::Result<()> {
    let k2 = make_clique(2)?;
    let broken = deserialize(BROKEN)?;
    let spec = game_of(&broken, &k2)?;
    if let VerificationResult::Counterexample(a) = exhaustive_verify(&spec, &broken)? {
        println!("arrangement [{a}] defeats the strategy");
    }
    println!(
        "random search: {:?}",
        random_falsify(&spec, &broken, 64, 1)?
    );

    let cfg = VerifyConfig::default();
    for (h, g) in [(2, 1), (3, 1)] {
        let spec = GameSpec::uniform(k2.clone(), h, g)?;
        println!(
            "K2 with h={h} g={g}: every strategy loses = {}",
            brute_force_losing(&spec, &cfg)?
        );
    }
    Ok(())
}
