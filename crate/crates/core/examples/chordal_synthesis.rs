// Deciding a chordal game and building a strategy when it is winnable.
//
// `cargo run --example chordal_synthesis`

use hatguess::graph::{is_chordal, Graph};
use hatguess::numerics::rat;
use hatguess::strategy::{deserialize, game_of, serialize};
use hatguess::synthesis::{chordal_synthesize, decide_region, SynthesisResult};
use hatguess::verifier::exhaustive_verify;

fn main() -> anyhow::Result<()> {
    // Two triangles sharing the edge 1-2, plus a pendant vertex on 3.
    let g = Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4)])?;
    assert!(is_chordal(&g));

    for r in [rat(1, 5), rat(2, 5)] {
        let ratios = vec![r.clone(); 5];
        println!(
            "uniform ratio {r}: winnable = {}",
            decide_region(&g, &ratios)?
        );
        match chordal_synthesize(&g, &ratios)? {
            SynthesisResult::InRegion => println!("  no strategy exists"),
            SynthesisResult::Winning {
                hatness,
                guesses,
                strategy,
            } => {
                println!("  hatness {hatness:?}\n  guesses {guesses:?}");
                let text = serialize(&strategy);
                let reread = deserialize(&text)?;
                let spec = game_of(&reread, &g)?;
                println!(
                    "  {} arrangements: {:?}",
                    spec.arrangement_count().unwrap_or(u64::MAX),
                    exhaustive_verify(&spec, &reread)?
                );
            }
        }
    }
    Ok(())
}
