// Winning strategy on a clique, queried bear by bear.
//
// `cargo run --example clique_strategy`

use hatguess::graph::make_clique;
use hatguess::strategy::{guesses, serialize, GameSpec};
use hatguess::synthesis::clique_strategy;
use hatguess::verifier::{is_perfect, VerifyConfig};

fn main() -> anyhow::Result<()> {
    let (h, g) = (vec![3, 3, 3], vec![1, 1, 1]);
    let strategy = clique_strategy(&h, &g)?;
    let spec = GameSpec::new(make_clique(3)?, h, g)?;
    print!("{}", serialize(&strategy));

    let colors = [2u64, 0, 1];
    for v in 0..3 {
        let visible: Vec<Option<u64>> = (0..3).map(|u| (u != v).then_some(colors[u])).collect();
        let guess = guesses(&strategy, &spec, v, &visible)?;
        let hit = guess.contains(&colors[v]);
        println!(
            "bear {v} wears {} and guesses {guess:?} ({})",
            colors[v],
            if hit { "hit" } else { "miss" }
        );
    }

    let perfect = is_perfect(&spec, &strategy, &VerifyConfig::default())?;
    println!("exactly one correct guess in every arrangement: {perfect}");
    Ok(())
}
