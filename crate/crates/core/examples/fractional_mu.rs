// Fractional hat chromatic numbers of small chordal graphs.
//
// `cargo run --example fractional_mu`

use hatguess::graph::{make_clique, make_path, make_star, Graph};
use hatguess::mu::{approx_f64, approximate_mu, mu_upper_bound_root, MuResult};

fn main() -> anyhow::Result<()> {
    let graphs: Vec<(&str, Graph)> = vec![
        ("K4", make_clique(4)?),
        ("P3", make_path(3)?),
        ("P8", make_path(8)?),
        ("star with 5 leaves", make_star(5)?),
    ];
    for (name, g) in graphs {
        let root = mu_upper_bound_root(&g, 40)?;
        match approximate_mu(&g, 24)? {
            MuResult::Exact(q) => println!("{name}: exactly {q}"),
            MuResult::Approx { t, .. } => println!(
                "{name}: about {:.6} (polynomial root gives {:.6})",
                approx_f64(&t),
                approx_f64(&root.lo)
            ),
        }
    }
    Ok(())
}
