//! Count every short circuit on one random fat graph, and on the theta graph
//! glued as a one-cusp torus.
//!
//!     cargo run --example circuit_census -- 30 4

use randsurf::census::{census, enumerate_circuits};
use randsurf::gluing::{fat_graph, sample_pairing, Pairing};

fn main() -> randsurf::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let n = args.next().unwrap_or(30) as usize;
    let seed = args.next().unwrap_or(4);

    let torus = fat_graph(&Pairing::from_pairs(&[(1, 4), (2, 5), (3, 6)])?);
    for c in enumerate_circuits(&torus, 6)? {
        println!("theta circuit {:<4} edges {:?}", c.word.to_string(), c.directed_edges);
    }
    println!("theta census {}", serde_json::to_string(&census(&torus, 6, 8)?)?);

    let g = fat_graph(&sample_pairing(n, seed)?);
    let r = census(&g, 8, 12)?;
    println!("\nN={n} seed={seed}: systole trace {:?}, cusps {:?}", r.min_trace, r.lht);
    for (class, count) in &r.counts {
        println!("  {class:<9}{count}");
    }
    Ok(())
}
