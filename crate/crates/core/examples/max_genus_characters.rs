//! One-cusp gluings counted with symmetric-group characters, checked against
//! brute force where that is feasible.
//!
//!     cargo run --release --example max_genus_characters -- 101

use randsurf::characters::{max_genus_count, ratio_to_f64, MaxGenusSummary};
use randsurf::exact::brute_max_genus_count;
use randsurf::words::WordMultiset;

fn main() -> randsurf::Result<()> {
    let big: usize = std::env::args().nth(1).map_or(101, |a| a.parse().expect("odd N"));
    let none = WordMultiset::empty();
    let lr = WordMultiset::parse(&[("LR", 1)])?;

    for n in [1, 3] {
        for (name, ws) in [("{}", &none), ("{LR}", &lr)] {
            let c = max_genus_count(n, ws)?;
            println!("N={n} W={name:<5} characters {:>8}  brute {:>8}", c.exact, brute_max_genus_count(n, ws)?);
        }
    }

    for n in [5, 9, 21, big] {
        let c = max_genus_count(n, &none)?;
        let s = ratio_to_f64(&c.s_value);
        println!("N={n:<4} s = {s:.6}  P(one cusp) = {:.6}", ratio_to_f64(&c.probability()));
    }
    println!("{}", serde_json::to_string_pretty(&MaxGenusSummary::from(&max_genus_count(9, &lr)?))?);
    Ok(())
}
