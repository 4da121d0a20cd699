//! Monte Carlo counts of short curves against their Poisson limits, with and
//! without conditioning on the genus.
//!
//!     cargo run --release --example poisson_census -- 64 20000

use randsurf::stats::{genus_window, run_census, GenusFilter};
use randsurf::words::WordClass;

fn main() -> randsurf::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let n = args.next().unwrap_or(64) as usize;
    let samples = args.next().unwrap_or(20_000);
    let classes: Vec<WordClass> = ["LR", "LLR", "LLLR", "LLRR"]
        .iter()
        .map(|w| w.parse())
        .collect::<Result<_, _>>()?;

    let mut filters = vec![GenusFilter::all()];
    if n.is_multiple_of(2) {
        filters.push(genus_window(n, 2.0, 0.0)?);
    } else {
        filters.push(GenusFilter::max_genus());
    }
    for f in &filters {
        let e = run_census(n, &classes, f, samples, 42)?;
        println!("N={n}, {}: {} of {} accepted", f.description, e.samples_accepted, samples);
        for h in &e.histograms {
            println!(
                "  {:<5} lambda {:<4} mean {:.4} +- {:.4}  TV to Poisson {:.4}",
                h.class, h.lambda, h.mean, h.std_error, h.tv_to_poisson
            );
        }
        println!("  E[prod Z] = {:.4}", e.joint_product_moment);
    }
    Ok(())
}
