//! Glue triangles at random and read off the surface.
//!
//!     cargo run --example glue_and_genus -- 20 7

use randsurf::gluing::{canonical_sigma, sample_pairing, surface_summary, tau_of};

fn main() -> randsurf::Result<()> {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let n = args.next().unwrap_or(10) as usize;
    let seed = args.next().unwrap_or(1);

    let p = sample_pairing(n, seed)?;
    let st = canonical_sigma(n)?.compose(&tau_of(&p))?;
    let s = surface_summary(&p);

    println!("{} triangles, seed {seed}", 2 * n);
    println!("pairing      {}", p.to_json()?);
    println!("sigma*tau    {st}");
    println!("cusps        {} (cycle type {:?})", s.total_lht, st.cycle_type());
    match s.genus() {
        Some(g) => println!("genus        {g}  (max {})", n.div_ceil(2)),
        None => println!("disconnected: {} components", s.components.len()),
    }
    Ok(())
}
