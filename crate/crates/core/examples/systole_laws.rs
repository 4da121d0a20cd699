//! Limiting systole laws: the trace distribution on the punctured model and
//! the tail bound for Riemannian triangles.

use randsurf::stats::{corollary2_bound, equilateral_m2, systole_table};

fn main() -> randsurf::Result<()> {
    println!("trace  length    P(systole trace = k)  |A_k|");
    for r in systole_table(12)? {
        println!("{:>5}  {:.5}  {:.12}        {}", r.trace, r.length, r.probability, r.classes);
    }

    let m2 = equilateral_m2(1.0)?;
    println!("\nequilateral side 1, m2 = {m2}");
    for i in 0..=10 {
        let x = i as f64 * 0.5;
        println!("  P(sys >= {x:.1}) <= {:.6}", corollary2_bound(x, m2)?);
    }
    Ok(())
}
