//! Exhaustive ground truth: every gluing of 2 or 4 triangles.

use randsurf::exact::{exact_conditional_moment, exhaustive_report, GenusSet};
use randsurf::words::{WordClass, WordMultiset};

fn main() -> randsurf::Result<()> {
    let lr: WordClass = "LR".parse()?;
    for n in 1..=2 {
        let r = exhaustive_report(n, std::slice::from_ref(&lr))?;
        println!("N={n}: {} pairings, genus {:?}, disconnected {}", r.total_pairings, r.genus_histogram, r.disconnected);
        for j in &r.joint_counts {
            println!("  genus {:?} Z_LR={} x{}", j.genus, j.z[0], j.count);
        }
        let ws = WordMultiset::single(lr.clone())?;
        println!("  E[Z_LR] = {}", exact_conditional_moment(n, &ws, &GenusSet::All)?);
        let pair = WordMultiset::parse(&[("LR", 2)])?;
        println!("  E[Z_LR (Z_LR - 1)] = {}", exact_conditional_moment(n, &pair, &GenusSet::All)?);
    }
    Ok(())
}
