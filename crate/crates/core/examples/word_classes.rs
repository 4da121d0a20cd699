//! Turn words, their classes, traces and lengths.
//!
//!     cargo run --example word_classes -- LLRLR

use randsurf::words::{class_of, hyperbolic_length, poisson_mean, star, words_with_trace, Word};

fn main() -> randsurf::Result<()> {
    let w: Word = std::env::args().nth(1).unwrap_or_else(|| "LLR".into()).parse()?;
    let class = class_of(&w)?;
    println!("word {w}, star {}, class {class}", star(&w));
    println!("  members: {:?}", class.members().iter().map(|m| m.to_string()).collect::<Vec<_>>());
    println!("  trace {}, Poisson mean {}", class.trace(), poisson_mean(&class));
    match hyperbolic_length(&class) {
        Ok(l) => println!("  length {l:.6}"),
        Err(e) => println!("  {e}"),
    }

    println!("\nclasses by trace:");
    for k in 3..=9 {
        let a = words_with_trace(k)?;
        let names: Vec<String> = a.iter().map(|c| c.to_string()).collect();
        println!("  {k}: {}", names.join(" "));
    }
    Ok(())
}
