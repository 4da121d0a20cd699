#![allow(dead_code)]

use randsurf::gluing::FatGraph;
use randsurf::words::{class_of, Letter, Word, WordClass};

fn next_in_triangle(h: usize, steps: usize) -> usize {
    3 * (h / 3) + (h % 3 + steps) % 3
}

/// Counts circuits in `c` by trying every start half-edge and every turn
/// sequence of length `|c|`, then dividing out the `2l` ways (start point and
/// direction) each circuit is traversed.
pub fn walk_oracle(g: &FatGraph, c: &WordClass) -> u64 {
    let l = c.length();
    let mate = g.edge_map();
    let mut hits = 0u64;
    for start in 0..mate.len() {
        for bits in 0u32..(1 << l) {
            let mut h = start;
            let mut edges = Vec::with_capacity(l);
            let mut letters = Vec::with_capacity(l);
            for i in 0..l {
                edges.push(h.min(mate[h]));
                let arrived = mate[h];
                let left = bits >> i & 1 == 0;
                letters.push(if left { Letter::L } else { Letter::R });
                h = next_in_triangle(arrived, if left { 1 } else { 2 });
            }
            if h != start {
                continue;
            }
            let mut sorted = edges.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != l {
                continue;
            }
            if class_of(&Word::new(letters)).unwrap() == *c {
                hits += 1;
            }
        }
    }
    assert_eq!(hits % (2 * l as u64), 0, "walks of {c} do not come in full orbits");
    hits / (2 * l as u64)
}

/// Every non-cusp class with length `1..=max_len`.
pub fn classes_up_to(max_len: usize) -> Vec<WordClass> {
    let mut out: Vec<WordClass> = Vec::new();
    for l in 1..=max_len {
        for bits in 0u32..(1 << l) {
            let w = Word::new(
                (0..l)
                    .map(|i| if bits >> i & 1 == 0 { Letter::L } else { Letter::R })
                    .collect(),
            );
            if w.is_cusp() {
                continue;
            }
            let c = class_of(&w).unwrap();
            if !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out
}
