//! Circuits on a cubic fat graph and the word counts `Z_[w]`.
//!
//! A circuit is a closed non-backtracking walk that uses no undirected edge
//! twice, taken up to rotation and reversal. In a cubic graph such a walk
//! never revisits a vertex, so a circuit is a simple cycle.
//!
//! A walk is a sequence of half-edges `h_0, h_1, ...`: step `i` leaves along
//! `h_i`, arrives at `a = tau(h_i)` and continues along `sigma(a)` (turn `L`)
//! or `sigma^2(a)` (turn `R`). Turning left at every vertex traces a cycle of
//! `sigma * tau`, i.e. a left-hand-turn cycle.
//!
//! Enumeration starts each circuit at its smallest undirected edge, leaving
//! along the smaller half-edge of that edge, which fixes both rotation and
//! direction without a deduplication pass.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::gluing::{self, FatGraph};
use crate::words::{self, Letter, Matrix2, Word, WordClass};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    /// Half-edge each step leaves along (0-based).
    pub directed_edges: Vec<usize>,
    /// Turn taken after each step.
    pub word: Word,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.directed_edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directed_edges.is_empty()
    }

    pub fn class(&self) -> WordClass {
        words::class_of(&self.word).expect("circuits are non-empty")
    }
}

struct Search<'g, F> {
    g: &'g FatGraph,
    max_len: usize,
    trace_cap: Option<u64>,
    used: Vec<bool>,
    path: Vec<usize>,
    letters: Vec<Letter>,
    visit: F,
}

impl<F: FnMut(&[usize], &[Letter])> Search<'_, F> {
    fn run(&mut self) {
        for start in 0..self.g.n_half_edges() {
            if self.g.opposite(start) < start {
                continue;
            }
            self.used[start] = true;
            self.path.push(start);
            self.extend(start, Matrix2::IDENTITY);
            self.path.pop();
            self.used[start] = false;
        }
    }

    fn extend(&mut self, start: usize, m: Matrix2) {
        let last = *self.path.last().unwrap();
        let arrived = self.g.opposite(last);
        for letter in [Letter::L, Letter::R] {
            let next = match letter {
                Letter::L => gluing::sigma(arrived),
                Letter::R => gluing::sigma2(arrived),
            };
            let m = m.times(letter);
            if self.trace_cap.is_some_and(|cap| m.trace() > cap) {
                continue;
            }
            self.letters.push(letter);
            if next == start {
                (self.visit)(&self.path, &self.letters);
            } else {
                let edge = self.g.edge_id(next);
                if self.path.len() < self.max_len && edge > start && !self.used[edge] {
                    self.used[edge] = true;
                    self.path.push(next);
                    self.extend(start, m);
                    self.path.pop();
                    self.used[edge] = false;
                }
            }
            self.letters.pop();
        }
    }
}

/// Visits every circuit of length `<= max_len` once, as (half-edges, turns).
/// With a trace cap, walks whose partial holonomy trace exceeds it are cut.
fn for_each_circuit<F: FnMut(&[usize], &[Letter])>(
    g: &FatGraph,
    max_len: usize,
    trace_cap: Option<u64>,
    visit: F,
) {
    let mut search = Search {
        g,
        max_len,
        trace_cap,
        used: vec![false; g.n_half_edges()],
        path: Vec::with_capacity(max_len),
        letters: Vec::with_capacity(max_len),
        visit,
    };
    search.run();
}

/// All circuits of length at most `max_len`, each once.
pub fn enumerate_circuits(g: &FatGraph, max_len: usize) -> Result<Vec<Circuit>> {
    if max_len == 0 {
        return Err(Error::invalid("max_len must be at least 1"));
    }
    let mut out = Vec::new();
    for_each_circuit(g, max_len, None, |path, letters| {
        out.push(Circuit {
            directed_edges: path.to_vec(),
            word: Word::new(letters.to_vec()),
        })
    });
    Ok(out)
}

/// `Z_[w]`: the number of circuits carrying a word of class `c`.
pub fn count_word(g: &FatGraph, c: &WordClass) -> Result<u64> {
    if c.is_cusp() {
        return Err(Error::invalid(format!(
            "{c} is a cusp class; use lht_words for left-hand-turn cycles"
        )));
    }
    let len = c.length();
    let mut count = 0;
    for_each_circuit(g, len, Some(c.trace()), |path, letters| {
        if path.len() == len && c.contains(&Word::new(letters.to_vec())) {
            count += 1;
        }
    });
    Ok(count)
}

/// Counts for several classes in one enumeration; entries align with `classes`.
pub fn count_words(g: &FatGraph, classes: &[WordClass]) -> Result<Vec<u64>> {
    if let Some(c) = classes.iter().find(|c| c.is_cusp()) {
        return Err(Error::invalid(format!("{c} is a cusp class")));
    }
    let max_len = classes.iter().map(WordClass::length).max().unwrap_or(0);
    let cap = classes.iter().map(WordClass::trace).max().unwrap_or(0);
    let mut counts = vec![0; classes.len()];
    if max_len == 0 {
        return Ok(counts);
    }
    let keys: Vec<&Word> = classes.iter().map(WordClass::representative).collect();
    for_each_circuit(g, max_len, Some(cap), |_, letters| {
        let key = Word::new(words::canonical_letters(letters));
        for (slot, k) in counts.iter_mut().zip(&keys) {
            if **k == key {
                *slot += 1;
            }
        }
    });
    Ok(counts)
}

/// Lengths of the left-hand-turn cycles; they sum to `6N`.
pub fn lht_words(g: &FatGraph) -> Vec<usize> {
    let mut lengths = gluing::lht_lengths(g.edge_map());
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

/// Smallest trace `k` in `[3, trace_cap]` carried by some circuit.
pub fn min_essential_trace(g: &FatGraph, trace_cap: u64) -> Result<Option<u64>> {
    if trace_cap < 3 {
        return Err(Error::invalid("trace_cap must be at least 3"));
    }
    let mut best: Option<u64> = None;
    let mut cap = trace_cap;
    // A word with both letters has trace >= length + 1.
    for_each_circuit(g, (trace_cap - 1) as usize, Some(trace_cap), |_, letters| {
        if letters.windows(2).all(|p| p[0] == p[1]) {
            return;
        }
        let t = letters
            .iter()
            .fold(Matrix2::IDENTITY, |m, &l| m.times(l))
            .trace();
        if t <= cap {
            cap = t;
            best = Some(t);
        }
    });
    Ok(best)
}

/// True iff removing the circuit's edges disconnects the graph.
pub fn is_separating(g: &FatGraph, c: &Circuit) -> bool {
    let mut removed = vec![false; g.n_half_edges()];
    for &h in &c.directed_edges {
        removed[h] = true;
        removed[g.opposite(h)] = true;
    }
    let vertices = g.vertex_count();
    let mut seen = vec![false; vertices];
    let mut stack = vec![0];
    seen[0] = true;
    let mut reached = 1;
    while let Some(v) = stack.pop() {
        for h in 3 * v..3 * v + 3 {
            if removed[h] {
                continue;
            }
            let u = g.vertex_of(g.opposite(h));
            if !seen[u] {
                seen[u] = true;
                reached += 1;
                stack.push(u);
            }
        }
    }
    reached < vertices
}

/// Whether some circuit of at most `max_len` edges separates the graph.
pub fn has_separating_circuit(g: &FatGraph, max_len: usize) -> Result<bool> {
    Ok(enumerate_circuits(g, max_len)?
        .iter()
        .any(|c| is_separating(g, c)))
}

/// Word counts, the minimal essential trace and the cusp lengths of one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusResult {
    /// Keyed by canonical representative; cusp classes never appear.
    pub counts: BTreeMap<String, u64>,
    pub min_trace: Option<u64>,
    pub lht: Vec<usize>,
}

/// Counts every non-cusp class carried by circuits of length `<= max_len`.
pub fn census(g: &FatGraph, max_len: usize, trace_cap: u64) -> Result<CensusResult> {
    let mut counts = BTreeMap::new();
    for c in enumerate_circuits(g, max_len)? {
        if c.word.is_cusp() {
            continue;
        }
        *counts.entry(words::canonical(&c.word).to_string()).or_insert(0) += 1;
    }
    Ok(CensusResult {
        counts,
        min_trace: min_essential_trace(g, trace_cap)?,
        lht: lht_words(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gluing::{fat_graph, Pairing};

    fn graph(pairs: &[(usize, usize)]) -> FatGraph {
        fat_graph(&Pairing::from_pairs(pairs).unwrap())
    }

    fn theta() -> FatGraph {
        graph(&[(1, 4), (2, 5), (3, 6)])
    }

    fn class(s: &str) -> WordClass {
        s.parse().unwrap()
    }

    #[test]
    fn theta_circuits() {
        let g = theta();
        let cs = enumerate_circuits(&g, 2).unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.len() == 2 && c.class() == class("LR")));
        assert_eq!(count_word(&g, &class("LR")).unwrap(), 3);
        assert_eq!(count_word(&g, &class("LLR")).unwrap(), 0);
        assert_eq!(lht_words(&g), vec![6]);
        assert_eq!(min_essential_trace(&g, 10).unwrap(), Some(3));
        assert!(cs.iter().all(|c| !is_separating(&g, c)));
    }

    #[test]
    fn length_one_circuits_are_loops() {
        let g = graph(&[(1, 2), (3, 4), (5, 6)]);
        let cs = enumerate_circuits(&g, 1).unwrap();
        assert_eq!(cs.len(), 2);
        for c in &cs {
            let h = c.directed_edges[0];
            assert_eq!(g.vertex_of(h), g.vertex_of(g.opposite(h)));
            assert!(c.word.is_cusp());
            assert!(!is_separating(&g, c));
        }
        assert_eq!(lht_words(&g), vec![4, 1, 1]);
        assert_eq!(count_word(&g, &class("LR")).unwrap(), 0);
        assert_eq!(min_essential_trace(&g, 3).unwrap(), None);
        assert!(count_word(&g, &class("L")).is_err());
    }

    #[test]
    fn separating_cycle_on_two_digons() {
        // A=1..3, B=4..6, C=7..9, D=10..12
        // A-B double edge, C-D double edge, A-C and B-D single edges
        let g = graph(&[(1, 4), (2, 5), (3, 7), (6, 10), (8, 11), (9, 12)]);
        let cs = enumerate_circuits(&g, 4).unwrap();
        let digons: Vec<_> = cs.iter().filter(|c| c.len() == 2).collect();
        assert_eq!(digons.len(), 2);
        assert!(digons.iter().all(|c| !is_separating(&g, c)));
        let squares: Vec<_> = cs.iter().filter(|c| c.len() == 4).collect();
        assert_eq!(squares.len(), 4);
        assert!(squares.iter().all(|c| is_separating(&g, c)));
        assert!(has_separating_circuit(&g, 4).unwrap());
        assert!(!has_separating_circuit(&g, 3).unwrap());
    }

    #[test]
    fn census_json_shape() {
        let r = census(&theta(), 6, 8).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"counts":{"LR":3},"min_trace":3,"lht":[6]}"#);
    }

    #[test]
    fn multi_count_matches_single() {
        let g = graph(&[(1, 7), (2, 10), (3, 5), (4, 12), (6, 8), (9, 11)]);
        let classes = vec![class("LR"), class("LLR"), class("LLRR"), class("LRLR")];
        let many = count_words(&g, &classes).unwrap();
        for (c, n) in classes.iter().zip(many) {
            assert_eq!(count_word(&g, c).unwrap(), n);
        }
    }
}
