//! Exhaustive ground truth for small `N`.
//!
//! Perfect matchings are generated by pairing the smallest unmatched label
//! with each larger unmatched label in turn. Work is sharded by the partner
//! of label 1, and per-shard tallies are merged, so results do not depend on
//! the number of worker threads.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::census;
use crate::characters::restricted_classes;
use crate::gluing::{self, fat_graph, surface_summary, Pairing};
use crate::perm;
use crate::words::{WordClass, WordMultiset};
use crate::{Error, Result};

/// Largest `N` for which all `(6N-1)!!` pairings are enumerated.
pub const MAX_EXHAUSTIVE_N: usize = 3;
/// Largest ground set for the brute-force maximal-genus count.
pub const MAX_BRUTE_GROUND: usize = 18;

/// `(2k-1)(2k-3)...1`, the number of perfect matchings of `2k` points.
pub fn matching_count(points: usize) -> BigUint {
    (1..points).step_by(2).map(BigUint::from).product()
}

fn guard_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::GuardExceeded {
            what: "exhaustive pairing enumeration",
            required: matching_count(6 * n).to_string(),
            limit: matching_count(6 * MAX_EXHAUSTIVE_N).to_string(),
        });
    }
    Ok(())
}

const UNMATCHED: usize = usize::MAX;

/// Lending walker over the perfect matchings of `{0, ..., points-1}`.
pub struct MatchingWalker {
    mate: Vec<usize>,
    stack: Vec<(usize, usize)>,
    pinned: usize,
    started: bool,
}

impl MatchingWalker {
    /// All matchings of an even number of points.
    pub fn new(points: usize) -> Self {
        assert!(points.is_multiple_of(2), "odd number of points");
        MatchingWalker {
            mate: vec![UNMATCHED; points],
            stack: Vec::with_capacity(points / 2),
            pinned: 0,
            started: false,
        }
    }

    /// Only the matchings that pair point 0 with `partner`.
    pub fn with_first_partner(points: usize, partner: usize) -> Self {
        assert!(partner > 0 && partner < points, "partner out of range");
        let mut w = Self::new(points);
        w.mate[0] = partner;
        w.mate[partner] = 0;
        w.stack.push((0, partner));
        w.pinned = 1;
        w
    }

    fn fill(&mut self) {
        let mut a = 0;
        loop {
            while a < self.mate.len() && self.mate[a] != UNMATCHED {
                a += 1;
            }
            if a == self.mate.len() {
                return;
            }
            let b = (a + 1..self.mate.len())
                .find(|&b| self.mate[b] == UNMATCHED)
                .expect("even number of points");
            self.mate[a] = b;
            self.mate[b] = a;
            self.stack.push((a, b));
        }
    }

    /// The next matching as a mate array, or `None` when exhausted.
    pub fn advance(&mut self) -> Option<&[usize]> {
        if !self.started {
            self.started = true;
            self.fill();
            return Some(&self.mate);
        }
        while self.stack.len() > self.pinned {
            let (a, b) = self.stack.pop().unwrap();
            self.mate[a] = UNMATCHED;
            self.mate[b] = UNMATCHED;
            if let Some(next) = (b + 1..self.mate.len()).find(|&c| self.mate[c] == UNMATCHED) {
                self.mate[a] = next;
                self.mate[next] = a;
                self.stack.push((a, next));
                self.fill();
                return Some(&self.mate);
            }
        }
        None
    }
}

/// Stream of all `(6N-1)!!` pairings, each exactly once.
pub fn enumerate_all_pairings(n: usize) -> Result<impl Iterator<Item = Pairing>> {
    guard_n(n)?;
    let mut walker = MatchingWalker::new(6 * n);
    Ok(std::iter::from_fn(move || {
        walker
            .advance()
            .map(|m| Pairing::from_mates_unchecked(m.to_vec()))
    }))
}

/// Folds `visit` over all pairings in parallel shards and merges the results.
fn fold_pairings<T, F, M>(n: usize, init: impl Fn() -> T + Sync, visit: F, merge: M) -> Result<T>
where
    T: Send,
    F: Fn(&mut T, &Pairing) + Sync,
    M: Fn(T, T) -> T + Sync,
{
    guard_n(n)?;
    let points = 6 * n;
    let shards: Vec<T> = (1..points)
        .into_par_iter()
        .map(|partner| {
            let mut acc = init();
            let mut walker = MatchingWalker::with_first_partner(points, partner);
            while let Some(m) = walker.advance() {
                visit(&mut acc, &Pairing::from_mates_unchecked(m.to_vec()));
            }
            acc
        })
        .collect();
    Ok(shards.into_iter().reduce(merge).unwrap_or_else(init))
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JointCount {
    /// `None` for disconnected surfaces.
    pub genus: Option<usize>,
    /// Entries align with [`ExhaustiveReport::classes`].
    pub z: Vec<u64>,
    pub count: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExhaustiveReport {
    pub n: usize,
    pub total_pairings: u64,
    /// Connected surfaces only.
    pub genus_histogram: BTreeMap<usize, u64>,
    pub disconnected: u64,
    pub classes: Vec<String>,
    pub joint_counts: Vec<JointCount>,
}

#[derive(Default)]
struct Tally {
    total: u64,
    genus: BTreeMap<usize, u64>,
    disconnected: u64,
    joint: BTreeMap<(Option<usize>, Vec<u64>), u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.total += other.total;
        self.disconnected += other.disconnected;
        for (g, c) in other.genus {
            *self.genus.entry(g).or_insert(0) += c;
        }
        for (k, c) in other.joint {
            *self.joint.entry(k).or_insert(0) += c;
        }
        self
    }
}

/// Exact genus histogram and, for the given classes, the joint law of
/// `(genus, Z-vector)` over all pairings.
pub fn exhaustive_report(n: usize, classes: &[WordClass]) -> Result<ExhaustiveReport> {
    if let Some(c) = classes.iter().find(|c| c.is_cusp()) {
        return Err(Error::invalid(format!("{c} is a cusp class")));
    }
    let tally = fold_pairings(
        n,
        Tally::default,
        |t, p| {
            t.total += 1;
            let genus = surface_summary(p).genus();
            match genus {
                Some(g) => *t.genus.entry(g).or_insert(0) += 1,
                None => t.disconnected += 1,
            }
            if !classes.is_empty() {
                let z = census::count_words(&fat_graph(p), classes).expect("classes checked");
                *t.joint.entry((genus, z)).or_insert(0) += 1;
            }
        },
        Tally::merge,
    )?;
    Ok(ExhaustiveReport {
        n,
        total_pairings: tally.total,
        genus_histogram: tally.genus,
        disconnected: tally.disconnected,
        classes: classes
            .iter()
            .map(|c| c.representative().to_string())
            .collect(),
        joint_counts: tally
            .joint
            .into_iter()
            .map(|((genus, z), count)| JointCount { genus, z, count })
            .collect(),
    })
}

pub fn exact_genus_distribution(n: usize) -> Result<ExhaustiveReport> {
    exhaustive_report(n, &[])
}

/// Which surfaces a conditional expectation is taken over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenusSet {
    /// Every pairing, connected or not.
    All,
    /// Connected surfaces whose genus lies in the set.
    Genera(BTreeSet<usize>),
}

impl GenusSet {
    pub fn of(genera: impl IntoIterator<Item = usize>) -> Self {
        GenusSet::Genera(genera.into_iter().collect())
    }

    pub fn contains(&self, genus: Option<usize>) -> bool {
        match self {
            GenusSet::All => true,
            GenusSet::Genera(set) => genus.is_some_and(|g| set.contains(&g)),
        }
    }
}

fn falling(z: u64, m: usize) -> u64 {
    (0..m as u64).map(|i| z.saturating_sub(i)).product()
}

/// `E[prod_w (Z_[w])_{m_w} | g in D]` exactly, by enumeration.
pub fn exact_conditional_moment(n: usize, ws: &WordMultiset, cond: &GenusSet) -> Result<Ratio<u64>> {
    let classes: Vec<WordClass> = ws.entries().iter().map(|(c, _)| c.clone()).collect();
    let mults: Vec<usize> = ws.entries().iter().map(|&(_, m)| m).collect();
    let (sum, hits) = fold_pairings(
        n,
        || (0u64, 0u64),
        |acc, p| {
            let genus = surface_summary(p).genus();
            if !cond.contains(genus) {
                return;
            }
            acc.1 += 1;
            let z = census::count_words(&fat_graph(p), &classes).expect("multiset has no cusps");
            acc.0 += z.iter().zip(&mults).map(|(&z, &m)| falling(z, m)).product::<u64>();
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    )?;
    if hits == 0 {
        return Err(Error::UndefinedCondition);
    }
    Ok(Ratio::new(sum, hits))
}

/// `n(N, W, m)`: involutions `tau` of cycle type `2^(3N-M)` for which
/// `sigma * tau` is a single cycle, with `sigma` the canonical element of the
/// restricted class `K_3(W, m)` (its cycles laid out on consecutive points).
pub fn brute_max_genus_count(n: usize, ws: &WordMultiset) -> Result<u64> {
    if n.is_multiple_of(2) {
        return Err(Error::invalid(format!("N must be odd, got {n}")));
    }
    let shapes = restricted_classes(n, ws)?;
    let ground = shapes.ground_size;
    if ground > MAX_BRUTE_GROUND {
        return Err(Error::GuardExceeded {
            what: "brute-force maximal genus count",
            required: matching_count(ground).to_string(),
            limit: matching_count(MAX_BRUTE_GROUND).to_string(),
        });
    }
    if ground == 0 {
        return Ok(0);
    }
    let mut sigma = Vec::with_capacity(ground);
    for &len in shapes.k3_shape.parts() {
        let base = sigma.len();
        sigma.extend((0..len).map(|i| base + (i + 1) % len));
    }
    debug_assert_eq!(sigma.len(), ground);
    let count: u64 = (1..ground)
        .into_par_iter()
        .map(|partner| {
            let mut walker = MatchingWalker::with_first_partner(ground, partner);
            let mut hits = 0u64;
            while let Some(tau) = walker.advance() {
                if single_cycle(&sigma, tau) {
                    hits += 1;
                }
            }
            hits
        })
        .sum();
    Ok(count)
}

#[inline]
fn single_cycle(sigma: &[usize], tau: &[usize]) -> bool {
    let mut x = sigma[tau[0]];
    let mut steps = 1;
    while x != 0 {
        x = sigma[tau[x]];
        steps += 1;
    }
    steps == sigma.len()
}

/// `sign(sigma * tau)` for the canonical `sigma`.
pub fn lht_sign(p: &Pairing) -> i32 {
    let sigma = gluing::canonical_sigma(p.n()).expect("pairings have N >= 1");
    let cycles = perm::product_cycle_count(sigma.images(), p.mates(), &mut Vec::new());
    if (p.n_half_sides() - cycles).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_counts() {
        assert_eq!(enumerate_all_pairings(1).unwrap().count(), 15);
        assert_eq!(enumerate_all_pairings(2).unwrap().count(), 10395);
        assert_eq!(matching_count(18), BigUint::from(34_459_425u64));
        match enumerate_all_pairings(4) {
            Err(Error::GuardExceeded { required, .. }) => {
                assert_eq!(required, "316234143225")
            }
            _ => panic!("expected guard"),
        }
    }

    #[test]
    fn pairings_are_distinct() {
        let all: BTreeSet<Vec<(usize, usize)>> =
            enumerate_all_pairings(2).unwrap().map(|p| p.pairs()).collect();
        assert_eq!(all.len(), 10395);
    }

    #[test]
    fn genus_law_n1() {
        let r = exact_genus_distribution(1).unwrap();
        assert_eq!(r.total_pairings, 15);
        assert_eq!(r.genus_histogram, BTreeMap::from([(0, 12), (1, 3)]));
        assert_eq!(r.disconnected, 0);
        let p1 = Ratio::new(r.genus_histogram[&1], r.total_pairings);
        assert_eq!(p1, Ratio::new(1, 5));
    }

    #[test]
    fn genus_law_n2_conserves_mass() {
        let r = exact_genus_distribution(2).unwrap();
        let total: u64 = r.genus_histogram.values().sum::<u64>() + r.disconnected;
        assert_eq!(total, 10395);
        assert!(r.disconnected > 0);
    }

    #[test]
    fn conditional_moments_n1() {
        let lr = WordMultiset::parse(&[("LR", 1)]).unwrap();
        assert_eq!(
            exact_conditional_moment(1, &lr, &GenusSet::of([1])).unwrap(),
            Ratio::from_integer(3)
        );
        assert_eq!(
            exact_conditional_moment(1, &WordMultiset::empty(), &GenusSet::All).unwrap(),
            Ratio::from_integer(1)
        );
        assert!(matches!(
            exact_conditional_moment(1, &lr, &GenusSet::of([7])),
            Err(Error::UndefinedCondition)
        ));
    }

    #[test]
    fn brute_counts_n1() {
        assert_eq!(brute_max_genus_count(1, &WordMultiset::empty()).unwrap(), 3);
        assert!(brute_max_genus_count(2, &WordMultiset::empty()).is_err());
        let big = WordMultiset::empty();
        assert!(brute_max_genus_count(5, &big).unwrap_err().is_guard());
    }
}
