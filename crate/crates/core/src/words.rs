//! Turn words over `{L, R}`, their equivalence classes and holonomy.
//!
//! Two words are equivalent when one is a cyclic rotation of the other or of
//! its star (the word read backwards with `L` and `R` swapped). A class is
//! keyed by its lexicographically smallest member, with `L < R`.
//!
//! With `L = [[1,1],[0,1]]` and `R = [[1,0],[1,1]]`, every word is a
//! non-negative integer matrix; its trace is the class invariant that fixes the
//! hyperbolic length `2 arcosh(tr / 2)` of the corresponding closed geodesic.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    L,
    R,
}

impl Letter {
    pub fn swap(self) -> Letter {
        match self {
            Letter::L => Letter::R,
            Letter::R => Letter::L,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::L => 'L',
            Letter::R => 'R',
        }
    }
}

/// 2x2 matrix with non-negative entries `[[a, b], [c, d]]`.
///
/// Entries saturate at `u64::MAX`, which only happens for words of roughly
/// 90 letters or more; saturation keeps comparisons monotone.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Matrix2 {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
}

impl Matrix2 {
    pub const IDENTITY: Matrix2 = Matrix2 {
        a: 1,
        b: 0,
        c: 0,
        d: 1,
    };

    pub fn of(letter: Letter) -> Matrix2 {
        match letter {
            Letter::L => Matrix2 { a: 1, b: 1, c: 0, d: 1 },
            Letter::R => Matrix2 { a: 1, b: 0, c: 1, d: 1 },
        }
    }

    /// `self * letter`.
    #[inline]
    pub fn times(self, letter: Letter) -> Matrix2 {
        match letter {
            // [[a,b],[c,d]] * [[1,1],[0,1]] = [[a, a+b], [c, c+d]]
            Letter::L => Matrix2 {
                b: self.a.saturating_add(self.b),
                d: self.c.saturating_add(self.d),
                ..self
            },
            // [[a,b],[c,d]] * [[1,0],[1,1]] = [[a+b, b], [c+d, d]]
            Letter::R => Matrix2 {
                a: self.a.saturating_add(self.b),
                c: self.c.saturating_add(self.d),
                ..self
            },
        }
    }

    #[inline]
    pub fn trace(&self) -> u64 {
        self.a.saturating_add(self.d)
    }

    pub fn rows(&self) -> [[u64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `L^n`, `R^n` or empty: the words of trace 2.
    pub fn is_cusp(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn rotate(&self, k: usize) -> Word {
        let mut v = self.0.clone();
        if !v.is_empty() {
            let k = k % v.len();
            v.rotate_left(k);
        }
        Word(v)
    }

    pub fn power(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                'L' | 'l' => Ok(Letter::L),
                'R' | 'r' => Ok(Letter::R),
                other => Err(Error::invalid(format!("'{other}' is not a turn letter"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Ordered product of the letter matrices.
pub fn holonomy_matrix(w: &Word) -> Matrix2 {
    w.0.iter().fold(Matrix2::IDENTITY, |m, &l| m.times(l))
}

pub fn trace(w: &Word) -> u64 {
    holonomy_matrix(w).trace()
}

/// Reverse and swap letters; the holonomy of `star(w)` is the transpose.
pub fn star(w: &Word) -> Word {
    Word(w.0.iter().rev().map(|l| l.swap()).collect())
}

pub fn turn_counts(w: &Word) -> (usize, usize) {
    let l = w.0.iter().filter(|&&x| x == Letter::L).count();
    (l, w.len() - l)
}

/// Smallest member of the class of `letters` without building the class.
pub(crate) fn canonical_letters(letters: &[Letter]) -> Vec<Letter> {
    let n = letters.len();
    let starred: Vec<Letter> = letters.iter().rev().map(|l| l.swap()).collect();
    let mut best: Option<Vec<Letter>> = None;
    for base in [letters, &starred[..]] {
        for k in 0..n {
            let better = match &best {
                None => true,
                Some(b) => base[k..].iter().chain(&base[..k]).lt(b.iter()),
            };
            if better {
                best = Some(base[k..].iter().chain(&base[..k]).copied().collect());
            }
        }
    }
    best.unwrap_or_default()
}

pub fn canonical(w: &Word) -> Word {
    Word(canonical_letters(&w.0))
}

/// An equivalence class `[w]` of turn words.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WordClass {
    representative: Word,
    members: BTreeSet<Word>,
    l_count: usize,
    r_count: usize,
    trace: u64,
}

impl WordClass {
    pub fn representative(&self) -> &Word {
        &self.representative
    }

    pub fn members(&self) -> &BTreeSet<Word> {
        &self.members
    }

    /// `|[w]|`.
    pub fn class_size(&self) -> usize {
        self.members.len()
    }

    /// `|w|`.
    pub fn length(&self) -> usize {
        self.representative.len()
    }

    /// Turn counts of the representative. Members related by star have the
    /// two counts exchanged.
    pub fn l_count(&self) -> usize {
        self.l_count
    }

    pub fn r_count(&self) -> usize {
        self.r_count
    }

    pub fn trace(&self) -> u64 {
        self.trace
    }

    pub fn is_cusp(&self) -> bool {
        self.representative.is_cusp()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.contains(w)
    }
}

impl PartialOrd for WordClass {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WordClass {
    /// By length, then representative.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.length(), &self.representative).cmp(&(other.length(), &other.representative))
    }
}

impl fmt::Display for WordClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.representative)
    }
}

impl FromStr for WordClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        class_of(&s.parse()?)
    }
}

/// The full class of `w`: rotations of `w` and of `star(w)`.
pub fn class_of(w: &Word) -> Result<WordClass> {
    if w.is_empty() {
        return Err(Error::invalid("the empty word has no class"));
    }
    let s = star(w);
    let members: BTreeSet<Word> = (0..w.len())
        .flat_map(|k| [w.rotate(k), s.rotate(k)])
        .collect();
    let representative = members.iter().next().cloned().unwrap();
    let (l_count, r_count) = turn_counts(&representative);
    Ok(WordClass {
        trace: trace(&representative),
        representative,
        members,
        l_count,
        r_count,
    })
}

/// `lambda_[w] = |[w]| / (2|w|)`, the limiting Poisson mean of `Z_[w]`.
pub fn poisson_mean(c: &WordClass) -> Ratio<u64> {
    Ratio::new(c.class_size() as u64, 2 * c.length() as u64)
}

/// `2 arcosh(tr / 2)`.
pub fn hyperbolic_length(c: &WordClass) -> Result<f64> {
    if c.trace() <= 2 {
        return Err(Error::CuspWord(c.representative.to_string()));
    }
    Ok(2.0 * (c.trace() as f64 / 2.0).acosh())
}

/// `A_k`: all classes of trace exactly `k`, sorted.
///
/// A word containing both letters has trace at least `|w| + 1`, and appending
/// a letter never lowers the trace, so it suffices to search words of length
/// at most `k - 1`, abandoning any prefix whose trace already exceeds `k`.
pub fn words_with_trace(k: u64) -> Result<Vec<WordClass>> {
    if k < 3 {
        return Err(Error::invalid(format!("trace must be at least 3, got {k}")));
    }
    let max_len = (k - 1) as usize;
    let mut found: BTreeSet<Vec<Letter>> = BTreeSet::new();
    let mut prefix = Vec::with_capacity(max_len);
    extend_prefix(&mut prefix, Matrix2::IDENTITY, k, max_len, &mut found);
    found
        .into_iter()
        .map(|letters| class_of(&Word(letters)))
        .collect()
}

fn extend_prefix(
    prefix: &mut Vec<Letter>,
    m: Matrix2,
    k: u64,
    max_len: usize,
    found: &mut BTreeSet<Vec<Letter>>,
) {
    if m.trace() > k {
        return;
    }
    // Classes are keyed by canonical words, which start with L.
    if m.trace() == k && !prefix.is_empty() && !Word(prefix.clone()).is_cusp() {
        found.insert(canonical_letters(prefix));
    }
    if prefix.len() == max_len {
        return;
    }
    for letter in [Letter::L, Letter::R] {
        if prefix.is_empty() && letter == Letter::R {
            continue;
        }
        prefix.push(letter);
        extend_prefix(prefix, m.times(letter), k, max_len, found);
        prefix.pop();
    }
}

/// A finite set of word classes with multiplicities `m_w`, none of them a cusp
/// class `[L^n]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct WordMultiset {
    entries: Vec<(WordClass, usize)>,
}

impl WordMultiset {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Merges repeated classes; rejects cusp classes and zero multiplicities.
    pub fn new(entries: impl IntoIterator<Item = (WordClass, usize)>) -> Result<Self> {
        let mut merged: Vec<(WordClass, usize)> = Vec::new();
        for (class, m) in entries {
            if class.is_cusp() {
                return Err(Error::invalid(format!(
                    "{class} turns around a single vertex and cannot be counted"
                )));
            }
            if m == 0 {
                return Err(Error::invalid(format!("{class} has multiplicity 0")));
            }
            match merged.iter_mut().find(|(c, _)| *c == class) {
                Some((_, total)) => *total += m,
                None => merged.push((class, m)),
            }
        }
        merged.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(WordMultiset { entries: merged })
    }

    /// From word strings with multiplicities, e.g. `[("LR", 2), ("LLR", 1)]`.
    pub fn parse(items: &[(&str, usize)]) -> Result<Self> {
        Self::new(
            items
                .iter()
                .map(|&(s, m)| s.parse::<WordClass>().map(|c| (c, m)))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn single(class: WordClass) -> Result<Self> {
        Self::new([(class, 1)])
    }

    pub fn entries(&self) -> &[(WordClass, usize)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `M = sum m_w |w|`.
    pub fn total_size(&self) -> usize {
        self.entries.iter().map(|(c, m)| m * c.length()).sum()
    }
}
