//! Symmetric-group characters and the maximal-genus gluing counts.
//!
//! Characters are evaluated with the Murnaghan-Nakayama rule on beta-sets
//! (first-column hook lengths): removing a rim hook of length `r` moves one
//! bead from `b` to `b - r`, with sign `(-1)^(beads strictly between)`. The
//! cycle type is consumed largest part first and every `(shape, remaining
//! cycle type)` pair is memoised.
//!
//! For odd `N`, the surfaces of maximal genus `(N+1)/2` are the gluings whose
//! left-hand-turn permutation is one full cycle. Their number, with a fixed
//! set of words removed, is a sum over hook-shaped characters only:
//!
//! ```text
//! n(N,W,m) = |K_2| |K(D)| / D! * s(N,W,m),   D = 6N - 2M,
//! s(N,W,m) = sum_{p=0}^{D-1} (-1)^p chi^p(K_2) chi^p(K_3) / f^p
//! ```
//!
//! where `chi^p` is the character of the hook `(D-p, 1^p)` and
//! `f^p = binom(D-1, p)` its dimension.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::words::WordMultiset;
use crate::{Error, Result};

/// Integer partition with weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::invalid("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::invalid(format!(
                "partition parts must be weakly decreasing: {parts:?}"
            )));
        }
        Ok(Partition { parts })
    }

    /// Sorts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    /// The hook `(n - p, 1^p)`.
    pub fn hook(n: usize, p: usize) -> Result<Self> {
        if p >= n {
            return Err(Error::invalid(format!("hook leg {p} too long for size {n}")));
        }
        let mut parts = vec![n - p];
        parts.extend(std::iter::repeat_n(1, p));
        Ok(Partition { parts })
    }

    /// `part^count`.
    pub fn rectangle(part: usize, count: usize) -> Self {
        Self::from_unsorted(vec![part; count])
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn n(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `(part, multiplicity)` runs, largest part first.
    pub fn runs(&self) -> Vec<(usize, usize)> {
        let mut runs: Vec<(usize, usize)> = Vec::new();
        for &p in &self.parts {
            match runs.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => runs.push((p, 1)),
            }
        }
        runs
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        Partition {
            parts: (0..width)
                .map(|j| self.parts.iter().take_while(|&&p| p > j).count())
                .collect(),
        }
    }

    /// All partitions of `n`, in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let runs: Vec<String> = self
            .runs()
            .into_iter()
            .map(|(p, m)| if m == 1 { p.to_string() } else { format!("{p}^{m}") })
            .collect();
        write!(f, "({})", runs.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition{self}")
    }
}

/// `h(b)` for every box, row by row.
pub fn hook_lengths(lambda: &Partition) -> Vec<Vec<usize>> {
    let conj = lambda.conjugate();
    lambda
        .parts
        .iter()
        .enumerate()
        .map(|(i, &row)| {
            (0..row)
                .map(|j| (row - j - 1) + (conj.parts[j] - i - 1) + 1)
                .collect()
        })
        .collect()
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `f^lambda = n! / prod h(b)`.
pub fn dimension(lambda: &Partition) -> BigUint {
    let hooks: BigUint = hook_lengths(lambda)
        .into_iter()
        .flatten()
        .map(BigUint::from)
        .product();
    factorial(lambda.n()) / hooks
}

/// `|K(mu)| = n! / z_mu` with `z_mu = prod i^(a_i) a_i!`.
pub fn class_size(mu: &Partition) -> BigUint {
    let z: BigUint = mu
        .runs()
        .into_iter()
        .map(|(part, mult)| BigUint::from(part).pow(mult as u32) * factorial(mult))
        .product();
    factorial(mu.n()) / z
}

/// `t!!` in the convention `(t-1)(t-3)...1` for even `t`: the number of
/// perfect matchings of `t` points. Not the usual double factorial.
pub fn paper_double_factorial(t: usize) -> Result<BigUint> {
    if !t.is_multiple_of(2) {
        return Err(Error::invalid(format!("defined for even arguments, got {t}")));
    }
    Ok((1..t).step_by(2).map(BigUint::from).product())
}

type MemoKey = (Vec<(usize, usize)>, Vec<(usize, usize)>);

/// Murnaghan-Nakayama evaluator with its own memo table. Use one engine per
/// worker thread.
#[derive(Default)]
pub struct CharacterEngine {
    memo: HashMap<MemoKey, BigInt>,
}

impl CharacterEngine {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    /// `chi^lambda` on the class of cycle type `mu`.
    pub fn character(&mut self, lambda: &Partition, mu: &Partition) -> Result<BigInt> {
        if lambda.n() != mu.n() {
            return Err(Error::invalid(format!(
                "size mismatch: {lambda} has {} boxes, {mu} has {}",
                lambda.n(),
                mu.n()
            )));
        }
        Ok(self.eval(&lambda.parts, &mu.parts))
    }

    fn eval(&mut self, lambda: &[usize], mu: &[usize]) -> BigInt {
        if mu.is_empty() {
            return BigInt::one();
        }
        let key = (
            Partition { parts: lambda.to_vec() }.runs(),
            Partition { parts: mu.to_vec() }.runs(),
        );
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let r = mu[0];
        let rest = &mu[1..];
        let mut total = BigInt::zero();
        for (smaller, sign) in remove_rim_hooks(lambda, r) {
            let v = self.eval(&smaller, rest);
            if sign > 0 {
                total += v;
            } else {
                total -= v;
            }
        }
        self.memo.insert(key, total.clone());
        total
    }
}

/// Every shape left by removing a rim hook of length `r`, with its sign.
fn remove_rim_hooks(lambda: &[usize], r: usize) -> Vec<(Vec<usize>, i32)> {
    let len = lambda.len();
    let beads: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut out = Vec::new();
    for (idx, &b) in beads.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beads.contains(&target) {
            continue;
        }
        let between = beads.iter().filter(|&&x| x > target && x < b).count();
        let mut moved = beads.clone();
        moved[idx] = target;
        moved.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<usize> = moved
            .iter()
            .enumerate()
            .map(|(i, &x)| x - (len - 1 - i))
            .filter(|&p| p > 0)
            .collect();
        out.push((parts, if between % 2 == 0 { 1 } else { -1 }));
    }
    out
}

/// One-off character evaluation with a fresh memo.
pub fn mn_character(lambda: &Partition, mu: &Partition) -> Result<BigInt> {
    CharacterEngine::new().character(lambda, mu)
}

/// Cycle types of the restricted classes `K_3(W,m)` and `K_2(W,m)` on
/// `6N - 2M` points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedClasses {
    /// `3^(2N-M)` followed by `l_w` and `r_w`, each `m_w` times.
    pub k3_shape: Partition,
    /// `2^(3N-M)`.
    pub k2_shape: Partition,
    pub ground_size: usize,
    /// `M = sum m_w |w|`.
    pub m: usize,
    /// Cycle type of the excised words alone, a partition of `M`.
    pub word_shape: Partition,
}

pub fn restricted_classes(n: usize, ws: &WordMultiset) -> Result<RestrictedClasses> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    let m = ws.total_size();
    if m > 2 * n {
        return Err(Error::invalid(format!(
            "words of total length {m} do not fit in {} triangles",
            2 * n
        )));
    }
    let mut word_parts = Vec::new();
    for (class, mult) in ws.entries() {
        for _ in 0..*mult {
            word_parts.push(class.l_count());
            word_parts.push(class.r_count());
        }
    }
    let word_shape = Partition::from_unsorted(word_parts);
    let mut k3 = vec![3; 2 * n - m];
    k3.extend_from_slice(word_shape.parts());
    Ok(RestrictedClasses {
        k3_shape: Partition::from_unsorted(k3),
        k2_shape: Partition::rectangle(2, 3 * n - m),
        ground_size: 6 * n - 2 * m,
        m,
        word_shape,
    })
}

fn sign(negative: bool) -> BigInt {
    if negative {
        -BigInt::one()
    } else {
        BigInt::one()
    }
}

/// `chi^p(K_2) = (-1)^ceil(p/2) binom(3N-M-1, floor(p/2))`.
pub fn hook_char_k2(p: usize, n: usize, m: usize) -> Result<BigInt> {
    if 3 * n <= m || p > 6 * n - 2 * m - 1 {
        return Err(Error::invalid(format!(
            "hook index {p} out of range for N={n}, M={m}"
        )));
    }
    Ok(sign(p.div_ceil(2) % 2 == 1) * BigInt::from(binomial(3 * n - m - 1, p / 2)))
}

/// `chi^p(K_3)` for every `p` in `0..6N-2M`.
///
/// Each hook `(D-p, 1^p)` loses 3-hooks only from the end of its arm or its
/// leg, so after the free 3-cycles are stripped the remaining shape is a hook
/// `(B-r, 1^r)` reached in `binom(free, (p-r)/3)` ways, all with sign `+1`.
/// With words present (`M >= 1`) the base is the word class `K_M`; with none,
/// one 3-cycle is kept back as the base so the last removal is not the whole
/// hook.
pub fn hook_chars_k3(n: usize, ws: &WordMultiset) -> Result<Vec<BigInt>> {
    let shapes = restricted_classes(n, ws)?;
    let d = shapes.ground_size;
    if d == 0 {
        return Ok(Vec::new());
    }
    let (base, free) = if shapes.m == 0 {
        (Partition::rectangle(3, 1), 2 * n - 1)
    } else {
        (shapes.word_shape.clone(), 2 * n - shapes.m)
    };
    let b = base.n();
    let mut engine = CharacterEngine::new();
    let base_chars: Vec<BigInt> = (0..b)
        .map(|r| engine.character(&Partition::hook(b, r)?, &base))
        .collect::<Result<_>>()?;
    Ok((0..d)
        .map(|p| {
            (0..b.min(p + 1))
                .filter(|r| (p - r) % 3 == 0)
                .map(|r| &base_chars[r] * BigInt::from(binomial(free, (p - r) / 3)))
                .sum()
        })
        .collect())
}

pub fn hook_char_k3(p: usize, n: usize, ws: &WordMultiset) -> Result<BigInt> {
    let chars = hook_chars_k3(n, ws)?;
    chars.get(p).cloned().ok_or_else(|| {
        Error::invalid(format!("hook index {p} out of range (ground size {})", chars.len()))
    })
}

/// `s(N, W, m)` exactly.
pub fn s_value(n: usize, ws: &WordMultiset) -> Result<BigRational> {
    let shapes = restricted_classes(n, ws)?;
    let d = shapes.ground_size;
    if d == 0 {
        return Err(Error::invalid("the words fill the whole surface"));
    }
    let k3 = hook_chars_k3(n, ws)?;
    // 1/f^p = p! (D-1-p)! / (D-1)!, so sum over a common denominator.
    let mut weight = BigInt::from(factorial(d - 1)); // p! (D-1-p)! at p = 0
    let mut numerator = BigInt::zero();
    for (p, chi3) in k3.iter().enumerate() {
        let chi2 = hook_char_k2(p, n, shapes.m)?;
        let term = &weight * chi2 * chi3;
        if p % 2 == 0 {
            numerator += term;
        } else {
            numerator -= term;
        }
        if p + 1 < d {
            weight = weight * BigInt::from(p + 1) / BigInt::from(d - 1 - p);
        }
    }
    Ok(BigRational::new(numerator, BigInt::from(factorial(d - 1))))
}

/// Exact and asymptotic maximal-genus counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxGenusCount {
    pub n: usize,
    pub m: usize,
    /// `n(N, W, m)`.
    pub exact: BigUint,
    pub s_value: BigRational,
    /// `(6N-2M)!! / (3N-M)` with `t!! = (t-1)(t-3)...1`.
    pub asymptotic: BigRational,
    /// `|K_2(W, m)|`.
    pub k2_size: BigUint,
}

impl MaxGenusCount {
    pub fn probability(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.exact.clone()),
            BigInt::from(self.k2_size.clone()),
        )
    }
}

/// `n(N,W,m) = |K_2| |K(D)| / D! * s = |K_2| / D * s`, checked to be a
/// non-negative integer. For even `N` the count is zero: `sigma * tau` is then
/// even and cannot be a cycle of even length `D`.
pub fn max_genus_count(n: usize, ws: &WordMultiset) -> Result<MaxGenusCount> {
    let shapes = restricted_classes(n, ws)?;
    let d = shapes.ground_size;
    let s = s_value(n, ws)?;
    let k2_size = class_size(&shapes.k2_shape);
    let full_cycle = class_size(&Partition::rectangle(d, 1));
    let prefactor = BigRational::new(
        BigInt::from(&k2_size * full_cycle),
        BigInt::from(factorial(d)),
    );
    let exact = &prefactor * &s;
    if !exact.is_integer() || exact.is_negative() {
        return Err(Error::Consistency(format!(
            "maximal genus count for N={n}, M={} is {exact}, not a non-negative integer",
            shapes.m
        )));
    }
    let asymptotic = BigRational::new(
        BigInt::from(paper_double_factorial(d)?),
        BigInt::from(3 * n - shapes.m),
    );
    Ok(MaxGenusCount {
        n,
        m: shapes.m,
        exact: exact.to_integer().to_biguint().expect("checked non-negative"),
        s_value: s,
        asymptotic,
        k2_size,
    })
}

/// `P(g = (N+1)/2 | words present) = n(N,W,m) / |K_2(W,m)|`.
pub fn max_genus_probability(n: usize, ws: &WordMultiset) -> Result<BigRational> {
    Ok(max_genus_count(n, ws)?.probability())
}

/// Floating-point view of a big rational, `NaN` if out of range.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// JSON summary used by reports and the command line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MaxGenusSummary {
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    pub s_value: String,
    pub s_value_approx: f64,
    pub exact: String,
    /// Decimal when finite as `f64`, otherwise mantissa-exponent text.
    pub asymptotic: String,
    pub probability: String,
    pub probability_approx: f64,
}

fn scientific(r: &BigRational) -> String {
    if let Some(x) = r.to_f64().filter(|x| x.is_finite()) {
        return format!("{x}");
    }
    let int = r.to_integer().to_string();
    let digits = int.trim_start_matches('-');
    format!("{}.{}e{}", &digits[..1], &digits[1..7.min(digits.len())], digits.len() - 1)
}

impl From<&MaxGenusCount> for MaxGenusSummary {
    fn from(c: &MaxGenusCount) -> Self {
        let prob = c.probability();
        MaxGenusSummary {
            n: c.n,
            m: c.m,
            s_value: c.s_value.to_string(),
            s_value_approx: ratio_to_f64(&c.s_value),
            exact: c.exact.to_string(),
            asymptotic: scientific(&c.asymptotic),
            probability: prob.to_string(),
            probability_approx: ratio_to_f64(&prob),
        }
    }
}
