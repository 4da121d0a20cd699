//! Monte Carlo censuses under genus conditioning, Poisson comparisons, and the
//! closed-form systole laws.
//!
//! Conditioning is done by rejection: draw uniform pairings and keep those
//! whose genus passes the filter. A run whose acceptance rate falls below a
//! floor is refused, since the filter then selects a vanishing set.

use std::collections::BTreeMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::census;
use crate::gluing::{self, sample_pairing_at, surface_summary, FatGraph};
use crate::words::{self, WordClass};
use crate::{Error, Result};

pub const DEFAULT_ACCEPTANCE_FLOOR: f64 = 1e-4;
const BATCH: u64 = 4096;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FilterKind {
    All,
    /// Connected surfaces with genus in `lo..=hi`.
    Window { lo: usize, hi: usize },
    /// Connected surfaces of genus `(N+1)/2`, i.e. one left-hand-turn cycle.
    MaxGenus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenusFilter {
    #[serde(flatten)]
    pub kind: FilterKind,
    pub description: String,
    /// Set when a window was cut back to the attainable genus range.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub clipped: bool,
}

impl GenusFilter {
    pub fn all() -> Self {
        GenusFilter {
            kind: FilterKind::All,
            description: "all surfaces".into(),
            clipped: false,
        }
    }

    pub fn max_genus() -> Self {
        GenusFilter {
            kind: FilterKind::MaxGenus,
            description: "genus (N+1)/2".into(),
            clipped: false,
        }
    }

    pub fn window(lo: usize, hi: usize) -> Result<Self> {
        if lo > hi {
            return Err(Error::invalid(format!("empty genus window {lo}..={hi}")));
        }
        Ok(GenusFilter {
            kind: FilterKind::Window { lo, hi },
            description: format!("genus in {lo}..={hi}"),
            clipped: false,
        })
    }

    fn check_parity(&self, n: usize) -> Result<()> {
        match self.kind {
            FilterKind::Window { .. } if !n.is_multiple_of(2) => Err(Error::invalid(format!(
                "genus windows are taken over even N, got {n}"
            ))),
            FilterKind::MaxGenus if n.is_multiple_of(2) => Err(Error::invalid(format!(
                "maximal genus (N+1)/2 needs odd N, got {n}"
            ))),
            _ => Ok(()),
        }
    }

    fn accepts(&self, p: &gluing::Pairing) -> bool {
        match self.kind {
            FilterKind::All => true,
            FilterKind::MaxGenus => gluing::lht_count(p) == 1,
            FilterKind::Window { lo, hi } => surface_summary(p)
                .genus()
                .is_some_and(|g| (lo..=hi).contains(&g)),
        }
    }
}

/// Genus window of width `c1 sqrt(log 2N)` centred at
/// `1 + N/2 - log(2N)/2 + c2 sqrt(log 2N)`, clipped to `0..=N/2`.
pub fn genus_window(n: usize, c1: f64, c2: f64) -> Result<GenusFilter> {
    if n == 0 || !n.is_multiple_of(2) {
        return Err(Error::invalid(format!("genus windows need even N, got {n}")));
    }
    if !(c1.is_finite() && c1 > 0.0 && c2.is_finite()) {
        return Err(Error::invalid(format!("bad window constants c1={c1}, c2={c2}")));
    }
    let log2n = (2.0 * n as f64).ln();
    let scale = log2n.sqrt();
    let centre = 1.0 + n as f64 / 2.0 - log2n / 2.0 + c2 * scale;
    let half = c1 * scale / 2.0;
    let max_genus = (n / 2) as f64;
    let lo_raw = (centre - half).ceil();
    let hi_raw = (centre + half).floor();
    let lo = lo_raw.clamp(0.0, max_genus);
    let hi = hi_raw.clamp(0.0, max_genus);
    if lo > hi || hi_raw < 0.0 || lo_raw > max_genus {
        return Err(Error::invalid(format!(
            "window [{:.3}, {:.3}] contains no attainable genus",
            centre - half,
            centre + half
        )));
    }
    let mut f = GenusFilter::window(lo as usize, hi as usize)?;
    f.clipped = lo != lo_raw || hi != hi_raw;
    f.description = format!(
        "genus in {}..={} (centre {centre:.3}, c1={c1}, c2={c2}{})",
        lo,
        hi,
        if f.clipped { ", clipped" } else { "" }
    );
    Ok(f)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassHistogram {
    pub class: String,
    /// Limiting Poisson mean `|[w]| / (2|w|)`.
    pub lambda: String,
    /// Value of `Z` -> number of accepted samples.
    pub counts: BTreeMap<u64, u64>,
    pub frequencies: BTreeMap<u64, f64>,
    pub mean: f64,
    pub std_error: f64,
    /// `E[(Z)_2]`.
    pub second_factorial_moment: f64,
    pub tv_to_poisson: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusExperiment {
    #[serde(rename = "N")]
    pub n: usize,
    pub seed: u64,
    pub filter: GenusFilter,
    pub samples_requested: u64,
    pub samples_accepted: u64,
    pub acceptance_rate: f64,
    pub histograms: Vec<ClassHistogram>,
    /// `E[prod_w Z_[w]]` over the accepted samples.
    pub joint_product_moment: f64,
}

impl CensusExperiment {
    pub fn histogram(&self, class: &str) -> Option<&ClassHistogram> {
        self.histograms.iter().find(|h| h.class == class)
    }

    /// One row per class per observed value: `class, z, count, frequency`.
    pub fn csv_rows(&self) -> Vec<Vec<String>> {
        self.histograms
            .iter()
            .flat_map(|h| {
                h.counts.iter().map(move |(z, c)| {
                    vec![
                        h.class.clone(),
                        z.to_string(),
                        c.to_string(),
                        (*c as f64 / self.samples_accepted as f64).to_string(),
                    ]
                })
            })
            .collect()
    }
}

#[derive(Default)]
struct Tally {
    accepted: u64,
    joint: BTreeMap<Vec<u64>, u64>,
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    pub acceptance_floor: f64,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            acceptance_floor: DEFAULT_ACCEPTANCE_FLOOR,
        }
    }
}

pub fn run_census(
    n: usize,
    classes: &[WordClass],
    filter: &GenusFilter,
    samples: u64,
    seed: u64,
) -> Result<CensusExperiment> {
    run_census_with(n, classes, filter, samples, seed, CensusOptions::default())
}

/// Rejection-sampled census. Sample `i` uses stream `i` of `seed`, so the
/// result is independent of the thread count.
pub fn run_census_with(
    n: usize,
    classes: &[WordClass],
    filter: &GenusFilter,
    samples: u64,
    seed: u64,
    opts: CensusOptions,
) -> Result<CensusExperiment> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    if samples == 0 {
        return Err(Error::invalid("at least one sample is required"));
    }
    if let Some(c) = classes.iter().find(|c| c.is_cusp()) {
        return Err(Error::invalid(format!("{c} is a cusp class")));
    }
    filter.check_parity(n)?;

    let batches = samples.div_ceil(BATCH);
    let tally = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut t = Tally::default();
            for i in b * BATCH..((b + 1) * BATCH).min(samples) {
                let p = sample_pairing_at(n, seed, i).expect("N checked");
                if !filter.accepts(&p) {
                    continue;
                }
                t.accepted += 1;
                let g = FatGraph::from(p);
                let z = census::count_words(&g, classes).expect("classes checked");
                *t.joint.entry(z).or_insert(0) += 1;
            }
            t
        })
        .reduce(Tally::default, |mut a, b| {
            a.accepted += b.accepted;
            for (k, c) in b.joint {
                *a.joint.entry(k).or_insert(0) += c;
            }
            a
        });

    let rate = tally.accepted as f64 / samples as f64;
    if tally.accepted == 0 || rate < opts.acceptance_floor {
        return Err(Error::AcceptanceTooLow {
            rate,
            floor: opts.acceptance_floor,
            accepted: tally.accepted,
            requested: samples,
        });
    }

    let total = tally.accepted as f64;
    let histograms = classes
        .iter()
        .enumerate()
        .map(|(i, class)| {
            let mut counts = BTreeMap::new();
            for (z, c) in &tally.joint {
                *counts.entry(z[i]).or_insert(0u64) += c;
            }
            class_histogram(class, counts, total)
        })
        .collect();
    let joint_product_moment = tally
        .joint
        .iter()
        .map(|(z, &c)| z.iter().map(|&v| v as f64).product::<f64>() * c as f64)
        .sum::<f64>()
        / total;

    Ok(CensusExperiment {
        n,
        seed,
        filter: filter.clone(),
        samples_requested: samples,
        samples_accepted: tally.accepted,
        acceptance_rate: rate,
        histograms,
        joint_product_moment,
    })
}

fn class_histogram(class: &WordClass, counts: BTreeMap<u64, u64>, total: f64) -> ClassHistogram {
    let lambda = words::poisson_mean(class);
    let frequencies: BTreeMap<u64, f64> =
        counts.iter().map(|(&z, &c)| (z, c as f64 / total)).collect();
    let mean: f64 = frequencies.iter().map(|(&z, &f)| z as f64 * f).sum();
    let second: f64 = frequencies.iter().map(|(&z, &f)| (z * z) as f64 * f).sum();
    let var = (second - mean * mean).max(0.0) * total / (total - 1.0).max(1.0);
    let fact2: f64 = frequencies
        .iter()
        .map(|(&z, &f)| (z as f64) * (z as f64 - 1.0) * f)
        .sum();
    ClassHistogram {
        class: class.representative().to_string(),
        lambda: lambda.to_string(),
        tv_to_poisson: tv_to_poisson(&frequencies, ratio_f64(lambda)),
        counts,
        frequencies,
        mean,
        std_error: (var / total).sqrt(),
        second_factorial_moment: fact2,
    }
}

fn ratio_f64(r: Ratio<u64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// `e^{-lambda} lambda^k / k!`.
pub fn poisson_pmf(lambda: Ratio<u64>, k: u64) -> f64 {
    poisson_pmf_f64(ratio_f64(lambda), k)
}

pub fn poisson_pmf_f64(lambda: f64, k: u64) -> f64 {
    let mut p = (-lambda).exp();
    for i in 1..=k {
        p *= lambda / i as f64;
    }
    p
}

/// `1/2 sum |p_i - q_i|` over the union of the two supports (missing entries
/// are zero).
pub fn tv_distance(p: &[f64], q: &[f64]) -> f64 {
    let len = p.len().max(q.len());
    let at = |v: &[f64], i: usize| v.get(i).copied().unwrap_or(0.0);
    0.5 * (0..len).map(|i| (at(p, i) - at(q, i)).abs()).sum::<f64>()
}

/// Total variation between a finite distribution on `{0, 1, ...}` and
/// Poisson(`lambda`), including the Poisson mass beyond the support.
pub fn tv_to_poisson(freq: &BTreeMap<u64, f64>, lambda: f64) -> f64 {
    let top = freq.keys().next_back().copied().unwrap_or(0);
    let mut sum = 0.0;
    let mut covered = 0.0;
    for k in 0..=top {
        let q = poisson_pmf_f64(lambda, k);
        covered += q;
        sum += (freq.get(&k).copied().unwrap_or(0.0) - q).abs();
    }
    0.5 * (sum + (1.0 - covered).max(0.0))
}

/// `sum_{[w] in A_k} |[w]| / (2|w|)` exactly.
pub fn level_mean(k: u64) -> Result<Ratio<u64>> {
    Ok(words::words_with_trace(k)?
        .iter()
        .map(words::poisson_mean)
        .fold(Ratio::from_integer(0), |a, b| a + b))
}

/// Limiting probability that the minimal essential trace equals `k`:
/// `exp(-sum_{i<k} Lambda_i) (1 - exp(-Lambda_k))` with `Lambda_i` the total
/// Poisson mean of `A_i`, `i >= 3`.
pub fn corollary1_rhs(k: u64) -> Result<f64> {
    if k < 3 {
        return Err(Error::invalid(format!("trace must be at least 3, got {k}")));
    }
    let mut before = Ratio::from_integer(0u64);
    for i in 3..k {
        before += level_mean(i)?;
    }
    let at = level_mean(k)?;
    Ok((-ratio_f64(before)).exp() * (1.0 - (-ratio_f64(at)).exp()))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystoleRow {
    pub trace: u64,
    /// `2 arcosh(k/2)`.
    pub length: f64,
    pub probability: f64,
    /// Number of classes in `A_k`.
    pub classes: usize,
    pub lambda_sum: String,
}

/// Systole law for `k = 3..=kmax`.
pub fn systole_table(kmax: u64) -> Result<Vec<SystoleRow>> {
    if kmax < 3 {
        return Err(Error::invalid(format!("kmax must be at least 3, got {kmax}")));
    }
    (3..=kmax)
        .map(|k| {
            Ok(SystoleRow {
                trace: k,
                length: 2.0 * (k as f64 / 2.0).acosh(),
                probability: corollary1_rhs(k)?,
                classes: words::words_with_trace(k)?.len(),
                lambda_sum: level_mean(k)?.to_string(),
            })
        })
        .collect()
}

fn s_partial(k: u64) -> f64 {
    (1..=k)
        .map(|j| (2f64.powi(j as i32 - 1) - 1.0) / j as f64)
        .sum()
}

/// Upper bound on the limiting `P(sys >= x)` for a Riemannian triangle with
/// midpoint diameter `m2`:
/// `1 - sum_{k=2}^{K} (e^{-S_{k-1}} - e^{-S_k})` with `K = floor(x/m2)` and
/// `S_k = sum_{j=1}^{k} (2^{j-1} - 1) / j`. The sum telescopes (`S_1 = 0`), so
/// the bound is evaluated as `e^{-S_K}`, which avoids cancellation for large
/// `K`.
pub fn corollary2_bound(x: f64, m2: f64) -> Result<f64> {
    if !(m2.is_finite() && m2 > 0.0) {
        return Err(Error::invalid(format!("m2 must be positive, got {m2}")));
    }
    if !(x.is_finite() && x >= 0.0) {
        return Err(Error::invalid(format!("x must be non-negative, got {x}")));
    }
    let top = (x / m2).floor() as u64;
    Ok(if top < 2 { 1.0 } else { (-s_partial(top)).exp() })
}

/// `m2` of the flat equilateral triangle: distance between two side
/// midpoints, half the side.
pub fn equilateral_m2(side: f64) -> Result<f64> {
    if !(side.is_finite() && side > 0.0) {
        return Err(Error::invalid(format!("side must be positive, got {side}")));
    }
    Ok(side / 2.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pmf_and_tv() {
        let half = Ratio::new(1, 2);
        assert!((poisson_pmf(half, 0) - 0.606_530_659_712_633_4).abs() < 1e-12);
        let p = [0.2, 0.5, 0.3];
        assert_eq!(tv_distance(&p, &p), 0.0);
        let point = BTreeMap::from([(0u64, 1.0)]);
        assert!((tv_to_poisson(&point, 0.5) - (1.0 - (-0.5f64).exp())).abs() < 1e-12);
    }

    #[test]
    fn corollary1_values() {
        assert!((corollary1_rhs(3).unwrap() - (1.0 - (-0.5f64).exp())).abs() < 1e-12);
        let four = (-0.5f64).exp() * (1.0 - (-1.0f64).exp());
        assert!((corollary1_rhs(4).unwrap() - four).abs() < 1e-12);
        assert!(corollary1_rhs(2).is_err());
    }

    #[test]
    fn corollary2_values() {
        assert_eq!(corollary2_bound(0.7, 0.5).unwrap(), 1.0);
        assert!((corollary2_bound(1.0, 0.5).unwrap() - (-0.5f64).exp()).abs() < 1e-12);
        assert!(corollary2_bound(1.0, 0.0).is_err());
        assert!(corollary2_bound(-1.0, 0.5).is_err());
    }

    #[test]
    fn corollary2_matches_literal_sum() {
        for top in 0..12u64 {
            let literal = 1.0
                - (2..=top)
                    .map(|k| (-s_partial(k - 1)).exp() - (-s_partial(k)).exp())
                    .sum::<f64>();
            let b = corollary2_bound(top as f64 + 0.5, 1.0).unwrap();
            assert!((b - literal).abs() < 1e-12, "K={top}: {b} vs {literal}");
            assert!(b > 0.0);
        }
    }

    #[test]
    fn m2_values() {
        assert_eq!(equilateral_m2(1.0).unwrap(), 0.5);
        assert_eq!(equilateral_m2(2.0).unwrap(), 1.0);
        assert!(equilateral_m2(0.0).is_err());
    }

    #[test]
    fn window_centre() {
        let f = genus_window(64, 2.0, 0.0).unwrap();
        let centre = 33.0 - (128f64).ln() / 2.0;
        assert!((centre - 30.574).abs() < 1e-3);
        match f.kind {
            FilterKind::Window { lo, hi } => {
                assert!((lo as f64) <= centre && centre <= hi as f64);
                assert_eq!((lo, hi), (29, 32));
            }
            _ => panic!("expected a window"),
        }
        let wide = genus_window(64, 1000.0, 0.0).unwrap();
        assert!(wide.clipped);
        assert_eq!(wide.kind, FilterKind::Window { lo: 0, hi: 32 });
        assert!(genus_window(63, 2.0, 0.0).is_err());
        assert!(genus_window(64, 2.0, 100.0).is_err());
    }

    #[test]
    fn parity_preconditions() {
        let lr: WordClass = "LR".parse().unwrap();
        let w = GenusFilter::window(1, 2).unwrap();
        assert!(run_census(5, std::slice::from_ref(&lr), &w, 10, 1).is_err());
        assert!(run_census(4, std::slice::from_ref(&lr), &GenusFilter::max_genus(), 10, 1).is_err());
        let cusp: WordClass = "LL".parse().unwrap();
        assert!(run_census(4, &[cusp], &GenusFilter::all(), 10, 1).is_err());
    }

    #[test]
    fn max_genus_at_n1_is_the_torus() {
        let lr: WordClass = "LR".parse().unwrap();
        let e = run_census(1, &[lr], &GenusFilter::max_genus(), 3000, 9).unwrap();
        let h = e.histogram("LR").unwrap();
        assert_eq!(h.counts.keys().copied().collect::<Vec<_>>(), vec![3]);
        assert_eq!(h.counts[&3], e.samples_accepted);
    }

    #[test]
    fn tight_filter_is_refused() {
        let lr: WordClass = "LR".parse().unwrap();
        let err = run_census_with(
            9,
            &[lr],
            &GenusFilter::max_genus(),
            200,
            3,
            CensusOptions { acceptance_floor: 0.5 },
        )
        .unwrap_err();
        assert!(matches!(err, Error::AcceptanceTooLow { .. }));
    }
}
