//! Gluings of `2N` oriented triangles.
//!
//! Triangle sides are labelled `1..=6N`; triangle `t` (0-based) owns sides
//! `3t+1, 3t+2, 3t+3`, listed in the cyclic order induced by the orientation.
//! A gluing is a [`Pairing`] of the sides. Internally all labels are 0-based.
//!
//! Sampling is deterministic: the `i`-th sample of a run with seed `s` is
//! drawn from a ChaCha8 generator seeded with `s` and switched to stream `i`,
//! so parallel workers reproduce the same sequence regardless of scheduling.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::perm::{self, Permutation};
use crate::{Error, Result};

/// Rotation of the sides of the triangle containing side `h` (0-based).
#[inline]
pub(crate) fn sigma(h: usize) -> usize {
    if h % 3 == 2 {
        h - 2
    } else {
        h + 1
    }
}

#[inline]
pub(crate) fn sigma2(h: usize) -> usize {
    if h.is_multiple_of(3) {
        h + 2
    } else {
        h - 1
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid("N must be at least 1"));
    }
    Ok(())
}

/// `(1 2 3)(4 5 6)...(6N-2 6N-1 6N)`.
pub fn canonical_sigma(n: usize) -> Result<Permutation> {
    check_n(n)?;
    Ok(Permutation::from_images_unchecked(
        (0..6 * n).map(sigma).collect(),
    ))
}

/// A perfect matching of the `6N` triangle sides.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Pairing {
    mate: Vec<usize>,
}

impl Pairing {
    /// `mate[h]` is the side glued to side `h` (0-based).
    pub fn from_mates(mate: Vec<usize>) -> Result<Self> {
        let len = mate.len();
        if len == 0 || !len.is_multiple_of(6) {
            return Err(Error::invalid(format!(
                "number of sides must be a positive multiple of 6, got {len}"
            )));
        }
        for (h, &m) in mate.iter().enumerate() {
            if m >= len || m == h || mate[m] != h {
                return Err(Error::invalid(format!(
                    "side {} is not properly paired",
                    h + 1
                )));
            }
        }
        Ok(Pairing { mate })
    }

    /// From 1-based pairs covering `{1, ..., 6N}` exactly once.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let len = 2 * pairs.len();
        let mut mate = vec![usize::MAX; len];
        for &(a, b) in pairs {
            if a == 0 || b == 0 || a > len || b > len || a == b {
                return Err(Error::invalid(format!("bad pair ({a}, {b})")));
            }
            if mate[a - 1] != usize::MAX || mate[b - 1] != usize::MAX {
                return Err(Error::invalid(format!("pair ({a}, {b}) overlaps another")));
            }
            mate[a - 1] = b - 1;
            mate[b - 1] = a - 1;
        }
        Self::from_mates(mate)
    }

    pub(crate) fn from_mates_unchecked(mate: Vec<usize>) -> Self {
        Pairing { mate }
    }

    /// Number of triangle pairs `N`.
    pub fn n(&self) -> usize {
        self.mate.len() / 6
    }

    pub fn n_half_sides(&self) -> usize {
        self.mate.len()
    }

    pub fn mates(&self) -> &[usize] {
        &self.mate
    }

    /// The `3N` pairs, 1-based, each as `(smaller, larger)`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter(|&(h, &m)| h < m)
            .map(|(h, &m)| (h + 1, m + 1))
            .collect()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    /// Malformed JSON is a `Json` error; a well-formed list that is not a
    /// perfect matching is an invalid parameter.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: Vec<[usize; 2]> = serde_json::from_str(s)?;
        let pairs: Vec<(usize, usize)> = raw.into_iter().map(|[a, b]| (a, b)).collect();
        Pairing::from_pairs(&pairs)
    }
}

impl fmt::Debug for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pairing{:?}", self.pairs())
    }
}

impl Serialize for Pairing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[usize; 2]> = self.pairs().into_iter().map(|(a, b)| [a, b]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Pairing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<[usize; 2]> = Vec::deserialize(d)?;
        let pairs: Vec<(usize, usize)> = raw.into_iter().map(|[a, b]| (a, b)).collect();
        Pairing::from_pairs(&pairs).map_err(serde::de::Error::custom)
    }
}

/// Generator for sample `index` of a run seeded with `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform random pairing: shuffle the sides and pair them consecutively.
pub fn sample_pairing_with<R: rand::Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Pairing> {
    check_n(n)?;
    let mut order: Vec<usize> = (0..6 * n).collect();
    order.shuffle(rng);
    let mut mate = vec![0; 6 * n];
    for pair in order.chunks_exact(2) {
        mate[pair[0]] = pair[1];
        mate[pair[1]] = pair[0];
    }
    Ok(Pairing::from_mates_unchecked(mate))
}

/// Sample `index` of the stream with the given seed.
pub fn sample_pairing_at(n: usize, seed: u64, index: u64) -> Result<Pairing> {
    sample_pairing_with(n, &mut sample_rng(seed, index))
}

/// Deterministic uniform pairing for `(N, seed)`; equal to sample 0 of the
/// seed's stream.
pub fn sample_pairing(n: usize, seed: u64) -> Result<Pairing> {
    sample_pairing_at(n, seed, 0)
}

/// The gluing involution `tau`, whose 2-cycles are the pairs.
pub fn tau_of(p: &Pairing) -> Permutation {
    Permutation::from_images_unchecked(p.mate.clone())
}

/// Cycles of `sigma * tau` (apply `tau`, then `sigma`): the left-hand-turn
/// cycles when `sigma` rotates the triangles.
pub fn lht_cycles(sigma: &Permutation, tau: &Permutation) -> Result<Vec<Vec<usize>>> {
    Ok(sigma.compose(tau)?.cycles().to_vec())
}

/// Number of left-hand-turn cycles for the canonical `sigma`.
pub fn lht_count(p: &Pairing) -> usize {
    let sigma_images: Vec<usize> = (0..p.mate.len()).map(sigma).collect();
    perm::product_cycle_count(&sigma_images, &p.mate, &mut Vec::new())
}

/// Lengths of the left-hand-turn cycles, in the order of their smallest side.
pub fn lht_lengths(mate: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; mate.len()];
    let mut lengths = Vec::new();
    for start in 0..mate.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            len += 1;
            h = sigma(mate[h]);
        }
        lengths.push(len);
    }
    lengths
}

/// One connected piece of a glued surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    pub triangles: usize,
    pub lht: usize,
    pub genus: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSummary {
    /// Ordered by smallest triangle index in the component.
    pub components: Vec<ComponentSummary>,
    pub total_lht: usize,
    pub connected: bool,
}

impl SurfaceSummary {
    /// Genus of the surface, or `None` when it is disconnected.
    pub fn genus(&self) -> Option<usize> {
        if self.connected {
            Some(self.components[0].genus)
        } else {
            None
        }
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Component label (smallest triangle index) of each triangle.
pub(crate) fn triangle_components(mate: &[usize]) -> Vec<usize> {
    let triangles = mate.len() / 3;
    let mut parent: Vec<usize> = (0..triangles).collect();
    for (h, &m) in mate.iter().enumerate() {
        let (a, b) = (find(&mut parent, h / 3), find(&mut parent, m / 3));
        if a != b {
            let (lo, hi) = if a < b { (a, b) } else { (b, a) };
            parent[hi] = lo;
        }
    }
    (0..triangles).map(|t| find(&mut parent, t)).collect()
}

pub fn is_connected(p: &Pairing) -> bool {
    triangle_components(&p.mate).iter().all(|&c| c == 0)
}

/// Components, left-hand-turn counts and genera.
///
/// A component with `n` triangles and `l` left-hand-turn cycles has Euler
/// characteristic `l - 3n/2 + n`, hence genus `1 + n/4 - l/2`.
pub fn surface_summary(p: &Pairing) -> SurfaceSummary {
    let comp = triangle_components(&p.mate);
    let mut roots: Vec<usize> = comp.clone();
    roots.sort_unstable();
    roots.dedup();
    let index_of = |root: usize| roots.binary_search(&root).unwrap();

    let mut triangles = vec![0usize; roots.len()];
    for &c in &comp {
        triangles[index_of(c)] += 1;
    }
    let mut lht = vec![0usize; roots.len()];
    let mut seen = vec![false; p.mate.len()];
    for start in 0..p.mate.len() {
        if seen[start] {
            continue;
        }
        lht[index_of(comp[start / 3])] += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = sigma(p.mate[h]);
        }
    }
    let components: Vec<ComponentSummary> = triangles
        .iter()
        .zip(&lht)
        .map(|(&n, &l)| {
            let twice_euler_deficit = 4 + n - 2 * l;
            debug_assert_eq!(twice_euler_deficit % 4, 0);
            ComponentSummary {
                triangles: n,
                lht: l,
                genus: twice_euler_deficit / 4,
            }
        })
        .collect();
    SurfaceSummary {
        total_lht: lht.iter().sum(),
        connected: components.len() == 1,
        components,
    }
}

/// Cubic fat graph dual to a gluing: one vertex per triangle with its sides in
/// cyclic order, one edge per glued pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FatGraph {
    mate: Vec<usize>,
}

impl FatGraph {
    pub fn n(&self) -> usize {
        self.mate.len() / 6
    }

    pub fn n_half_edges(&self) -> usize {
        self.mate.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.mate.len() / 3
    }

    pub fn edge_count(&self) -> usize {
        self.mate.len() / 2
    }

    /// Half-edge triples (0-based) in cyclic order.
    pub fn vertices(&self) -> Vec<[usize; 3]> {
        (0..self.vertex_count())
            .map(|v| [3 * v, 3 * v + 1, 3 * v + 2])
            .collect()
    }

    /// The edge involution (0-based).
    pub fn edge_map(&self) -> &[usize] {
        &self.mate
    }

    #[inline]
    pub fn vertex_of(&self, h: usize) -> usize {
        h / 3
    }

    /// Undirected edge id: the smaller of its two half-edges.
    #[inline]
    pub fn edge_id(&self, h: usize) -> usize {
        h.min(self.mate[h])
    }

    #[inline]
    pub fn opposite(&self, h: usize) -> usize {
        self.mate[h]
    }

    /// Undirected edges as `(smaller, larger)` half-edge pairs, 0-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.mate
            .iter()
            .enumerate()
            .filter(|&(h, &m)| h < m)
            .map(|(h, &m)| (h, m))
            .collect()
    }

    pub fn pairing(&self) -> Pairing {
        Pairing::from_mates_unchecked(self.mate.clone())
    }
}

pub fn fat_graph(p: &Pairing) -> FatGraph {
    FatGraph {
        mate: p.mate.clone(),
    }
}

impl From<Pairing> for FatGraph {
    fn from(p: Pairing) -> Self {
        FatGraph { mate: p.mate }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairing(pairs: &[(usize, usize)]) -> Pairing {
        Pairing::from_pairs(pairs).unwrap()
    }

    #[test]
    fn canonical_sigma_small() {
        assert_eq!(canonical_sigma(1).unwrap().to_string(), "(1 2 3)(4 5 6)");
        let s2 = canonical_sigma(2).unwrap();
        assert_eq!(s2.len(), 12);
        assert_eq!(s2.cycle_type(), vec![3, 3, 3, 3]);
        assert!(matches!(canonical_sigma(0), Err(Error::InvalidParameter(_))));
    }

    #[test]
    fn tau_is_the_pairing() {
        let p = pairing(&[(1, 4), (2, 5), (3, 6)]);
        assert_eq!(tau_of(&p).to_string(), "(1 4)(2 5)(3 6)");
        let q = pairing(&[(1, 2), (3, 4), (5, 6)]);
        assert_eq!(tau_of(&q).to_string(), "(1 2)(3 4)(5 6)");
        assert_eq!(tau_of(&q).cycle_type(), vec![2, 2, 2]);
    }

    #[test]
    fn lht_cycles_small() {
        let sigma = canonical_sigma(1).unwrap();
        let theta = tau_of(&pairing(&[(1, 4), (2, 5), (3, 6)]));
        let c = lht_cycles(&sigma, &theta).unwrap();
        assert_eq!(c, vec![vec![0, 4, 2, 3, 1, 5]]);

        let dumbbell = tau_of(&pairing(&[(1, 2), (3, 4), (5, 6)]));
        let c = lht_cycles(&sigma, &dumbbell).unwrap();
        assert_eq!(c, vec![vec![0, 2, 4, 3], vec![1], vec![5]]);

        let reflected = tau_of(&pairing(&[(1, 6), (2, 5), (3, 4)]));
        assert_eq!(lht_cycles(&sigma, &reflected).unwrap().len(), 3);

        let small = Permutation::identity(4);
        assert!(lht_cycles(&sigma, &small).is_err());
    }

    #[test]
    fn summaries() {
        let torus = surface_summary(&pairing(&[(1, 4), (2, 5), (3, 6)]));
        assert!(torus.connected);
        assert_eq!(torus.total_lht, 1);
        assert_eq!(torus.genus(), Some(1));

        let sphere = surface_summary(&pairing(&[(1, 2), (3, 4), (5, 6)]));
        assert_eq!(sphere.total_lht, 3);
        assert_eq!(sphere.genus(), Some(0));

        // triangles 1+2 glued as one sphere, 3+4 as another
        let two = surface_summary(&pairing(&[
            (1, 6),
            (2, 5),
            (3, 4),
            (7, 12),
            (8, 11),
            (9, 10),
        ]));
        assert!(!two.connected);
        assert_eq!(two.genus(), None);
        let genera: Vec<usize> = two.components.iter().map(|c| c.genus).collect();
        assert_eq!(genera, vec![0, 0]);
        assert_eq!(two.components.iter().map(|c| c.triangles).sum::<usize>(), 4);
    }

    #[test]
    fn fat_graph_shape() {
        let theta = fat_graph(&pairing(&[(1, 4), (2, 5), (3, 6)]));
        assert_eq!(theta.vertex_count(), 2);
        assert_eq!(theta.edges(), vec![(0, 3), (1, 4), (2, 5)]);
        assert!(theta
            .edges()
            .iter()
            .all(|&(a, b)| theta.vertex_of(a) != theta.vertex_of(b)));

        let dumbbell = fat_graph(&pairing(&[(1, 2), (3, 4), (5, 6)]));
        let loops = dumbbell
            .edges()
            .iter()
            .filter(|&&(a, b)| dumbbell.vertex_of(a) == dumbbell.vertex_of(b))
            .count();
        assert_eq!(loops, 2);
        assert_eq!(dumbbell.edge_count(), 3);
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_pairing(5, 17).unwrap();
        let b = sample_pairing(5, 17).unwrap();
        assert_eq!(a, b);
        assert_ne!(sample_pairing_at(5, 17, 1).unwrap(), a);
        let n1 = sample_pairing(1, 3).unwrap();
        assert_eq!(n1.pairs().len(), 3);
    }

    #[test]
    fn json_format() {
        let p = pairing(&[(1, 4), (2, 5), (3, 6)]);
        assert_eq!(p.to_json().unwrap(), "[[1,4],[2,5],[3,6]]");
        assert_eq!(Pairing::from_json("[[4,1],[2,5],[6,3]]").unwrap(), p);
        assert!(Pairing::from_json("[[1,2],[2,3],[4,5]]").is_err());
        assert!(Pairing::from_json("[[1,2]]").is_err());
    }
}
