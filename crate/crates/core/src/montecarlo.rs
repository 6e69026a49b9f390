//! Seeded sampling of matrices with independent uniform `[-1, 1]` entries.
//!
//! Every sample is drawn from one ChaCha8 keystream selected by a
//! [`SeedSpec`]. Work is cut into fixed-size chunks and each chunk seeks to
//! its own offset in that keystream, so results are bit-identical for any
//! number of worker threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::closedform::{f_bc, integrate_density, DensityKind};
use crate::error::{invalid, Error, Result};
use crate::matrix::{RealMatrix2, SpectrumClass};

/// Samples per work chunk.
pub const CHUNK: usize = 1 << 14;

/// Seed of the published reference runs.
pub const PUBLISHED_SEED: u64 = 4972;

/// Selects a keystream: ChaCha8 keyed by `seed_from_u64(master_seed)` with
/// stream id `stream_index`. Distinct stream ids share the key but never
/// overlap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub stream_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, stream_index: u64) -> Self {
        Self { master_seed, stream_index }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.master_seed);
        rng.set_stream(self.stream_index);
        rng
    }

    /// Generator positioned `words` 32-bit words into the stream.
    pub fn rng_at(&self, words: u128) -> ChaCha8Rng {
        let mut rng = self.rng();
        rng.set_word_pos(words);
        rng
    }
}

fn uniform_pm1(rng: &mut ChaCha8Rng) -> f64 {
    2.0 * rng.gen::<f64>() - 1.0
}

// one f64 consumes two 32-bit words
const WORDS_PER_MATRIX: u128 = 8;
const WORDS_PER_PRODUCT: u128 = 4;

fn chunk_ranges(n: usize) -> impl IndexedParallelIterator<Item = (usize, usize)> {
    let chunks = n.div_ceil(CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(move |j| (j * CHUNK, ((j + 1) * CHUNK).min(n)))
}

fn matrix_chunk(seed: SeedSpec, start: usize, end: usize) -> impl Iterator<Item = RealMatrix2> {
    let mut rng = seed.rng_at(start as u128 * WORDS_PER_MATRIX);
    (start..end).map(move |_| {
        let a = uniform_pm1(&mut rng);
        let b = uniform_pm1(&mut rng);
        let c = uniform_pm1(&mut rng);
        let d = uniform_pm1(&mut rng);
        RealMatrix2 { a, b, c, d }
    })
}

/// The first `n` matrices of the stream, in order.
pub fn sample_matrices(n: usize, seed: SeedSpec) -> Vec<RealMatrix2> {
    chunk_ranges(n)
        .flat_map_iter(|(s, e)| matrix_chunk(seed, s, e))
        .collect()
}

/// Aggregate spectrum statistics of a sample.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalSummary {
    pub samples: u64,
    /// Matrices with real eigenvalues, repeated ones included.
    pub real_pairs: u64,
    pub repeated: u64,
    pub complex: u64,
    pub real_pair_frequency: f64,
    pub complex_frequency: f64,
    /// `bins + 1` edges on `[-2, 2]`.
    pub bin_edges: Vec<f64>,
    pub bin_counts: Vec<u64>,
    /// Mean number of eigenvalues per matrix in each bin.
    pub bin_mass: Vec<f64>,
    pub min_eigenvalue: f64,
    pub max_eigenvalue: f64,
    /// Eigenvalues that fell outside `[-2, 2]`.
    pub out_of_range: u64,
    /// Samples where `det < 0` and the eigenvalues did not straddle 0, or
    /// the reverse.
    pub sign_violations: u64,
}

impl EmpiricalSummary {
    pub fn total_mass(&self) -> f64 {
        self.bin_mass.iter().sum()
    }
}

#[derive(Debug, Clone)]
struct Tally {
    counts: Vec<u64>,
    real: u64,
    repeated: u64,
    complex: u64,
    min: f64,
    max: f64,
    out_of_range: u64,
    sign_violations: u64,
}

impl Tally {
    fn new(bins: usize) -> Self {
        Self {
            counts: vec![0; bins],
            real: 0,
            repeated: 0,
            complex: 0,
            min: f64::INFINITY,
            max: f64::NEG_INFINITY,
            out_of_range: 0,
            sign_violations: 0,
        }
    }

    fn record(&mut self, lambda: f64) {
        self.min = self.min.min(lambda);
        self.max = self.max.max(lambda);
        if !(-2.0..=2.0).contains(&lambda) {
            self.out_of_range += 1;
            return;
        }
        let bins = self.counts.len();
        // left-closed bins; lambda = 2 goes to the last bin
        let i = (((lambda + 2.0) / 4.0) * bins as f64) as usize;
        self.counts[i.min(bins - 1)] += 1;
    }

    fn merge(mut self, other: Tally) -> Tally {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self.real += other.real;
        self.repeated += other.repeated;
        self.complex += other.complex;
        self.min = self.min.min(other.min);
        self.max = self.max.max(other.max);
        self.out_of_range += other.out_of_range;
        self.sign_violations += other.sign_violations;
        self
    }
}

/// Samples `n` matrices and histograms their real eigenvalues on `bins`
/// equal bins of `[-2, 2]`.
pub fn run_experiment(n: usize, bins: usize, seed: SeedSpec) -> Result<EmpiricalSummary> {
    if n == 0 {
        return Err(invalid("need at least one sample"));
    }
    if bins < 2 {
        return Err(invalid("need at least two bins"));
    }
    let tallies: Vec<Tally> = chunk_ranges(n)
        .map(|(s, e)| {
            let mut t = Tally::new(bins);
            for m in matrix_chunk(seed, s, e) {
                let spectrum = m.classify_spectrum();
                let det = m.invariants().determinant;
                let straddles = matches!(spectrum, SpectrumClass::RealDistinct(lo, hi) if lo < 0.0 && 0.0 < hi);
                if (det < 0.0) != straddles {
                    t.sign_violations += 1;
                }
                match spectrum {
                    SpectrumClass::ComplexPair => t.complex += 1,
                    SpectrumClass::RealDistinct(lo, hi) => {
                        t.real += 1;
                        t.record(lo);
                        t.record(hi);
                    }
                    SpectrumClass::Repeated(l) => {
                        t.real += 1;
                        t.repeated += 1;
                        t.record(l);
                        t.record(l);
                    }
                }
            }
            t
        })
        .collect();
    // chunk order; all fields are exact integers or min/max
    let total = tallies.into_iter().fold(Tally::new(bins), Tally::merge);

    let nf = n as f64;
    let bin_edges = (0..=bins)
        .map(|i| if i == bins { 2.0 } else { -2.0 + 4.0 * i as f64 / bins as f64 })
        .collect();
    Ok(EmpiricalSummary {
        samples: n as u64,
        real_pairs: total.real,
        repeated: total.repeated,
        complex: total.complex,
        real_pair_frequency: total.real as f64 / nf,
        complex_frequency: total.complex as f64 / nf,
        bin_edges,
        bin_mass: total.counts.iter().map(|&c| c as f64 / nf).collect(),
        bin_counts: total.counts,
        min_eigenvalue: total.min,
        max_eigenvalue: total.max,
        out_of_range: total.out_of_range,
        sign_violations: total.sign_violations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityComparison {
    pub sup_deviation: f64,
    pub chi_square: f64,
    /// Bins that entered the chi-square sum.
    pub degrees: usize,
}

/// Integral of `kind` over each bin of the summary.
pub fn expected_bin_mass(edges: &[f64], kind: DensityKind) -> Result<Vec<f64>> {
    edges
        .windows(2)
        .map(|w| integrate_density(kind, w[0], w[1], 1e-13).map(|r| r.value))
        .collect()
}

/// Histogram against the binned integrals of `W` (per-matrix masses) or of
/// `UR` (masses conditioned on a real pair). Reports only; no verdict.
pub fn compare_to_density(summary: &EmpiricalSummary, kind: DensityKind) -> Result<DensityComparison> {
    let edges = &summary.bin_edges;
    let bins = summary.bin_mass.len();
    if edges.len() != bins + 1 || bins < 2 {
        return Err(Error::BinLayout(format!("{} edges for {} bins", edges.len(), bins)));
    }
    if edges[0] != -2.0 || edges[bins] != 2.0 || edges.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::BinLayout("edges must increase from -2 to 2".into()));
    }
    let (empirical, weight): (Vec<f64>, f64) = match kind {
        DensityKind::W => (summary.bin_mass.clone(), summary.samples as f64),
        DensityKind::UR => {
            if summary.real_pairs == 0 {
                return Err(invalid("no real pairs to condition on"));
            }
            let r = summary.real_pairs as f64 / summary.samples as f64;
            (summary.bin_mass.iter().map(|m| m / r).collect(), summary.real_pairs as f64)
        }
        other => return Err(invalid(format!("cannot compare sampled eigenvalues to {}", other.name()))),
    };
    let expected = expected_bin_mass(edges, kind)?;
    let mut sup_deviation = 0.0_f64;
    let mut chi_square = 0.0;
    let mut degrees = 0;
    for (&e, &p) in empirical.iter().zip(&expected) {
        sup_deviation = sup_deviation.max((e - p).abs());
        if p > 0.0 {
            chi_square += weight * (e - p) * (e - p) / p;
            degrees += 1;
        }
    }
    Ok(DensityComparison { sup_deviation, chi_square, degrees })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductSummary {
    pub samples: u64,
    /// Kolmogorov-Smirnov distance to the exact product distribution.
    pub ks_distance: f64,
    pub median: f64,
    /// Fraction of samples with `BC < 1`.
    pub below_one: f64,
}

/// Empirical distribution of `BC` for independent uniform `B, C`.
pub fn product_experiment(n: usize, seed: SeedSpec) -> Result<ProductSummary> {
    if n == 0 {
        return Err(invalid("need at least one sample"));
    }
    let mut products: Vec<f64> = chunk_ranges(n)
        .flat_map_iter(|(s, e)| {
            let mut rng = seed.rng_at(s as u128 * WORDS_PER_PRODUCT);
            (s..e).map(move |_| uniform_pm1(&mut rng) * uniform_pm1(&mut rng))
        })
        .collect();
    products.par_sort_unstable_by(f64::total_cmp);
    let nf = n as f64;
    let ks_distance = products
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            let f = f_bc(z);
            ((i + 1) as f64 / nf - f).max(f - i as f64 / nf)
        })
        .fold(0.0, f64::max);
    let median = if n % 2 == 1 {
        products[n / 2]
    } else {
        0.5 * (products[n / 2 - 1] + products[n / 2])
    };
    let below_one = products.iter().filter(|&&z| z < 1.0).count() as f64 / nf;
    Ok(ProductSummary { samples: n as u64, ks_distance, median, below_one })
}
