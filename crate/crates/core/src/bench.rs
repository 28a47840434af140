//! Random valid knowledge states and reduction timing.

use std::time::Instant;

use rand::seq::index::sample;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::clifford::{Gate, Theory, Transcript};
use crate::error::{Error, Result};
use crate::knowledge::KnowledgeState;
use crate::pauli::{PauliLetter, Proposition};
use crate::reduction::reduce_set;

/// Closures are timed only up to this many generators.
pub const BENCH_CLOSURE_LIMIT: usize = 16;

/// A random transcript of `len` S, H and CZ gates on `n` systems.
pub fn random_transcript<R: Rng + ?Sized>(n: usize, len: usize, rng: &mut R) -> Transcript {
    let mut t = Transcript::new();
    for _ in 0..len {
        let a = rng.gen_range(0..n);
        let gate = match rng.gen_range(0..3) {
            0 => Gate::S(a),
            1 => Gate::H(a),
            _ if n > 1 => {
                let mut b = rng.gen_range(0..n - 1);
                if b >= a {
                    b += 1;
                }
                Gate::Cz(a, b)
            }
            _ => Gate::H(a),
        };
        t.push(gate);
    }
    t
}

/// Layers of `H` on every system, each preceded by `S` with probability
/// 1/2, followed by CZs on a random perfect matching; about `log2(n) + 4` layers spread a
/// single letter over all systems.
pub fn scrambling_transcript<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Transcript {
    let layers = usize::BITS - n.leading_zeros() + 4;
    let mut t = Transcript::new();
    let mut order: Vec<usize> = (0..n).collect();
    for _ in 0..layers {
        for a in 0..n {
            if rng.gen() {
                t.push(Gate::S(a));
            }
            t.push(Gate::H(a));
        }
        order.shuffle(rng);
        for pair in order.chunks_exact(2) {
            t.push(Gate::Cz(pair[0], pair[1]));
        }
    }
    t
}

/// `k` pairwise compatible, independent propositions on `n` systems:
/// single `X`s with random signs on distinct systems, moved through a
/// scrambling transcript.
pub fn random_generators<R: Rng + ?Sized>(n: usize, k: usize, theory: Theory, rng: &mut R) -> Result<Vec<Proposition>> {
    if k > n {
        return Err(Error::TooManyGenerators { generators: k, n });
    }
    let t = scrambling_transcript(n, rng);
    let mut props: Vec<Proposition> = sample(rng, n, k)
        .into_iter()
        .map(|i| Proposition::single(n, i, PauliLetter::X, rng.gen()))
        .collect();
    for p in &mut props {
        for &g in t.gates() {
            p.apply_unchecked(g, theory);
        }
    }
    Ok(props)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub n: usize,
    pub generators: usize,
    pub repetitions: usize,
    pub reduce_median_ms: f64,
    /// Gates in the median run's transcript.
    pub transcript_gates: usize,
    /// Single-proposition gate applications per second in the median run.
    pub gate_applications_per_sec: f64,
    pub closure_size: Option<u64>,
    pub closure_median_ms: Option<f64>,
}

fn median(mut v: Vec<(f64, usize)>) -> (f64, usize) {
    v.sort_by(|a, b| a.0.total_cmp(&b.0));
    v[v.len() / 2]
}

/// Times `reduce_set` (and, for small `k`, the closure) on `reps` random
/// states.
pub fn run<R: Rng + ?Sized>(n: usize, k: usize, reps: usize, theory: Theory, rng: &mut R) -> Result<BenchReport> {
    if k > n {
        return Err(Error::TooManyGenerators { generators: k, n });
    }
    let reps = reps.max(1);
    let mut reduce_runs = Vec::with_capacity(reps);
    let mut closure_runs = Vec::new();
    let mut closure_size = None;
    for _ in 0..reps {
        let gens = random_generators(n, k, theory, rng)?;
        let start = Instant::now();
        let r = reduce_set(&gens, theory)?;
        reduce_runs.push((start.elapsed().as_secs_f64() * 1e3, r.transcript.len()));
        if k <= BENCH_CLOSURE_LIMIT {
            let state = KnowledgeState::from_generators(n, theory, gens)?;
            let start = Instant::now();
            let closure = state.closure()?;
            closure_runs.push((start.elapsed().as_secs_f64() * 1e3, closure.len()));
            closure_size = Some(closure.len() as u64);
        }
    }
    let (reduce_median_ms, transcript_gates) = median(reduce_runs);
    let applications = (transcript_gates * k) as f64;
    Ok(BenchReport {
        n,
        generators: k,
        repetitions: reps,
        reduce_median_ms,
        transcript_gates,
        gate_applications_per_sec: if reduce_median_ms > 0.0 { applications / (reduce_median_ms / 1e3) } else { 0.0 },
        closure_size,
        closure_median_ms: (!closure_runs.is_empty()).then(|| median(closure_runs).0),
    })
}
