#![allow(dead_code)]

use conjlogic::clifford::Gate;
use conjlogic::{PauliLetter, Proposition, TruthValue};
use num_complex::Complex64;
use rand::Rng;

/// Published truth tables, one string per row, atoms first. Rows follow
/// the published order, which is not always lexicographic.
pub const PUBLISHED_TABLES: &[(&str, &[&str])] = &[
    ("connectives", &["00100011", "0?10??10", "01101110", "?0?0??00", "??????11", "?1??1?10", "10001100", "1?0?1?00", "11011011"]),
    ("E9", &["011100", "101100", "???1?0"]),
    ("E2", &["000101", "0?01??", "010110", "?0????", "??????", "?1??10", "100110", "1???10", "111010"]),
    ("E10", &["000000", "0?00?0", "010010", "?00???", "??????", "?1??1?", "100111", "1??111", "111111"]),
    ("E11", &["001111", "0?1111", "011111", "?00?1?", "??1??1", "?11111", "100011", "1?0?1?", "111111"]),
    ("E12", &["001111", "0?11?1", "011101", "?00?10", "??1??1", "?11?01", "100010", "1?00?0", "111001"]),
    ("E13", &["00111", "0?010", "01010", "?0001", "??111", "?1010", "10001", "1?001", "11111"]),
    ("I1", &["00101", "0?101", "01101", "?0001", "??1?1", "?11?1", "10001", "1?001", "11111"]),
    ("I2", &[
        "0001111", "00?1111", "0011111", "0?01001", "0??1111", "0?11111", "0101001", "01?1001", "0111111",
        "?000100", "?0?0101", "?010101", "??01000", "???1111", "??11111", "?101000", "?1?1001", "?111111",
        "1000100", "10?0100", "1010100", "1?00000", "1??0100", "1?10100", "1101001", "11?1001", "1111111",
    ]),
    ("I3", &["00111", "0?1?1", "01101", "?0001", "??1?1", "?1101", "10001", "1?001", "11101"]),
    ("I4+I5", &["000101", "0?01?1", "010111", "?001?1", "???1?1", "?1?111", "100111", "1??111", "111111"]),
    ("I6", &["00001", "0????", "01101", "?0??1", "????1", "?1101", "10111", "1?1?1", "11101"]),
    ("I7", &["001", "?01", "111"]),
    ("I8", &[
        "0001111", "00?1111", "0011111", "0?01000", "0??1111", "0?11111", "0101000", "01?1000", "0111111",
        "?000100", "?0?1111", "?011111", "??00000", "???1111", "??11111", "?100000", "?1?1000", "?111111",
        "1000100", "10?0100", "1011111", "1?00000", "1??0100", "1?11111", "1100000", "11?0000", "1111111",
    ]),
];

pub fn published_table(id: &str) -> Vec<Vec<TruthValue>> {
    let rows = PUBLISHED_TABLES.iter().find(|(name, _)| *name == id).expect("known table").1;
    rows.iter()
        .map(|r| r.chars().map(|c| c.to_string().parse().unwrap()).collect())
        .collect()
}

pub fn prop(s: &str) -> Proposition {
    s.parse().unwrap()
}

pub fn random_prop<R: Rng>(rng: &mut R, n: usize) -> Proposition {
    let letters: Vec<PauliLetter> = (0..n).map(|_| PauliLetter::ALL[rng.gen_range(0..4)]).collect();
    Proposition::from_letters(&letters, rng.gen())
}

pub fn random_nontrivial<R: Rng>(rng: &mut R, n: usize) -> Proposition {
    loop {
        let p = random_prop(rng, n);
        if !p.is_trivial() {
            return p;
        }
    }
}

/// Letter-by-letter commutation: strings commute iff they differ on an
/// even number of positions where both are nontrivial.
pub fn naive_commute(p: &Proposition, q: &Proposition) -> bool {
    p.letters()
        .zip(q.letters())
        .filter(|(a, b)| !a.is_trivial() && !b.is_trivial() && a != b)
        .count()
        % 2
        == 0
}

/// Rank over GF(2) of the `(x | z)` rows, one bool per entry.
pub fn naive_rank(props: &[Proposition]) -> usize {
    let mut rows: Vec<Vec<bool>> = props
        .iter()
        .map(|p| p.letters().map(|l| l.x()).chain(p.letters().map(|l| l.z())).collect())
        .collect();
    let cols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        if let Some(r) = (rank..rows.len()).find(|&r| rows[r][c]) {
            rows.swap(rank, r);
            for i in 0..rows.len() {
                if i != rank && rows[i][c] {
                    let pivot = rows[rank].clone();
                    for (a, b) in rows[i].iter_mut().zip(pivot) {
                        *a ^= b;
                    }
                }
            }
            rank += 1;
        }
    }
    rank
}

/// `k` pairwise commuting, independent, nontrivial strings with random
/// signs, found by rejection sampling.
pub fn random_valid_state<R: Rng>(rng: &mut R, n: usize, k: usize) -> Vec<Proposition> {
    let mut gens: Vec<Proposition> = Vec::new();
    while gens.len() < k {
        let p = random_nontrivial(rng, n);
        if gens.iter().all(|g| naive_commute(g, &p)) {
            let mut next = gens.clone();
            next.push(p);
            if naive_rank(&next) == next.len() {
                gens = next;
            }
        }
    }
    gens
}

/// Dense matrices for up to a few qubits; system 1 is the most
/// significant tensor factor.
pub type Matrix = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(d: usize) -> Matrix {
    (0..d).map(|i| (0..d).map(|j| c((i == j) as u8 as f64, 0.0)).collect()).collect()
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (da, db) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); da * db]; da * db];
    for i in 0..da {
        for j in 0..da {
            for k in 0..db {
                for l in 0..db {
                    out[i * db + k][j * db + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn mul(a: &Matrix, b: &Matrix) -> Matrix {
    let d = a.len();
    (0..d)
        .map(|i| (0..d).map(|j| (0..d).map(|k| a[i][k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn dagger(a: &Matrix) -> Matrix {
    let d = a.len();
    (0..d).map(|i| (0..d).map(|j| a[j][i].conj()).collect()).collect()
}

pub fn approx_eq(a: &Matrix, b: &Matrix) -> bool {
    a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| (x - y).norm() < 1e-9)
}

pub fn letter_matrix(l: PauliLetter) -> Matrix {
    match l {
        PauliLetter::I => identity(2),
        PauliLetter::X => vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]],
        PauliLetter::Y => vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]],
        PauliLetter::Z => vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]],
    }
}

/// The observable of a proposition: `(-1)^sign` times the tensor product.
pub fn prop_matrix(p: &Proposition) -> Matrix {
    let mut m = identity(1);
    for l in p.letters() {
        m = kron(&m, &letter_matrix(l));
    }
    if p.sign() {
        for row in &mut m {
            for x in row {
                *x = -*x;
            }
        }
    }
    m
}

fn embed(n: usize, target: usize, u: &Matrix) -> Matrix {
    let id = identity(2);
    let mut m = identity(1);
    for i in 0..n {
        m = kron(&m, if i == target { u } else { &id });
    }
    m
}

pub fn gate_matrix(g: Gate, n: usize) -> Matrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    match g {
        Gate::FlipX(a) => embed(n, a, &letter_matrix(PauliLetter::X)),
        Gate::FlipY(a) => embed(n, a, &letter_matrix(PauliLetter::Y)),
        Gate::FlipZ(a) => embed(n, a, &letter_matrix(PauliLetter::Z)),
        Gate::S(a) => embed(n, a, &vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 1.0)]]),
        Gate::Sinv(a) => embed(n, a, &vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(0.0, -1.0)]]),
        Gate::H(a) => embed(n, a, &vec![vec![c(s, 0.0), c(s, 0.0)], vec![c(s, 0.0), c(-s, 0.0)]]),
        Gate::Cz(a, b) => {
            let d = 1 << n;
            let bit = |i: usize, q: usize| (i >> (n - 1 - q)) & 1;
            (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| {
                            if i != j {
                                c(0.0, 0.0)
                            } else if bit(i, a) & bit(i, b) == 1 {
                                c(-1.0, 0.0)
                            } else {
                                c(1.0, 0.0)
                            }
                        })
                        .collect()
                })
                .collect()
        }
    }
}

/// Every gate on `n` systems, CZ in both target orders.
pub fn all_gates(n: usize) -> Vec<Gate> {
    let mut gates = Vec::new();
    for a in 0..n {
        gates.extend([Gate::FlipX(a), Gate::FlipY(a), Gate::FlipZ(a), Gate::S(a), Gate::Sinv(a), Gate::H(a)]);
        for b in 0..n {
            if a != b {
                gates.push(Gate::Cz(a, b));
            }
        }
    }
    gates
}

/// Every signed string on `n` systems.
pub fn all_props(n: usize) -> Vec<Proposition> {
    let mut out = Vec::new();
    for code in 0..4usize.pow(n as u32) {
        let letters: Vec<PauliLetter> = (0..n).map(|i| PauliLetter::ALL[(code >> (2 * i)) & 3]).collect();
        for sign in [false, true] {
            out.push(Proposition::from_letters(&letters, sign));
        }
    }
    out
}

/// A Pauli operator `i^phase` times a letter string.
#[derive(Clone)]
pub struct PhasedPauli {
    pub phase: u8,
    pub letters: Vec<PauliLetter>,
}

impl PhasedPauli {
    pub fn from_prop(p: &Proposition) -> Self {
        PhasedPauli { phase: if p.sign() { 2 } else { 0 }, letters: p.letters().collect() }
    }

    pub fn mul(&self, other: &PhasedPauli) -> PhasedPauli {
        use PauliLetter::*;
        let mut phase = self.phase + other.phase;
        let letters = self
            .letters
            .iter()
            .zip(&other.letters)
            .map(|(&a, &b)| match (a, b) {
                (I, l) | (l, I) => l,
                (X, X) | (Y, Y) | (Z, Z) => I,
                (X, Y) => {
                    phase += 1;
                    Z
                }
                (Y, X) => {
                    phase += 3;
                    Z
                }
                (Y, Z) => {
                    phase += 1;
                    X
                }
                (Z, Y) => {
                    phase += 3;
                    X
                }
                (Z, X) => {
                    phase += 1;
                    Y
                }
                (X, Z) => {
                    phase += 3;
                    Y
                }
            })
            .collect();
        PhasedPauli { phase: phase % 4, letters }
    }

    /// The signed proposition, if the phase is real.
    pub fn to_prop(&self) -> Option<Proposition> {
        match self.phase {
            0 => Some(Proposition::from_letters(&self.letters, false)),
            2 => Some(Proposition::from_letters(&self.letters, true)),
            _ => None,
        }
    }
}

/// The group generated by `gens` under operator multiplication, sorted.
pub fn product_closure(gens: &[Proposition], n: usize) -> Vec<Proposition> {
    let mut out: Vec<Proposition> = (0..1u32 << gens.len())
        .map(|mask| {
            let mut acc = PhasedPauli::from_prop(&Proposition::identity(n));
            for (i, g) in gens.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    acc = acc.mul(&PhasedPauli::from_prop(g));
                }
            }
            acc.to_prop().expect("commuting Hermitian generators")
        })
        .collect();
    out.sort();
    out
}
