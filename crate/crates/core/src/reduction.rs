//! Clifford reduction: transforming correlation propositions into
//! single-system form with S, H and CZ, recording the transcript so the
//! result can be expanded back.
//!
//! A proposition is reduced around its first nontrivial position (the
//! pivot) that is not already claimed by an earlier proposition:
//!
//! 1. `S` on every `Y` (turning it into `¬X`),
//! 2. `H` on every non-pivot `X` and on a `Z` pivot, leaving `X` at the
//!    pivot and only `I`/`Z` elsewhere,
//! 3. `CZ(pivot, j)` for every remaining `Z` at `j`,
//! 4. for a set, `H·CZ·H` (a CNOT from the new pivot) on each earlier pivot
//!    where the proposition still carries an `X`.
//!
//! Systems are never permuted, so every reduced proposition is a single
//! `X` at its own pivot. Step 4 is the gate-level form of the rewrite
//! `⟨XI,XX⟩ ⇔ ⟨XI,IX⟩`: it clears the earlier pivot while leaving the
//! earlier reduced propositions untouched.

use serde::{Deserialize, Serialize};

use crate::clifford::{Gate, Theory, Transcript};
use crate::error::{Error, Result};
use crate::pauli::{PauliLetter, Proposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// One proposition was reduced.
    Single,
    /// Compatible propositions ended up on distinct systems.
    CompatibleDistinctSystems,
    /// Two incompatible propositions ended up on one system with
    /// different letters.
    IncompatibleSameSystem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionResult {
    pub transcript: Transcript,
    /// Reduced forms, in input order.
    pub reduced: Vec<Proposition>,
    /// The system each reduced proposition sits on.
    #[serde(with = "one_based")]
    pub systems: Vec<usize>,
    pub relation: Relation,
}

mod one_based {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[usize], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|i| i + 1).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<usize>, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        v.into_iter()
            .map(|i| i.checked_sub(1).ok_or_else(|| serde::de::Error::custom("systems are 1-based")))
            .collect()
    }
}

struct Reducer {
    theory: Theory,
    n: usize,
    props: Vec<Proposition>,
    transcript: Transcript,
    is_pivot: Vec<bool>,
    pivots: Vec<usize>,
}

impl Reducer {
    fn new(props: &[Proposition], theory: Theory) -> Self {
        let n = props[0].n();
        Reducer {
            theory,
            n,
            props: props.to_vec(),
            transcript: Transcript::new(),
            is_pivot: vec![false; n],
            pivots: Vec::new(),
        }
    }

    fn emit(&mut self, gate: Gate) {
        for p in &mut self.props {
            p.apply_unchecked(gate, self.theory);
        }
        self.transcript.push(gate);
    }

    fn free_positions(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|&i| !self.is_pivot[i])
    }

    /// Steps 1–3 on the positions not yet claimed, returning the new pivot,
    /// or `None` if proposition `k` is trivial there.
    fn reduce_free_part(&mut self, k: usize) -> Option<usize> {
        let pivot = self
            .free_positions()
            .find(|&i| !self.props[k].letter(i).is_trivial())?;

        let ys: Vec<usize> = self
            .free_positions()
            .filter(|&i| self.props[k].letter(i) == PauliLetter::Y)
            .collect();
        for i in ys {
            self.emit(Gate::S(i));
        }

        let hs: Vec<usize> = self
            .free_positions()
            .filter(|&i| {
                let l = self.props[k].letter(i);
                if i == pivot {
                    l == PauliLetter::Z
                } else {
                    l == PauliLetter::X
                }
            })
            .collect();
        for i in hs {
            self.emit(Gate::H(i));
        }

        let zs: Vec<usize> = self
            .free_positions()
            .filter(|&i| i != pivot && self.props[k].letter(i) == PauliLetter::Z)
            .collect();
        for j in zs {
            self.emit(Gate::Cz(pivot, j));
        }
        Some(pivot)
    }

    /// Step 4: clears `X` on earlier pivots from proposition `k`.
    fn clear_claimed(&mut self, k: usize, pivot: usize) {
        let claimed: Vec<usize> = self
            .pivots
            .iter()
            .copied()
            .filter(|&a| self.props[k].letter(a) == PauliLetter::X)
            .collect();
        for a in claimed {
            self.emit(Gate::H(a));
            self.emit(Gate::Cz(pivot, a));
            self.emit(Gate::H(a));
        }
    }

    fn claim(&mut self, pivot: usize) {
        self.is_pivot[pivot] = true;
        self.pivots.push(pivot);
    }

    fn finish(self, relation: Relation, systems: Vec<usize>) -> ReductionResult {
        ReductionResult { transcript: self.transcript, reduced: self.props, systems, relation }
    }
}

fn check_same_n(props: &[Proposition]) -> Result<usize> {
    let n = props[0].n();
    for p in props {
        if p.n() != n {
            return Err(Error::DimensionMismatch { expected: n, found: p.n() });
        }
    }
    Ok(n)
}

fn check_nontrivial(p: &Proposition) -> Result<()> {
    if p.is_trivial() {
        return Err(Error::TrivialProposition(p.to_string()));
    }
    Ok(())
}

/// Reduces one nontrivial proposition to a single `X` at its first
/// nontrivial position.
pub fn reduce_single(p: &Proposition, theory: Theory) -> Result<ReductionResult> {
    check_nontrivial(p)?;
    let mut r = Reducer::new(std::slice::from_ref(p), theory);
    let pivot = r.reduce_free_part(0).expect("nontrivial");
    r.claim(pivot);
    Ok(r.finish(Relation::Single, vec![pivot]))
}

/// Simultaneous reduction of two independent propositions.
///
/// Compatible pairs land on distinct systems as single `X`s; incompatible
/// pairs land on one system, the first as `Z` and the second as `X` or
/// `Y`.
pub fn reduce_pair(p: &Proposition, q: &Proposition, theory: Theory) -> Result<ReductionResult> {
    let pair = [p.clone(), q.clone()];
    check_same_n(&pair)?;
    check_nontrivial(p)?;
    check_nontrivial(q)?;
    if p.same_string(q) {
        return Err(Error::SameQuestion { first: p.to_string(), second: q.to_string() });
    }
    if p.commutes_with(q) {
        return reduce_set(&pair, theory);
    }

    let mut r = Reducer::new(&pair, theory);
    let a = r.reduce_free_part(0).expect("nontrivial");
    r.claim(a);
    // The second proposition now carries Z or Y at `a`.
    if let Some(b) = r.reduce_free_part(1) {
        r.emit(Gate::H(a));
        r.emit(Gate::H(b));
        r.emit(Gate::Cz(a, b));
    }
    Ok(r.finish(Relation::IncompatibleSameSystem, vec![a, a]))
}

/// Simultaneous reduction of pairwise compatible, independent propositions;
/// proposition `k` ends as a single `X` on `systems[k]`.
pub fn reduce_set(props: &[Proposition], theory: Theory) -> Result<ReductionResult> {
    if props.is_empty() {
        return Ok(ReductionResult {
            transcript: Transcript::new(),
            reduced: Vec::new(),
            systems: Vec::new(),
            relation: Relation::CompatibleDistinctSystems,
        });
    }
    check_same_n(props)?;
    for p in props {
        check_nontrivial(p)?;
    }
    for (i, p) in props.iter().enumerate() {
        for (j, q) in props.iter().enumerate().skip(i + 1) {
            if !p.commutes_with(q) {
                return Err(Error::Incompatible { first: i + 1, second: j + 1 });
            }
        }
    }

    let mut r = Reducer::new(props, theory);
    for k in 0..props.len() {
        let pivot = r.reduce_free_part(k).ok_or(Error::Dependent { index: k + 1 })?;
        r.clear_claimed(k, pivot);
        r.claim(pivot);
    }
    let systems = r.pivots.clone();
    let relation = if props.len() == 1 { Relation::Single } else { Relation::CompatibleDistinctSystems };
    Ok(r.finish(relation, systems))
}

/// Extends a compatible independent set to `n` members by reducing it,
/// adding `⟨X⟩` on every unclaimed system, and expanding back.
pub fn augment(props: &[Proposition], theory: Theory) -> Result<Vec<Proposition>> {
    let Some(first) = props.first() else {
        return Ok(Vec::new());
    };
    let n = first.n();
    let result = reduce_set(props, theory)?;
    let expand = result.transcript.invert();
    let mut out = props.to_vec();
    for i in (0..n).filter(|i| !result.systems.contains(i)) {
        out.push(expand.apply(&Proposition::single(n, i, PauliLetter::X, false), theory)?);
    }
    Ok(out)
}
