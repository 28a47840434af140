//! Knowledge states: conjunctions of compatible, independent propositions,
//! their prediction closure, and measurement updates.

use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::clifford::{CzChoice, Theory, TheoryVariant, Transcript};
use crate::error::{Error, Result};
use crate::gf2;
use crate::kernel::TruthValue;
use crate::pauli::{PauliLetter, Proposition};
use crate::reduction::{reduce_set, ReductionResult};

/// Largest generator count for which [`KnowledgeState::closure`] will
/// enumerate all `2^k` predictions.
pub const CLOSURE_LIMIT: usize = 20;

/// True iff the stacked `(x | z)` rows of `props` are linearly independent
/// over GF(2). Signs are ignored.
pub fn independent(props: &[Proposition]) -> bool {
    gf2::rank(props.iter().map(Proposition::symplectic_row).collect()) == props.len()
}

fn run(t: &Transcript, p: &mut Proposition, theory: Theory) {
    for &g in t.gates() {
        p.apply_unchecked(g, theory);
    }
}

/// What we know about `n` systems: the conjunction of `generators`.
///
/// `derived` holds propositions obtained outside the closure procedure,
/// such as by pushing the state through another transcript. If any of them
/// contradicts the closure or each other the state is poisoned.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "StateRepr", into = "StateRepr")]
pub struct KnowledgeState {
    n: usize,
    theory: Theory,
    generators: Vec<Proposition>,
    derived: Vec<Proposition>,
    poisoned: bool,
    reduction: OnceLock<ReductionResult>,
}

#[derive(Serialize, Deserialize)]
struct StateRepr {
    n: usize,
    variant: TheoryVariant,
    cz: CzChoice,
    generators: Vec<Proposition>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    derived: Vec<Proposition>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    poisoned: bool,
}

impl TryFrom<StateRepr> for KnowledgeState {
    type Error = Error;

    fn try_from(r: StateRepr) -> Result<Self> {
        let mut s = KnowledgeState::from_generators(r.n, Theory::new(r.variant, r.cz), r.generators)?;
        for p in r.derived {
            s.check_dims(&p)?;
            s.derived.push(p);
        }
        s.poisoned = r.poisoned || !s.contradictions().is_empty();
        Ok(s)
    }
}

impl From<KnowledgeState> for StateRepr {
    fn from(s: KnowledgeState) -> Self {
        StateRepr {
            n: s.n,
            variant: s.theory.variant,
            cz: s.theory.cz,
            generators: s.generators,
            derived: s.derived,
            poisoned: s.poisoned,
        }
    }
}

impl PartialEq for KnowledgeState {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.theory == other.theory
            && self.generators == other.generators
            && self.derived == other.derived
            && self.poisoned == other.poisoned
    }
}

impl Eq for KnowledgeState {}

/// One measurement: the question asked, its outcome bit, and the resulting
/// proposition (the question carrying the outcome as its sign).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasurementRecord {
    pub measured: Proposition,
    pub outcome: u8,
    pub resulting_prop: Proposition,
    /// What the state predicted before the measurement.
    pub predicted: TruthValue,
}

impl KnowledgeState {
    /// The state with no knowledge about `n` systems.
    pub fn new(n: usize, theory: Theory) -> Self {
        KnowledgeState {
            n,
            theory,
            generators: Vec::new(),
            derived: Vec::new(),
            poisoned: false,
            reduction: OnceLock::new(),
        }
    }

    /// Builds a state, rejecting incompatible, dependent or trivial
    /// generators.
    pub fn from_generators(n: usize, theory: Theory, generators: Vec<Proposition>) -> Result<Self> {
        let mut s = KnowledgeState::new(n, theory);
        for g in &generators {
            s.check_dims(g)?;
        }
        let reduction = reduce_set(&generators, theory)?;
        s.generators = generators;
        s.reduction = OnceLock::from(reduction);
        Ok(s)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn generators(&self) -> &[Proposition] {
        &self.generators
    }

    pub fn derived(&self) -> &[Proposition] {
        &self.derived
    }

    pub fn is_poisoned(&self) -> bool {
        self.poisoned
    }

    fn check_dims(&self, p: &Proposition) -> Result<()> {
        if p.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: p.n() });
        }
        Ok(())
    }

    /// Joint reduction of the generators, computed once per state.
    pub fn reduction(&self) -> &ReductionResult {
        self.reduction
            .get_or_init(|| reduce_set(&self.generators, self.theory).expect("generators are valid"))
    }

    /// The closure element combining the reduced generators picked by
    /// `selected`: their single `X`s are merged with XOR of signs, then
    /// expanded through `expand`.
    fn element(&self, r: &ReductionResult, expand: &Transcript, selected: impl Fn(usize) -> bool) -> Proposition {
        let mut p = Proposition::identity(self.n);
        for (i, (&sys, red)) in r.systems.iter().zip(&r.reduced).enumerate() {
            if selected(i) {
                p.set_letter(sys, PauliLetter::X);
                p.toggle_sign(red.sign());
            }
        }
        run(expand, &mut p, self.theory);
        p
    }

    /// The closure element combining the generators selected by `mask`
    /// (bit `i` selects generator `i`).
    pub fn prediction(&self, mask: u64) -> Proposition {
        let r = self.reduction();
        self.element(r, &r.transcript.invert(), |i| mask >> i & 1 == 1)
    }

    /// All `2^k` predictions of the state, sorted by letter string then
    /// sign.
    pub fn closure(&self) -> Result<Vec<Proposition>> {
        let k = self.generators.len();
        if k > CLOSURE_LIMIT {
            return Err(Error::ClosureTooLarge { generators: k, limit: CLOSURE_LIMIT });
        }
        let r = self.reduction();
        let expand = r.transcript.invert();
        let mut out: Vec<Proposition> =
            (0..1u64 << k).map(|mask| self.element(r, &expand, |i| mask >> i & 1 == 1)).collect();
        out.sort();
        Ok(out)
    }

    /// 1 if `q` is a prediction, 0 if its negation is, `?` otherwise.
    pub fn predicts(&self, q: &Proposition) -> Result<TruthValue> {
        self.check_dims(q)?;
        Ok(self.predicts_unchecked(q))
    }

    fn predicts_unchecked(&self, q: &Proposition) -> TruthValue {
        match self.span_sign(q) {
            Some(sign) => TruthValue::from_bool(sign == q.sign()),
            None => TruthValue::Indeterminate,
        }
    }

    /// If the letter string of `q` lies in the closure, the sign that
    /// the closure gives it.
    fn span_sign(&self, q: &Proposition) -> Option<bool> {
        let r = self.reduction();
        let mut image = q.question();
        run(&r.transcript, &mut image, self.theory);
        let mut sign = image.sign();
        for i in 0..self.n {
            match image.letter(i) {
                PauliLetter::I => {}
                PauliLetter::X => {
                    let k = r.systems.iter().position(|&s| s == i)?;
                    sign ^= r.reduced[k].sign();
                }
                _ => return None,
            }
        }
        // `image` has the closure element's letters; the element itself
        // carries the XOR of the selected signs, and expansion preserves
        // sign differences.
        Some(sign)
    }

    /// Adds `p` to the conjunction.
    ///
    /// Predicted propositions leave the state unchanged; a predicted
    /// negation is a contradiction; an incompatible proposition must be
    /// measured instead.
    pub fn assert_prop(&self, p: &Proposition) -> Result<KnowledgeState> {
        self.check_dims(p)?;
        if p.is_trivial() {
            return Err(Error::TrivialProposition(p.to_string()));
        }
        match self.predicts_unchecked(p) {
            TruthValue::True => return Ok(self.clone()),
            TruthValue::False => return Err(Error::Contradiction(p.to_string())),
            TruthValue::Indeterminate => {}
        }
        if let Some(g) = self.generators.iter().find(|g| !g.commutes_with(p)) {
            return Err(Error::IncompatibleAssertion { prop: p.to_string(), generator: g.to_string() });
        }
        let mut generators = self.generators.clone();
        generators.push(p.clone());
        let mut s = KnowledgeState::from_generators(self.n, self.theory, generators)?;
        s.derived = self.derived.clone();
        s.poisoned = self.poisoned;
        Ok(s)
    }

    /// Measures the question of `q`, drawing the outcome from `rng` only if
    /// the state does not predict it.
    pub fn measure<R: Rng + ?Sized>(&self, q: &Proposition, rng: &mut R) -> Result<(MeasurementRecord, KnowledgeState)> {
        self.check_dims(q)?;
        let outcome = match self.predicts_unchecked(&q.question()) {
            TruthValue::Indeterminate => rng.gen::<bool>(),
            _ => false,
        };
        self.measure_with_outcome(q, outcome)
    }

    /// Measures the question of `q`. A predicted question yields its
    /// predicted outcome and leaves the state unchanged; otherwise the
    /// outcome is `outcome`.
    ///
    /// Generators incompatible with the question are dropped. When there
    /// are several, the first one is multiplied into the others first, so
    /// everything in the closure that commutes with the question survives.
    pub fn measure_with_outcome(&self, q: &Proposition, outcome: bool) -> Result<(MeasurementRecord, KnowledgeState)> {
        self.check_dims(q)?;
        if q.is_trivial() {
            return Err(Error::TrivialProposition(q.to_string()));
        }
        let question = q.question();
        let predicted = self.predicts_unchecked(&question);
        let record = |bit: bool| MeasurementRecord {
            measured: question.clone(),
            outcome: bit as u8,
            resulting_prop: question.clone().with_sign(bit),
            predicted,
        };
        if let Some(value) = predicted.to_bool() {
            return Ok((record(!value), self.clone()));
        }

        let anti: Vec<usize> = (0..self.generators.len())
            .filter(|&i| !self.generators[i].commutes_with(&question))
            .collect();
        let mut generators = Vec::with_capacity(self.generators.len() + 1);
        if let Some((&first, rest)) = anti.split_first() {
            let r = self.reduction();
            let expand = r.transcript.invert();
            for (i, g) in self.generators.iter().enumerate() {
                if i == first {
                    continue;
                }
                if rest.contains(&i) {
                    generators.push(self.element(r, &expand, |j| j == i || j == first));
                } else {
                    generators.push(g.clone());
                }
            }
        } else {
            generators.extend(self.generators.iter().cloned());
        }
        generators.push(question.clone().with_sign(outcome));
        let mut s = KnowledgeState::from_generators(self.n, self.theory, generators)?;
        s.derived = self.derived.iter().filter(|d| d.commutes_with(&question)).cloned().collect();
        s.poisoned = !s.contradictions().is_empty();
        Ok((record(outcome), s))
    }

    /// Derives the value of the letter string of `q` by transforming the
    /// whole state with `t`, predicting there, and transforming back.
    ///
    /// Returns the derived signed proposition, or `None` if the transformed
    /// state does not predict it.
    pub fn derive_through(&self, t: &Transcript, q: &Proposition) -> Result<Option<Proposition>> {
        self.check_dims(q)?;
        t.validate(self.n)?;
        let moved: Vec<Proposition> = self
            .generators
            .iter()
            .map(|g| {
                let mut g = g.clone();
                run(t, &mut g, self.theory);
                g
            })
            .collect();
        let inner = KnowledgeState::from_generators(self.n, self.theory, moved)?;
        let mut image = q.question();
        run(t, &mut image, self.theory);
        let Some(value) = inner.predicts_unchecked(&image).to_bool() else {
            return Ok(None);
        };
        let mut back = if value { image } else { image.negate() };
        run(&t.invert(), &mut back, self.theory);
        Ok(Some(back))
    }

    /// Records a proposition derived by other means, poisoning the state
    /// if it clashes with the closure or with earlier derivations.
    pub fn record_derived(&self, p: Proposition) -> Result<KnowledgeState> {
        self.check_dims(&p)?;
        let mut s = self.clone();
        if !s.derived.contains(&p) {
            s.derived.push(p);
        }
        s.poisoned = s.poisoned || !s.contradictions().is_empty();
        Ok(s)
    }

    /// Derived propositions whose negation is predicted or also derived.
    pub fn contradictions(&self) -> Vec<Proposition> {
        self.derived
            .iter()
            .filter(|d| {
                self.predicts_unchecked(d) == TruthValue::False || self.derived.contains(&d.negate())
            })
            .cloned()
            .collect()
    }
}
