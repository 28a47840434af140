//! Transformations acting on propositions: the flips, phase rotation and
//! Hadamard in both theory variants, the correlating CZ (standard or tilde),
//! and invertible transcripts of such gates.
//!
//! Bit updates are shared by every variant; only sign rules differ.
//!
//! | gate          | sign update                         | bit update          |
//! |---------------|-------------------------------------|---------------------|
//! | FlipX i       | `z_i`                               |                     |
//! | FlipY i       | `x_i ⊕ z_i`                         |                     |
//! | FlipZ i       | `x_i`                               |                     |
//! | S i (quantum) | `x_i z_i`                           | `z_i ^= x_i`        |
//! | S i (toy)     | `z_i`                               | `z_i ^= x_i`        |
//! | H i (quantum) | `x_i z_i`                           | swap `x_i, z_i`     |
//! | H i (toy)     | none                                | swap `x_i, z_i`     |
//! | CZ i j        | `x_i x_j (z_i ⊕ z_j)`               | `z_i ^= x_j, z_j ^= x_i` |
//! | tilde CZ i j  | `x_i x_j (1 ⊕ z_i ⊕ z_j)`           | as CZ               |
//!
//! The tilde CZ rule is only pinned down by `XX ↦ ¬YY`; the remaining signs
//! follow from requiring it to commute with the phase rotation on either
//! system the same way the standard CZ does, which forces `XY ↦ YX`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::Proposition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum TheoryVariant {
    /// Stabilizer quantum mechanics.
    #[default]
    #[serde(rename = "quantum")]
    Quantum,
    /// Spekkens' toy theory.
    #[serde(rename = "toy")]
    SpekkensToy,
}

impl fmt::Display for TheoryVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoryVariant::Quantum => "quantum",
            TheoryVariant::SpekkensToy => "toy",
        })
    }
}

impl FromStr for TheoryVariant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "quantum" | "q" => Ok(TheoryVariant::Quantum),
            "toy" | "spekkens" | "spekkens-toy" => Ok(TheoryVariant::SpekkensToy),
            other => Err(format!("unknown theory {other:?}; expected quantum or toy")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CzChoice {
    /// `CZ⟨XX⟩ = ⟨YY⟩`
    #[default]
    Standard,
    /// `CZ⟨XX⟩ = ⟨¬YY⟩`, the inconsistent alternative.
    Tilde,
}

impl fmt::Display for CzChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CzChoice::Standard => "standard",
            CzChoice::Tilde => "tilde",
        })
    }
}

impl FromStr for CzChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "standard" => Ok(CzChoice::Standard),
            "tilde" => Ok(CzChoice::Tilde),
            other => Err(format!("unknown CZ choice {other:?}; expected standard or tilde")),
        }
    }
}

/// The sign rules in force: theory variant plus CZ choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Theory {
    pub variant: TheoryVariant,
    pub cz: CzChoice,
}

impl Theory {
    pub const QUANTUM: Theory = Theory { variant: TheoryVariant::Quantum, cz: CzChoice::Standard };
    pub const TOY: Theory = Theory { variant: TheoryVariant::SpekkensToy, cz: CzChoice::Standard };

    pub fn new(variant: TheoryVariant, cz: CzChoice) -> Self {
        Theory { variant, cz }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    X,
    Y,
    Z,
    S,
    Sinv,
    H,
    CZ,
}

/// A single transformation with 0-based targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    FlipX(usize),
    FlipY(usize),
    FlipZ(usize),
    S(usize),
    Sinv(usize),
    H(usize),
    Cz(usize, usize),
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::FlipX(_) => GateKind::X,
            Gate::FlipY(_) => GateKind::Y,
            Gate::FlipZ(_) => GateKind::Z,
            Gate::S(_) => GateKind::S,
            Gate::Sinv(_) => GateKind::Sinv,
            Gate::H(_) => GateKind::H,
            Gate::Cz(..) => GateKind::CZ,
        }
    }

    pub fn targets(&self) -> Vec<usize> {
        match *self {
            Gate::FlipX(i) | Gate::FlipY(i) | Gate::FlipZ(i) | Gate::S(i) | Gate::Sinv(i) | Gate::H(i) => {
                vec![i]
            }
            Gate::Cz(i, j) => vec![i, j],
        }
    }

    pub fn from_parts(kind: GateKind, targets: &[usize]) -> std::result::Result<Self, String> {
        let one = || match targets {
            [i] => Ok(*i),
            _ => Err(format!("{kind:?} takes exactly one target")),
        };
        Ok(match kind {
            GateKind::X => Gate::FlipX(one()?),
            GateKind::Y => Gate::FlipY(one()?),
            GateKind::Z => Gate::FlipZ(one()?),
            GateKind::S => Gate::S(one()?),
            GateKind::Sinv => Gate::Sinv(one()?),
            GateKind::H => Gate::H(one()?),
            GateKind::CZ => match targets {
                [i, j] => Gate::Cz(*i, *j),
                _ => return Err("CZ takes exactly two targets".into()),
            },
        })
    }

    pub fn inverse(&self) -> Gate {
        match *self {
            Gate::S(i) => Gate::Sinv(i),
            Gate::Sinv(i) => Gate::S(i),
            other => other,
        }
    }

    /// Checks targets against a system count.
    pub fn validate(&self, n: usize) -> Result<()> {
        for t in self.targets() {
            if t >= n {
                return Err(Error::TargetOutOfRange { index: t + 1, n });
            }
        }
        if let Gate::Cz(i, j) = *self {
            if i == j {
                return Err(Error::RepeatedTarget { index: i + 1 });
            }
        }
        Ok(())
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::FlipX(i) => write!(f, "X@{}", i + 1),
            Gate::FlipY(i) => write!(f, "Y@{}", i + 1),
            Gate::FlipZ(i) => write!(f, "Z@{}", i + 1),
            Gate::S(i) => write!(f, "S@{}", i + 1),
            Gate::Sinv(i) => write!(f, "Sinv@{}", i + 1),
            Gate::H(i) => write!(f, "H@{}", i + 1),
            Gate::Cz(i, j) => write!(f, "CZ@({},{})", i + 1, j + 1),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct GateRepr {
    kind: GateKind,
    targets: Vec<usize>,
}

impl Serialize for Gate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GateRepr { kind: self.kind(), targets: self.targets().iter().map(|t| t + 1).collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = GateRepr::deserialize(d)?;
        if repr.targets.contains(&0) {
            return Err(serde::de::Error::custom("targets are 1-based"));
        }
        let targets: Vec<usize> = repr.targets.iter().map(|t| t - 1).collect();
        Gate::from_parts(repr.kind, &targets).map_err(serde::de::Error::custom)
    }
}

impl Proposition {
    /// Applies `gate` in place.
    pub fn apply_gate_mut(&mut self, gate: Gate, theory: Theory) -> Result<()> {
        gate.validate(self.n())?;
        self.apply_unchecked(gate, theory);
        Ok(())
    }

    #[inline]
    pub(crate) fn apply_unchecked(&mut self, gate: Gate, theory: Theory) {
        let quantum = theory.variant == TheoryVariant::Quantum;
        match gate {
            Gate::FlipX(i) => {
                let z = self.z_bit(i);
                self.toggle_sign(z);
            }
            Gate::FlipY(i) => {
                let (x, z) = (self.x_bit(i), self.z_bit(i));
                self.toggle_sign(x ^ z);
            }
            Gate::FlipZ(i) => {
                let x = self.x_bit(i);
                self.toggle_sign(x);
            }
            Gate::S(i) | Gate::Sinv(i) => {
                let (x, z) = (self.x_bit(i), self.z_bit(i));
                let mut flip = if quantum { x & z } else { z };
                if matches!(gate, Gate::Sinv(_)) {
                    // S⁻¹ = S followed by FlipZ, and S leaves x untouched.
                    flip ^= x;
                }
                self.toggle_sign(flip);
                self.toggle_z(i, x);
            }
            Gate::H(i) => {
                let (x, z) = (self.x_bit(i), self.z_bit(i));
                if quantum {
                    self.toggle_sign(x & z);
                }
                self.set_x(i, z);
                self.set_z(i, x);
            }
            Gate::Cz(i, j) => {
                let (xi, zi, xj, zj) = (self.x_bit(i), self.z_bit(i), self.x_bit(j), self.z_bit(j));
                let parity = match theory.cz {
                    CzChoice::Standard => zi ^ zj,
                    CzChoice::Tilde => !(zi ^ zj),
                };
                self.toggle_sign(xi & xj & parity);
                self.toggle_z(i, xj);
                self.toggle_z(j, xi);
            }
        }
    }
}

/// Out-of-place gate application.
pub fn apply_gate(p: &Proposition, gate: Gate, theory: Theory) -> Result<Proposition> {
    let mut out = p.clone();
    out.apply_gate_mut(gate, theory)?;
    Ok(out)
}

/// An ordered list of gates, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Transcript {
    steps: Vec<Gate>,
}

impl Transcript {
    pub fn new() -> Self {
        Transcript::default()
    }

    pub fn from_gates(steps: Vec<Gate>) -> Self {
        Transcript { steps }
    }

    pub fn push(&mut self, gate: Gate) {
        self.steps.push(gate);
    }

    pub fn extend(&mut self, other: &Transcript) {
        self.steps.extend_from_slice(&other.steps);
    }

    pub fn gates(&self) -> &[Gate] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Reversed order with every gate replaced by its inverse.
    pub fn invert(&self) -> Transcript {
        Transcript { steps: self.steps.iter().rev().map(Gate::inverse).collect() }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        self.steps.iter().try_for_each(|g| g.validate(n))
    }

    pub fn apply(&self, p: &Proposition, theory: Theory) -> Result<Proposition> {
        let mut out = p.clone();
        self.apply_mut(&mut out, theory)?;
        Ok(out)
    }

    pub fn apply_mut(&self, p: &mut Proposition, theory: Theory) -> Result<()> {
        self.validate(p.n())?;
        for &g in &self.steps {
            p.apply_unchecked(g, theory);
        }
        Ok(())
    }

    /// The proposition after each step, in order.
    pub fn trace(&self, p: &Proposition, theory: Theory) -> Result<Vec<Proposition>> {
        self.validate(p.n())?;
        let mut cur = p.clone();
        Ok(self
            .steps
            .iter()
            .map(|&g| {
                cur.apply_unchecked(g, theory);
                cur.clone()
            })
            .collect())
    }
}

pub fn apply_transcript(p: &Proposition, t: &Transcript, theory: Theory) -> Result<Proposition> {
    t.apply(p, theory)
}

pub fn invert_transcript(t: &Transcript) -> Transcript {
    t.invert()
}

/// `CNOT = H_target · CZ · H_target` with 0-based indices.
pub fn cnot(control: usize, target: usize) -> Result<Transcript> {
    if control == target {
        return Err(Error::RepeatedTarget { index: control + 1 });
    }
    Ok(Transcript::from_gates(vec![Gate::H(target), Gate::Cz(control, target), Gate::H(target)]))
}

impl fmt::Display for Transcript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, g) in self.steps.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Transcript {
    type Err = Error;

    /// Parses `GATE@i` and `CZ@(i,j)` steps separated by `;`, with 1-based
    /// indices. `CNOT@(c,t)` expands to its three-gate definition.
    fn from_str(s: &str) -> Result<Self> {
        let mut steps = Vec::new();
        if s.trim().is_empty() {
            return Ok(Transcript { steps });
        }
        for (k, raw) in s.split(';').enumerate() {
            let step = k + 1;
            let bad = |reason: String| Error::TranscriptParse { step, reason };
            let text: String = raw.chars().filter(|c| !c.is_whitespace()).collect();
            let (name, args) = text
                .split_once('@')
                .ok_or_else(|| bad(format!("expected GATE@index, got {:?}", raw.trim())))?;
            let args = args.trim_start_matches('(').trim_end_matches(')');
            let indices = args
                .split(',')
                .map(|a| match a.parse::<usize>() {
                    Ok(0) | Err(_) => Err(bad(format!("bad system index {a:?}; indices are 1-based"))),
                    Ok(i) => Ok(i - 1),
                })
                .collect::<Result<Vec<_>>>()?;
            let kind = match name.to_ascii_uppercase().as_str() {
                "X" => GateKind::X,
                "Y" => GateKind::Y,
                "Z" => GateKind::Z,
                "S" => GateKind::S,
                "SINV" | "SDG" | "S^-1" | "S†" => GateKind::Sinv,
                "H" => GateKind::H,
                "CZ" => GateKind::CZ,
                "CNOT" | "CX" => {
                    let [c, t] = indices[..] else {
                        return Err(bad("CNOT takes exactly two targets".into()));
                    };
                    steps.extend(cnot(c, t).map_err(|e| bad(e.to_string()))?.steps);
                    continue;
                }
                other => return Err(bad(format!("unknown gate {other:?}"))),
            };
            let gate = Gate::from_parts(kind, &indices).map_err(bad)?;
            if let Gate::Cz(i, j) = gate {
                if i == j {
                    return Err(bad("CZ needs two distinct systems".into()));
                }
            }
            steps.push(gate);
        }
        Ok(Transcript { steps })
    }
}
