//! Three-valued propositional kernel: truth values, connectives, formulas
//! and the exhaustive law checker.

mod formula;
mod laws;
mod value;

pub use formula::{
    logically_equivalent, logically_implies, parse_formulas, Assignment, CheckResult, Formula,
    FormulaDisplay, DEFAULT_ATOM_NAMES, MAX_ATOMS,
};
pub use laws::{law_suite, laws, Counterexample, Law, LawKind, LawReport, LawVerdict, TruthTable};
pub use value::TruthValue;

pub fn negate(v: TruthValue) -> TruthValue {
    v.negate()
}

pub fn conj(a: TruthValue, b: TruthValue) -> TruthValue {
    a.conj(b)
}

pub fn disj(a: TruthValue, b: TruthValue) -> TruthValue {
    a.disj(b)
}

pub fn xor3(a: TruthValue, b: TruthValue) -> TruthValue {
    a.xor3(b)
}

pub fn material_implies(a: TruthValue, b: TruthValue) -> TruthValue {
    a.material_implies(b)
}

pub fn material_iff(a: TruthValue, b: TruthValue) -> TruthValue {
    a.material_iff(b)
}

pub fn evaluate(f: &Formula, a: &Assignment) -> crate::Result<TruthValue> {
    f.evaluate(a)
}
