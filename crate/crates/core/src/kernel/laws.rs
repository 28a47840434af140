//! Table-driven equivalence (E1–E13) and implication (I1–I8) laws.
//!
//! Each law lists its formula pairs together with the intermediate columns
//! used when its truth table is printed, so rendered tables can be diffed
//! row by row against hand-written references.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::formula::{shared_atom_count, Assignment, Formula, DEFAULT_ATOM_NAMES};
use super::value::TruthValue;
use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LawKind {
    /// `lhs ⇔ rhs`
    Equivalence,
    /// `lhs ⇒ rhs`
    Implication,
}

#[derive(Debug, Clone)]
pub struct Law {
    pub id: &'static str,
    pub name: &'static str,
    pub kind: LawKind,
    /// One or more (lhs, rhs) pairs; the law holds iff every pair does.
    pub parts: Vec<(Formula, Formula)>,
    /// Whether the law is expected to survive the third truth value.
    pub expected_holds: bool,
    /// Columns printed after the atom columns in the truth table.
    pub columns: Vec<Formula>,
}

impl Law {
    pub fn atom_count(&self) -> usize {
        self.parts
            .iter()
            .map(|(l, r)| l.atom_count().max(r.atom_count()))
            .max()
            .unwrap_or(0)
    }

    fn relation_holds(&self, lhs: TruthValue, rhs: TruthValue) -> bool {
        match self.kind {
            LawKind::Equivalence => lhs == rhs,
            LawKind::Implication => lhs.material_implies(rhs) == TruthValue::True,
        }
    }

    pub fn statement(&self) -> String {
        let sep = match self.kind {
            LawKind::Equivalence => " ⇔ ",
            LawKind::Implication => " ⇒ ",
        };
        self.parts
            .iter()
            .map(|(l, r)| format!("{l}{sep}{r}"))
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Checks every part over all `3^k` assignments.
    pub fn check(&self) -> Result<LawVerdict> {
        let mut counterexamples = Vec::new();
        let mut rows = 0;
        for (part, (lhs, rhs)) in self.parts.iter().enumerate() {
            let k = shared_atom_count(lhs, rhs)?.max(self.atom_count());
            rows = rows.max(3usize.pow(k as u32));
            for assignment in Assignment::enumerate(k) {
                let l = lhs.evaluate(&assignment)?;
                let r = rhs.evaluate(&assignment)?;
                if !self.relation_holds(l, r) {
                    counterexamples.push(Counterexample {
                        part: part + 1,
                        atom_values: assignment,
                        lhs: l,
                        rhs: r,
                    });
                }
            }
        }
        Ok(LawVerdict {
            law_id: self.id.to_string(),
            name: self.name.to_string(),
            kind: self.kind,
            statement: self.statement(),
            holds: counterexamples.is_empty(),
            expected_holds: self.expected_holds,
            assignments_checked: rows,
            counterexamples,
        })
    }

    /// Full truth table in enumeration order.
    pub fn truth_table(&self) -> Result<TruthTable> {
        let k = self.atom_count();
        let mut header: Vec<String> = DEFAULT_ATOM_NAMES[..k].iter().map(|s| s.to_string()).collect();
        header.extend(self.columns.iter().map(|c| c.to_string()));
        let mut rows = Vec::new();
        for assignment in Assignment::enumerate(k) {
            let mut row = assignment.values().to_vec();
            for column in &self.columns {
                row.push(column.evaluate(&assignment)?);
            }
            rows.push(row);
        }
        Ok(TruthTable { header, rows })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// 1-based index of the failing part of the law.
    pub part: usize,
    pub atom_values: Assignment,
    pub lhs: TruthValue,
    pub rhs: TruthValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawVerdict {
    pub law_id: String,
    pub name: String,
    pub kind: LawKind,
    pub statement: String,
    pub holds: bool,
    pub expected_holds: bool,
    pub assignments_checked: usize,
    pub counterexamples: Vec<Counterexample>,
}

impl LawVerdict {
    pub fn matches_expectation(&self) -> bool {
        self.holds == self.expected_holds
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawReport {
    pub laws: Vec<LawVerdict>,
}

impl LawReport {
    pub fn get(&self, id: &str) -> Option<&LawVerdict> {
        self.laws.iter().find(|l| l.law_id == id)
    }

    pub fn all_match_expectation(&self) -> bool {
        self.laws.iter().all(LawVerdict::matches_expectation)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for law in &self.laws {
            let verdict = if law.holds { "holds" } else { "FAILS" };
            let _ = writeln!(out, "{:<4} {:<24} {:<6} {}", law.law_id, law.name, verdict, law.statement);
            for c in &law.counterexamples {
                let _ = writeln!(
                    out,
                    "       part {} at {}: lhs {} rhs {}",
                    c.part, c.atom_values, c.lhs, c.rhs
                );
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruthTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<TruthValue>>,
}

impl TruthTable {
    /// Rows as compact strings, e.g. `"0?1"`.
    pub fn row_strings(&self) -> Vec<String> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|v| v.symbol()).collect())
            .collect()
    }

    pub fn render(&self) -> String {
        let widths: Vec<usize> = self.header.iter().map(|h| h.chars().count().max(1)).collect();
        let mut out = String::new();
        let line = |cells: Vec<String>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c:^w$}"))
                .collect::<Vec<_>>()
                .join(" | ")
        };
        let _ = writeln!(out, "{}", line(self.header.clone()));
        let _ = writeln!(
            out,
            "{}",
            widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("-+-")
        );
        for row in &self.rows {
            let _ = writeln!(out, "{}", line(row.iter().map(|v| v.to_string()).collect()));
        }
        out
    }
}

fn p() -> Formula {
    Formula::atom(0)
}
fn q() -> Formula {
    Formula::atom(1)
}
fn r() -> Formula {
    Formula::atom(2)
}

fn columns_of(parts: &[(Formula, Formula)]) -> Vec<Formula> {
    parts.iter().flat_map(|(l, r)| [l.clone(), r.clone()]).collect()
}

fn equivalence(id: &'static str, name: &'static str, parts: Vec<(Formula, Formula)>) -> Law {
    let columns = columns_of(&parts);
    Law { id, name, kind: LawKind::Equivalence, parts, expected_holds: true, columns }
}

fn implication(id: &'static str, name: &'static str, lhs: Formula, rhs: Formula) -> Law {
    let columns = vec![lhs.clone(), rhs.clone(), lhs.clone().implies(rhs.clone())];
    Law { id, name, kind: LawKind::Implication, parts: vec![(lhs, rhs)], expected_holds: true, columns }
}

impl Law {
    fn failing(mut self) -> Self {
        self.expected_holds = false;
        self
    }

    fn with_columns(mut self, columns: Vec<Formula>) -> Self {
        self.columns = columns;
        self
    }
}

/// The thirteen equivalence laws followed by the eight implication laws.
pub fn laws() -> Vec<Law> {
    use Formula::{Contradiction, Tautology};
    let imp_pq = || p().implies(q());
    vec![
        equivalence("E1", "Double negation", vec![(p().not().not(), p())]),
        equivalence(
            "E2",
            "De Morgan's laws",
            vec![
                (p().and(q()).not(), p().not().or(q().not())),
                (p().or(q()).not(), p().not().and(q().not())),
            ],
        )
        .with_columns(vec![
            p().and(q()),
            p().not().or(q().not()),
            p().or(q()),
            p().not().and(q().not()),
        ]),
        equivalence(
            "E3",
            "Commutative laws",
            vec![(p().and(q()), q().and(p())), (p().or(q()), q().or(p()))],
        ),
        equivalence(
            "E4",
            "Associative laws",
            vec![
                (p().and(q().and(r())), p().and(q()).and(r())),
                (p().or(q().or(r())), p().or(q()).or(r())),
            ],
        ),
        equivalence(
            "E5",
            "Distributive laws",
            vec![
                (p().and(q().or(r())), p().and(q()).or(p().and(r()))),
                (p().or(q().and(r())), p().or(q()).and(p().or(r()))),
            ],
        ),
        equivalence("E6", "Idempotence", vec![(p().and(p()), p()), (p().or(p()), p())]),
        equivalence(
            "E7",
            "Identity laws",
            vec![(p().and(Tautology), p()), (p().or(Contradiction), p())],
        ),
        equivalence(
            "E8",
            "Domination laws",
            vec![(p().and(Contradiction), Contradiction), (p().or(Tautology), Tautology)],
        ),
        equivalence(
            "E9",
            "Inverse laws",
            vec![(p().and(p().not()), Contradiction), (p().or(p().not()), Tautology)],
        )
        .failing()
        .with_columns(vec![p().not(), p().or(p().not()), Tautology, p().and(p().not()), Contradiction]),
        equivalence(
            "E10",
            "Absorption laws",
            vec![(p().and(p().or(q())), p()), (p().or(p().and(q())), p())],
        )
        .with_columns(vec![p().and(q()), p().or(p().and(q())), p().or(q()), p().and(p().or(q()))]),
        equivalence("E11", "Implication law", vec![(imp_pq(), p().not().or(q()))])
            .failing()
            .with_columns(vec![
                imp_pq(),
                p().not().or(q()),
                imp_pq().implies(p().not().or(q())),
                p().not().or(q()).implies(imp_pq()),
            ]),
        equivalence(
            "E12",
            "Contrapositive law",
            vec![(imp_pq(), q().not().implies(p().not()))],
        )
        .with_columns(vec![imp_pq(), p().not(), q().not(), q().not().implies(p().not())]),
        equivalence(
            "E13",
            "Equivalence law",
            vec![(p().iff(q()), imp_pq().and(q().implies(p())))],
        )
        .with_columns(vec![p().iff(q()), imp_pq(), q().implies(p())]),
        implication("I1", "Modus ponens", imp_pq().and(p()), q())
            .with_columns(vec![imp_pq(), imp_pq().and(p()), imp_pq().and(p()).implies(q())]),
        implication(
            "I2",
            "Law of syllogism",
            imp_pq().and(q().implies(r())),
            p().implies(r()),
        )
        .with_columns(vec![
            imp_pq(),
            q().implies(r()),
            imp_pq().and(q().implies(r())),
            p().implies(r()),
        ]),
        implication("I3", "Modus tollens", imp_pq().and(q().not()), p().not()).with_columns(vec![
            imp_pq(),
            imp_pq().and(q().not()),
            imp_pq().and(q().not()).implies(p().not()),
        ]),
        implication("I4", "Conjunctive simplification", p().and(q()), p())
            .with_columns(vec![p().and(q()), p().and(q()).implies(p())]),
        implication("I5", "Disjunctive amplification", p(), p().or(q()))
            .with_columns(vec![p().or(q()), p().implies(p().or(q()))]),
        implication("I6", "Disjunctive syllogism", p().or(q()).and(q().not()), p())
            .failing()
            .with_columns(vec![
                p().or(q()),
                p().or(q()).and(q().not()),
                p().or(q()).and(q().not()).implies(p()),
            ]),
        implication(
            "I7",
            "Proof by contradiction",
            p().not().implies(Contradiction),
            p(),
        )
        .with_columns(vec![
            p().not().implies(Contradiction),
            p().not().implies(Contradiction).implies(p()),
        ]),
        implication(
            "I8",
            "Proof by cases",
            p().implies(r()).and(q().implies(r())),
            p().or(q()).implies(r()),
        )
        .with_columns(vec![
            p().implies(r()),
            q().implies(r()),
            p().implies(r()).and(q().implies(r())),
            p().or(q()).implies(r()),
        ]),
    ]
}

/// Runs every law exhaustively.
pub fn law_suite() -> Result<LawReport> {
    let laws = laws().iter().map(Law::check).collect::<Result<Vec<_>>>()?;
    Ok(LawReport { laws })
}
