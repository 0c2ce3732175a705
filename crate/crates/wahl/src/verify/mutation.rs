//! Single-field mutation survey of a fixture.
//!
//! Every integer leaf of the fixture JSON (except `schema_version`) is moved by
//! ±1 and the fixture re-verified over a spread of characteristics. A mutant is
//! killed when at some characteristic its outcome differs from the original's
//! and is not a pass: a failing condition, or a refusal of that characteristic.
//! Survivors that are a mirror reading of a palindromic chain describe the same
//! configuration and are reported as equivalent.

use serde_json::Value;

use super::{Fixture, verify_all};
use crate::hjcore::{Characteristic, Int};
use crate::json::{int_from_value, int_value};

/// Characteristics each mutant is verified at.
pub const SURVEY_CHARACTERISTICS: [u64; 7] = [0, 2, 3, 5, 7, 11, 13];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutant {
    /// JSON pointer of the mutated field.
    pub path: String,
    pub from: Int,
    pub to: Int,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MutationSurvey {
    pub fixture: String,
    pub killed: Vec<Mutant>,
    /// Killed because the mutated fixture no longer parses.
    pub rejected: Vec<Mutant>,
    pub equivalent: Vec<Mutant>,
    pub survived: Vec<Mutant>,
}

impl MutationSurvey {
    pub fn total(&self) -> usize {
        self.killed.len() + self.rejected.len() + self.equivalent.len() + self.survived.len()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail,
    Refused,
}

fn outcomes(fx: &Fixture) -> Vec<Outcome> {
    SURVEY_CHARACTERISTICS
        .iter()
        .map(|&p| {
            let p = Characteristic::new(p).expect("survey characteristics are 0 or prime");
            match verify_all(fx, p) {
                Ok(r) if r.passed() => Outcome::Pass,
                Ok(_) => Outcome::Fail,
                Err(_) => Outcome::Refused,
            }
        })
        .collect()
}

fn integer_leaves(v: &Value, path: String, out: &mut Vec<String>) {
    match v {
        Value::Number(_) => out.push(path),
        Value::Array(a) => {
            for (i, x) in a.iter().enumerate() {
                integer_leaves(x, format!("{path}/{i}"), out);
            }
        }
        Value::Object(m) => {
            for (k, x) in m {
                if path.is_empty() && k == "schema_version" {
                    continue;
                }
                integer_leaves(x, format!("{path}/{k}"), out);
            }
        }
        _ => {}
    }
}

/// A survivor that moves a component index to its mirror on a palindromic chain.
fn is_mirror(fx: &Value, m: &Mutant) -> bool {
    let Some(parent) = m.path.strip_suffix("/component") else {
        return false;
    };
    let Some(chain) = fx.pointer(&format!("{parent}/chain")).and_then(Value::as_u64) else {
        return false;
    };
    let Some(w) = fx.pointer(&format!("/chains/{}/weights", chain.saturating_sub(1))).and_then(Value::as_array) else {
        return false;
    };
    let l = Int::from(w.len());
    let palindrome = w.iter().eq(w.iter().rev());
    palindrome && m.to == &l + Int::ONE - &m.from
}

pub fn survey(fx: &Fixture) -> MutationSurvey {
    let base = outcomes(fx);
    let v = serde_json::to_value(fx).expect("fixtures serialize");
    let mut paths = Vec::new();
    integer_leaves(&v, String::new(), &mut paths);
    let mut out = MutationSurvey { fixture: fx.name.clone(), ..Default::default() };
    for path in paths {
        let from = int_from_value(v.pointer(&path).expect("leaf exists")).expect("fixture leaves are integers");
        for step in [Int::ONE, -Int::ONE] {
            let to = &from + &step;
            let mut mv = v.clone();
            *mv.pointer_mut(&path).expect("leaf exists") = int_value(&to);
            let m = Mutant { path: path.clone(), from: from.clone(), to };
            let Ok(mutated) = serde_json::from_value::<Fixture>(mv) else {
                out.rejected.push(m);
                continue;
            };
            let now = outcomes(&mutated);
            let killed = base.iter().zip(&now).any(|(b, n)| b != n && *n != Outcome::Pass);
            if killed {
                out.killed.push(m);
            } else if is_mirror(&v, &m) {
                out.equivalent.push(m);
            } else {
                out.survived.push(m);
            }
        }
    }
    out
}
