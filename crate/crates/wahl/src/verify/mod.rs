//! Verifier for rational blowup constructions of surfaces of general type.
//!
//! A [`Fixture`] records the numerical data of a construction: the chains to be
//! contracted, the (−1)-curves relevant to the bound on `Δ·E`, the flanking
//! curves of each chain, a Gram block whose determinant controls the smoothing,
//! simply-connectedness witnesses and the ampleness data. [`verify_all`]
//! recomputes everything checkable and folds the rest in as cited assertions.
//!
//! Chain and component indices in fixtures are 1-based.

mod builtin;
mod checks;
pub mod mutation;
mod report;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hjcore::{Characteristic, Int};
use crate::json;

pub use builtin::{builtin, builtin_names, builtin_source, builtins};
pub use checks::{
    check_a3_and_ampleness, check_c4, check_c8, check_c9, check_c10, check_c11, check_simply_connected_sufficient,
};
pub use report::{ReportEntry, Status, VerificationReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub schema_version: u64,
    pub name: String,
    #[serde(default)]
    pub description: String,
    #[serde(with = "json::ints")]
    pub excluded_characteristics: Vec<Int>,
    #[serde(with = "json::int")]
    pub target_k_squared: Int,
    #[serde(with = "json::int")]
    pub k_m_squared: Int,
    #[serde(with = "json::int")]
    pub picard_rank_m: Int,
    pub chains: Vec<FixtureChain>,
    /// The `δ` summands as displayed; consecutive chains may be grouped into one summand.
    #[serde(default, with = "json::ints")]
    pub displayed_deltas: Vec<Int>,
    #[serde(default)]
    pub minus_one_curves: Vec<MinusOneCurve>,
    #[serde(default)]
    pub joining_curves: Vec<JoiningCurve>,
    #[serde(default)]
    pub flanking: Option<Vec<Flank>>,
    #[serde(default)]
    pub gram: Option<GramData>,
    #[serde(default)]
    pub sc_witnesses: Option<Vec<ScWitness>>,
    /// Exceptional curves of `M → P²` that lie outside every chain.
    #[serde(default)]
    pub other_exceptional_curves: Vec<OtherCurve>,
    pub ampleness: AmplenessData,
    #[serde(default)]
    pub asserted_facts: Vec<AssertedFact>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureChain {
    pub label: String,
    #[serde(with = "json::ints")]
    pub weights: Vec<Int>,
    /// The claimed class-T triple `[d, n, a]`.
    #[serde(with = "json::ints")]
    pub expected: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Attachment {
    pub chain: usize,
    pub component: usize,
    #[serde(with = "json::int")]
    pub multiplicity: Int,
    /// Self-intersection of the component met, as stated alongside the curve.
    #[serde(with = "json::int")]
    pub self_int: Int,
}

/// A displayed summand `1 − r/n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Summand {
    #[serde(with = "json::int")]
    pub r: Int,
    #[serde(with = "json::int")]
    pub n: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinusOneCurve {
    pub id: String,
    pub attachments: Vec<Attachment>,
    /// The summands of `Δ·E` as displayed, one per attachment.
    pub displayed: Vec<Summand>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JoiningCurve {
    pub id: String,
    pub attachments: Vec<Attachment>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlankMeet {
    pub component: usize,
    #[serde(with = "json::int")]
    pub multiplicity: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlankCurve {
    pub id: String,
    pub meets: Vec<FlankMeet>,
    pub in_b_plus: bool,
}

/// `gamma` must meet component 1 once and `gamma_prime` component `l` once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flank {
    pub chain: usize,
    pub gamma: FlankCurve,
    pub gamma_prime: FlankCurve,
    /// Where the adjacency was read from.
    #[serde(default)]
    pub source: String,
}

/// A block diagonal intersection matrix: `A_n` blocks plus an optional explicit block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramData {
    pub description: String,
    pub a_blocks: Vec<usize>,
    #[serde(default, with = "json::opt_int_matrix", skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<Int>>>,
    #[serde(with = "json::int")]
    pub determinant: Int,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScWitness {
    pub chains: [usize; 2],
    pub curve: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OtherCurve {
    pub id: String,
    #[serde(with = "json::int")]
    pub self_int: Int,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Claim {
    Ample,
    NotAmple,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AmplenessData {
    /// Every curve of `B⁺` meeting exactly one component of `D` meets a chain end.
    pub a1: Option<bool>,
    /// Every curve of `B⁺` meets `D` in at least two points with multiplicity.
    pub a2: Option<bool>,
    /// Whether `B` contains `J_1` or `J_2`.
    pub b_contains_j: bool,
    /// Citation for a construction-specific argument, if one is needed.
    #[serde(default)]
    pub bespoke: Option<String>,
    pub claimed: Claim,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssertedFact {
    pub condition: String,
    pub citation: String,
}

impl Fixture {
    pub fn from_json(text: &str) -> Result<Fixture> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
        json::check_schema_version(&v).map_err(Error::Input)?;
        serde_json::from_value(v).map_err(|e| Error::Input(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fixtures serialize")
    }

    pub fn fact(&self, condition: &str) -> Option<&AssertedFact> {
        self.asserted_facts.iter().find(|f| f.condition == condition)
    }

    /// The excluded characteristics, each of which must be prime.
    pub fn excluded(&self) -> Result<Vec<Characteristic>> {
        self.excluded_characteristics
            .iter()
            .map(|p| {
                let v = u64::try_from(p).map_err(|_| Error::Input(format!("{}: bad excluded characteristic {p}", self.name)))?;
                if v == 0 {
                    return Err(Error::Input(format!("{}: characteristic 0 cannot be excluded", self.name)));
                }
                Characteristic::new(v).map_err(|e| Error::Input(format!("{}: {e}", self.name)))
            })
            .collect()
    }
}

/// Runs every check at characteristic `p`.
pub fn verify_all(fx: &Fixture, p: Characteristic) -> Result<VerificationReport> {
    let excluded = fx.excluded()?;
    if excluded.contains(&p) {
        return Err(Error::ExcludedCharacteristic {
            name: fx.name.clone(),
            p: p.value(),
            excluded: excluded.iter().map(|c| c.value()).collect(),
        });
    }
    let ctx = checks::Context::new(fx);
    let c9 = check_c9(fx);
    let k_x_squared = c9.details.get("k_x_squared").and_then(|v| json::int_from_value(v).ok());
    let mut entries = vec![
        checks::c4_with(fx, p, &excluded),
        check_c8(fx),
        c9,
        checks::c10_with(fx, &ctx),
        checks::c11_with(fx, &ctx),
        check_a3_and_ampleness(fx),
        checks::sc_with(fx, &ctx),
    ];
    entries.extend(checks::asserted_entries(fx));
    Ok(VerificationReport::new(fx.name.clone(), p, k_x_squared, entries))
}
