//! Blowup scripts: a starting configuration, a list of points to blow up, and
//! optionally chains to contract afterwards.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "k_squared": 9, "picard_rank": 1,
//!   "curves": [{"id": "L1", "self_int": 1}, {"id": "L2", "self_int": 1}],
//!   "pairings": [["L1", "L2", 1]],
//!   "blowups": [{"exceptional": "E1", "passes_through": [["L1", 1], ["L2", 1]]}],
//!   "chains": [["L1"]]
//! }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hjcore::{Int, Rational};
use crate::json;
use crate::surface::{ChainSelection, ContractionResult, Curve, CurveConfig, PointSpec, blow_up, contract_chains};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveDoc {
    pub id: String,
    #[serde(with = "json::int")]
    pub self_int: Int,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exceptional_of: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingDoc(pub String, pub String, pub Int);

impl Serialize for PairingDoc {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        serde_json::json!([self.0, self.1, json::int_value(&self.2)]).serialize(s)
    }
}

impl<'de> Deserialize<'de> for PairingDoc {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let (a, b, k): (String, String, serde_json::Value) = Deserialize::deserialize(d)?;
        let k = json::int_from_value(&k).map_err(D::Error::custom)?;
        Ok(PairingDoc(a, b, k))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub exceptional: String,
    pub passes_through: Vec<(String, serde_json::Value)>,
}

/// A configuration as written to and read from JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDoc {
    pub schema_version: u64,
    #[serde(with = "json::int")]
    pub k_squared: Int,
    #[serde(with = "json::int")]
    pub picard_rank: Int,
    pub curves: Vec<CurveDoc>,
    pub pairings: Vec<PairingDoc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScriptDoc {
    pub schema_version: u64,
    #[serde(with = "json::int")]
    pub k_squared: Int,
    #[serde(with = "json::int")]
    pub picard_rank: Int,
    pub curves: Vec<CurveDoc>,
    pub pairings: Vec<PairingDoc>,
    #[serde(default)]
    pub blowups: Vec<PointDoc>,
    #[serde(default)]
    pub chains: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractedDoc {
    pub ids: Vec<String>,
    #[serde(with = "json::ints")]
    pub weights: Vec<Int>,
    #[serde(with = "json::ints")]
    pub triple: Vec<Int>,
    #[serde(with = "json::int")]
    pub delta: Int,
    pub coefficients: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractionDoc {
    pub chains: Vec<ContractedDoc>,
    #[serde(with = "json::int")]
    pub k_x_squared: Int,
    pub k_x_squared_from_matrix: Rational,
}

/// Output of a replayed script.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReplayDoc {
    pub schema_version: u64,
    pub surface: ConfigDoc,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contraction: Option<ContractionDoc>,
}

pub fn config_doc(cfg: &CurveConfig) -> ConfigDoc {
    ConfigDoc {
        schema_version: json::SCHEMA_VERSION,
        k_squared: cfg.k_squared.clone(),
        picard_rank: cfg.picard_rank.clone(),
        curves: cfg
            .curves()
            .iter()
            .map(|c| CurveDoc { id: c.id.clone(), self_int: c.self_int.clone(), exceptional_of: c.exceptional_of.clone() })
            .collect(),
        pairings: cfg.pairing_list().into_iter().map(|(a, b, k)| PairingDoc(a, b, k)).collect(),
    }
}

fn build_config(k_squared: &Int, picard_rank: &Int, curves: &[CurveDoc], pairings: &[PairingDoc]) -> Result<CurveConfig> {
    let mut cfg = CurveConfig::new(k_squared.clone(), picard_rank.clone());
    for c in curves {
        cfg.push_curve(Curve { id: c.id.clone(), self_int: c.self_int.clone(), exceptional_of: c.exceptional_of.clone() })?;
    }
    for PairingDoc(a, b, k) in pairings {
        if cfg.pairing(a, b)? != Int::ZERO {
            return Err(Error::Input(format!("pairing {a},{b} given twice")));
        }
        cfg.set_pairing(a, b, k.clone())?;
    }
    Ok(cfg)
}

pub fn config_from_doc(doc: &ConfigDoc) -> Result<CurveConfig> {
    build_config(&doc.k_squared, &doc.picard_rank, &doc.curves, &doc.pairings)
}

fn parse_versioned<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Input(e.to_string()))?;
    json::check_schema_version(&v).map_err(Error::Input)?;
    serde_json::from_value(v).map_err(|e| Error::Input(e.to_string()))
}

pub fn parse_script(text: &str) -> Result<ScriptDoc> {
    parse_versioned(text)
}

pub fn parse_replay(text: &str) -> Result<ReplayDoc> {
    parse_versioned(text)
}

pub fn contraction_doc(r: &ContractionResult) -> ContractionDoc {
    ContractionDoc {
        chains: r
            .per_chain
            .iter()
            .map(|c| ContractedDoc {
                ids: c.ids.clone(),
                weights: c.weights.as_slice().to_vec(),
                triple: vec![c.triple.d().clone(), c.triple.n().clone(), c.triple.a().clone()],
                delta: c.delta.clone(),
                coefficients: c.coefficients.clone(),
            })
            .collect(),
        k_x_squared: r.k_x_squared.clone(),
        k_x_squared_from_matrix: r.k_x_squared_from_matrix.clone(),
    }
}

/// Applies every blowup in order, then contracts the listed chains if any.
pub fn replay(script: &ScriptDoc) -> Result<(CurveConfig, Option<ContractionResult>)> {
    let mut cfg = build_config(&script.k_squared, &script.picard_rank, &script.curves, &script.pairings)?;
    for b in &script.blowups {
        let mut through = Vec::new();
        for (id, m) in &b.passes_through {
            through.push((id.clone(), json::int_from_value(m).map_err(Error::Input)?));
        }
        cfg = blow_up(&cfg, &PointSpec { exceptional: b.exceptional.clone(), passes_through: through })?;
    }
    let contraction = if script.chains.is_empty() {
        None
    } else {
        let sel = ChainSelection::new(&cfg, script.chains.clone())?;
        Some(contract_chains(&cfg, &sel)?)
    };
    Ok((cfg, contraction))
}

pub fn replay_doc(script: &ScriptDoc) -> Result<ReplayDoc> {
    let (cfg, c) = replay(script)?;
    Ok(ReplayDoc { schema_version: json::SCHEMA_VERSION, surface: config_doc(&cfg), contraction: c.as_ref().map(contraction_doc) })
}
