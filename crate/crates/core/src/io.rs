//! JSON file formats: nets, dual nets and report views.
//!
//! Every document carries `"schema": "netforge/1"`. Field elements are
//! written as coefficient vectors (low-to-high) of length `r`.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::constructions::Constructed;
use crate::field::{Field, FieldDescriptor, FieldElement, FieldError};
use crate::net::{CrossRatioReport, DualKNet, KNet};
use crate::plane::{GeometryError, ProjLine, ProjPoint, Triple};

pub const SCHEMA: &str = "netforge/1";

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema {0:?}, expected {SCHEMA:?}")]
    Schema(String),
    #[error("expected a {expected}, found a {found}")]
    Kind { expected: &'static str, found: &'static str },
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NetKind {
    Net,
    Dual,
}

impl NetKind {
    fn name(self) -> &'static str {
        match self {
            NetKind::Net => "net",
            NetKind::Dual => "dual",
        }
    }
}

pub type CoeffTriple = [Vec<u64>; 3];

/// On-disk representation of a net or dual net.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NetFile {
    pub schema: String,
    pub field: FieldDescriptor,
    pub kind: NetKind,
    pub components: Vec<Vec<CoeffTriple>>,
}

pub fn element_json(f: &Field, a: FieldElement) -> Vec<u64> {
    f.coeffs(a)
}

fn triple_json(f: &Field, t: &Triple) -> CoeffTriple {
    [f.coeffs(t[0]), f.coeffs(t[1]), f.coeffs(t[2])]
}

fn parse_triple(f: &Field, t: &CoeffTriple) -> Result<Triple, FieldError> {
    Ok([f.from_coeffs(&t[0])?, f.from_coeffs(&t[1])?, f.from_coeffs(&t[2])?])
}

impl NetFile {
    pub fn from_net(net: &KNet) -> Self {
        let f = net.field();
        NetFile {
            schema: SCHEMA.into(),
            field: f.descriptor(),
            kind: NetKind::Net,
            components: net
                .components()
                .iter()
                .map(|c| c.iter().map(|l| triple_json(f, &l.coeffs())).collect())
                .collect(),
        }
    }

    pub fn from_dual(net: &DualKNet) -> Self {
        let f = net.field();
        NetFile {
            schema: SCHEMA.into(),
            field: f.descriptor(),
            kind: NetKind::Dual,
            components: net
                .components()
                .iter()
                .map(|c| c.iter().map(|p| triple_json(f, &p.coords())).collect())
                .collect(),
        }
    }

    pub fn from_constructed(c: &Constructed) -> Self {
        match c {
            Constructed::Net(n) => NetFile::from_net(n),
            Constructed::Dual(d) => NetFile::from_dual(d),
        }
    }

    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: NetFile = serde_json::from_str(text)?;
        if file.schema != SCHEMA {
            return Err(FormatError::Schema(file.schema));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn to_compact_json(&self) -> String {
        serde_json::to_string(self).expect("serializable")
    }

    /// Hex SHA-256 of the compact serialization.
    pub fn digest(&self) -> String {
        hex::encode(Sha256::digest(self.to_compact_json().as_bytes()))
    }

    pub fn into_constructed(&self) -> Result<Constructed, FormatError> {
        let f = Field::from_descriptor(&self.field)?;
        match self.kind {
            NetKind::Net => {
                let comps = self
                    .components
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(|t| Ok(ProjLine::new(&f, parse_triple(&f, t)?)?))
                            .collect::<Result<Vec<_>, FormatError>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Constructed::Net(KNet::new(&f, comps)))
            }
            NetKind::Dual => {
                let comps = self
                    .components
                    .iter()
                    .map(|c| {
                        c.iter()
                            .map(|t| Ok(ProjPoint::new(&f, parse_triple(&f, t)?)?))
                            .collect::<Result<Vec<_>, FormatError>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(Constructed::Dual(DualKNet::new(&f, comps)))
            }
        }
    }

    pub fn into_net(&self) -> Result<KNet, FormatError> {
        match self.into_constructed()? {
            Constructed::Net(n) => Ok(n),
            Constructed::Dual(_) => Err(FormatError::Kind { expected: "net", found: NetKind::Dual.name() }),
        }
    }
}

/// JSON view of a cross-ratio analysis, optionally with the pencil value.
pub fn cross_ratio_json(f: &Field, r: &CrossRatioReport, pencil: Option<FieldElement>) -> Value {
    let per_point: Vec<Value> = r
        .per_point
        .iter()
        .map(|(p, k)| json!({ "point": triple_json(f, &p.coords()), "kappa": element_json(f, *k) }))
        .collect();
    let orbit: Vec<Vec<u64>> = r.orbit.iter().map(|&k| element_json(f, k)).collect();
    let mut v = json!({
        "schema": SCHEMA,
        "field": f.descriptor(),
        "n": r.n,
        "kappa": element_json(f, r.kappa),
        "orbit": orbit,
        "constant": r.constant,
        "N": r.constraints.exponent,
        "kappa_pow_N_is_one": r.constraints.kappa_pow_is_one,
        "kappa_minus_one_pow_N_is_one": r.constraints.kappa_minus_one_pow_is_one,
        "satisfies_eq8": r.satisfies_eq8(),
        "satisfies_eq9": r.satisfies_eq9(),
        "per_point": per_point,
    });
    if let Some(k) = pencil {
        v["pencil_kappa"] = json!(element_json(f, k));
        v["pencil_in_orbit"] = json!(r.orbit.contains(&k));
    }
    v
}

/// Wraps a serializable report with the schema tag.
pub fn tagged<T: Serialize>(value: &T) -> Value {
    let mut v = serde_json::to_value(value).expect("serializable");
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    v
}
