//! JSON descriptions of finite rings: the on-disk format the command-line
//! interface ingests.
//!
//! A ring file is a single JSON object with a `schema` version, a `kind`
//! tag choosing the constructor, kind-specific fields, and an optional
//! cosmetic `label`. Composite kinds (`matrix`, `product`, `triangular`,
//! `group_algebra`) nest further ring descriptions without repeating the
//! version field. The `tables` kind carries raw addition and
//! multiplication matrices and is revalidated against every ring axiom on
//! load, so a file can never smuggle in a non-ring.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ring::{FiniteRing, RingError};

/// The schema version this build reads and writes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum SpecFileError {
    #[error("failed to parse ring description: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}; this build reads version {SCHEMA_VERSION}")]
    SchemaVersion(u32),
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// A constructor expression for a finite ring.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingSpec {
    Zmod {
        n: usize,
    },
    Matrix {
        base: Box<RingSpec>,
        n: usize,
    },
    Product {
        left: Box<RingSpec>,
        right: Box<RingSpec>,
    },
    Triangular {
        base: Box<RingSpec>,
        n: usize,
    },
    GroupAlgebra {
        base: Box<RingSpec>,
        group: Vec<Vec<usize>>,
    },
    Tables {
        order: usize,
        add: Vec<Vec<usize>>,
        mul: Vec<Vec<usize>>,
        zero: usize,
        one: usize,
    },
}

impl RingSpec {
    /// Build the ring this expression describes.
    pub fn build(&self) -> Result<FiniteRing, SpecFileError> {
        let ring = match self {
            RingSpec::Zmod { n } => FiniteRing::zmod(*n)?,
            RingSpec::Matrix { base, n } => FiniteRing::matrix(&base.build()?, *n)?,
            RingSpec::Product { left, right } => {
                FiniteRing::product(&left.build()?, &right.build()?)?
            }
            RingSpec::Triangular { base, n } => {
                FiniteRing::upper_triangular(&base.build()?, *n)?
            }
            RingSpec::GroupAlgebra { base, group } => {
                FiniteRing::group_algebra(&base.build()?, group)?
            }
            RingSpec::Tables {
                order,
                add,
                mul,
                zero,
                one,
            } => FiniteRing::from_tables(
                *order,
                add.clone(),
                mul.clone(),
                *zero,
                *one,
                format!("tables({order})"),
            )?,
        };
        Ok(ring)
    }
}

/// A complete ring file: version, constructor, optional label.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RingSpecFile {
    pub schema: u32,
    #[serde(flatten)]
    pub spec: RingSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl RingSpecFile {
    pub fn new(spec: RingSpec) -> Self {
        RingSpecFile {
            schema: SCHEMA_VERSION,
            spec,
            label: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("ring specs are always serializable")
    }
}

/// Parse a ring file and build the ring it describes, applying the label
/// override when present.
pub fn parse_ring_spec(json: &str) -> Result<FiniteRing, SpecFileError> {
    let file: RingSpecFile = serde_json::from_str(json)?;
    if file.schema != SCHEMA_VERSION {
        return Err(SpecFileError::SchemaVersion(file.schema));
    }
    let ring = file.spec.build()?;
    Ok(match file.label {
        Some(label) => ring.with_label(label),
        None => ring,
    })
}
