//! Finite-scale versions of the representation constructions: diagonal
//! recovery from substitutions, the blow-up embedding, rearrangement along
//! matchings under the diagonals, and the splitting that represents
//! permutations on repetition-free atoms.
//!
//! Every stage checks its own output and reports failures instead of
//! repairing them.

pub mod blowup;
pub mod diagonals;
pub mod permutations;
mod presented;
pub mod substitutions;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::checker::CheckError;
use crate::duality::DualityError;

pub use blowup::BlowupMap;
pub use diagonals::{recover_diagonals, verify_rdsc, DiagonalFamily, RdscReport, WithDiagonals};
pub use permutations::{
    run_permutation_pipeline, ImageAlgebra, PermGroup, PermutationRun, SplitFamily,
};
pub use presented::{twisted_diagonals, Presented};
pub use substitutions::{run_substitution_pipeline, DomPartition, Rearrangement, SubstitutionRun};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentError {
    #[error("s_{i}{j} of the recovered diagonal is not 1: not an SCA model, run the SCA suite")]
    NotSca { i: usize, j: usize },

    #[error("atoms {a} and {b} below d_{i}{j} have domains that are neither equal nor disjoint")]
    Dichotomy {
        i: usize,
        j: usize,
        a: usize,
        b: usize,
    },

    #[error("dom_{k} of d_{i}{j} is not the whole base")]
    DomNotFull { i: usize, j: usize, k: usize },

    #[error(
        "matching failed; increase W (f_0{i}, class {class}: {left} left and {right} right \
         vertices, {matched} matched; |W| >= |U|*alpha is the suggested retry)"
    )]
    MatchingFailed {
        i: usize,
        class: usize,
        left: usize,
        right: usize,
        matched: usize,
    },

    #[error("f_0{i} is not a bijection of the base: {detail}")]
    NotBijective { i: usize, detail: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("{op} of atom {atom} is not a union of atoms")]
    NotClosed { op: String, atom: usize },

    #[error("atoms do not partition the unit: {0}")]
    NotPartition(String),

    #[error("{what} fails: {witness}")]
    Verification { what: String, witness: String },

    #[error("atom {atom} is marked repetition-free but contains a sequence with a repetition")]
    Classification { atom: usize },

    #[error(transparent)]
    Core(#[from] crate::error::Error),

    #[error(transparent)]
    Duality(#[from] DualityError),

    #[error(transparent)]
    Check(#[from] CheckError),
}

/// Outcome of one verification step, as recorded in a manifest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StepCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl StepCheck {
    pub fn pass(name: impl Into<String>, detail: impl Into<String>) -> Self {
        StepCheck {
            name: name.into(),
            passed: true,
            detail: detail.into(),
        }
    }
}

/// What a representation run did, for `--out` manifests.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Manifest {
    pub construction: String,
    pub alpha: usize,
    #[serde(rename = "U")]
    pub u: usize,
    #[serde(rename = "W")]
    pub w: usize,
    #[serde(rename = "V")]
    pub v: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<Vec<usize>>>,
    pub representatives: Vec<Vec<usize>>,
    pub matchings: BTreeMap<String, Vec<usize>>,
    pub checks: Vec<StepCheck>,
}

pub(crate) fn require(
    cond: bool,
    what: &str,
    witness: impl FnOnce() -> String,
) -> Result<(), RepresentError> {
    if cond {
        Ok(())
    } else {
        Err(RepresentError::Verification {
            what: what.to_string(),
            witness: witness(),
        })
    }
}
