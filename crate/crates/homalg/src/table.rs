//! Homology dimension tables keyed by (homological index, weight degree),
//! with JSON and CSV serialization.

use serde::Serialize;
use std::collections::BTreeMap;

/// Which homology theory a table belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Poisson,
    Hochschild,
}

/// Table of `dim H_i(..)_d` for `0 <= i <= 4`, `0 <= d <= max_weight`.
/// Missing entries read as zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimTable {
    side: Side,
    max_weight: usize,
    dims: BTreeMap<(usize, usize), usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimRecord {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub side: Option<Side>,
    pub i: usize,
    pub d: usize,
    pub dim: usize,
}

impl DimTable {
    pub fn new(side: Side, max_weight: usize) -> Self {
        DimTable { side, max_weight, dims: BTreeMap::new() }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn set(&mut self, i: usize, d: usize, dim: usize) {
        debug_assert!(i <= 4 && d <= self.max_weight);
        self.dims.insert((i, d), dim);
    }

    pub fn get(&self, i: usize, d: usize) -> usize {
        self.dims.get(&(i, d)).copied().unwrap_or(0)
    }

    /// All `(i, d)` entries in deterministic order, including stored zeros.
    pub fn records(&self, with_side: bool) -> Vec<DimRecord> {
        self.dims
            .iter()
            .map(|(&(i, d), &dim)| DimRecord {
                side: with_side.then_some(self.side),
                i,
                d,
                dim,
            })
            .collect()
    }

    pub fn to_json(&self, with_side: bool) -> String {
        serde_json::to_string_pretty(&self.records(with_side)).expect("serialization cannot fail")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,d,dim\n");
        for r in self.records(false) {
            out.push_str(&format!("{},{},{}\n", r.i, r.d, r.dim));
        }
        out
    }

    /// Entrywise equality over the common index range (used by the
    /// deformation-invariance cross-check).
    pub fn agrees_with(&self, other: &DimTable, max_weight: usize) -> bool {
        for i in 0..=4 {
            for d in 0..=max_weight {
                if self.get(i, d) != other.get(i, d) {
                    return false;
                }
            }
        }
        true
    }
}
