//! File formats.
//!
//! Instances are stored by columns: `columns[j][i]` is agent `j`'s utility
//! for item `i` (items are rows of the matrix, agents are columns). Every
//! number is an exact fraction written as `"p/q"` or `"p"`.

use std::fmt::Display;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::UtilityMatrix;
use crate::solver::StructuredWitness;
use crate::Rational;

pub fn ser_display<T: Display, S: Serializer>(value: &T, ser: S) -> Result<S::Ok, S::Error> {
    ser.collect_str(value)
}

pub fn ser_display_opt<T: Display, S: Serializer>(value: &Option<T>, ser: S) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => ser.collect_str(v),
        None => ser.serialize_none(),
    }
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("not a fraction: {text:?}"));
    if text.is_empty() || text.contains(char::is_whitespace) {
        return Err(bad());
    }
    let value: Rational = text.parse().map_err(|_| bad())?;
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub n: usize,
    pub m: usize,
    pub columns: Vec<Vec<String>>,
}

impl InstanceFile {
    pub fn from_matrix(x: &UtilityMatrix<Rational>) -> Self {
        InstanceFile {
            n: x.agents(),
            m: x.items(),
            columns: x.columns().iter().map(|c| c.iter().map(ToString::to_string).collect()).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<UtilityMatrix<Rational>> {
        if self.columns.len() != self.n {
            return Err(Error::DimensionMismatch(format!("n = {} but {} columns", self.n, self.columns.len())));
        }
        if let Some((j, c)) = self.columns.iter().enumerate().find(|(_, c)| c.len() != self.m) {
            return Err(Error::DimensionMismatch(format!(
                "m = {} but column {} has {} entries",
                self.m,
                j + 1,
                c.len()
            )));
        }
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|v| parse_rational(v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        UtilityMatrix::from_columns(columns)
    }
}

pub fn read_instance(json: &str) -> Result<UtilityMatrix<Rational>> {
    let file: InstanceFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_matrix()
}

pub fn write_instance(x: &UtilityMatrix<Rational>) -> String {
    serde_json::to_string_pretty(&InstanceFile::from_matrix(x)).expect("plain data")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessFile {
    pub n: usize,
    pub s: Vec<usize>,
    pub r: Vec<usize>,
    pub ratio: String,
}

impl WitnessFile {
    pub fn from_witness(w: &StructuredWitness<Rational>) -> Self {
        WitnessFile { n: w.n(), s: w.s.clone(), r: w.r.clone(), ratio: w.ratio.to_string() }
    }

    /// Parsed and validated witness.
    pub fn to_witness(&self) -> Result<StructuredWitness<Rational>> {
        if self.s.len() != self.n || self.r.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "n = {} but |s| = {}, |r| = {}",
                self.n,
                self.s.len(),
                self.r.len()
            )));
        }
        let w = StructuredWitness { s: self.s.clone(), r: self.r.clone(), ratio: parse_rational(&self.ratio)? };
        w.validate()?;
        Ok(w)
    }
}

pub fn read_witness(json: &str) -> Result<StructuredWitness<Rational>> {
    let file: WitnessFile = serde_json::from_str(json).map_err(|e| Error::Parse(e.to_string()))?;
    file.to_witness()
}

pub fn write_witness(w: &StructuredWitness<Rational>) -> String {
    serde_json::to_string_pretty(&WitnessFile::from_witness(w)).expect("plain data")
}

/// Nonzero entries of a profile as `size:count` pairs, e.g. `2:1;3:1;5:3`.
pub fn support_string(profile: &[usize]) -> String {
    profile
        .iter()
        .enumerate()
        .filter(|(_, &c)| c > 0)
        .map(|(i, c)| format!("{}:{c}", i + 1))
        .collect::<Vec<_>>()
        .join(";")
}
