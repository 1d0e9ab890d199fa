//! Problem file schema: the group, the module description, and optional
//! named characters.

use gitfan::groupdata::{build_group, GroupData, GroupSpec, ModuleSpec, Summand, WeightSystem};
use gitfan::Int;
use serde::Deserialize;
use std::collections::BTreeMap;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub group: GroupSection,
    pub module: Vec<SummandRecord>,
    #[serde(default)]
    pub characters: BTreeMap<String, Vec<i64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSection {
    #[serde(default)]
    pub gl: Vec<usize>,
    #[serde(default)]
    pub torus: usize,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SummandRecord {
    TorusChar {
        weight: Vec<i64>,
        #[serde(default = "one")]
        multiplicity: usize,
    },
    Std {
        block: usize,
        #[serde(default)]
        twist: Vec<i64>,
        #[serde(default = "one")]
        multiplicity: usize,
    },
    DualStd {
        block: usize,
        #[serde(default)]
        twist: Vec<i64>,
        #[serde(default = "one")]
        multiplicity: usize,
    },
    Hom {
        src: usize,
        dst: usize,
        #[serde(default = "one")]
        multiplicity: usize,
    },
    Weights {
        columns: Vec<Vec<i64>>,
        #[serde(default)]
        multiplicities: Vec<usize>,
        #[serde(default = "one")]
        multiplicity: usize,
    },
}

fn one() -> usize {
    1
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

impl ProblemFile {
    pub fn parse(bytes: &[u8]) -> Result<ProblemFile, String> {
        serde_json::from_slice(bytes).map_err(|e| e.to_string())
    }

    /// Expand into group data and the weight system; all semantic checks
    /// (block indices, twist lengths, finite kernel) happen here.
    pub fn build(&self) -> Result<(GroupData, WeightSystem), String> {
        let spec = GroupSpec::new(self.group.gl.clone(), self.group.torus).map_err(|e| e.to_string())?;
        let mut summands = Vec::new();
        for rec in &self.module {
            match rec {
                SummandRecord::TorusChar { weight, multiplicity } => {
                    summands.push((Summand::TorusChar { weight: ints(weight) }, *multiplicity));
                }
                SummandRecord::Std { block, twist, multiplicity } => {
                    let twist = if twist.is_empty() { vec![0; spec.torus_rank] } else { twist.clone() };
                    summands.push((Summand::Std { block: *block, twist: ints(&twist) }, *multiplicity));
                }
                SummandRecord::DualStd { block, twist, multiplicity } => {
                    let twist = if twist.is_empty() { vec![0; spec.torus_rank] } else { twist.clone() };
                    summands.push((Summand::DualStd { block: *block, twist: ints(&twist) }, *multiplicity));
                }
                SummandRecord::Hom { src, dst, multiplicity } => {
                    summands.push((Summand::Hom { src: *src, dst: *dst }, *multiplicity));
                }
                SummandRecord::Weights { columns, multiplicities, multiplicity } => {
                    let mults = if multiplicities.is_empty() {
                        vec![1; columns.len()]
                    } else if multiplicities.len() == columns.len() {
                        multiplicities.clone()
                    } else {
                        return Err(format!(
                            "weights record has {} columns but {} multiplicities",
                            columns.len(),
                            multiplicities.len()
                        ));
                    };
                    summands.push((
                        Summand::Weights {
                            columns: columns.iter().map(|c| ints(c)).collect(),
                            multiplicities: mults,
                        },
                        *multiplicity,
                    ));
                }
            }
        }
        build_group(&spec, &ModuleSpec::new(summands)).map_err(|e| e.to_string())
    }
}
