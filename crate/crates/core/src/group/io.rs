//! JSON form of a group description.
//!
//! ```json
//! {"dim": 2, "conductor": 3, "generators": [["0@3","1@3","1@3","0@3"]], "metadata": {}}
//! ```
//! Each generator is a row-major list of entry strings `c0/d0,c1/d1,...@n`.

use serde::{Deserialize, Serialize};

use super::{GroupError, GroupMetadata, GroupSpec};
use crate::cyclo::CycloMatrix;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupFile {
    dim: usize,
    conductor: u32,
    generators: Vec<Vec<String>>,
    #[serde(default)]
    metadata: GroupMetadata,
}

impl GroupSpec {
    pub fn from_json(s: &str) -> Result<Self, GroupError> {
        let f: GroupFile = serde_json::from_str(s).map_err(|e| GroupError::Schema(e.to_string()))?;
        if f.dim == 0 {
            return Err(GroupError::Schema("dimension must be positive".into()));
        }
        let mut gens = Vec::with_capacity(f.generators.len());
        for (i, g) in f.generators.iter().enumerate() {
            if g.len() != f.dim * f.dim {
                return Err(GroupError::Schema(format!(
                    "generator {i} has {} entries, expected {}",
                    g.len(),
                    f.dim * f.dim
                )));
            }
            let m = CycloMatrix::from_entry_strings(f.dim, g)
                .map_err(|e| GroupError::Schema(format!("generator {i}: {e}")))?;
            gens.push(m);
        }
        if let Some(blocks) = &f.metadata.block_system {
            let mut seen = vec![false; f.dim];
            for &c in blocks.iter().flatten() {
                if c >= f.dim || std::mem::replace(&mut seen[c], true) {
                    return Err(GroupError::Schema("block system is not a partition of the coordinates".into()));
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(GroupError::Schema("block system is not a partition of the coordinates".into()));
            }
        }
        GroupSpec::with_conductor(f.dim, f.conductor, gens, f.metadata)
    }

    pub fn to_json(&self) -> String {
        let f = GroupFile {
            dim: self.dim,
            conductor: self.conductor,
            generators: self.generators.iter().map(|g| g.to_entry_strings()).collect(),
            metadata: self.metadata.clone(),
        };
        serde_json::to_string_pretty(&f).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_exact() {
        let s = r#"{"dim":2,"conductor":6,"generators":[["0","1@3","1","0"],["1/2,1@6","0","0","1"]],"metadata":{"label":"t"}}"#;
        let err = GroupSpec::from_json(s).unwrap_err();
        assert!(matches!(err, GroupError::Schema(_)));
        let s = r#"{"dim":2,"conductor":6,"generators":[["0@1","0,1@3","1@1","0@1"],["1/2,1@6","0@1","0@1","1@1"]],"metadata":{"label":"t"}}"#;
        let g = GroupSpec::from_json(s).unwrap();
        let j = g.to_json();
        let h = GroupSpec::from_json(&j).unwrap();
        assert_eq!(g, h);
        assert_eq!(j, h.to_json());
        assert!(j.contains("\"-1,1@6\""));
    }

    #[test]
    fn rejects_bad_shapes() {
        let s = r#"{"dim":2,"conductor":1,"generators":[["1@1"]]}"#;
        assert!(matches!(GroupSpec::from_json(s), Err(GroupError::Schema(_))));
        let s = r#"{"dim":1,"conductor":2,"generators":[["1@3"]]}"#;
        assert!(matches!(GroupSpec::from_json(s), Err(GroupError::Schema(_))));
        let s = r#"{"dim":2,"conductor":1,"generators":[],"metadata":{"block_system":[[0],[0]]}}"#;
        assert!(matches!(GroupSpec::from_json(s), Err(GroupError::Schema(_))));
        let s = r#"{"dim":1,"conductor":1,"generators":[],"extra":1}"#;
        assert!(matches!(GroupSpec::from_json(s), Err(GroupError::Schema(_))));
    }
}
