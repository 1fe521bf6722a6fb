//! JSON formats for groups, G-sets and transfer systems.
//!
//! ```json
//! {"name": "C3", "table": [[0,1,2],[1,2,0],[2,0,1]]}
//! {"name": "S3", "degree": 3, "generators": [[1,0,2],[1,2,0]]}
//! {"orbits": [["e", 1], ["C2", 2]]}
//! {"group": "C4", "pairs": [["e", "G"]]}
//! ```
//!
//! Subgroup references are numeric ids or names accepted by
//! [`SubgroupLattice::resolve`].

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Builtin, FiniteGroup, SubgroupId, SubgroupLattice};
use crate::gset::GSet;
use crate::limits::Limits;
use crate::transfer::TransferSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SubgroupRef {
    Id(usize),
    Name(String),
}

impl SubgroupRef {
    pub fn resolve(&self, lattice: &SubgroupLattice) -> Result<SubgroupId> {
        match self {
            SubgroupRef::Id(i) => lattice.check(SubgroupId(*i)),
            SubgroupRef::Name(s) => lattice.resolve(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Builtin(String),
    Table {
        name: String,
        table: Vec<Vec<usize>>,
    },
    Permutations {
        name: String,
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

impl GroupSpec {
    pub fn build(&self, limits: &Limits) -> Result<FiniteGroup> {
        let group = match self {
            GroupSpec::Builtin(name) => name.parse::<Builtin>()?.build()?,
            GroupSpec::Table { name, table } => {
                limits.check_group_order(table.len())?;
                FiniteGroup::from_table(table, name.clone())?
            }
            GroupSpec::Permutations {
                name,
                degree,
                generators,
            } => FiniteGroup::from_permutations(
                *degree,
                generators,
                name.clone(),
                limits.max_group_order,
            )?,
        };
        limits.check_group_order(group.order())?;
        Ok(group)
    }
}

/// Orbit data: `mult` copies of `H/K` for each entry `[K, mult]`, over the
/// subgroup `acting` (the whole group when absent).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GSetSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub acting: Option<SubgroupRef>,
    pub orbits: Vec<(SubgroupRef, usize)>,
}

impl GSetSpec {
    /// Parses the inline form `K:mult,K:mult` (a bare `K` means one copy);
    /// an empty string is the empty set.
    pub fn parse_inline(s: &str) -> Result<Self> {
        let mut orbits = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, m) = match part.rsplit_once(':') {
                Some((k, m)) => {
                    let m = m.trim().parse::<usize>().map_err(|_| {
                        Error::InvalidInput(format!("bad multiplicity in '{part}'"))
                    })?;
                    (k.trim(), m)
                }
                None => (part, 1),
            };
            let r = match k.parse::<usize>() {
                Ok(i) => SubgroupRef::Id(i),
                Err(_) => SubgroupRef::Name(k.to_string()),
            };
            orbits.push((r, m));
        }
        Ok(GSetSpec {
            acting: None,
            orbits,
        })
    }

    /// Inline text or a JSON object.
    pub fn parse(s: &str) -> Result<Self> {
        if s.trim_start().starts_with('{') {
            serde_json::from_str(s).map_err(|e| Error::InvalidInput(format!("G-set JSON: {e}")))
        } else {
            Self::parse_inline(s)
        }
    }

    pub fn build(
        &self,
        lattice: &Arc<SubgroupLattice>,
        default_acting: SubgroupId,
    ) -> Result<GSet> {
        let acting = match &self.acting {
            Some(r) => r.resolve(lattice)?,
            None => default_acting,
        };
        let orbits = self
            .orbits
            .iter()
            .map(|(r, m)| Ok((r.resolve(lattice)?, *m)))
            .collect::<Result<Vec<_>>>()?;
        GSet::from_orbits(lattice.clone(), acting, &orbits)
    }
}

/// Input form of a transfer system: generating pairs, closed on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferSystemSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub pairs: Vec<(SubgroupRef, SubgroupRef)>,
}

impl TransferSystemSpec {
    pub fn build(&self, lattice: &Arc<SubgroupLattice>) -> Result<TransferSystem> {
        let pairs = self
            .pairs
            .iter()
            .map(|(k, h)| Ok((k.resolve(lattice)?, h.resolve(lattice)?)))
            .collect::<Result<Vec<_>>>()?;
        TransferSystem::generate(lattice.clone(), &pairs)
    }
}

/// Output form: the generating data plus the full closed relation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferSystemExport {
    pub group: String,
    pub pairs: Vec<(usize, usize)>,
    pub relation: Vec<Vec<bool>>,
}

impl TransferSystemExport {
    pub fn new(ts: &TransferSystem) -> Self {
        TransferSystemExport {
            group: ts.lattice().group().name().to_string(),
            pairs: ts.pairs().iter().map(|&(k, h)| (k.0, h.0)).collect(),
            relation: ts.relation(),
        }
    }

    /// Reads the export back, validating the stored relation.
    pub fn load(&self, lattice: &Arc<SubgroupLattice>) -> Result<TransferSystem> {
        let ts = TransferSystem::from_relation(lattice.clone(), &self.relation)?;
        let spec = TransferSystemSpec {
            group: None,
            pairs: self
                .pairs
                .iter()
                .map(|&(k, h)| (SubgroupRef::Id(k), SubgroupRef::Id(h)))
                .collect(),
        };
        if spec.build(lattice)? != ts {
            return Err(Error::InvalidInput(
                "pairs do not generate the stored relation".into(),
            ));
        }
        Ok(ts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_specs() {
        let limits = Limits::default();
        let c3: GroupSpec =
            serde_json::from_str(r#"{"name":"C3","table":[[0,1,2],[1,2,0],[2,0,1]]}"#).unwrap();
        assert_eq!(c3.build(&limits).unwrap().order(), 3);
        let s3: GroupSpec =
            serde_json::from_str(r#"{"name":"S3","degree":3,"generators":[[1,0,2],[1,2,0]]}"#)
                .unwrap();
        assert_eq!(s3.build(&limits).unwrap().order(), 6);
        let d4: GroupSpec = serde_json::from_str(r#""D4""#).unwrap();
        assert_eq!(d4.build(&limits).unwrap().order(), 8);
        let big = GroupSpec::Builtin("C30".into());
        assert!(big.build(&limits).is_err());
    }

    #[test]
    fn gset_specs() {
        let c4 = Arc::new(SubgroupLattice::new(Builtin::Cyclic(4).build().unwrap()).unwrap());
        let x = GSetSpec::parse("e:1, C2:2, G")
            .unwrap()
            .build(&c4, c4.top())
            .unwrap();
        assert_eq!(x.len(), 4 + 4 + 1);
        let y = GSetSpec::parse(r#"{"acting": "C2", "orbits": [["e", 1]]}"#)
            .unwrap()
            .build(&c4, c4.top())
            .unwrap();
        assert_eq!((y.acting(), y.len()), (SubgroupId(1), 2));
        assert!(GSetSpec::parse("")
            .unwrap()
            .build(&c4, c4.top())
            .unwrap()
            .is_empty());
        assert!(GSetSpec::parse("e:x").is_err());
    }

    #[test]
    fn transfer_system_round_trip() {
        let c4 = Arc::new(SubgroupLattice::new(Builtin::Cyclic(4).build().unwrap()).unwrap());
        let spec: TransferSystemSpec =
            serde_json::from_str(r#"{"group":"C4","pairs":[["e","G"]]}"#).unwrap();
        let ts = spec.build(&c4).unwrap();
        assert_eq!(ts.pairs().len(), 2);
        let json = serde_json::to_string(&TransferSystemExport::new(&ts)).unwrap();
        let back: TransferSystemExport = serde_json::from_str(&json).unwrap();
        assert_eq!(back.load(&c4).unwrap(), ts);
    }
}
