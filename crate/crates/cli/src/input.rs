use std::path::Path;
use std::sync::Arc;

use ninf_core::io::{GSetSpec, GroupSpec, TransferSystemExport, TransferSystemSpec};
use ninf_core::{Error, GSet, Limits, Result, SubgroupId, SubgroupLattice, TransferSystem};

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {path}: {e}")))
}

/// A builtin name, or a path to a JSON group description.
pub fn lattice(source: &str, limits: Limits) -> Result<Arc<SubgroupLattice>> {
    let spec = if Path::new(source).is_file() {
        serde_json::from_str::<GroupSpec>(&read_file(source)?)
            .map_err(|e| Error::InvalidInput(format!("{source}: {e}")))?
    } else {
        GroupSpec::Builtin(source.to_string())
    };
    let group = spec.build(&limits)?;
    Ok(Arc::new(SubgroupLattice::with_limits(group, limits)?))
}

/// A builtin name, or a path to JSON holding either generating pairs or an
/// exported relation.
pub fn transfer_system(source: &str, lattice: &Arc<SubgroupLattice>) -> Result<TransferSystem> {
    if !Path::new(source).is_file() {
        return TransferSystem::builtin(lattice.clone(), source);
    }
    let text = read_file(source)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("{source}: {e}")))?;
    let bad = |e: serde_json::Error| Error::InvalidInput(format!("{source}: {e}"));
    if value.get("relation").is_some() {
        let export: TransferSystemExport = serde_json::from_value(value).map_err(bad)?;
        export.load(lattice)
    } else {
        let spec: TransferSystemSpec = serde_json::from_value(value).map_err(bad)?;
        spec.build(lattice)
    }
}

/// Inline orbit data, a JSON object, or a path to a JSON file.
pub fn gset(source: &str, lattice: &Arc<SubgroupLattice>, acting: SubgroupId) -> Result<GSet> {
    let text = if Path::new(source).is_file() {
        read_file(source)?
    } else {
        source.to_string()
    };
    GSetSpec::parse(&text)?.build(lattice, acting)
}
