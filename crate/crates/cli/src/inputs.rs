use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use catcoh::field::FieldSpec;
use catcoh::fincat::{RawCategory, RawFunctor, RawTransformation};
use catcoh::groupcats::{FiniteGroup, RawGroup};
use catcoh::modcat::RawModule;
use catcoh::{CatFunctor, CatModule, Field, FiniteCategory, NatTransformation, Variance};
use serde::de::DeserializeOwned;

use crate::args::{Command, GroupArgs};
use crate::error::CliError;

pub fn read(path: &Path) -> Result<Vec<u8>, CliError> {
    fs::read(path).map_err(|e| CliError::Io { path: path.to_path_buf(), detail: e.to_string() })
}

pub fn json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let bytes = read(path)?;
    serde_json::from_slice(&bytes).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

pub fn category(path: &Path) -> Result<Arc<FiniteCategory>, CliError> {
    let raw: RawCategory = json(path)?;
    Ok(Arc::new(FiniteCategory::from_raw(&raw)?))
}

pub fn functor(path: &Path) -> Result<CatFunctor, CliError> {
    let raw: RawFunctor = json(path)?;
    Ok(CatFunctor::from_raw(&raw)?)
}

pub fn transformation(path: &Path) -> Result<NatTransformation, CliError> {
    let raw: RawTransformation = json(path)?;
    Ok(NatTransformation::from_raw(&raw)?)
}

/// `Z<n>`/`C<n>` cyclic, `S<n>` symmetric, `D<2n>` dihedral of order `2n`,
/// `V4` Klein four.
pub fn builtin_group(name: &str) -> Result<FiniteGroup, CliError> {
    let bad = || CliError::Parse(format!("unknown built-in group {name:?}"));
    if name == "V4" {
        let z2 = FiniteGroup::cyclic(2)?;
        return Ok(z2.direct_product(&z2)?);
    }
    let (head, digits) = name.split_at(1.min(name.len()));
    let n: usize = digits.parse().map_err(|_| bad())?;
    Ok(match head {
        "Z" | "C" if n >= 1 => FiniteGroup::cyclic(n)?,
        "S" if n >= 1 => FiniteGroup::symmetric(n)?,
        "D" if n >= 2 && n.is_multiple_of(2) => FiniteGroup::dihedral(n / 2)?,
        _ => return Err(bad()),
    })
}

pub fn group(args: &GroupArgs) -> Result<Arc<FiniteGroup>, CliError> {
    match (&args.group, &args.group_name) {
        (Some(path), _) => {
            let raw: RawGroup = json(path)?;
            Ok(Arc::new(FiniteGroup::from_raw(&raw)?))
        }
        (None, Some(name)) => Ok(Arc::new(builtin_group(name)?)),
        (None, None) => Err(CliError::Parse("a group is required: pass --group or --group-name".into())),
    }
}

pub fn prime(args: &GroupArgs) -> Result<usize, CliError> {
    args.prime.ok_or_else(|| CliError::Parse("--prime is required".into()))
}

pub fn module<F: Field>(cat: &Arc<FiniteCategory>, field: &F, path: &Path) -> Result<CatModule<F>, CliError> {
    let raw: RawModule = json(path)?;
    let tag = FieldSpec::parse(&raw.field)?;
    if tag != field.spec() {
        return Err(CliError::Parse(format!("{} is over {}, not the requested field", path.display(), raw.field)));
    }
    Ok(CatModule::from_raw(cat.clone(), field.clone(), &raw)?)
}

pub fn module_or_constant<F: Field>(cat: &Arc<FiniteCategory>, field: &F, path: Option<&PathBuf>, variance: Variance) -> Result<CatModule<F>, CliError> {
    match path {
        Some(p) => module(cat, field, p),
        None => Ok(CatModule::constant(cat.clone(), field.clone(), variance)),
    }
}

/// Every file a command reads, in a fixed order, for cache keys.
pub fn input_paths(cmd: &Command) -> Vec<&PathBuf> {
    let mut out: Vec<&PathBuf> = Vec::new();
    match cmd {
        Command::Validate(a) => {
            out.extend(a.category.iter());
            out.extend(a.module.iter());
            out.extend(a.functor.iter());
            out.extend(a.transformation.iter());
            out.extend(a.group.group.iter());
        }
        Command::Cohomology(a) | Command::Homology(a) => {
            out.push(&a.category);
            out.extend(a.module.iter());
        }
        Command::Ext(a) => out.extend([&a.category, &a.from, &a.to]),
        Command::Tor(a) => out.extend([&a.category, &a.right, &a.left]),
        Command::InducedMap(a) => {
            out.push(&a.functor);
            out.extend(a.module.iter());
        }
        Command::E2(a) => {
            out.extend(a.functor.iter());
            out.extend(a.category.iter());
            out.extend(a.module.iter());
            out.extend(a.coefficient.iter());
            out.extend(a.group.group.iter());
        }
        Command::Pages(a) => {
            out.push(&a.functor);
            out.extend(a.module.iter());
        }
        Command::Build(a) => {
            out.extend(a.category.iter());
            out.extend(a.group.group.iter());
        }
        Command::Check(a) => {
            out.extend(a.category.iter());
            out.extend(a.functor.iter());
            out.extend(a.transformation.iter());
            out.extend(a.module.iter());
            out.extend(a.coefficient.iter());
            out.extend(a.group.group.iter());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_orders() {
        for (name, order) in [("Z2", 2), ("C5", 5), ("S3", 6), ("D8", 8), ("V4", 4)] {
            assert_eq!(builtin_group(name).unwrap().order(), order, "{name}");
        }
        for bad in ["D7", "X3", "", "S"] {
            assert!(builtin_group(bad).is_err(), "{bad}");
        }
    }
}
