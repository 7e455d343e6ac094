//! The shipped fixture suite: small 1-local instances with their expected
//! decisions, and a 2-local NO instance for the simulated verifier.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use gscon_core::verify::GsconInstance;
use serde::{Deserialize, Serialize};

use crate::json::{read_json, InstanceJson};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixtureJson {
    pub name: String,
    /// `accept` or `reject`.
    pub expected: String,
    pub instance: InstanceJson,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Fixture {
    pub name: String,
    pub expected_accept: bool,
    pub instance: GsconInstance,
}

/// `fixtures/` inside the source tree of this crate.
pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn load_fixture(path: &Path) -> Result<Fixture> {
    let f: FixtureJson = read_json(path)?;
    let expected_accept = match f.expected.as_str() {
        "accept" => true,
        "reject" => false,
        other => bail!("{}: unknown expectation `{other}`", path.display()),
    };
    let instance = f.instance.to_instance().with_context(|| format!("validating {}", path.display()))?;
    Ok(Fixture { name: f.name, expected_accept, instance })
}

/// Every `*.json` under `fixtures/toy`, sorted by file name.
pub fn toy_fixtures() -> Result<Vec<Fixture>> {
    let dir = fixture_dir().join("toy");
    let mut paths: Vec<PathBuf> = fs::read_dir(&dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
    paths.sort();
    paths.iter().map(|p| load_fixture(p)).collect()
}

pub fn qcma_no_fixture() -> Result<Fixture> {
    load_fixture(&fixture_dir().join("qcma_no.json"))
}
