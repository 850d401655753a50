//! TOML configuration: enumeration caps and search defaults.
//!
//! Looked up at `--config PATH`, else at `$DGM_CONFIG`, else defaults.
//! Flags given on the command line override file values.

use anyhow::Context;
use deltagraphic::caps::Caps;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const CONFIG_ENV: &str = "DGM_CONFIG";

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub caps: Caps,
    pub search: SearchConfig,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SearchConfig {
    pub shards: usize,
    pub max_n: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { shards: 1, max_n: 7 }
    }
}

impl Config {
    pub fn load(flag: Option<&Path>) -> anyhow::Result<Config> {
        let path = flag.map(Path::to_path_buf).or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        let Some(path) = path else { return Ok(Config::default()) };
        let text = std::fs::read_to_string(&path).with_context(|| format!("reading config {}", path.display()))?;
        toml::from_str(&text).map_err(|e| deltagraphic::Error::Parse(format!("config {}: {e}", path.display())).into())
    }

    /// Apply `name=value` cap overrides.
    pub fn override_caps(&mut self, overrides: &[String]) -> anyhow::Result<()> {
        for o in overrides {
            let bad = || deltagraphic::Error::Parse(format!("bad cap override `{o}` (want name=value)"));
            let (name, value) = o.split_once('=').ok_or_else(bad)?;
            let v: usize = value.trim().parse().map_err(|_| bad())?;
            let c = &mut self.caps;
            let slot = match name.trim() {
                "bases" => &mut c.bases,
                "minor_scan" => &mut c.minor_scan,
                "separation" => &mut c.separation,
                "cocycle_rank" => &mut c.cocycle_rank,
                "graft_edges" => &mut c.graft_edges,
                "pivot_minor" => &mut c.pivot_minor,
                "search" => &mut c.search,
                _ => return Err(deltagraphic::Error::Parse(format!("unknown cap `{name}`")).into()),
            };
            *slot = v;
        }
        Ok(())
    }
}
