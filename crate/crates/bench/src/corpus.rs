//! Random corpus specifications and generation.

use std::path::{Path, PathBuf};

use serde::Deserialize;
use spanner_core::instances::{gen_er, write_native, ErSpec, InstanceError};
use spanner_core::Graph64;
use thiserror::Error;

/// Corpus description read from TOML.
///
/// ```toml
/// seed = 1
///
/// [[er]]
/// n = [100, 200]
/// rel_density = [0.1, 0.5]
/// weighted = true
/// count = 2
/// ```
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusSpec {
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub er: Vec<ErFamily>,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ErFamily {
    pub n: Vec<usize>,
    pub rel_density: Vec<f64>,
    #[serde(default = "yes")]
    pub weighted: bool,
    #[serde(default = "one")]
    pub count: usize,
}

fn yes() -> bool {
    true
}

fn one() -> usize {
    1
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error(transparent)]
    Toml(#[from] toml::de::Error),
    #[error("{name}: {source}")]
    Instance { name: String, source: InstanceError },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl CorpusSpec {
    pub fn parse(text: &str) -> Result<Self, CorpusError> {
        Ok(toml::from_str(text)?)
    }

    /// Named generator inputs; graph `i` in listing order uses seed `seed + i`.
    pub fn entries(&self) -> Vec<(String, ErSpec)> {
        let mut out = Vec::new();
        for fam in &self.er {
            for &n in &fam.n {
                for &rho in &fam.rel_density {
                    for i in 0..fam.count {
                        let seed = self.seed.wrapping_add(out.len() as u64);
                        let name = format!("er_n{n}_r{rho}_{}{i}", if fam.weighted { "w" } else { "u" });
                        out.push((name, ErSpec { n, rel_density: rho, weighted: fam.weighted, seed }));
                    }
                }
            }
        }
        out
    }

    pub fn generate(&self) -> Result<Vec<(String, Graph64)>, CorpusError> {
        self.entries()
            .into_iter()
            .map(|(name, spec)| match gen_er(&spec) {
                Ok(g) => Ok((name, g)),
                Err(source) => Err(CorpusError::Instance { name, source }),
            })
            .collect()
    }

    /// Writes every graph as `<name>.txt` under `dir` and returns the paths.
    pub fn write_to(&self, dir: &Path) -> Result<Vec<PathBuf>, CorpusError> {
        std::fs::create_dir_all(dir)?;
        self.generate()?
            .into_iter()
            .map(|(name, g)| {
                let path = dir.join(format!("{name}.txt"));
                std::fs::write(&path, write_native(&g))?;
                Ok(path)
            })
            .collect()
    }
}
