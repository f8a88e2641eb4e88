//! Uniform entry point over the five constructions.

use std::fmt;
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

use crate::bbmry::{berman_spanner_until, BbmryConfig, BbmryError, DEFAULT_MAX_ITERATIONS};
use crate::cluster::{baswana_sen_until, BsConfig};
use crate::deadline::Deadline;
use crate::graph::{Graph, Spanner};
use crate::greedy::{addjs_until, EdgeOrder, GreedyConfig};
use crate::kp::{kortsarz_peleg_until, KpError};
use crate::probabilistic::{elkin_neiman_until, EnConfig, EnError, DEFAULT_EPSILON, DEFAULT_MAX_ATTEMPTS};
use crate::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Addjs,
    Kp,
    Bbmry,
    Bs,
    En,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [Algorithm::Addjs, Algorithm::Kp, Algorithm::Bbmry, Algorithm::Bs, Algorithm::En];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Addjs => "addjs",
            Algorithm::Kp => "kp",
            Algorithm::Bbmry => "bbmry",
            Algorithm::Bs => "bs",
            Algorithm::En => "en",
        }
    }

    pub fn is_randomized(self) -> bool {
        matches!(self, Algorithm::Bbmry | Algorithm::Bs | Algorithm::En)
    }

    /// Why this algorithm cannot run at `alpha` on a graph of the given kind.
    pub fn incompatibility(self, alpha: f64, weighted: bool) -> Option<String> {
        let odd = alpha >= 3.0 && alpha.fract() == 0.0 && alpha % 2.0 == 1.0;
        match self {
            Algorithm::Addjs | Algorithm::Bbmry if !(alpha >= 1.0 && alpha.is_finite()) => {
                Some(format!("stretch {alpha} is below 1"))
            }
            Algorithm::Kp if alpha != 2.0 => Some(format!("kp only builds 2-spanners, not {alpha}")),
            Algorithm::Kp if weighted => Some("kp needs an unweighted graph".into()),
            Algorithm::Bs | Algorithm::En if !odd => Some(format!("{} needs an odd integer stretch of at least 3, not {alpha}", self.name())),
            Algorithm::En if weighted => Some("en needs an unweighted graph".into()),
            _ => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("unknown algorithm {0:?}")]
pub struct UnknownAlgorithm(pub String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

/// Parameters shared by all constructions; each one reads what it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgoConfig {
    pub alpha: f64,
    pub seed: u64,
    pub epsilon: f64,
    pub max_attempts: u32,
    pub edge_order: EdgeOrder,
    pub bbmry_iterations: u32,
    pub bbmry_budget: Option<Duration>,
}

impl AlgoConfig {
    pub fn new(alpha: f64, seed: u64) -> Self {
        AlgoConfig {
            alpha,
            seed,
            epsilon: DEFAULT_EPSILON,
            max_attempts: DEFAULT_MAX_ATTEMPTS,
            edge_order: EdgeOrder::Input,
            bbmry_iterations: DEFAULT_MAX_ITERATIONS,
            bbmry_budget: None,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConstructError {
    #[error("incompatible configuration: {0}")]
    Incompatible(String),
    #[error("time limit reached")]
    Timeout,
    #[error("construction failed: {0}")]
    Failed(String),
}

#[derive(Debug, Clone)]
pub struct Construction<'g, W> {
    pub spanner: Spanner<'g, W>,
    /// Attempts used by retrying constructions, 1 otherwise.
    pub attempts: u32,
}

impl<'g, W> Construction<'g, W> {
    fn once(spanner: Spanner<'g, W>) -> Self {
        Construction { spanner, attempts: 1 }
    }
}

pub fn construct<'g, W: Scalar>(
    g: &'g Graph<W>,
    algo: Algorithm,
    cfg: &AlgoConfig,
    deadline: &Deadline,
) -> Result<Construction<'g, W>, ConstructError> {
    if let Some(reason) = algo.incompatibility(cfg.alpha, g.is_weighted()) {
        return Err(ConstructError::Incompatible(reason));
    }
    let bad = |e: &dyn fmt::Display| ConstructError::Incompatible(e.to_string());
    match algo {
        Algorithm::Addjs => {
            let gc = GreedyConfig::new(cfg.alpha).map_err(|e| bad(&e))?.with_order(cfg.edge_order);
            addjs_until(g, &gc, deadline).map(Construction::once).map_err(|_| ConstructError::Timeout)
        }
        Algorithm::Kp => match kortsarz_peleg_until(g, deadline) {
            Ok(h) => Ok(Construction::once(h)),
            Err(KpError::Cancelled(_)) => Err(ConstructError::Timeout),
            Err(e) => Err(bad(&e)),
        },
        Algorithm::Bbmry => {
            let mut bc = BbmryConfig::new(cfg.alpha, cfg.seed).map_err(|e| bad(&e))?;
            bc.max_iterations = cfg.bbmry_iterations;
            bc.time_budget = cfg.bbmry_budget;
            match berman_spanner_until(g, &bc, deadline) {
                Ok(out) => Ok(Construction::once(out.spanner)),
                Err(BbmryError::Cancelled(_)) => Err(ConstructError::Timeout),
                Err(e) => Err(ConstructError::Failed(e.to_string())),
            }
        }
        Algorithm::Bs => {
            let bc = BsConfig::new(cfg.alpha as u32, cfg.seed).map_err(|e| bad(&e))?;
            baswana_sen_until(g, &bc, deadline).map(Construction::once).map_err(|_| ConstructError::Timeout)
        }
        Algorithm::En => {
            let ec = EnConfig::new(cfg.alpha as u32, cfg.epsilon, cfg.seed)
                .and_then(|c| c.with_max_attempts(cfg.max_attempts))
                .map_err(|e| bad(&e))?;
            match elkin_neiman_until(g, &ec, deadline) {
                Ok(out) => Ok(Construction { spanner: out.spanner, attempts: out.attempts }),
                Err(EnError::Cancelled(_)) => Err(ConstructError::Timeout),
                Err(e @ EnError::Exhausted(_)) => Err(ConstructError::Failed(e.to_string())),
                Err(e) => Err(bad(&e)),
            }
        }
    }
}
