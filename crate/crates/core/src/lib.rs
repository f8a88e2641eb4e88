//! Multiplicative graph spanners.
//!
//! Five constructions are provided:
//!
//! * [`greedy::addjs`]: the basic greedy spanner with bounded distance queries,
//! * [`kp::kortsarz_peleg`]: the dense-subset 2-spanner approximation,
//! * [`bbmry::berman_spanner`]: LP rounding plus sampled arborescences for arbitrary stretch,
//! * [`cluster::baswana_sen`]: randomized clustering for odd stretch,
//! * [`probabilistic::elkin_neiman`]: exponential-shift broadcasting for unweighted graphs.
//!
//! Distances and weights are generic over [`Scalar`]; the crate root exposes
//! `f64` and `f32` aliases for the common types.

pub mod algo;
pub mod bbmry;
pub mod cluster;
pub mod deadline;
pub mod graph;
pub mod greedy;
pub mod instances;
pub mod kp;
pub mod lp;
pub mod metrics;
pub mod probabilistic;

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FromPrimitive, ToPrimitive};

pub use algo::{construct, AlgoConfig, Algorithm, ConstructError, Construction};
pub use deadline::{Cancelled, Deadline};
pub use graph::paths::{apsp, bfs_depth_limited, dijkstra_bounded, DistanceMatrix};
pub use graph::validate::{validate_spanner, Validation};
pub use graph::{components, mst_weight, Edge, Graph, GraphError, Spanner};
pub use metrics::{measure, QualityReport};

/// Floating point scalar used for edge weights, distances, capacities and LP values.
pub trait Scalar:
    Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts a count or small integer into the scalar type.
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("scalar conversion")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl<T> Scalar for T where
    T: Float + FromPrimitive + ToPrimitive + Sum + Debug + Display + Default + Send + Sync + 'static
{
}

pub type Graph64 = Graph<f64>;
pub type Graph32 = Graph<f32>;
pub type Spanner64<'g> = Spanner<'g, f64>;
pub type Spanner32<'g> = Spanner<'g, f32>;
pub type DistanceMatrix64 = DistanceMatrix<f64>;
pub type DistanceMatrix32 = DistanceMatrix<f32>;
pub type DiGraph64 = bbmry::DiGraph<f64>;
pub type FlowNetwork64 = kp::flow::FlowNetwork<f64>;
pub type LpProblem64 = lp::LpProblem<f64>;
