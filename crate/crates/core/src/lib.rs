//! Achievable secret-key rates for two BS-user pairs sharing an interference
//! channel and a public feedback channel, and the games the pairs play when
//! each picks its key-agreement strategy selfishly.
//!
//! * [`info_math`]: capacity function and exact entropies on finite joints.
//! * [`dm_bound`]: inner bound for discrete memoryless channels.
//! * [`gaussian`]: closed-form rates for pure, time-sharing and
//!   artificial-noise strategies on the Gaussian channel.
//! * [`region`]: parameter sweeps, Pareto frontiers and convex hulls.
//! * [`game`]: Nash equilibria of the strategy games.
//! * [`cli`]: the `keyrate` command line and its file formats.
//!
//! Rates are in bits per channel use.

pub mod cli;
pub mod dm_bound;
pub mod error;
pub mod game;
pub mod gaussian;
pub mod info_math;
pub mod output;
pub mod region;
pub mod strategy;

pub use dm_bound::{expand_joint, pure_strategy_dm_bounds, theorem1_bounds, DmChannel, FactoredPmf};
pub use error::{Error, Result};
pub use game::{build_gamma1, ne_map, pure_ne, MatrixGame, NeReport};
pub use gaussian::{artificial_noise_rates, pure_rates, time_sharing_rates, AnParams, ChannelParams, TsParams};
pub use info_math::{capacity, pos_part, JointPmf};
pub use region::{sweep_region, GridSpec, RegionSample, Scheme};
pub use strategy::{Player, Profile, PureStrategy, RatePair, PROFILES};
