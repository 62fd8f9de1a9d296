//! Jump functions of a map read from homology of sub- and superlevel sets,
//! and distances between configurations.

mod distance;
mod jump;

pub use distance::{bottleneck_cm, matching_distance_c};
pub use jump::{epsilon_f, Box2, JumpFunction, LevelOracle, MapLevels};
