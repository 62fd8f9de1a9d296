//! Simplicial complexes, simplicial maps to the circle and to an interval,
//! and the zigzag representations built from their level sets.

mod levels;
mod simplicial;

pub use levels::{
    build_rep, build_rep_leveled, build_rep_real, build_rep_real_leveled, subdivide_circle, subdivide_real, CircleMap,
    IntervalMap, LevelComplex,
};
pub use simplicial::{cycles, homology, induced_map, Homology, SimplicialComplex};
