//! Holomorphic self-maps of the unit disk and the pointwise estimates they obey.

pub mod bounds;
mod map;
pub mod sample;

pub use bounds::{
    center_bound, fixed_origin_growth, hyperbolic_sum, hyperbolic_sum_iterates, identity_deviation, landau_radius,
    landau_sigma_for_radius, lipschitz_bound, schwarz_pick_upper, BoundLedger, DiskRegion,
};
pub use map::{CustomMap, DiskMap, MapNode};
