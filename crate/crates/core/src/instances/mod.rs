//! Problem instances: data model, JSON format, generators and item merging.

mod gen;
mod json;
mod merge;
mod model;

pub use gen::{
    gen_gap_instance, gen_planted_unrelated_santa, gen_random, random_matroid, random_permutation, random_polymatroid,
    rng_for, Flavor, GenParams,
};
pub use json::{
    allocation_from_value, allocation_to_value, fractional_from_value, fractional_to_value, instance_from_value,
    instance_to_value, matroid_from_json, matroid_to_json, parse_instance, polymatroid_from_json, polymatroid_to_json,
    rational_from_json, rational_to_json, serialize_instance, Fractional,
};
pub use merge::{merge_equal_value, MergedInstance};
pub use model::{AllocInstance, Allocation, CoreCoverInstance, Instance, Item, Objective, Values};
