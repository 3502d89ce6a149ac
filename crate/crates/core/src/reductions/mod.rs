//! Reductions between the max-min and min-max objectives, and from restricted resource-matroid
//! Santa Claus to the core cover problem.

mod configs;
mod core;
mod duals;
mod gadget;
mod guess;
mod twovalue;

#[cfg(test)]
mod tests;

pub use self::core::{
    light_polymatroid, max_uniform_level, reduce_to_core, two_value_case, value_unit, CoreCase, CoreRun,
};
pub use configs::{allowed_counts, class_count, config_round, round_value, ConfigCollection, Configuration};
pub use duals::{
    matroid_makespan_to_santa, matroid_santa_solution_to_schedule, matroid_santa_to_makespan,
    matroid_schedule_to_santa, DualBundle, DualTranslation,
};
pub use gadget::{
    santa_from_makespan_solution, santa_to_makespan, GadgetJob, GadgetMachine, GadgetTranslation, SantaGadget,
};
pub use guess::{guess_loop, value_grid, GuessResult};
pub use twovalue::{
    bipartite_matching, small_slots, twovalue_makespan_to_santa, twovalue_santa_from_makespan,
    twovalue_santa_to_makespan, MachineResource, TwoValueCase, TwoValueMakespanGadget, TwoValueSantaSolution,
    TwoValueTranslation,
};
