//! Generators for three named configurations: a family realizing a
//! prescribed end space, a Schottky-like group whose translates nest down to
//! a circle, and a uniformly separated configuration with a fat limit set.

mod ends;
mod fat;
mod nested;

pub use ends::{
    center_approach, realize_end_space, separation_bound, EndSetSpec, EndSpaceRealization,
    CONJUGATOR_MULTIPLIER, MAX_CANTOR_DEPTH, MIN_MARGIN, TAIL_SCALE,
};
pub use fat::build_fat_limit_set;
pub use nested::{build_nested_counterexample, CounterexampleRecipe, LengthRule, NestedCounterexample};
