//! Unit groups, orbits, multipliers, the all-odd three-squares solver and
//! the spectrum algorithms for lengths divisible by 3.

mod orbits;
mod spectrum;
mod squares;
mod units;

pub use orbits::{is_multiplier, OrbitDecomposition, SizeClass};
pub use spectrum::{
    admissible_psd_pairs, format_spectrum_table, orbit_psd_values, spectrum_mod3, spectrum_rows,
    SpectrumEntry, SpectrumRow,
};
pub use squares::{signed_assignments, three_squares_all_odd};
pub use units::{gcd, order, subgroups_of_order, units, Subgroup, SubgroupSpec};
