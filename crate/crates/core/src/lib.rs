//! Polynomial dynamics over finite fields.
//!
//! Builds F_p and F_{p^n} with exact arithmetic, turns an integer polynomial into a functional
//! graph on the field, and splits that graph into cycles and preperiodic tails. On top of that
//! sit an exhaustive check that `t^{p^m} + c` permutes every F_{p^n}, periodic-point counts across
//! field towers, and the interval-map orbit count behind Fermat's little theorem.

pub mod arith;
pub mod cli;
pub mod dynamics;
pub mod error;
pub mod fermat;
pub mod field;
pub mod fp_poly;
pub mod poly;
pub mod theorem;
pub mod zeta;

pub use dynamics::{
    build_graph, classify_point, decompose, is_injective_map, FunctionalGraph, OrbitDecomposition, OrbitReport,
    PointClass,
};
pub use error::{Error, Result};
pub use fermat::{compose_check, fixed_points, flt_orbit_count, t_apply, FltReport, UnitRational};
pub use field::{
    find_irreducible, find_isomorphism, is_irreducible, make_ext_field, make_prime, roots_of, zero_divisor_witness,
    ExtFieldCtx, FieldElem, FieldIsomorphism,
};
pub use poly::IntPoly;
pub use theorem::{check_frobenius_bijective, check_theorem, find_bijective_outside_family, SweepResult, SweepSpec};
pub use zeta::{count_series, fixed_count_by_period, CountSeries, CountedSet};
