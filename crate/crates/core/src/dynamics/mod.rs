//! Integer dynamics of `h_{d,c}` and of the limiting map `h_∞`.

pub mod enumerate;
pub mod henon;
pub mod hinf;

pub use enumerate::{
    audit_escapes, eight_step_ys, enumerate_periodic, longest_cycle, sweep, table_formula,
    verify_eight_step_translation, CycleRecord, Enumeration, EscapeAudit, PeriodicReport, SweepRow,
    TABLE_RANGE,
};
pub use henon::{periodic_radius, HenonMap, LatticePoint, Orientation, Outcome};
pub use hinf::{
    hinf_orbit_float, hinf_period, hinf_period_table, hinf_step_exact, perturbation_atlas,
    predicted_period, s_inf, AtlasOrbit, PeriodTable, HINF_EXCEPTIONS, HINF_RESIDUE_TABLE,
};
