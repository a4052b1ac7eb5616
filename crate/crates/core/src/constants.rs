//! Reference constants for Grothendieck-type inequalities: the known
//! bracket for the real constant, the little-GT constants, and the
//! endpoints of the trace-form relaxation. Desk-scale checks only; none of
//! these is an output of the pipeline except the Krivine value.

use std::f64::consts::PI;

/// Euler-Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Krivine's upper bound `pi / (2 ln(1 + sqrt 2))` for the real constant.
pub fn krivine_upper() -> f64 {
    PI / (2.0 * (1.0 + 2.0f64.sqrt()).ln())
}

/// Best published lower bound for the real constant (three decimals).
pub const REAL_LOWER: f64 = 1.676;

/// Upper bound `e^(1 - gamma)` for the complex constant.
pub fn complex_upper() -> f64 {
    (1.0 - EULER_GAMMA).exp()
}

/// Little-GT constant over the reals: `pi / 2`.
pub fn little_gt_real() -> f64 {
    PI / 2.0
}

/// Little-GT constant over the complexes: `4 / pi`.
pub fn little_gt_complex() -> f64 {
    4.0 / PI
}

/// Upper endpoint `sinh(pi/2)` for the real trace-form constant
/// (arbitrary test matrix instead of the block form).
pub fn trace_form_real_upper() -> f64 {
    (PI / 2.0).sinh()
}

/// Upper endpoint `8/pi - 1` for the complex trace-form constant.
pub fn trace_form_complex_upper() -> f64 {
    8.0 / PI - 1.0
}
