//! End-to-end workflow: concept -> Hermite coefficients -> correlation
//! series -> inverse series -> absolute-coefficient majorant -> level-1 root
//! `r`, yielding the upper bound `1/r` for the Grothendieck constant, with
//! every step's diagnostics collected into a [`BoundReport`].

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::concepts::{self, AlphaSequence, ConceptKind, ConceptSpec, CoefficientSource};
use crate::constants;
use crate::error::{Error, Result};
use crate::series::{
    abs_series, invert_series, rational_to_f64, solve_unit_level, RootOutcome, TruncatedSeries,
};

/// Default truncation order for odd (sign-like) series.
pub const DEFAULT_ORDER_ODD: usize = 41;
/// Default truncation order for general concepts.
pub const DEFAULT_ORDER: usize = 60;

/// Workflow condition flags. The monotonicity flag is a numerical check at
/// grid points, a necessary condition only, and is recorded as a diagnostic
/// rather than a proof of invertibility.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ConditionFlags {
    /// Constant term of the (normalized) series vanishes.
    pub h_zero_at_0: bool,
    /// Termwise derivative positive at 100 grid points of (-1, 1).
    pub h_monotone_numeric: bool,
    /// Inverse-series coefficients are real (always, in this real pipeline).
    pub ra_beta_real: bool,
    /// The linear coefficient is positive, so inversion at 0 is defined.
    pub inversion_precondition: bool,
    /// A level-1 root of the majorant exists strictly inside (0, 1).
    pub pi1_satisfied: bool,
}

/// Diagnostics from [`check_workflow_conditions`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WorkflowDiagnostics {
    pub flags: ConditionFlags,
    /// Linear coefficient of the series fed to inversion.
    pub alpha1: f64,
    /// Whether the Pearson-normalized series replaced the raw one.
    pub normalized: bool,
    /// Partial l1 mass of the inverse coefficients, when inversion applies.
    pub l1_partial: Option<f64>,
    /// Partial sum of the signed inverse coefficients (approaches 1 when
    /// the inverse really maps 1 to 1).
    pub beta_partial_sum: Option<f64>,
}

/// One entry of the root convergence trace.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct RootPoint {
    pub order: usize,
    pub root: f64,
    pub bound: f64,
}

/// Full provenance of one bound computation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub schema_version: u32,
    pub concept: ConceptSpec,
    pub order: usize,
    pub tol: f64,
    /// "exact-rational" when inversion ran in exact arithmetic.
    pub arithmetic: String,
    pub alpha: AlphaSequence,
    /// Whether the inverted object is the Pearson-normalized series.
    pub normalized: bool,
    /// Inverse-series coefficients beta_1 ..= beta_N.
    pub beta: Vec<f64>,
    /// sum_{n <= N} |beta_n|.
    pub l1_partial: f64,
    /// sum_{n <= N} beta_n.
    pub beta_partial_sum: f64,
    /// Root of the truncated majorant at each order where it exists.
    pub roots: Vec<RootPoint>,
    pub condition_flags: ConditionFlags,
    pub r_star: Option<f64>,
    pub bound: Option<f64>,
    pub tail_note: String,
}

fn tail_note() -> String {
    "Dropped majorant terms are non-negative, so each truncated root r_N sits above \
     the limit root and 1/r_N approaches the final bound from below; the trace shows \
     the convergence. Certifying the limit requires a tail majorant for the inverse \
     coefficients (their l1 mass is reported as a partial sum, not proven finite)."
        .to_string()
}

/// The closed-form value `pi / (2 ln(1 + sqrt 2))` that the sign concept
/// must reproduce; the pipeline's golden anchor.
pub fn krivine_reference() -> f64 {
    constants::krivine_upper()
}

/// Default truncation order: odd closed-form concepts carry only odd terms
/// and converge faster per stored coefficient.
pub fn default_order(concept: &ConceptSpec) -> usize {
    match concept.kind {
        ConceptKind::Sign => DEFAULT_ORDER_ODD,
        _ => DEFAULT_ORDER,
    }
}

/// Series the workflow inverts for this concept, plus the normalization flag.
fn workflow_series(concept: &ConceptSpec, order: usize) -> Result<(AlphaSequence, TruncatedSeries<f64>, bool)> {
    let alpha = concepts::alpha_coeffs(concept, order)?;
    if alpha.alpha0 == 0.0 {
        let series = alpha.h_series();
        Ok((alpha, series, false))
    } else {
        let series = alpha.pearson_series()?;
        Ok((alpha, series, true))
    }
}

/// Evaluate the workflow conditions without committing to a bound: constant
/// term, numerical monotonicity on a 100-point grid, inversion
/// precondition, and the l1 diagnostics of the inverse when it exists.
pub fn check_workflow_conditions(concept: &ConceptSpec, order: usize) -> Result<WorkflowDiagnostics> {
    if order < 3 {
        return Err(Error::OrderTooSmall { min: 3, got: order });
    }
    let (_, series, normalized) = workflow_series(concept, order)?;
    let h_zero_at_0 = series.coeff(0) == 0.0;
    let alpha1 = series.coeff(1);

    let deriv = series.derivative();
    let mut monotone = true;
    for i in 0..100 {
        let x = -1.0 + 2.0 * (i as f64 + 0.5) / 100.0;
        if deriv.eval(&x)? <= 0.0 {
            monotone = false;
            break;
        }
    }

    let invertible = alpha1 > 0.0;
    let (l1_partial, beta_partial_sum) = if invertible {
        let beta = invert_series(&series, order)?;
        let l1: f64 = beta.coeffs().iter().map(|c| c.abs()).sum();
        let signed: f64 = beta.coeffs().iter().sum();
        (Some(l1), Some(signed))
    } else {
        (None, None)
    };

    Ok(WorkflowDiagnostics {
        flags: ConditionFlags {
            h_zero_at_0,
            h_monotone_numeric: monotone,
            ra_beta_real: true,
            inversion_precondition: invertible,
            pi1_satisfied: false,
        },
        alpha1,
        normalized,
        l1_partial,
        beta_partial_sum,
    })
}

/// Exact inverse for the sign concept: invert the rational series with the
/// `2/pi` scale factored out, then restore `beta_n = B_n (pi/2)^n`.
fn sign_beta_exact(order: usize) -> Result<Vec<f64>> {
    let scaled = concepts::sign_alpha_scaled(order);
    let inverse: TruncatedSeries<BigRational> = invert_series(&scaled, order)?;
    let half_pi = std::f64::consts::PI / 2.0;
    let mut scale = 1.0f64;
    let mut beta = Vec::with_capacity(order + 1);
    for n in 0..=order {
        if n > 0 {
            scale *= half_pi;
        }
        beta.push(rational_to_f64(&inverse.coeff(n)) * scale);
    }
    Ok(beta)
}

/// Run the full workflow and report the bound `1/r`.
pub fn compute_upper_bound(concept: &ConceptSpec, order: usize, tol: f64) -> Result<BoundReport> {
    if order < 5 {
        return Err(Error::OrderTooSmall { min: 5, got: order });
    }
    let diag = check_workflow_conditions(concept, order)?;
    if !diag.flags.h_zero_at_0 || !diag.flags.h_monotone_numeric {
        return Err(Error::WorkflowPrecondition(format!(
            "series fails the homeomorphism screen (zero at 0: {}, monotone: {})",
            diag.flags.h_zero_at_0, diag.flags.h_monotone_numeric
        )));
    }
    if !diag.flags.inversion_precondition {
        return Err(Error::WorkflowPrecondition(
            "linear coefficient vanishes; the series cannot be inverted at 0".into(),
        ));
    }

    let (alpha, series, normalized) = workflow_series(concept, order)?;
    let exact = matches!(concept.kind, ConceptKind::Sign)
        && concept.source == CoefficientSource::ClosedForm;
    let beta: Vec<f64> = if exact {
        sign_beta_exact(order)?
    } else {
        invert_series(&series, order)?.coeffs().to_vec()
    };

    let beta_series = TruncatedSeries::new(beta.clone());
    let majorant = abs_series(&beta_series);
    let l1_partial: f64 = majorant.coeffs().iter().sum();
    let beta_partial_sum: f64 = beta.iter().sum();

    // root trace over truncation orders; non-negative added terms push the
    // root down, so the last entry is the headline value
    let mut roots = Vec::new();
    let mut interior = None;
    for n in 1..=order {
        let truncated = majorant.truncated(n);
        if truncated.eval(&1.0)? < 1.0 {
            continue;
        }
        match solve_unit_level(&truncated, tol) {
            Ok(RootOutcome::Interior(r)) => {
                roots.push(RootPoint {
                    order: n,
                    root: r,
                    bound: 1.0 / r,
                });
                interior = Some(r);
            }
            Ok(RootOutcome::DegenerateAtOne) => {
                roots.push(RootPoint {
                    order: n,
                    root: 1.0,
                    bound: 1.0,
                });
            }
            Err(Error::NoRootInUnitInterval { .. }) => continue,
            Err(e) => return Err(e),
        }
    }

    let pi1_satisfied = interior.is_some();
    let (r_star, bound) = match interior {
        Some(r) => (Some(r), Some(1.0 / r)),
        None => (None, None),
    };

    let report = BoundReport {
        schema_version: 1,
        concept: concept.clone(),
        order,
        tol,
        arithmetic: if exact { "exact-rational" } else { "float" }.to_string(),
        alpha,
        normalized,
        beta: beta[1..].to_vec(),
        l1_partial,
        beta_partial_sum,
        roots,
        condition_flags: ConditionFlags {
            pi1_satisfied,
            ..diag.flags
        },
        r_star,
        bound,
        tail_note: tail_note(),
    };
    debug_assert!(report
        .roots
        .windows(2)
        .all(|w| w[1].root <= w[0].root + 1e-12));
    if let Some(b) = report.bound {
        debug_assert!(b >= 1.0);
    }
    Ok(report)
}
