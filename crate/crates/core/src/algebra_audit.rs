//! Residual checks of the deformed oscillator algebra on a truncated space.
//!
//! Truncation corrupts the top level, so identities with one ladder operator
//! are compared on levels `0..=D-2` and identities with two on `0..=D-3`.
//! Residuals are max-abs entry differences over that block.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fockspace::{deformed_ladder_ops, DeformedOps, FunctionChoice, TruncatedFockSpace, TruncatedOperator};
use crate::qnumber::{q_number, DeformationParam};

/// Minimum cutoff for the audits; the two-ladder block must be nonempty.
pub const MIN_AUDIT_CUTOFF: usize = 4;
/// Largest polynomial degree accepted by the shift rule check.
pub const MAX_SHIFT_DEGREE: usize = 4;

pub const QCOMMUTATOR: &str = "eq1a_qcommutator";
pub const NUMBER_COMMUTATORS: &str = "eq1b_number_commutators";
pub const NUMBER_PRODUCTS: &str = "eq1b_number_products";
pub const SHIFT_RULE: &str = "eq1c_shift_rule";

/// Where a check was evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridPoint {
    pub s: f64,
    pub choice: FunctionChoice,
    pub cutoff: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub condition_id: &'static str,
    pub grid_point: GridPoint,
    pub residual: f64,
    /// Largest entry among the compared terms; `residual / scale` is the
    /// relative defect.
    pub scale: f64,
    pub tolerance: f64,
    pub pass: bool,
}

impl ConditionReport {
    pub fn new(condition_id: &'static str, grid_point: GridPoint, residual: f64, tolerance: f64) -> Self {
        ConditionReport { condition_id, grid_point, residual, scale: 0.0, tolerance, pass: residual <= tolerance }
    }

    pub fn with_scale(mut self, scale: f64) -> Self {
        self.scale = scale;
        self
    }
}

/// Deformed operators for the first oscillator of `choice` together with the
/// grid point they were built at.
#[derive(Debug, Clone)]
pub struct AuditSetup {
    pub ops: DeformedOps,
    pub param: DeformationParam,
    pub grid_point: GridPoint,
}

impl AuditSetup {
    pub fn new(space: TruncatedFockSpace, param: DeformationParam, choice: FunctionChoice) -> Result<Self> {
        if space.cutoff() < MIN_AUDIT_CUTOFF {
            return Err(Error::CutoffTooSmall { cutoff: space.cutoff(), min: MIN_AUDIT_CUTOFF });
        }
        choice.validate()?;
        let ops = deformed_ladder_ops(space, param, choice.psi1, choice.psi2)?;
        let grid_point = GridPoint { s: param.s(), choice, cutoff: space.cutoff() };
        Ok(AuditSetup { ops, param, grid_point })
    }

    fn dim(&self) -> usize {
        self.ops.a_q.dim()
    }

    fn single_block(&self) -> usize {
        self.dim() - 1
    }

    fn double_block(&self) -> usize {
        self.dim() - 2
    }
}

fn ensure_consistent(ops: &DeformedOps) -> Result<()> {
    let d = ops.a_q.dim();
    for other in [&ops.a_q_dag, &ops.number] {
        if other.dim() != d {
            return Err(Error::DimensionMismatch { left: d, right: other.dim() });
        }
    }
    Ok(())
}

/// `a_q a_q^dag - q a_q^dag a_q = q^-N`.
pub fn check_qcommutator(setup: &AuditSetup, tol: f64) -> Result<ConditionReport> {
    let ops = &setup.ops;
    ensure_consistent(ops)?;
    let q = setup.param.q();
    let p = setup.param;
    let lower_raise = ops.a_q.try_mul(&ops.a_q_dag)?;
    let raise_lower = ops.a_q_dag.try_mul(&ops.a_q)?.scale(q);
    let rhs = ops.number.map_diagonal(|n| p.pow(-n));
    let block = setup.double_block();
    let residual = lower_raise.try_sub(&raise_lower)?.try_sub(&rhs)?.max_abs_in_block(block);
    let scale = lower_raise.max_abs_in_block(block).max(raise_lower.max_abs_in_block(block));
    Ok(ConditionReport::new(QCOMMUTATOR, setup.grid_point, residual, tol).with_scale(scale))
}

/// `[N, a_q] = -a_q` and `[N, a_q^dag] = a_q^dag`.
pub fn check_number_commutators(setup: &AuditSetup, tol: f64) -> Result<ConditionReport> {
    let ops = &setup.ops;
    ensure_consistent(ops)?;
    let lower = ops.number.commutator(&ops.a_q)?.try_add(&ops.a_q)?;
    let raise = ops.number.commutator(&ops.a_q_dag)?.try_sub(&ops.a_q_dag)?;
    let block = setup.single_block();
    let residual = lower.max_abs_in_block(block).max(raise.max_abs_in_block(block));
    let scale = ops.number.try_mul(&ops.a_q)?.max_abs_in_block(block);
    Ok(ConditionReport::new(NUMBER_COMMUTATORS, setup.grid_point, residual, tol).with_scale(scale))
}

/// `a_q^dag a_q = [N]` and `a_q a_q^dag = [N+1]`, with `N` the shifted number operator.
pub fn check_number_products(setup: &AuditSetup, tol: f64) -> Result<ConditionReport> {
    let ops = &setup.ops;
    ensure_consistent(ops)?;
    let p = setup.param;
    let raise_lower = ops.a_q_dag.try_mul(&ops.a_q)?;
    let lower_raise = ops.a_q.try_mul(&ops.a_q_dag)?;
    let lower = raise_lower.try_sub(&ops.number.map_diagonal(|n| q_number(n, p)))?;
    let raise = lower_raise.try_sub(&ops.number.map_diagonal(|n| q_number(n + 1.0, p)))?;
    let block = setup.double_block();
    let residual = lower.max_abs_in_block(block).max(raise.max_abs_in_block(block));
    let scale = lower_raise.max_abs_in_block(block).max(raise_lower.max_abs_in_block(block));
    Ok(ConditionReport::new(NUMBER_PRODUCTS, setup.grid_point, residual, tol).with_scale(scale))
}

/// A polynomial `c0 + c1 x + ... + c4 x^4` in the number operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: &[f64]) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        if coeffs.len() > MAX_SHIFT_DEGREE + 1 {
            return Err(Error::PolynomialDegree { degree: coeffs.len() - 1, max: MAX_SHIFT_DEGREE });
        }
        Ok(Polynomial { coeffs: coeffs.to_vec() })
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    fn of(&self, number: &TruncatedOperator, offset: f64) -> TruncatedOperator {
        number.map_diagonal(|n| self.eval(n + offset))
    }
}

/// `a_q f(N) = f(N+1) a_q` and `a_q^dag f(N) = f(N-1) a_q^dag`.
pub fn check_shift_rule(setup: &AuditSetup, f: &Polynomial, tol: f64) -> Result<ConditionReport> {
    let ops = &setup.ops;
    ensure_consistent(ops)?;
    let f_n = f.of(&ops.number, 0.0);
    let lowered = ops.a_q.try_mul(&f_n)?;
    let raised = ops.a_q_dag.try_mul(&f_n)?;
    let lower = lowered.try_sub(&f.of(&ops.number, 1.0).try_mul(&ops.a_q)?)?;
    let raise = raised.try_sub(&f.of(&ops.number, -1.0).try_mul(&ops.a_q_dag)?)?;
    let block = setup.single_block();
    let residual = lower.max_abs_in_block(block).max(raise.max_abs_in_block(block));
    let scale = lowered.max_abs_in_block(block).max(raised.max_abs_in_block(block));
    Ok(ConditionReport::new(SHIFT_RULE, setup.grid_point, residual, tol).with_scale(scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(s: f64, choice: FunctionChoice, d: usize) -> AuditSetup {
        AuditSetup::new(TruncatedFockSpace::new(d).unwrap(), DeformationParam::new(s).unwrap(), choice).unwrap()
    }

    #[test]
    fn small_cutoff_is_rejected() {
        let err = AuditSetup::new(
            TruncatedFockSpace::new(3).unwrap(),
            DeformationParam::new(0.5).unwrap(),
            FunctionChoice::undeformed(),
        )
        .unwrap_err();
        assert_eq!(err, Error::CutoffTooSmall { cutoff: 3, min: 4 });
    }

    #[test]
    fn polynomial_validation() {
        assert_eq!(Polynomial::new(&[]), Err(Error::EmptyPolynomial));
        assert!(Polynomial::new(&[1.0; 6]).is_err());
        let f = Polynomial::new(&[1.0, 0.0, 1.0]).unwrap();
        assert_eq!(f.eval(3.0), 10.0);
    }

    #[test]
    fn report_pass_tracks_tolerance() {
        let gp = GridPoint { s: 0.5, choice: FunctionChoice::undeformed(), cutoff: 16 };
        assert!(ConditionReport::new("x", gp, 1e-3, 1e-3).pass);
        assert!(!ConditionReport::new("x", gp, 2e-3, 1e-3).pass);
        assert!(!ConditionReport::new("x", gp, f64::NAN, 1.0).pass);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let mut bad = setup(0.5, FunctionChoice::undeformed(), 6);
        bad.ops.number = TruncatedOperator::identity(5);
        assert_eq!(check_number_commutators(&bad, 1e-10).unwrap_err(), Error::DimensionMismatch { left: 6, right: 5 });
    }

    #[test]
    fn undeformed_limit_reduces_to_canonical_commutator() {
        let st = setup(1e-9, FunctionChoice::undeformed(), 16);
        let r = check_qcommutator(&st, 1e-6).unwrap();
        assert!(r.pass, "{r:?}");
        let r = check_number_products(&st, 1e-6).unwrap();
        assert!(r.pass, "{r:?}");
    }
}
