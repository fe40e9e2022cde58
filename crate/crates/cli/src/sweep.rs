//! Runs every registered check at every grid point.
//!
//! Grid points are independent; results are merged back in grid order before
//! anything is serialized, so parallel and sequential runs are identical.

use qdeform_core::algebra_audit::{self, AuditSetup, ConditionReport, Polynomial};
use qdeform_core::gates::{self, GateConditionReport};
use qdeform_core::jsqubit::{norm_ratio_experiment, QubitLabel};
use qdeform_core::{DeformationParam, FunctionChoice, TruncatedFockSpace};
use rayon::prelude::*;

use crate::config::{ConfigError, SweepConfig};
use crate::report::{format_real, CheckTally, Entry, NormRatioRecord, Summary, SweepReport, SCHEMA_VERSION};

/// Coefficients of `f(x) = 1 + x^2` for the shift rule check.
pub const SHIFT_POLYNOMIAL: [f64; 3] = [1.0, 0.0, 1.0];
/// Angle used by the phase-shift proportionality check.
pub const PHASE_ANGLE: f64 = std::f64::consts::FRAC_PI_3;
/// Relative tolerance for deciding which norm-ratio law a measurement matches.
pub const LAW_MATCH_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    QCommutator,
    NumberCommutators,
    NumberProducts,
    ShiftRule,
    NotCondition,
    CnotCondition,
    HadamardProportionality,
    PhaseProportionality,
    CnotTruthTable,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::QCommutator,
        Check::NumberCommutators,
        Check::NumberProducts,
        Check::ShiftRule,
        Check::NotCondition,
        Check::CnotCondition,
        Check::HadamardProportionality,
        Check::PhaseProportionality,
        Check::CnotTruthTable,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Check::QCommutator => algebra_audit::QCOMMUTATOR,
            Check::NumberCommutators => algebra_audit::NUMBER_COMMUTATORS,
            Check::NumberProducts => algebra_audit::NUMBER_PRODUCTS,
            Check::ShiftRule => algebra_audit::SHIFT_RULE,
            Check::NotCondition => gates::NOT_CONDITION,
            Check::CnotCondition => gates::CNOT_CONDITION,
            Check::HadamardProportionality => gates::HADAMARD_PROPORTIONALITY,
            Check::PhaseProportionality => gates::PHASE_PROPORTIONALITY,
            Check::CnotTruthTable => gates::CNOT_TRUTH_TABLE,
        }
    }

    fn is_algebra(self) -> bool {
        matches!(self, Check::QCommutator | Check::NumberCommutators | Check::NumberProducts | Check::ShiftRule)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckSet {
    Algebra,
    Gates,
    All,
}

impl CheckSet {
    /// Checks in this set, ordered by check id.
    pub fn checks(self) -> Vec<Check> {
        let mut checks: Vec<Check> = Check::ALL
            .into_iter()
            .filter(|c| match self {
                CheckSet::Algebra => c.is_algebra(),
                CheckSet::Gates => !c.is_algebra(),
                CheckSet::All => true,
            })
            .collect();
        checks.sort_by_key(|c| c.id());
        checks
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Execution {
    Parallel,
    Sequential,
}

/// Whether a check is expected to pass for the functions recorded in `entry`.
///
/// The number products hold only for `psi1 = psi2 = 1`; the q-commutator and
/// the NOT condition need `psi1 = psi2`; everything else is unconditional.
pub fn expected_to_pass(entry: &Entry) -> bool {
    match entry.check_id.as_str() {
        algebra_audit::NUMBER_PRODUCTS => entry.psi1 == 1.0 && entry.psi2 == 1.0,
        algebra_audit::QCOMMUTATOR | gates::NOT_CONDITION => entry.psi1 == entry.psi2,
        _ => true,
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport, ConfigError> {
    run_sweep_with(config, CheckSet::All, Execution::Parallel)
}

pub fn run_sweep_with(config: &SweepConfig, set: CheckSet, execution: Execution) -> Result<SweepReport, ConfigError> {
    config.validate()?;
    let checks = set.checks();
    let points: Vec<(Vec<Entry>, Vec<NormRatioRecord>)> = match execution {
        Execution::Parallel => config.s_grid.par_iter().map(|&s| run_point(config, s, &checks)).collect(),
        Execution::Sequential => config.s_grid.iter().map(|&s| run_point(config, s, &checks)).collect(),
    };
    let (entries, norm_ratios): (Vec<_>, Vec<_>) = points.into_iter().unzip();
    let entries: Vec<Entry> = entries.into_iter().flatten().collect();
    let summary = summarize(&entries);
    Ok(SweepReport {
        schema_version: SCHEMA_VERSION,
        tool_version: crate::TOOL_VERSION.to_string(),
        config: config.clone(),
        entries,
        norm_ratios: norm_ratios.into_iter().flatten().collect(),
        summary,
    })
}

pub fn summarize(entries: &[Entry]) -> Summary {
    let mut summary = Summary::default();
    for e in entries {
        let tally: &mut CheckTally = summary.checks.entry(e.check_id.clone()).or_default();
        if e.pass {
            tally.pass += 1;
            summary.total_pass += 1;
        } else {
            tally.fail += 1;
            summary.total_fail += 1;
            if expected_to_pass(e) {
                tally.unexpected_fail += 1;
                summary.unexpected_failures += 1;
            }
        }
    }
    summary
}

fn run_point(config: &SweepConfig, s: f64, checks: &[Check]) -> (Vec<Entry>, Vec<NormRatioRecord>) {
    let p = DeformationParam::new(s).expect("validated grid");
    let psi = config.psi_family.evaluate(p);
    let beta = config.beta_family.evaluate(p);
    let qubit_space = TruncatedFockSpace::new(TruncatedFockSpace::QUBIT_CUTOFF).expect("valid cutoff");
    let audit_space = TruncatedFockSpace::new(config.cutoff).expect("validated cutoff");

    let choice = match FunctionChoice::uniform(psi, beta) {
        Ok(choice) => choice,
        Err(err) => {
            let bogus = FunctionChoice { psi1: psi, psi2: psi, psi3: psi, psi4: psi, beta1: beta, beta2: beta };
            let entries =
                checks.iter().map(|c| error_entry(c.id(), s, config.cutoff, &bogus, &err.to_string())).collect();
            return (entries, Vec::new());
        }
    };
    let tol = config.tolerance;
    let setup = checks.iter().any(|c| c.is_algebra()).then(|| AuditSetup::new(audit_space, p, choice));

    let entries = checks
        .iter()
        .map(|&check| {
            let outcome = match check {
                Check::QCommutator | Check::NumberCommutators | Check::NumberProducts | Check::ShiftRule => {
                    match setup.as_ref().expect("built for algebra checks") {
                        Ok(setup) => run_algebra(check, setup, tol).map(condition_entry),
                        Err(err) => Err(err.clone()),
                    }
                }
                Check::NotCondition => gates::check_not_condition(p, &choice, qubit_space.cutoff(), tol)
                    .map(|r| gate_entry(r, qubit_space.cutoff())),
                Check::CnotCondition => {
                    gates::check_cnot_condition(p, beta, beta, tol).map(|r| gate_entry(r, qubit_space.cutoff()))
                }
                Check::HadamardProportionality => gates::check_hadamard_condition(p, &choice, qubit_space, tol)
                    .map(|r| gate_entry(r, qubit_space.cutoff())),
                Check::PhaseProportionality => gates::check_phase_condition(p, &choice, PHASE_ANGLE, qubit_space, tol)
                    .map(|r| gate_entry(r, qubit_space.cutoff())),
                Check::CnotTruthTable => gates::check_cnot_truth_table(p, &choice, qubit_space, tol)
                    .map(|r| gate_entry(r, qubit_space.cutoff())),
            };
            let cutoff = if check.is_algebra() { config.cutoff } else { qubit_space.cutoff() };
            outcome.unwrap_or_else(|err| error_entry(check.id(), s, cutoff, &choice, &err.to_string()))
        })
        .collect();

    let mut ratios = Vec::with_capacity(4);
    for x in QubitLabel::BOTH {
        for y in QubitLabel::BOTH {
            if let Ok(r) = norm_ratio_experiment(x, y, p, psi, beta, qubit_space) {
                ratios.push(NormRatioRecord {
                    s,
                    control: x.value() as u8,
                    target: y.value() as u8,
                    psi,
                    beta,
                    measured: r.measured,
                    product_prediction: r.product_prediction,
                    sqrt_product_prediction: r.sqrt_product_prediction,
                    matching_law: r.matching_law(LAW_MATCH_TOLERANCE).map(|l| l.name().to_string()),
                });
            }
        }
    }
    (entries, ratios)
}

fn run_algebra(check: Check, setup: &AuditSetup, tol: f64) -> qdeform_core::Result<ConditionReport> {
    match check {
        Check::QCommutator => algebra_audit::check_qcommutator(setup, tol),
        Check::NumberCommutators => algebra_audit::check_number_commutators(setup, tol),
        Check::NumberProducts => algebra_audit::check_number_products(setup, tol),
        Check::ShiftRule => {
            let f = Polynomial::new(&SHIFT_POLYNOMIAL)?;
            algebra_audit::check_shift_rule(setup, &f, tol)
        }
        _ => unreachable!("not an algebra check"),
    }
}

fn condition_entry(r: ConditionReport) -> Entry {
    let c = r.grid_point.choice;
    Entry {
        check_id: r.condition_id.to_string(),
        s: r.grid_point.s,
        cutoff: r.grid_point.cutoff,
        psi1: c.psi1,
        psi2: c.psi2,
        beta1: c.beta1,
        beta2: c.beta2,
        residual: Some(r.residual),
        pass: r.pass,
        note: format!("scale {}", format_real(r.scale)),
    }
}

fn gate_entry(r: GateConditionReport, cutoff: usize) -> Entry {
    let c = r.grid_point.choice;
    Entry {
        check_id: r.condition_id.to_string(),
        s: r.grid_point.s,
        cutoff,
        psi1: c.psi1,
        psi2: c.psi2,
        beta1: c.beta1,
        beta2: c.beta2,
        residual: Some(r.residual),
        pass: r.realizable,
        note: r.note,
    }
}

fn error_entry(check_id: &str, s: f64, cutoff: usize, c: &FunctionChoice, message: &str) -> Entry {
    Entry {
        check_id: check_id.to_string(),
        s,
        cutoff,
        psi1: c.psi1,
        psi2: c.psi2,
        beta1: c.beta1,
        beta2: c.beta2,
        residual: None,
        pass: false,
        note: format!("domain error: {message}"),
    }
}
