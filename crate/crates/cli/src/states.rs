//! Case I / Case II state tables and the psi inference demo.

use qdeform_core::inference::infer_psi_from_norm;
use qdeform_core::jsqubit::{
    case2_consistency_table, two_qubit_state, NormRatioLaw, QubitLabel, MEASURED_NORM_RATIO_LAW,
};
use qdeform_core::{DeformationParam, FunctionChoice, TruncatedFockSpace};
use serde::{Deserialize, Serialize};

use crate::config::{ConfigError, SweepConfig};
use crate::report::{NormRatioRecord, SCHEMA_VERSION};
use crate::sweep::{run_sweep_with, CheckSet, Execution};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConsistencyRecord {
    pub s: f64,
    pub label: String,
    pub psi_family: String,
    pub beta_family: String,
    pub n_hat: u32,
    pub k_hat: u32,
    pub psi: f64,
    pub beta: f64,
    pub n_prime: f64,
    pub k_prime: f64,
    pub is_case_one: bool,
    pub hats_exceed_primes: bool,
}

/// A two-qubit state over `(a1, a2, b1, b2)` occupations, nonzero amplitudes only.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StateRecord {
    pub s: f64,
    /// `I` (undeformed functions) or `II` (config families).
    pub case: String,
    pub label: String,
    pub cutoff: usize,
    /// `(basis index, real, imag)`.
    pub amplitudes: Vec<(usize, f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StatesReport {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: SweepConfig,
    /// Law the constructed states satisfy.
    pub measured_law: String,
    pub norm_ratios: Vec<NormRatioRecord>,
    pub consistency_table: Vec<ConsistencyRecord>,
    pub states: Vec<StateRecord>,
}

pub fn run_states(config: &SweepConfig) -> Result<StatesReport, ConfigError> {
    // reuse the sweep's norm-ratio records
    let sweep = run_sweep_with(config, CheckSet::Gates, Execution::Sequential)?;
    let space = TruncatedFockSpace::new(TruncatedFockSpace::QUBIT_CUTOFF).expect("qubit cutoff is valid");
    let mut consistency_table = Vec::new();
    let mut states = Vec::new();
    for &s in &config.s_grid {
        let p = DeformationParam::new(s).expect("validated grid");
        let case_two = FunctionChoice::uniform(config.psi_family.evaluate(p), config.beta_family.evaluate(p))
            .map_err(|e| ConfigError { issues: vec![e.to_string()] })?;
        for (case, choice) in [("I", FunctionChoice::undeformed()), ("II", case_two)] {
            for x in QubitLabel::BOTH {
                for y in QubitLabel::BOTH {
                    let state = two_qubit_state(x, y, p, &choice, space)
                        .map_err(|e| ConfigError { issues: vec![format!("state |{x}{y}> at s={s}: {e}")] })?;
                    let amplitudes = state
                        .support()
                        .into_iter()
                        .map(|i| (i, state.amplitudes()[i].re, state.amplitudes()[i].im))
                        .collect();
                    states.push(StateRecord {
                        s,
                        case: case.to_string(),
                        label: format!("|{x}{y}>"),
                        cutoff: space.cutoff(),
                        amplitudes,
                    });
                }
            }
        }
        for row in case2_consistency_table(p).expect("table families are positive") {
            consistency_table.push(ConsistencyRecord {
                s,
                label: row.label(),
                psi_family: row.psi_family.to_string(),
                beta_family: row.beta_family.to_string(),
                n_hat: row.control_occupation.n_hat,
                k_hat: row.target_occupation.n_hat,
                psi: row.control_occupation.psi_value,
                beta: row.target_occupation.psi_value,
                n_prime: row.n_prime(),
                k_prime: row.k_prime(),
                is_case_one: row.is_case_one,
                hats_exceed_primes: row.hats_exceed_primes,
            });
        }
    }
    Ok(StatesReport {
        schema_version: SCHEMA_VERSION,
        tool_version: crate::TOOL_VERSION.to_string(),
        config: config.clone(),
        measured_law: MEASURED_NORM_RATIO_LAW.name().to_string(),
        norm_ratios: sweep.norm_ratios,
        consistency_table,
        states,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InferReport {
    pub s: f64,
    pub law: String,
    pub beta: f64,
    pub n_hat: u32,
    pub measured_norm_ratio: f64,
    pub psi: f64,
    pub n_prime: f64,
    pub signature: String,
    pub encoded_occupation: u32,
    pub log_distance: f64,
}

pub fn run_infer(s: f64, ratio: f64, beta: f64, n_hat: u32, law: NormRatioLaw) -> qdeform_core::Result<InferReport> {
    let p = DeformationParam::new(s)?;
    let inf = infer_psi_from_norm(ratio, beta, p, law, n_hat)?;
    Ok(InferReport {
        s,
        law: law.name().to_string(),
        beta,
        n_hat,
        measured_norm_ratio: ratio,
        psi: inf.psi,
        n_prime: inf.n_prime,
        signature: inf.signature.to_string(),
        encoded_occupation: inf.signature.encoded_occupation(),
        log_distance: inf.log_distance,
    })
}
