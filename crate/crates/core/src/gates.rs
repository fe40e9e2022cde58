//! NOT, Hadamard, phase-shift and CNOT on Jordan-Schwinger qubits, standard
//! and deformed, plus the realizability conditions of the deformed gates.
//!
//! Gates are defined on basis states and extended linearly. A deformed basis
//! state `|x>_q` is the standard one times its F prefactor, so an input
//! amplitude `c` on `|x>` is read as `c / prefactor(x)` units of `|x>_q`.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::algebra_audit::GridPoint;
use crate::error::{Error, Result};
use crate::fockspace::{deformed_number_eigenvalue, f_squared, f_value, FunctionChoice, TruncatedFockSpace};
use crate::jsqubit::{
    deformed_qubit_state, qubit_label_of, qubit_state, OscillatorPairState, QubitLabel, TwoQubitState,
};
use crate::qnumber::DeformationParam;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub const NOT_CONDITION: &str = "eq14_not_condition";
pub const CNOT_CONDITION: &str = "eq21_cnot_condition";
pub const HADAMARD_PROPORTIONALITY: &str = "hadamard_proportionality";
pub const PHASE_PROPORTIONALITY: &str = "phase_proportionality";
pub const CNOT_TRUTH_TABLE: &str = "cnot_truth_table";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GateKind {
    Not,
    Hadamard,
    Phase,
    Cnot,
}

impl GateKind {
    pub fn name(self) -> &'static str {
        match self {
            GateKind::Not => "NOT",
            GateKind::Hadamard => "HADAMARD",
            GateKind::Phase => "PHASE",
            GateKind::Cnot => "CNOT",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GateConditionReport {
    pub gate: GateKind,
    pub condition_id: &'static str,
    pub grid_point: GridPoint,
    pub residual: f64,
    pub tolerance: f64,
    pub realizable: bool,
    /// Free-form diagnostics, empty when there is nothing to add.
    pub note: String,
}

impl GateConditionReport {
    fn new(gate: GateKind, condition_id: &'static str, grid_point: GridPoint, residual: f64, tolerance: f64) -> Self {
        GateConditionReport {
            gate,
            condition_id,
            grid_point,
            residual,
            tolerance,
            realizable: residual <= tolerance,
            note: String::new(),
        }
    }
}

/// How qubit basis states are built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Realization {
    Standard,
    /// Deformed oscillators with the given functions. Single-qubit gates use
    /// `psi1..psi4`; a CNOT target uses `beta1, beta2`.
    Deformed(DeformationParam, FunctionChoice),
}

/// The two basis states of one qubit under a realization.
#[derive(Debug, Clone)]
pub struct QubitBasis {
    states: [OscillatorPairState; 2],
    prefactors: [f64; 2],
}

impl QubitBasis {
    pub fn new(realization: Realization, space: TruncatedFockSpace) -> Result<Self> {
        match realization {
            Realization::Standard => Self::standard(space),
            Realization::Deformed(p, choice) => Self::deformed(p, &choice, space),
        }
    }

    fn standard(space: TruncatedFockSpace) -> Result<Self> {
        Self::from_states([qubit_state(QubitLabel::Zero, space), qubit_state(QubitLabel::One, space)])
    }

    fn deformed(p: DeformationParam, choice: &FunctionChoice, space: TruncatedFockSpace) -> Result<Self> {
        Self::from_states([
            deformed_qubit_state(QubitLabel::Zero, p, choice, space)?,
            deformed_qubit_state(QubitLabel::One, p, choice, space)?,
        ])
    }

    fn from_states(states: [OscillatorPairState; 2]) -> Result<Self> {
        let mut prefactors = [0.0; 2];
        for x in QubitLabel::BOTH {
            let (n1, n2) = x.occupations();
            let amp = states[x.value()].amplitude(n1, n2);
            if amp == ZERO {
                return Err(Error::VanishingBasisState { label: x.value() as u8 });
            }
            prefactors[x.value()] = amp.re;
        }
        Ok(QubitBasis { states, prefactors })
    }

    pub fn state(&self, x: QubitLabel) -> &OscillatorPairState {
        &self.states[x.value()]
    }

    /// Amplitude of `|x>_q` on the standard `|x>`.
    pub fn prefactor(&self, x: QubitLabel) -> f64 {
        self.prefactors[x.value()]
    }

    /// Components of `state` in this basis; fails on weight outside the qubit subspace.
    pub fn decompose(&self, state: &OscillatorPairState) -> Result<Vec<(QubitLabel, Complex64)>> {
        let mut out = Vec::new();
        for index in state.support() {
            let (n1, n2) = state.occupations(index);
            let x = qubit_label_of(n1, n2).ok_or(Error::NotQubitState { index })?;
            out.push((x, state.amplitudes()[index] / self.prefactor(x)));
        }
        Ok(out)
    }

    fn combine(&self, template: &OscillatorPairState, terms: &[(QubitLabel, Complex64)]) -> OscillatorPairState {
        let mut out = OscillatorPairState::zero(template.space());
        for &(x, c) in terms {
            out.add_scaled(self.state(x), c);
        }
        out
    }
}

/// `|x> -> |1-x>`; in deformed mode the creation-operator exponents are swapped.
pub fn apply_not(state: &OscillatorPairState, realization: Realization) -> Result<OscillatorPairState> {
    let basis = QubitBasis::new(realization, state.space())?;
    let terms: Vec<_> = basis.decompose(state)?.into_iter().map(|(x, c)| (x.flipped(), c)).collect();
    Ok(basis.combine(state, &terms))
}

/// `|x> -> ((-1)^x |x> + |1-x>) / sqrt(2)`.
pub fn apply_hadamard(state: &OscillatorPairState, realization: Realization) -> Result<OscillatorPairState> {
    let basis = QubitBasis::new(realization, state.space())?;
    let h = core::f64::consts::FRAC_1_SQRT_2;
    let mut terms = Vec::new();
    for (x, c) in basis.decompose(state)? {
        let sign = if x == QubitLabel::One { -1.0 } else { 1.0 };
        terms.push((x, c * sign * h));
        terms.push((x.flipped(), c * h));
    }
    Ok(basis.combine(state, &terms))
}

/// `|x> -> e^(i x theta) |x>`: multiplies the `|1>_1 |0>_2` amplitude by `e^(i theta)`.
///
/// The deformed basis states are rescaled standard ones, so the same map
/// serves both realizations.
pub fn apply_phase_shift(state: &OscillatorPairState, theta: f64) -> OscillatorPairState {
    let mut amplitudes = state.amplitudes().to_vec();
    let index = state.index(1, 0);
    amplitudes[index] *= Complex64::from_polar(1.0, theta);
    OscillatorPairState::from_amplitudes(state.space(), amplitudes).expect("same dimensions")
}

/// Control and target bases for a two-qubit gate.
#[derive(Debug, Clone)]
pub struct TwoQubitBasis {
    pub control: QubitBasis,
    pub target: QubitBasis,
}

impl TwoQubitBasis {
    pub fn new(realization: Realization, space: TruncatedFockSpace) -> Result<Self> {
        let target = match realization {
            Realization::Standard => Realization::Standard,
            Realization::Deformed(p, choice) => Realization::Deformed(p, choice.as_target()),
        };
        Ok(TwoQubitBasis { control: QubitBasis::new(realization, space)?, target: QubitBasis::new(target, space)? })
    }

    pub fn state(&self, x: QubitLabel, y: QubitLabel) -> TwoQubitState {
        TwoQubitState::product(self.control.state(x), self.target.state(y)).expect("shared cutoff")
    }
}

/// `|x>|y> -> (1-x)|x>|y> + x|x>|1-y>`.
pub fn apply_cnot(state: &TwoQubitState, realization: Realization) -> Result<TwoQubitState> {
    let space = TruncatedFockSpace::new(state.cutoff())?;
    let basis = TwoQubitBasis::new(realization, space)?;
    let mut out = TwoQubitState::zero(space);
    for (x, y, amp) in state.qubit_components()? {
        let coefficient = amp / (basis.control.prefactor(x) * basis.target.prefactor(y));
        let y_out = if x == QubitLabel::One { y.flipped() } else { y };
        out.add_scaled(&basis.state(x, y_out), coefficient);
    }
    Ok(out)
}

/// One line of the CNOT truth table, compared against the standard output.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthRow {
    pub input: (QubitLabel, QubitLabel),
    pub expected: (QubitLabel, QubitLabel),
    pub output: TwoQubitState,
    /// Output amplitude on the expected standard basis element.
    pub ratio: Complex64,
    /// Largest amplitude anywhere else.
    pub leakage: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TruthTable {
    pub rows: Vec<TruthRow>,
}

impl TruthTable {
    /// Largest pairwise distance between row ratios.
    pub fn ratio_spread(&self) -> f64 {
        let mut spread = 0.0f64;
        for a in &self.rows {
            for b in &self.rows {
                spread = spread.max((a.ratio - b.ratio).norm());
            }
        }
        spread
    }

    pub fn max_leakage(&self) -> f64 {
        self.rows.iter().map(|r| r.leakage).fold(0.0, f64::max)
    }

    /// Distance of every ratio from one.
    pub fn max_ratio_defect(&self) -> f64 {
        self.rows.iter().map(|r| (r.ratio - Complex64::new(1.0, 0.0)).norm()).fold(0.0, f64::max)
    }
}

/// Applies CNOT to each of the four basis inputs of the realization and
/// compares the output with the standard expected basis state.
pub fn cnot_truth_table(realization: Realization, space: TruncatedFockSpace) -> Result<TruthTable> {
    let basis = TwoQubitBasis::new(realization, space)?;
    let mut rows = Vec::with_capacity(4);
    for x in QubitLabel::BOTH {
        for y in QubitLabel::BOTH {
            let output = apply_cnot(&basis.state(x, y), realization)?;
            let expected = (x, if x == QubitLabel::One { y.flipped() } else { y });
            let target = output.qubit_index(expected.0, expected.1);
            let ratio = output.amplitudes()[target];
            let leakage = output
                .amplitudes()
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != target)
                .map(|(_, z)| z.norm())
                .fold(0.0, f64::max);
            rows.push(TruthRow { input: (x, y), expected, output, ratio, leakage });
        }
    }
    Ok(TruthTable { rows })
}

/// Standard table: exact transitions. Deformed: transitions up to one common scalar.
pub fn check_cnot_truth_table(
    p: DeformationParam,
    choice: &FunctionChoice,
    space: TruncatedFockSpace,
    tol: f64,
) -> Result<GateConditionReport> {
    let standard = cnot_truth_table(Realization::Standard, space)?;
    let deformed = cnot_truth_table(Realization::Deformed(p, *choice), space)?;
    let residual = standard
        .max_leakage()
        .max(standard.max_ratio_defect())
        .max(deformed.max_leakage())
        .max(deformed.ratio_spread());
    let grid_point = GridPoint { s: p.s(), choice: *choice, cutoff: space.cutoff() };
    let mut report = GateConditionReport::new(GateKind::Cnot, CNOT_TRUTH_TABLE, grid_point, residual, tol);
    report.note = format!("common ratio {:.17e}", deformed.rows[0].ratio.re);
    Ok(report)
}

/// NOT realizability, `F(n) = F(1-n)` on `n in {0, 1}`.
///
/// Compared in the eigenvalue form with denominators cleared,
/// `(1-n) nF(n)^2 = n (1-n)F(1-n)^2`, which stays finite at `n = 0`; its
/// residual is `|psi1 - psi2| / (q - 1/q)` and vanishes exactly when
/// `psi1 = psi2`.
pub fn check_not_condition(
    p: DeformationParam,
    choice: &FunctionChoice,
    cutoff: usize,
    tol: f64,
) -> Result<GateConditionReport> {
    choice.validate()?;
    let (psi1, psi2) = (choice.psi1, choice.psi2);
    // the qubit prefactor F(1) must exist
    f_value(1.0, p, psi1, psi2)?;
    let residual = [0.0, 1.0]
        .into_iter()
        .map(|n: f64| {
            let lhs = (1.0 - n) * deformed_number_eigenvalue(n, p, psi1, psi2);
            let rhs = n * deformed_number_eigenvalue(1.0 - n, p, psi1, psi2);
            (lhs - rhs).abs()
        })
        .fold(0.0, f64::max);
    let grid_point = GridPoint { s: p.s(), choice: *choice, cutoff };
    Ok(GateConditionReport::new(GateKind::Not, NOT_CONDITION, grid_point, residual, tol))
}

/// One side of the `B = B'` comparison: a product of `G(m)^(2 e)` factors
/// given as `(m, e)` with `G(m)^2 = (q^m b1 - q^-m b2) / (m (q - 1/q))`.
fn cnot_side(
    factors: [(f64, f64); 2],
    p: DeformationParam,
    beta1: f64,
    beta2: f64,
    notes: &mut Vec<String>,
) -> Result<f64> {
    let mut value = 1.0;
    for (m, exponent) in factors {
        if exponent == 0.0 {
            // x^0 = 1; a singular or negative base here is an artifact of the formula
            match f_squared(m, p, beta1, beta2) {
                Ok(base) if base.is_finite() => {}
                Ok(base) => notes.push(format!("skipped G^2({m}) = {base} with exponent 0")),
                Err(err) => notes.push(format!("skipped exponent-0 factor: {err}")),
            }
            continue;
        }
        let base = f_squared(m, p, beta1, beta2)?;
        value *= libm::pow(base, exponent);
    }
    Ok(value)
}

/// CNOT realizability `B = B'` for `k in {0, 1}`, evaluated on the target's
/// occupation `K_hat = k`.
pub fn check_cnot_condition(p: DeformationParam, beta1: f64, beta2: f64, tol: f64) -> Result<GateConditionReport> {
    let mut notes = Vec::new();
    let mut residual = 0.0f64;
    for k in [0.0, 1.0] {
        let kappa = k;
        let lhs = cnot_side([(kappa, k / 2.0), (1.0 - kappa + k, (1.0 - k) / 2.0)], p, beta1, beta2, &mut notes)?;
        let rhs = cnot_side([(1.0 - kappa, (1.0 - k) / 2.0), (kappa - 1.0 + k, k / 2.0)], p, beta1, beta2, &mut notes)?;
        residual = residual.max((lhs - rhs).abs());
    }
    let choice = FunctionChoice::undeformed().with_beta(beta1, beta2)?;
    let grid_point = GridPoint { s: p.s(), choice, cutoff: 0 };
    let mut report = GateConditionReport::new(GateKind::Cnot, CNOT_CONDITION, grid_point, residual, tol);
    report.note = notes.join("; ");
    Ok(report)
}

/// Largest distance of `outputs[i]` from `ratio * references[i]`, with one
/// ratio shared by all pairs, plus the spread of per-pair ratios.
fn proportionality_residual(pairs: &[(OscillatorPairState, OscillatorPairState)]) -> (f64, Complex64) {
    let ratios: Vec<Complex64> =
        pairs.iter().map(|(out, reference)| reference.inner(out) / reference.norm_sqr()).collect();
    let common = ratios[0];
    let mut residual = 0.0f64;
    for ((out, reference), ratio) in pairs.iter().zip(&ratios) {
        residual = residual.max(out.max_abs_diff(&reference.scaled(common)));
        residual = residual.max((ratio - common).norm());
    }
    (residual, common)
}

/// Deformed Hadamard outputs on `|0>_q, |1>_q` against the standard outputs,
/// up to a common scalar.
pub fn check_hadamard_condition(
    p: DeformationParam,
    choice: &FunctionChoice,
    space: TruncatedFockSpace,
    tol: f64,
) -> Result<GateConditionReport> {
    let deformed = Realization::Deformed(p, *choice);
    let basis = QubitBasis::new(deformed, space)?;
    let mut pairs = Vec::with_capacity(2);
    for x in QubitLabel::BOTH {
        let out = apply_hadamard(basis.state(x), deformed)?;
        let reference = apply_hadamard(&qubit_state(x, space), Realization::Standard)?;
        pairs.push((out, reference));
    }
    let (residual, ratio) = proportionality_residual(&pairs);
    let grid_point = GridPoint { s: p.s(), choice: *choice, cutoff: space.cutoff() };
    let mut report = GateConditionReport::new(GateKind::Hadamard, HADAMARD_PROPORTIONALITY, grid_point, residual, tol);
    report.note = format!("common ratio {:.17e}", ratio.re);
    Ok(report)
}

/// Deformed phase-shift outputs against the standard ones, up to a common scalar.
pub fn check_phase_condition(
    p: DeformationParam,
    choice: &FunctionChoice,
    theta: f64,
    space: TruncatedFockSpace,
    tol: f64,
) -> Result<GateConditionReport> {
    let basis = QubitBasis::new(Realization::Deformed(p, *choice), space)?;
    let pairs: Vec<_> = QubitLabel::BOTH
        .into_iter()
        .map(|x| (apply_phase_shift(basis.state(x), theta), apply_phase_shift(&qubit_state(x, space), theta)))
        .collect();
    let (residual, ratio) = proportionality_residual(&pairs);
    let grid_point = GridPoint { s: p.s(), choice: *choice, cutoff: space.cutoff() };
    let mut report = GateConditionReport::new(GateKind::Phase, PHASE_PROPORTIONALITY, grid_point, residual, tol);
    report.note = format!("common ratio {:.17e}", ratio.re);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jsqubit::two_qubit_state;
    use alloc::vec;

    fn space() -> TruncatedFockSpace {
        TruncatedFockSpace::new(4).unwrap()
    }

    fn p(s: f64) -> DeformationParam {
        DeformationParam::new(s).unwrap()
    }

    #[test]
    fn not_flips_standard_basis() {
        let zero = qubit_state(QubitLabel::Zero, space());
        let one = qubit_state(QubitLabel::One, space());
        assert_eq!(apply_not(&zero, Realization::Standard).unwrap(), one);
        assert_eq!(apply_not(&one, Realization::Standard).unwrap(), zero);
    }

    #[test]
    fn deformed_not_swaps_deformed_basis() {
        let d = p(0.5);
        let choice = FunctionChoice::from_psi_pair(d.q(), 1.0).unwrap();
        let realization = Realization::Deformed(d, choice);
        let basis = QubitBasis::new(realization, space()).unwrap();
        let out = apply_not(basis.state(QubitLabel::One), realization).unwrap();
        assert!(out.max_abs_diff(basis.state(QubitLabel::Zero)) < 1e-15);
    }

    #[test]
    fn gates_reject_states_outside_qubit_subspace() {
        let vac = crate::jsqubit::vacuum(space());
        assert_eq!(apply_not(&vac, Realization::Standard), Err(Error::NotQubitState { index: 0 }));
        assert!(apply_hadamard(&vac, Realization::Standard).is_err());
        let mut bad = TwoQubitState::zero(space());
        bad.add_scaled(
            &TwoQubitState::product(&vac, &qubit_state(QubitLabel::One, space())).unwrap(),
            Complex64::new(1.0, 0.0),
        );
        assert!(matches!(apply_cnot(&bad, Realization::Standard), Err(Error::NotQubitState { .. })));
    }

    #[test]
    fn hadamard_examples() {
        let s = space();
        let zero = qubit_state(QubitLabel::Zero, s);
        let one = qubit_state(QubitLabel::One, s);
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let plus = apply_hadamard(&zero, Realization::Standard).unwrap();
        assert!((plus.amplitude(0, 1).re - h).abs() < 1e-15);
        assert!((plus.amplitude(1, 0).re - h).abs() < 1e-15);
        let minus = apply_hadamard(&one, Realization::Standard).unwrap();
        assert!((minus.amplitude(0, 1).re - h).abs() < 1e-15);
        assert!((minus.amplitude(1, 0).re + h).abs() < 1e-15);
    }

    #[test]
    fn phase_shift_examples() {
        let s = space();
        let zero = qubit_state(QubitLabel::Zero, s);
        let one = qubit_state(QubitLabel::One, s);
        assert_eq!(apply_phase_shift(&zero, core::f64::consts::FRAC_PI_3), zero);
        let flipped = apply_phase_shift(&one, core::f64::consts::PI);
        assert!(flipped.max_abs_diff(&one.scaled(Complex64::new(-1.0, 0.0))) < 1e-15);
        assert_eq!(apply_phase_shift(&one, 0.0), one);
    }

    #[test]
    fn cnot_standard_transitions() {
        let s = space();
        let d = p(0.5);
        let undeformed = FunctionChoice::undeformed();
        for (x, y, ex, ey) in [(0, 0, 0, 0), (0, 1, 0, 1), (1, 0, 1, 1), (1, 1, 1, 0)] {
            let [x, y, ex, ey] = [x, y, ex, ey].map(|v| QubitLabel::try_from(v).unwrap());
            let input = two_qubit_state(x, y, d, &undeformed, s).unwrap();
            let out = apply_cnot(&input, Realization::Standard).unwrap();
            assert_eq!(out.support(), vec![out.qubit_index(ex, ey)]);
            assert_eq!(out.amplitudes()[out.qubit_index(ex, ey)], Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn not_condition_examples() {
        let d = p(0.5);
        let ok = check_not_condition(d, &FunctionChoice::undeformed(), 4, 1e-10).unwrap();
        assert!(ok.realizable && ok.residual < 1e-13);
        let cube = d.pow(3.0);
        let ok = check_not_condition(d, &FunctionChoice::from_psi_pair(cube, cube).unwrap(), 4, 1e-10).unwrap();
        assert!(ok.realizable);
        let bad = check_not_condition(d, &FunctionChoice::from_psi_pair(2.0, 1.0).unwrap(), 4, 1e-10).unwrap();
        assert!(!bad.realizable);
        // |psi1 - psi2| / (q - 1/q)
        assert!((bad.residual - 1.0 / d.spread()).abs() < 1e-15);
    }

    #[test]
    fn cnot_condition_examples() {
        let r = check_cnot_condition(p(0.5), 1.0, 1.0, 1e-10).unwrap();
        assert!(r.realizable && r.residual < 1e-14);
        let r = check_cnot_condition(p(0.3), 3.0, 0.5, 1e-10).unwrap();
        assert!(r.residual < 1e-12, "{r:?}");
        let d = p(0.9);
        let r = check_cnot_condition(d, d.q(), 1.0 / d.q(), 1e-10).unwrap();
        assert!(r.residual < 1e-12);
        assert!(check_cnot_condition(d, 0.0, 1.0, 1e-10).is_err());
    }

    #[test]
    fn vanishing_prefactor_is_an_error() {
        let d = p(0.5);
        // psi2 = q^2 psi1 makes F(1) = 0
        let choice = FunctionChoice::from_psi_pair(1.0, d.pow(2.0)).unwrap();
        assert!(matches!(
            QubitBasis::new(Realization::Deformed(d, choice), space()),
            Err(Error::VanishingBasisState { .. })
        ));
    }
}
