//! Jordan-Schwinger qubits: a qubit is a pair of oscillators sharing one
//! quantum, `|1> = |1>_1 |0>_2` ("up") and `|0> = |0>_1 |1>_2` ("down").
//!
//! States are always produced by applying creation-operator matrices to the
//! vacuum, so the same operator pipeline the audits check is exercised here.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fockspace::{
    deformed_ladder_ops, ladder_ops, FunctionChoice, FunctionFamily, TruncatedFockSpace, TruncatedOperator,
};
use crate::qnumber::{q_factorial, DeformationParam};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QubitLabel {
    Zero,
    One,
}

impl QubitLabel {
    pub const BOTH: [QubitLabel; 2] = [QubitLabel::Zero, QubitLabel::One];

    pub fn value(self) -> usize {
        match self {
            QubitLabel::Zero => 0,
            QubitLabel::One => 1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            QubitLabel::Zero => QubitLabel::One,
            QubitLabel::One => QubitLabel::Zero,
        }
    }

    /// Occupations `(n1, n2)` of the oscillator pair carrying this label.
    pub fn occupations(self) -> (usize, usize) {
        (self.value(), 1 - self.value())
    }
}

impl TryFrom<i64> for QubitLabel {
    type Error = Error;

    fn try_from(x: i64) -> Result<Self> {
        match x {
            0 => Ok(QubitLabel::Zero),
            1 => Ok(QubitLabel::One),
            other => Err(Error::InvalidQubitLabel(other)),
        }
    }
}

impl fmt::Display for QubitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// A half-integer stored as twice its value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfInt(i64);

impl HalfInt {
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt(twice)
    }

    pub const fn twice(self) -> i64 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

fn zero_amplitudes(len: usize) -> Vec<Complex64> {
    vec![ZERO; len]
}

fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Amplitudes over `|n1> (x) |n2>`, index `n1 * D + n2`.
#[derive(Debug, Clone, PartialEq)]
pub struct OscillatorPairState {
    cutoff: usize,
    amplitudes: Vec<Complex64>,
}

impl OscillatorPairState {
    pub fn zero(space: TruncatedFockSpace) -> Self {
        let d = space.cutoff();
        OscillatorPairState { cutoff: d, amplitudes: zero_amplitudes(d * d) }
    }

    pub fn basis(space: TruncatedFockSpace, n1: usize, n2: usize) -> Result<Self> {
        let d = space.cutoff();
        for n in [n1, n2] {
            if n >= d {
                return Err(Error::CutoffOverflow { occupation: n, cutoff: d });
            }
        }
        let mut state = Self::zero(space);
        state.amplitudes[n1 * d + n2] = ONE;
        Ok(state)
    }

    pub fn from_amplitudes(space: TruncatedFockSpace, amplitudes: Vec<Complex64>) -> Result<Self> {
        let d = space.cutoff();
        if amplitudes.len() != d * d {
            return Err(Error::DimensionMismatch { left: d * d, right: amplitudes.len() });
        }
        Ok(OscillatorPairState { cutoff: d, amplitudes })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn space(&self) -> TruncatedFockSpace {
        TruncatedFockSpace::new(self.cutoff).expect("state built on a valid space")
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn index(&self, n1: usize, n2: usize) -> usize {
        n1 * self.cutoff + n2
    }

    pub fn occupations(&self, index: usize) -> (usize, usize) {
        (index / self.cutoff, index % self.cutoff)
    }

    pub fn amplitude(&self, n1: usize, n2: usize) -> Complex64 {
        self.amplitudes[self.index(n1, n2)]
    }

    /// `<self|other>`, antilinear in `self`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        libm::sqrt(self.norm_sqr())
    }

    /// Indices of nonzero amplitudes, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.amplitudes.len()).filter(|&i| self.amplitudes[i] != ZERO).collect()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        OscillatorPairState { cutoff: self.cutoff, amplitudes: self.amplitudes.iter().map(|z| z * factor).collect() }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: Complex64) {
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += b * factor;
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Applies `op` to oscillator `mode` (0 or 1), identity on the other.
    pub fn apply(&self, op: &TruncatedOperator, mode: usize) -> Result<Self> {
        if op.dim() != self.cutoff {
            return Err(Error::DimensionMismatch { left: self.cutoff, right: op.dim() });
        }
        let d = self.cutoff;
        let mut out = zero_amplitudes(d * d);
        for (index, &amp) in self.amplitudes.iter().enumerate() {
            if amp == ZERO {
                continue;
            }
            let (n1, n2) = self.occupations(index);
            let from = if mode == 0 { n1 } else { n2 };
            for to in 0..d {
                let element = op.get(to, from);
                if element == ZERO {
                    continue;
                }
                let target = if mode == 0 { to * d + n2 } else { n1 * d + to };
                out[target] += element * amp;
            }
        }
        Ok(OscillatorPairState { cutoff: d, amplitudes: out })
    }

    fn apply_power(&self, op: &TruncatedOperator, mode: usize, power: usize) -> Result<Self> {
        (0..power).try_fold(self.clone(), |state, _| state.apply(op, mode))
    }
}

/// Four oscillators `(a1, a2, b1, b2)`, row-major, for a control qubit on
/// `a` and a target qubit on `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoQubitState {
    cutoff: usize,
    amplitudes: Vec<Complex64>,
}

impl TwoQubitState {
    pub fn zero(space: TruncatedFockSpace) -> Self {
        let d = space.cutoff();
        TwoQubitState { cutoff: d, amplitudes: zero_amplitudes(d * d * d * d) }
    }

    /// `control (x) target`.
    pub fn product(control: &OscillatorPairState, target: &OscillatorPairState) -> Result<Self> {
        if control.cutoff != target.cutoff {
            return Err(Error::DimensionMismatch { left: control.cutoff, right: target.cutoff });
        }
        let amplitudes =
            control.amplitudes.iter().flat_map(|&c| target.amplitudes.iter().map(move |&t| c * t)).collect();
        Ok(TwoQubitState { cutoff: control.cutoff, amplitudes })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn index(&self, occ: [usize; 4]) -> usize {
        let d = self.cutoff;
        ((occ[0] * d + occ[1]) * d + occ[2]) * d + occ[3]
    }

    pub fn occupations(&self, index: usize) -> [usize; 4] {
        let d = self.cutoff;
        [index / (d * d * d), (index / (d * d)) % d, (index / d) % d, index % d]
    }

    pub fn amplitude(&self, occ: [usize; 4]) -> Complex64 {
        self.amplitudes[self.index(occ)]
    }

    /// Index of the undeformed basis state `|x>|y>`.
    pub fn qubit_index(&self, x: QubitLabel, y: QubitLabel) -> usize {
        let (n1, n2) = x.occupations();
        let (k1, k2) = y.occupations();
        self.index([n1, n2, k1, k2])
    }

    pub fn inner(&self, other: &Self) -> Complex64 {
        inner(&self.amplitudes, &other.amplitudes)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|z| z.norm_sqr()).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.amplitudes.len()).filter(|&i| self.amplitudes[i] != ZERO).collect()
    }

    pub fn add_scaled(&mut self, other: &Self, factor: Complex64) {
        for (a, b) in self.amplitudes.iter_mut().zip(&other.amplitudes) {
            *a += b * factor;
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Nonzero components as `(control label, target label, amplitude)`;
    /// fails if any weight sits outside the two-qubit subspace.
    pub fn qubit_components(&self) -> Result<Vec<(QubitLabel, QubitLabel, Complex64)>> {
        let mut out = Vec::new();
        for index in self.support() {
            let [n1, n2, k1, k2] = self.occupations(index);
            let x = qubit_label_of(n1, n2).ok_or(Error::NotQubitState { index })?;
            let y = qubit_label_of(k1, k2).ok_or(Error::NotQubitState { index })?;
            out.push((x, y, self.amplitudes[index]));
        }
        Ok(out)
    }
}

pub(crate) fn qubit_label_of(n1: usize, n2: usize) -> Option<QubitLabel> {
    match (n1, n2) {
        (1, 0) => Some(QubitLabel::One),
        (0, 1) => Some(QubitLabel::Zero),
        _ => None,
    }
}

/// `|0>_1 |0>_2`.
pub fn vacuum(space: TruncatedFockSpace) -> OscillatorPairState {
    OscillatorPairState::basis(space, 0, 0).expect("cutoff >= 2 holds the vacuum")
}

/// `|x> = (a1^dag)^x (a2^dag)^(1-x) |vac>`.
pub fn qubit_state(x: QubitLabel, space: TruncatedFockSpace) -> OscillatorPairState {
    let ops = ladder_ops(space);
    let (n1, n2) = x.occupations();
    vacuum(space)
        .apply_power(&ops.a_dag, 1, n2)
        .and_then(|s| s.apply_power(&ops.a_dag, 0, n1))
        .expect("ladder operators match the space")
}

/// `|j m> = (a1^dag)^(j+m) (a2^dag)^(j-m) / sqrt((j+m)! (j-m)!) |vac>`.
pub fn jm_state(j: HalfInt, m: HalfInt, space: TruncatedFockSpace) -> Result<OscillatorPairState> {
    let (tj, tm) = (j.twice(), m.twice());
    let invalid = Error::InvalidAngularMomentum { twice_j: tj, twice_m: tm };
    if tj < 0 || tm.abs() > tj || (tj + tm) % 2 != 0 {
        return Err(invalid);
    }
    let n1 = ((tj + tm) / 2) as usize;
    let n2 = ((tj - tm) / 2) as usize;
    let d = space.cutoff();
    for n in [n1, n2] {
        if n >= d {
            return Err(Error::CutoffOverflow { occupation: n, cutoff: d });
        }
    }
    let ops = ladder_ops(space);
    let raw = vacuum(space).apply_power(&ops.a_dag, 1, n2)?.apply_power(&ops.a_dag, 0, n1)?;
    let norm = libm::sqrt(factorial(n1) * factorial(n2));
    Ok(raw.scaled(Complex64::new(1.0 / norm, 0.0)))
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// Deformed creation operators for the two oscillators of one qubit.
#[derive(Debug, Clone)]
pub struct DeformedQubitOps {
    pub first: TruncatedOperator,
    pub second: TruncatedOperator,
}

impl DeformedQubitOps {
    /// `a_1q^dag = F(N_1) a_1^dag` with `(psi1, psi2)` and
    /// `a_2q^dag = F(N_2) a_2^dag` with `(psi3, psi4)`. On the qubit subspace
    /// `N_2 = 1 - N_1`, so the second factor is `F(1 - N_1)`.
    pub fn new(space: TruncatedFockSpace, p: DeformationParam, choice: &FunctionChoice) -> Result<Self> {
        choice.validate()?;
        let first = deformed_ladder_ops(space, p, choice.psi1, choice.psi2)?.a_q_dag;
        let second = deformed_ladder_ops(space, p, choice.psi3, choice.psi4)?.a_q_dag;
        Ok(DeformedQubitOps { first, second })
    }
}

/// `|x>_q = (a_1q^dag)^x (a_2q^dag)^(1-x) / sqrt([x]! [1-x]!) |vac>`.
pub fn deformed_qubit_state(
    x: QubitLabel,
    p: DeformationParam,
    choice: &FunctionChoice,
    space: TruncatedFockSpace,
) -> Result<OscillatorPairState> {
    let ops = DeformedQubitOps::new(space, p, choice)?;
    let (n1, n2) = x.occupations();
    let raw = vacuum(space).apply_power(&ops.second, 1, n2)?.apply_power(&ops.first, 0, n1)?;
    let norm = libm::sqrt(q_factorial(n1 as i64, p)? * q_factorial(n2 as i64, p)?);
    Ok(raw.scaled(Complex64::new(1.0 / norm, 0.0)))
}

/// Control qubit built with `psi1..psi4`, target qubit with `beta1, beta2` on
/// both of its oscillators.
pub fn two_qubit_state(
    x: QubitLabel,
    y: QubitLabel,
    p: DeformationParam,
    choice: &FunctionChoice,
    space: TruncatedFockSpace,
) -> Result<TwoQubitState> {
    let control = deformed_qubit_state(x, p, choice, space)?;
    let target = deformed_qubit_state(y, p, &choice.as_target(), space)?;
    TwoQubitState::product(&control, &target)
}

/// A law relating the Case II / Case I norm ratio to `psi` and `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormRatioLaw {
    /// `psi * beta`: the square of the state prefactor `(psi beta)^(1/2)`.
    Product,
    /// `(psi * beta)^(1/2)`: the prefactor itself taken as the ratio.
    SqrtProduct,
}

impl NormRatioLaw {
    pub const ALL: [NormRatioLaw; 2] = [NormRatioLaw::Product, NormRatioLaw::SqrtProduct];

    pub fn forward(self, psi: f64, beta: f64) -> f64 {
        match self {
            NormRatioLaw::Product => psi * beta,
            NormRatioLaw::SqrtProduct => libm::sqrt(psi * beta),
        }
    }

    /// Solves `forward(psi, beta) = ratio` for `psi`.
    pub fn invert(self, ratio: f64, beta: f64) -> f64 {
        match self {
            NormRatioLaw::Product => ratio / beta,
            NormRatioLaw::SqrtProduct => ratio * ratio / beta,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            NormRatioLaw::Product => "product",
            NormRatioLaw::SqrtProduct => "sqrt_product",
        }
    }
}

impl core::str::FromStr for NormRatioLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NormRatioLaw::ALL.into_iter().find(|law| law.name() == s).ok_or(Error::UnknownNormRatioLaw)
    }
}

/// The law the constructed states actually satisfy; pinned by tests.
pub const MEASURED_NORM_RATIO_LAW: NormRatioLaw = NormRatioLaw::Product;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormRatio {
    pub psi: f64,
    pub beta: f64,
    pub measured: f64,
    pub product_prediction: f64,
    pub sqrt_product_prediction: f64,
}

impl NormRatio {
    /// The unique law matching the measurement within `tol` (relative), if any.
    pub fn matching_law(&self, tol: f64) -> Option<NormRatioLaw> {
        let close = |prediction: f64| (self.measured - prediction).abs() <= tol * prediction.abs().max(1.0);
        match (close(self.product_prediction), close(self.sqrt_product_prediction)) {
            (true, false) => Some(NormRatioLaw::Product),
            (false, true) => Some(NormRatioLaw::SqrtProduct),
            _ => None,
        }
    }
}

/// Ratio of `<II|II>` to `<I|I>` for the two-qubit state `|x y>`, where Case II
/// uses `psi` on every control function and `beta` on both target functions.
pub fn norm_ratio_experiment(
    x: QubitLabel,
    y: QubitLabel,
    p: DeformationParam,
    psi: f64,
    beta: f64,
    space: TruncatedFockSpace,
) -> Result<NormRatio> {
    let case_two = two_qubit_state(x, y, p, &FunctionChoice::uniform(psi, beta)?, space)?;
    let case_one = two_qubit_state(x, y, p, &FunctionChoice::undeformed(), space)?;
    Ok(NormRatio {
        psi,
        beta,
        measured: case_two.norm_sqr() / case_one.norm_sqr(),
        product_prediction: NormRatioLaw::Product.forward(psi, beta),
        sqrt_product_prediction: NormRatioLaw::SqrtProduct.forward(psi, beta),
    })
}

/// Occupation of a deformed oscillator whose undeformed level is `n_hat`:
/// `n' = n_hat - ln(psi)/s`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseIIOccupation {
    pub n_hat: u32,
    pub psi_value: f64,
    pub n_prime: f64,
}

impl CaseIIOccupation {
    pub fn new(n_hat: u32, psi_value: f64, p: DeformationParam) -> Result<Self> {
        if !(psi_value > 0.0 && psi_value.is_finite()) {
            return Err(Error::NonPositiveFunction { name: "psi", value: psi_value });
        }
        let n_prime = n_hat as f64 - libm::log(psi_value) / p.s();
        Ok(CaseIIOccupation { n_hat, psi_value, n_prime })
    }
}

/// The two forms of arbitrary function that make `n'` a qubit occupation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PsiSignature {
    /// `psi = q^n_hat`, giving `n' = 0`.
    PowerNHat,
    /// `psi = q^(n_hat - 1)`, giving `n' = 1`.
    PowerNHatMinusOne,
}

impl PsiSignature {
    pub const BOTH: [PsiSignature; 2] = [PsiSignature::PowerNHat, PsiSignature::PowerNHatMinusOne];

    /// The signature carrying qubit value `x`.
    pub fn for_label(x: QubitLabel) -> Self {
        match x {
            QubitLabel::Zero => PsiSignature::PowerNHat,
            QubitLabel::One => PsiSignature::PowerNHatMinusOne,
        }
    }

    pub fn encoded_occupation(self) -> u32 {
        match self {
            PsiSignature::PowerNHat => 0,
            PsiSignature::PowerNHatMinusOne => 1,
        }
    }

    pub fn exponent(self, n_hat: u32) -> f64 {
        n_hat as f64 - self.encoded_occupation() as f64
    }

    pub fn family(self, n_hat: u32) -> FunctionFamily {
        match self.exponent(n_hat) {
            0.0 => FunctionFamily::ConstantOne,
            e => FunctionFamily::PowerOfQ(e),
        }
    }

    /// Smallest `n_hat` for which `psi != 1`.
    pub fn minimal_n_hat(self) -> u32 {
        self.encoded_occupation() + 1
    }
}

impl fmt::Display for PsiSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PsiSignature::PowerNHat => f.write_str("q^n_hat"),
            PsiSignature::PowerNHatMinusOne => f.write_str("q^(n_hat-1)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConsistencyRow {
    pub control: QubitLabel,
    pub target: QubitLabel,
    pub psi_family: FunctionFamily,
    pub beta_family: FunctionFamily,
    pub control_occupation: CaseIIOccupation,
    pub target_occupation: CaseIIOccupation,
    /// `psi = 1` or `beta = 1`: indistinguishable from Case I.
    pub is_case_one: bool,
    /// `n_hat > n'` and `k_hat > k'`.
    pub hats_exceed_primes: bool,
}

impl ConsistencyRow {
    pub fn label(&self) -> alloc::string::String {
        alloc::format!("|{}{}>_II", self.control, self.target)
    }

    pub fn n_prime(&self) -> f64 {
        self.control_occupation.n_prime
    }

    pub fn k_prime(&self) -> f64 {
        self.target_occupation.n_prime
    }
}

/// One row of the Case II interpretation table for `|x y>_II` at the given
/// undeformed occupations.
pub fn case2_row(x: QubitLabel, y: QubitLabel, n_hat: u32, k_hat: u32, p: DeformationParam) -> Result<ConsistencyRow> {
    let psi_family = PsiSignature::for_label(x).family(n_hat);
    let beta_family = PsiSignature::for_label(y).family(k_hat);
    let control_occupation = CaseIIOccupation::new(n_hat, psi_family.evaluate(p), p)?;
    let target_occupation = CaseIIOccupation::new(k_hat, beta_family.evaluate(p), p)?;
    Ok(ConsistencyRow {
        control: x,
        target: y,
        psi_family,
        beta_family,
        control_occupation,
        target_occupation,
        is_case_one: psi_family == FunctionFamily::ConstantOne || beta_family == FunctionFamily::ConstantOne,
        hats_exceed_primes: n_hat as f64 > control_occupation.n_prime && k_hat as f64 > target_occupation.n_prime,
    })
}

/// The four interpretation rows at the smallest admissible `n_hat`, `k_hat`.
pub fn case2_consistency_table(p: DeformationParam) -> Result<Vec<ConsistencyRow>> {
    let mut rows = Vec::with_capacity(4);
    for x in QubitLabel::BOTH {
        for y in QubitLabel::BOTH {
            let n_hat = PsiSignature::for_label(x).minimal_n_hat();
            let k_hat = PsiSignature::for_label(y).minimal_n_hat();
            rows.push(case2_row(x, y, n_hat, k_hat, p)?);
        }
    }
    Ok(rows)
}
