//! Truncated Fock space and ladder operator matrices, standard and deformed.
//!
//! The deformed operators use the harmonic oscillator realization
//! `a_q = a F(N)`, `a_q^dag = F(N) a^dag` with
//! `F(n)^2 = (q^n psi1 - q^-n psi2) / (n (q - 1/q))`, and the deformed number
//! operator `N = N_hat - ln(psi2)/s`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Sub};
use core::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::qnumber::{q_number, DeformationParam};

/// Offset used to evaluate F near n = 0 when the limit has no closed form.
pub const NEAR_ZERO: f64 = 1e-8;

/// Levels `0..cutoff` of a single bosonic mode.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedFockSpace {
    cutoff: usize,
}

impl TruncatedFockSpace {
    /// Smallest cutoff that still holds a creation step (levels 0 and 1).
    pub const MIN_CUTOFF: usize = 2;
    /// Default cutoff for algebra audits.
    pub const AUDIT_CUTOFF: usize = 16;
    /// Default cutoff for qubit work.
    pub const QUBIT_CUTOFF: usize = 4;

    pub fn new(cutoff: usize) -> Result<Self> {
        if cutoff < Self::MIN_CUTOFF {
            return Err(Error::CutoffTooSmall { cutoff, min: Self::MIN_CUTOFF });
        }
        Ok(TruncatedFockSpace { cutoff })
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }
}

/// Dense complex `D x D` matrix acting on Fock levels `0..D`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct TruncatedOperator {
    dim: usize,
    entries: Vec<Complex64>,
}

impl TruncatedOperator {
    pub fn zeros(dim: usize) -> Self {
        TruncatedOperator { dim, entries: vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diagonal(&vec![1.0; dim])
    }

    pub fn diagonal(values: &[f64]) -> Self {
        let mut op = Self::zeros(values.len());
        for (i, &v) in values.iter().enumerate() {
            op.set(i, i, Complex64::new(v, 0.0));
        }
        op
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.dim + col] = value;
    }

    /// Main diagonal as real parts.
    pub fn diagonal_values(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i).re).collect()
    }

    /// Apply `f` to each diagonal entry of a diagonal operator; off-diagonal
    /// entries are ignored.
    pub fn map_diagonal(&self, f: impl Fn(f64) -> f64) -> Self {
        let values: Vec<f64> = self.diagonal_values().into_iter().map(f).collect();
        Self::diagonal(&values)
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(c, r, self.get(r, c).conj());
            }
        }
        out
    }

    pub fn scale(&self, factor: f64) -> Self {
        TruncatedOperator { dim: self.dim, entries: self.entries.iter().map(|z| z * factor).collect() }
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let lhs = self.get(r, k);
                if lhs == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..n {
                    out.entries[r * n + c] += lhs * rhs.get(k, c);
                }
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a + b))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.check_dim(rhs)?;
        Ok(self.zip_with(rhs, |a, b| a - b))
    }

    /// `self * rhs - rhs * self`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(rhs)?.try_sub(&rhs.try_mul(self)?)
    }

    /// Largest entry modulus over rows and columns `0..levels`.
    pub fn max_abs_in_block(&self, levels: usize) -> f64 {
        let levels = levels.min(self.dim);
        let mut max = 0.0f64;
        for r in 0..levels {
            for c in 0..levels {
                max = max.max(self.get(r, c).norm());
            }
        }
        max
    }

    /// Largest entry modulus over the whole matrix.
    pub fn max_abs(&self) -> f64 {
        self.max_abs_in_block(self.dim)
    }

    /// True when every nonzero entry lies on the main diagonal or next to it.
    pub fn is_tridiagonal(&self) -> bool {
        (0..self.dim).all(|r| (0..self.dim).all(|c| r.abs_diff(c) <= 1 || self.get(r, c) == Complex64::new(0.0, 0.0)))
    }

    fn check_dim(&self, rhs: &Self) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch { left: self.dim, right: rhs.dim });
        }
        Ok(())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        TruncatedOperator {
            dim: self.dim,
            entries: self.entries.iter().zip(&rhs.entries).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl Mul for &TruncatedOperator {
    type Output = TruncatedOperator;

    fn mul(self, rhs: Self) -> TruncatedOperator {
        self.try_mul(rhs).expect("operator dimensions differ")
    }
}

impl Add for &TruncatedOperator {
    type Output = TruncatedOperator;

    fn add(self, rhs: Self) -> TruncatedOperator {
        self.try_add(rhs).expect("operator dimensions differ")
    }
}

impl Sub for &TruncatedOperator {
    type Output = TruncatedOperator;

    fn sub(self, rhs: Self) -> TruncatedOperator {
        self.try_sub(rhs).expect("operator dimensions differ")
    }
}

/// Values of the arbitrary functions at the working q.
///
/// `psi1`, `psi2` dress the first oscillator of a qubit, `psi3`, `psi4` the
/// second, and `beta1`, `beta2` the target qubit of a two-qubit gate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionChoice {
    pub psi1: f64,
    pub psi2: f64,
    pub psi3: f64,
    pub psi4: f64,
    pub beta1: f64,
    pub beta2: f64,
}

impl FunctionChoice {
    pub fn new(psi1: f64, psi2: f64, psi3: f64, psi4: f64, beta1: f64, beta2: f64) -> Result<Self> {
        let choice = FunctionChoice { psi1, psi2, psi3, psi4, beta1, beta2 };
        choice.validate()?;
        Ok(choice)
    }

    /// All six functions equal to one.
    pub fn undeformed() -> Self {
        FunctionChoice { psi1: 1.0, psi2: 1.0, psi3: 1.0, psi4: 1.0, beta1: 1.0, beta2: 1.0 }
    }

    /// `psi1 = psi2 = psi3 = psi4 = psi` and `beta1 = beta2 = beta`.
    pub fn uniform(psi: f64, beta: f64) -> Result<Self> {
        Self::new(psi, psi, psi, psi, beta, beta)
    }

    /// Given `(psi1, psi2)` for the first oscillator; the second oscillator
    /// reuses them (`psi3 = psi1`, `psi4 = psi2`) and both betas are one.
    pub fn from_psi_pair(psi1: f64, psi2: f64) -> Result<Self> {
        Self::new(psi1, psi2, psi1, psi2, 1.0, 1.0)
    }

    /// Same control functions with the target pair replaced.
    pub fn with_beta(self, beta1: f64, beta2: f64) -> Result<Self> {
        Self::new(self.psi1, self.psi2, self.psi3, self.psi4, beta1, beta2)
    }

    /// The functions seen by a target qubit: `(beta1, beta2)` on both of its oscillators.
    pub fn as_target(&self) -> Self {
        FunctionChoice {
            psi1: self.beta1,
            psi2: self.beta2,
            psi3: self.beta1,
            psi4: self.beta2,
            beta1: self.beta1,
            beta2: self.beta2,
        }
    }

    pub fn is_undeformed(&self) -> bool {
        *self == Self::undeformed()
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("psi1", self.psi1),
            ("psi2", self.psi2),
            ("psi3", self.psi3),
            ("psi4", self.psi4),
            ("beta1", self.beta1),
            ("beta2", self.beta2),
        ];
        for (name, value) in named {
            if !(value > 0.0 && value.is_finite()) {
                return Err(Error::NonPositiveFunction { name, value });
            }
        }
        Ok(())
    }
}

/// A one-parameter family of arbitrary functions of q, evaluated per grid point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FunctionFamily {
    ConstantOne,
    /// `q^exponent`.
    PowerOfQ(f64),
}

impl FunctionFamily {
    pub fn evaluate(&self, p: DeformationParam) -> f64 {
        match *self {
            FunctionFamily::ConstantOne => 1.0,
            FunctionFamily::PowerOfQ(exponent) => p.pow(exponent),
        }
    }

    /// Exponent α with value q^α; zero for the constant family.
    pub fn exponent(&self) -> f64 {
        match *self {
            FunctionFamily::ConstantOne => 0.0,
            FunctionFamily::PowerOfQ(exponent) => exponent,
        }
    }
}

impl fmt::Display for FunctionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionFamily::ConstantOne => f.write_str("1"),
            FunctionFamily::PowerOfQ(exponent) => write!(f, "q^{exponent}"),
        }
    }
}

impl FromStr for FunctionFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.eq_ignore_ascii_case("one") {
            return Ok(FunctionFamily::ConstantOne);
        }
        if s == "q" {
            return Ok(FunctionFamily::PowerOfQ(1.0));
        }
        let exponent = s.strip_prefix("q^").ok_or(Error::InvalidFamily)?;
        let exponent = exponent.trim_start_matches('(').trim_end_matches(')');
        exponent.parse::<f64>().ok().filter(|e| e.is_finite()).map(FunctionFamily::PowerOfQ).ok_or(Error::InvalidFamily)
    }
}

/// Standard ladder operators on a truncated space.
#[derive(Debug, Clone, PartialEq)]
pub struct LadderOps {
    pub a: TruncatedOperator,
    pub a_dag: TruncatedOperator,
    pub n_hat: TruncatedOperator,
}

/// `a |n> = sqrt(n) |n-1>`, `a^dag |n> = sqrt(n+1) |n+1>` (dropped at the top level),
/// `N_hat = diag(0, .., D-1)`.
pub fn ladder_ops(space: TruncatedFockSpace) -> LadderOps {
    let d = space.cutoff();
    let mut a = TruncatedOperator::zeros(d);
    for n in 1..d {
        a.set(n - 1, n, Complex64::new(libm::sqrt(n as f64), 0.0));
    }
    let a_dag = a.adjoint();
    let levels: Vec<f64> = (0..d).map(|n| n as f64).collect();
    LadderOps { a, a_dag, n_hat: TruncatedOperator::diagonal(&levels) }
}

/// `F(n)^2`, the squared eigenvalue of F on level `n`.
///
/// At `n = 0` the value is the limit `psi s / sinh(s)` when `psi1 == psi2`,
/// and the formula evaluated at `n = NEAR_ZERO` otherwise (which diverges
/// like `(psi1 - psi2) / n`).
pub fn f_squared(n: f64, p: DeformationParam, psi1: f64, psi2: f64) -> Result<f64> {
    for (name, value) in [("psi1", psi1), ("psi2", psi2)] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveFunction { name, value });
        }
    }
    let (radicand, scale) = if n == 0.0 {
        if psi1 == psi2 {
            let limit = psi1 * p.s() / libm::sinh(p.s());
            (limit, limit)
        } else {
            raw_radicand(NEAR_ZERO, p, psi1, psi2)
        }
    } else if psi1 == psi2 {
        let value = psi1 * q_number(n, p) / n;
        (value, value.abs())
    } else {
        raw_radicand(n, p, psi1, psi2)
    };
    if radicand >= 0.0 {
        Ok(radicand)
    } else if radicand >= -16.0 * f64::EPSILON * scale {
        // cancellation noise around an exact zero
        Ok(0.0)
    } else {
        Err(Error::NegativeRadicand { n, psi1, psi2, radicand })
    }
}

fn raw_radicand(n: f64, p: DeformationParam, psi1: f64, psi2: f64) -> (f64, f64) {
    let up = p.pow(n) * psi1;
    let down = p.pow(-n) * psi2;
    let denom = n * p.spread();
    ((up - down) / denom, (up.abs() + down.abs()) / denom.abs())
}

/// Eigenvalue of `F(N_hat)` on level `n`.
pub fn f_value(n: f64, p: DeformationParam, psi1: f64, psi2: f64) -> Result<f64> {
    f_squared(n, p, psi1, psi2).map(libm::sqrt)
}

/// `n F(n)^2 = (q^n psi1 - q^-n psi2) / (q - 1/q)`: the eigenvalue of
/// `a_q^dag a_q` on level `n`, finite at every `n`.
pub fn deformed_number_eigenvalue(n: f64, p: DeformationParam, psi1: f64, psi2: f64) -> f64 {
    if psi1 == psi2 {
        psi1 * q_number(n, p)
    } else {
        (p.pow(n) * psi1 - p.pow(-n) * psi2) / p.spread()
    }
}

/// Deformed ladder operators built from the standard ones.
#[derive(Debug, Clone, PartialEq)]
pub struct DeformedOps {
    pub a_q: TruncatedOperator,
    pub a_q_dag: TruncatedOperator,
    /// `N = N_hat - ln(psi2)/s`.
    pub number: TruncatedOperator,
}

/// Builds `a_q = a F(N_hat)`, `a_q^dag = F(N_hat) a^dag` and the shifted number operator.
///
/// F is evaluated on levels `1..D` only: level 0 never enters `a_q` or
/// `a_q^dag` because `a` annihilates the vacuum.
pub fn deformed_ladder_ops(
    space: TruncatedFockSpace,
    p: DeformationParam,
    psi1: f64,
    psi2: f64,
) -> Result<DeformedOps> {
    let d = space.cutoff();
    let mut a_q = TruncatedOperator::zeros(d);
    for n in 1..d {
        let f = f_value(n as f64, p, psi1, psi2)?;
        a_q.set(n - 1, n, Complex64::new(libm::sqrt(n as f64) * f, 0.0));
    }
    let a_q_dag = a_q.adjoint();
    let shift = libm::log(psi2) / p.s();
    let levels: Vec<f64> = (0..d).map(|n| n as f64 - shift).collect();
    Ok(DeformedOps { a_q, a_q_dag, number: TruncatedOperator::diagonal(&levels) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(s: f64) -> DeformationParam {
        DeformationParam::new(s).unwrap()
    }

    fn space(d: usize) -> TruncatedFockSpace {
        TruncatedFockSpace::new(d).unwrap()
    }

    #[test]
    fn cutoff_below_two_is_rejected() {
        assert_eq!(TruncatedFockSpace::new(1), Err(Error::CutoffTooSmall { cutoff: 1, min: 2 }));
    }

    #[test]
    fn standard_ladder_entries() {
        let ops = ladder_ops(space(4));
        assert_eq!(ops.a_dag.get(1, 0).re, 1.0);
        assert!((ops.a_dag.get(2, 1).re - core::f64::consts::SQRT_2).abs() < 1e-15);
        assert_eq!(ops.n_hat.diagonal_values(), vec![0.0, 1.0, 2.0, 3.0]);
        assert_eq!(ops.a.adjoint(), ops.a_dag);
        assert!(ops.a.is_tridiagonal() && ops.a_dag.is_tridiagonal());
    }

    #[test]
    fn f_value_examples() {
        assert!((f_value(1.0, p(0.3), 1.0, 1.0).unwrap() - 1.0).abs() < 1e-15);
        let oracle = libm::sqrt(q_number(2.0, p(0.5)) / 2.0);
        assert!((f_value(2.0, p(0.5), 1.0, 1.0).unwrap() - oracle).abs() < 1e-15);
        assert!((oracle - 1.0619).abs() < 1e-4);
        // limit at the origin against direct evaluation next to it
        let near = libm::sqrt(raw_radicand(NEAR_ZERO, p(0.5), 1.0, 1.0).0);
        let at_zero = f_value(0.0, p(0.5), 1.0, 1.0).unwrap();
        assert!((at_zero - near).abs() < 1e-6);
        assert!((at_zero - 0.979549).abs() < 1e-6);
    }

    #[test]
    fn negative_radicand_reports_inputs() {
        // psi1 < psi2 at n = 0 diverges towards minus infinity
        match f_value(0.0, p(0.5), 1.0, 2.0) {
            Err(Error::NegativeRadicand { n, psi1, psi2, .. }) => {
                assert_eq!((n, psi1, psi2), (0.0, 1.0, 2.0));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(f_value(1.0, p(0.5), 1.0, 10.0).is_err());
        assert!(matches!(f_value(1.0, p(0.5), 0.0, 1.0), Err(Error::NonPositiveFunction { name: "psi1", .. })));
    }

    #[test]
    fn exact_zero_radicand_is_clamped() {
        // psi2 = q^2, psi1 = 1: q^1 - q^-1 q^2 = 0
        let d = p(0.5);
        assert_eq!(f_value(1.0, d, 1.0, d.pow(2.0)).unwrap(), 0.0);
    }

    #[test]
    fn deformed_ops_recover_standard_ones_as_s_vanishes() {
        let std_ops = ladder_ops(space(6));
        let def = deformed_ladder_ops(space(6), p(1e-9), 1.0, 1.0).unwrap();
        assert!((&def.a_q - &std_ops.a).max_abs() < 1e-6);
        assert!((&def.a_q_dag - &std_ops.a_dag).max_abs() < 1e-6);
    }

    #[test]
    fn deformed_number_products() {
        let d = p(0.5);
        let def = deformed_ladder_ops(space(6), d, 1.0, 1.0).unwrap();
        let product = &def.a_q_dag * &def.a_q;
        for n in 0..6 {
            assert!((product.get(n, n).re - q_number(n as f64, d)).abs() < 1e-13);
        }
        let reverse = &def.a_q * &def.a_q_dag;
        for n in 0..5 {
            assert!((reverse.get(n, n).re - q_number(n as f64 + 1.0, d)).abs() < 1e-13);
        }
        assert_eq!(def.a_q.adjoint(), def.a_q_dag);
    }

    #[test]
    fn shifted_number_operator() {
        let d = p(0.5);
        let def = deformed_ladder_ops(space(6), d, 1.0, d.q()).unwrap();
        let diag = def.number.diagonal_values();
        for (n, v) in diag.iter().enumerate() {
            assert!((v - (n as f64 - 1.0)).abs() < 1e-14);
        }
        assert_eq!(def.number.adjoint(), def.number);
    }

    #[test]
    fn family_parsing() {
        assert_eq!("1".parse::<FunctionFamily>().unwrap(), FunctionFamily::ConstantOne);
        assert_eq!("one".parse::<FunctionFamily>().unwrap(), FunctionFamily::ConstantOne);
        assert_eq!("q".parse::<FunctionFamily>().unwrap(), FunctionFamily::PowerOfQ(1.0));
        assert_eq!("q^-1.5".parse::<FunctionFamily>().unwrap(), FunctionFamily::PowerOfQ(-1.5));
        assert_eq!("q^(2)".parse::<FunctionFamily>().unwrap(), FunctionFamily::PowerOfQ(2.0));
        assert!("2q".parse::<FunctionFamily>().is_err());
        assert!("q^nan".parse::<FunctionFamily>().is_err());
        let fam = FunctionFamily::PowerOfQ(0.5);
        assert_eq!(fam.to_string().parse::<FunctionFamily>().unwrap(), fam);
    }

    #[test]
    fn choice_rejects_non_positive_values() {
        assert!(FunctionChoice::uniform(1.0, 0.0).is_err());
        assert!(FunctionChoice::uniform(-1.0, 1.0).is_err());
        assert!(FunctionChoice::uniform(f64::INFINITY, 1.0).is_err());
        assert!(FunctionChoice::undeformed().is_undeformed());
    }
}
