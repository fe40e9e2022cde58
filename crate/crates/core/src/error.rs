use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The deformation exponent must lie in (0, 1].
    InvalidDeformation {
        s: f64,
    },
    NegativeFactorial {
        n: i64,
    },
    /// Fock cutoff below the minimum the operation needs.
    CutoffTooSmall {
        cutoff: usize,
        min: usize,
    },
    /// The radicand of F(n) = sqrt((q^n psi1 - q^-n psi2) / (n (q - 1/q))) went negative.
    NegativeRadicand {
        n: f64,
        psi1: f64,
        psi2: f64,
        radicand: f64,
    },
    NonPositiveFunction {
        name: &'static str,
        value: f64,
    },
    DimensionMismatch {
        left: usize,
        right: usize,
    },
    EmptyPolynomial,
    PolynomialDegree {
        degree: usize,
        max: usize,
    },
    InvalidQubitLabel(i64),
    InvalidAngularMomentum {
        twice_j: i64,
        twice_m: i64,
    },
    /// A state needs an occupation the cutoff cannot hold.
    CutoffOverflow {
        occupation: usize,
        cutoff: usize,
    },
    /// Gate input has weight outside the single-excitation qubit subspace.
    NotQubitState {
        index: usize,
    },
    NonPositiveInput {
        name: &'static str,
        value: f64,
    },
    /// A deformed basis state collapsed to zero (its F prefactor vanished).
    VanishingBasisState {
        label: u8,
    },
    InvalidFamily,
    UnknownNormRatioLaw,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidDeformation { s } => {
                write!(f, "deformation exponent s = {s} is outside (0, 1]")
            }
            Error::NegativeFactorial { n } => write!(f, "q-factorial of negative integer {n}"),
            Error::CutoffTooSmall { cutoff, min } => {
                write!(f, "Fock cutoff {cutoff} is below the minimum {min}")
            }
            Error::NegativeRadicand { n, psi1, psi2, radicand } => {
                write!(f, "F radicand {radicand} is negative at n = {n} (psi1 = {psi1}, psi2 = {psi2})")
            }
            Error::NonPositiveFunction { name, value } => {
                write!(f, "arbitrary function {name} = {value} must be strictly positive")
            }
            Error::DimensionMismatch { left, right } => {
                write!(f, "operator dimension mismatch: {left} vs {right}")
            }
            Error::EmptyPolynomial => f.write_str("polynomial has no coefficients"),
            Error::PolynomialDegree { degree, max } => {
                write!(f, "polynomial degree {degree} exceeds {max}")
            }
            Error::InvalidQubitLabel(x) => write!(f, "qubit label {x} is not 0 or 1"),
            Error::InvalidAngularMomentum { twice_j, twice_m } => {
                write!(f, "(j, m) = ({twice_j}/2, {twice_m}/2) does not give nonnegative integer occupations")
            }
            Error::CutoffOverflow { occupation, cutoff } => {
                write!(f, "occupation {occupation} does not fit below cutoff {cutoff}")
            }
            Error::NotQubitState { index } => {
                write!(f, "amplitude at basis index {index} lies outside the qubit subspace")
            }
            Error::NonPositiveInput { name, value } => {
                write!(f, "{name} = {value} must be strictly positive")
            }
            Error::VanishingBasisState { label } => {
                write!(f, "deformed basis state |{label}> vanishes for this function choice")
            }
            Error::InvalidFamily => f.write_str("function family must be `1`, `one` or `q^<exponent>`"),
            Error::UnknownNormRatioLaw => f.write_str("norm-ratio law must be `product` or `sqrt_product`"),
        }
    }
}

impl core::error::Error for Error {}
