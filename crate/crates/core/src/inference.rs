//! Recovering the arbitrary function from a measured norm ratio.
//!
//! In Case II a flipped qubit changes which of `psi = q^n_hat` (n' = 0) or
//! `psi = q^(n_hat - 1)` (n' = 1) the state carries, and with it the scalar
//! product of the state. Inverting the norm-ratio law gives `psi`, and the
//! nearer signature in log space tells which occupation was encoded.

use crate::error::{Error, Result};
use crate::jsqubit::{NormRatioLaw, PsiSignature};
use crate::qnumber::DeformationParam;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PsiInference {
    pub psi: f64,
    /// `n_hat - ln(psi)/s`.
    pub n_prime: f64,
    pub signature: PsiSignature,
    /// `|ln psi - ln psi_signature|` for the chosen signature.
    pub log_distance: f64,
}

/// Inverts `law` for `psi` given the measured ratio and `beta`, then picks the
/// signature nearest to `psi` at undeformed occupation `n_hat`.
pub fn infer_psi_from_norm(
    measured_norm_ratio: f64,
    beta: f64,
    p: DeformationParam,
    law: NormRatioLaw,
    n_hat: u32,
) -> Result<PsiInference> {
    for (name, value) in [("measured_norm_ratio", measured_norm_ratio), ("beta", beta)] {
        if !(value > 0.0 && value.is_finite()) {
            return Err(Error::NonPositiveInput { name, value });
        }
    }
    let psi = law.invert(measured_norm_ratio, beta);
    let ln_psi = libm::log(psi);
    let distance = |sig: PsiSignature| (ln_psi - p.s() * sig.exponent(n_hat)).abs();
    let signature =
        PsiSignature::BOTH.into_iter().min_by(|a, b| distance(*a).total_cmp(&distance(*b))).expect("two signatures");
    Ok(PsiInference { psi, n_prime: n_hat as f64 - ln_psi / p.s(), signature, log_distance: distance(signature) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: f64) -> DeformationParam {
        DeformationParam::new(s).unwrap()
    }

    #[test]
    fn classifies_signatures() {
        let d = p(0.5);
        let ratio = NormRatioLaw::Product.forward(d.q(), 1.0);
        let inf = infer_psi_from_norm(ratio, 1.0, d, NormRatioLaw::Product, 1).unwrap();
        assert_eq!(inf.signature, PsiSignature::PowerNHat);
        assert!(inf.log_distance < 1e-15);
        assert!(inf.n_prime.abs() < 1e-12);

        let inf = infer_psi_from_norm(1.0, 1.0, d, NormRatioLaw::Product, 1).unwrap();
        assert_eq!(inf.signature, PsiSignature::PowerNHatMinusOne);
        assert_eq!(inf.psi, 1.0);
        assert_eq!(inf.log_distance, 0.0);
    }

    #[test]
    fn identity_fixed_point_under_both_laws() {
        for law in NormRatioLaw::ALL {
            let inf = infer_psi_from_norm(1.0, 1.0, p(0.2), law, 1).unwrap();
            assert_eq!(inf.psi, 1.0);
        }
    }

    #[test]
    fn rejects_non_positive_inputs() {
        assert!(matches!(
            infer_psi_from_norm(0.0, 1.0, p(0.5), NormRatioLaw::Product, 1),
            Err(Error::NonPositiveInput { name: "measured_norm_ratio", .. })
        ));
        assert!(infer_psi_from_norm(1.0, -2.0, p(0.5), NormRatioLaw::Product, 1).is_err());
    }
}
