use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::OracleError;

/// A source with exact rational value and standard deviation.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalEstimate {
    pub value: BigRational,
    pub sd: BigRational,
}

impl RationalEstimate {
    pub fn new(value: BigRational, sd: BigRational) -> Self {
        Self { value, sd }
    }

    /// `value_num/value_den ± sd_num/sd_den`.
    pub fn from_ratios(value: (i64, i64), sd: (i64, i64)) -> Self {
        Self {
            value: BigRational::new(BigInt::from(value.0), BigInt::from(value.1)),
            sd: BigRational::new(BigInt::from(sd.0), BigInt::from(sd.1)),
        }
    }

    /// Exact rational image of a pair of finite binary64 numbers.
    pub fn from_f64(value: f64, sd: f64) -> Result<Self, OracleError> {
        let conv = |x: f64| BigRational::from_float(x).ok_or(OracleError::NotRational(x));
        Ok(Self {
            value: conv(value)?,
            sd: conv(sd)?,
        })
    }
}

/// Every intermediate of the virtual-sampling chain, exactly.
///
/// The final square root is not taken; `v` is the resultant variance.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactVirtualSampling {
    pub v_star: BigRational,
    pub sample_sizes: Vec<BigRational>,
    pub n: BigRational,
    pub m: BigRational,
    pub u_values: Vec<BigRational>,
    pub u_bar: BigRational,
    pub v: BigRational,
}

/// Re-evaluates virtual sampling over the rationals.
pub fn exact_virtual_sampling(
    estimates: &[RationalEstimate],
) -> Result<ExactVirtualSampling, OracleError> {
    let variances: Vec<BigRational> = estimates.iter().map(|e| &e.sd * &e.sd).collect();
    let v_star = variances
        .iter()
        .min()
        .cloned()
        .ok_or(OracleError::NoInformativeSources)?;

    let sample_sizes: Vec<BigRational> = variances
        .iter()
        .map(|v| {
            if v_star.is_zero() {
                if v.is_zero() {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            } else {
                &v_star / v
            }
        })
        .collect();

    let n: BigRational = sample_sizes.iter().sum();
    let m = estimates
        .iter()
        .zip(&sample_sizes)
        .map(|(e, w)| w * &e.value)
        .sum::<BigRational>()
        / &n;

    let u_values: Vec<BigRational> = estimates
        .iter()
        .map(|e| {
            let d = &e.value - &m;
            &v_star + &d * &d
        })
        .collect();
    let u_bar = u_values
        .iter()
        .zip(&sample_sizes)
        .map(|(u, w)| w * u)
        .sum::<BigRational>()
        / &n;
    let v = &u_bar / &n;

    Ok(ExactVirtualSampling {
        v_star,
        sample_sizes,
        n,
        m,
        u_values,
        u_bar,
        v,
    })
}
