use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal, Uniform};

use super::OracleError;

/// Sampling law used to realize a (mean, variance) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SourceDistribution {
    #[default]
    Normal,
    /// Uniform on `mean ± sqrt(3 * variance)`.
    Uniform,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McConfig {
    samples: usize,
    pub seed: u64,
    pub distribution: SourceDistribution,
}

impl McConfig {
    pub fn new(
        samples: usize,
        seed: u64,
        distribution: SourceDistribution,
    ) -> Result<Self, OracleError> {
        if samples == 0 {
            return Err(OracleError::NoSamples);
        }
        Ok(Self {
            samples,
            seed,
            distribution,
        })
    }

    pub fn samples(&self) -> usize {
        self.samples
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub estimate: f64,
    pub standard_error: f64,
}

/// `E[(x - c)^2] = variance + (mu - c)^2` for any `x` with mean `mu`.
pub fn exact_expected_sq_distance(mu: f64, variance: f64, c: f64) -> f64 {
    let d = mu - c;
    variance + d * d
}

/// Sample mean of `(x - c)^2` over `cfg.samples` draws of `x`, with its
/// standard error. Deterministic for a fixed seed.
pub fn mc_expected_sq_distance(
    mu: f64,
    variance: f64,
    c: f64,
    cfg: &McConfig,
) -> Result<McEstimate, OracleError> {
    if !(variance.is_finite() && variance >= 0.0) {
        return Err(OracleError::InvalidVariance(variance));
    }
    if !(mu.is_finite() && c.is_finite()) {
        return Err(OracleError::NonFiniteMoment);
    }
    if variance == 0.0 {
        return Ok(McEstimate {
            estimate: exact_expected_sq_distance(mu, 0.0, c),
            standard_error: 0.0,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let sd = variance.sqrt();
    let mut acc = Welford::default();
    match cfg.distribution {
        SourceDistribution::Normal => {
            let law = Normal::new(mu, sd).expect("positive finite sd");
            for _ in 0..cfg.samples {
                acc.push((law.sample(&mut rng) - c).powi(2));
            }
        }
        SourceDistribution::Uniform => {
            let half = (3.0 * variance).sqrt();
            let law = Uniform::new_inclusive(mu - half, mu + half).expect("ordered bounds");
            for _ in 0..cfg.samples {
                acc.push((law.sample(&mut rng) - c).powi(2));
            }
        }
    }
    Ok(McEstimate {
        estimate: acc.mean,
        standard_error: acc.standard_error(),
    })
}

#[derive(Default)]
struct Welford {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn standard_error(&self) -> f64 {
        if self.count < 2 {
            return 0.0;
        }
        let var = self.m2 / (self.count - 1) as f64;
        (var / self.count as f64).sqrt()
    }
}
