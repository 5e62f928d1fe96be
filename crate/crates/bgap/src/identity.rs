//! Seeded random trials of the gap identity
//! `B_{2n}(m) - T(x, y) = sum_k Δ²a_k c_k`.

use std::fmt;

use bgap_core::gap::{gap_coefficients, identity_lhs, identity_rhs};
use bgap_core::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::CliError;

/// Largest denominator of a random trial point.
pub const MAX_DENOMINATOR: i64 = 64;
/// Random samples are integers in `[-SAMPLE_BOUND, SAMPLE_BOUND]`.
pub const SAMPLE_BOUND: i64 = 100;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCase {
    pub trial: usize,
    pub x: Rational,
    pub y: Rational,
    pub samples: Vec<Rational>,
    pub residual: Rational,
}

impl fmt::Display for IdentityCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let samples: Vec<String> = self.samples.iter().map(ToString::to_string).collect();
        write!(
            f,
            "trial {}: x = {}, y = {}, samples = [{}], residual = {}",
            self.trial,
            self.x,
            self.y,
            samples.join(", "),
            self.residual
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentitySummary {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub zero_cases: usize,
    pub max_abs_residual: Rational,
    pub first_failure: Option<IdentityCase>,
}

impl IdentitySummary {
    pub fn passed(&self) -> bool {
        self.zero_cases == self.trials
    }
}

impl fmt::Display for IdentitySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "n = {}, seed = {}: residual 0 in {}/{} cases",
            self.n, self.seed, self.zero_cases, self.trials
        )?;
        write!(f, "max |residual| = {}", self.max_abs_residual)
    }
}

fn random_unit_point(rng: &mut ChaCha8Rng) -> Rational {
    let den = rng.gen_range(1..=MAX_DENOMINATOR);
    Rational::from_frac(rng.gen_range(0..=den), den)
}

/// One stream per seed: every trial draws `x`, `y`, then `2n + 1` samples.
pub fn random_case(rng: &mut ChaCha8Rng, n: usize) -> (Rational, Rational, Vec<Rational>) {
    let x = random_unit_point(rng);
    let y = random_unit_point(rng);
    let samples = (0..=2 * n)
        .map(|_| Rational::from(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)))
        .collect();
    (x, y, samples)
}

pub fn run_identity(n: usize, trials: usize, seed: u64) -> Result<IdentitySummary, CliError> {
    if n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut zero_cases = 0;
    let mut max_abs_residual = Rational::zero();
    let mut first_failure = None;
    for trial in 0..trials {
        let (x, y, samples) = random_case(&mut rng, n);
        let lhs = identity_lhs(n, &samples, &x, &y)?;
        let rhs = identity_rhs(&gap_coefficients(n, &x, &y)?, &samples)?;
        let residual = lhs - rhs;
        if residual.is_zero() {
            zero_cases += 1;
            continue;
        }
        if residual.abs() > max_abs_residual {
            max_abs_residual = residual.abs();
        }
        if first_failure.is_none() {
            first_failure = Some(IdentityCase {
                trial,
                x,
                y,
                samples,
                residual,
            });
        }
    }
    Ok(IdentitySummary {
        n,
        trials,
        seed,
        zero_cases,
        max_abs_residual,
        first_failure,
    })
}
