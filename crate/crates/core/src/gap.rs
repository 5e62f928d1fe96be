//! The gap polynomial
//!
//! ```text
//! g(z) = z^-2 [ (1 + m z)^{2n} - (1 + x z)^n (1 + y z)^n ],   m = (x+y)/2,
//! ```
//!
//! its Taylor coefficients `c_k = g^(k)(-1)/k!`, and the four inequality gaps
//! evaluated on a sample vector `a_0..a_{2n}`:
//!
//! | gap    | expression                                                        |
//! |--------|-------------------------------------------------------------------|
//! | `gap1` | `sum_{i,j} [p_i(x)p_j(x) + p_i(y)p_j(y) - 2 p_i(x)p_j(y)] a_{i+j}` |
//! | `gap2` | `B_{2n}(x) + B_{2n}(y) - 2 T(x, y)`                                |
//! | `gap3` | `B_{2n}(x) + B_{2n}(y) - 2 B_{2n}(m)`                              |
//! | `gap4` | `B_{2n}(m) - T(x, y)`                                              |
//!
//! where `T` is [`tensor_apply`]. Exactly, `gap1 = gap2 = gap3 + 2 gap4` and
//! `gap4 = sum_k Δ²a_k c_k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::bernstein::{
    basis_row_float, bernstein_apply, bernstein_apply_float, bernstein_scaled, check_degree,
    check_unit, tensor_apply, tensor_apply_float, tensor_scaled,
};
use crate::error::{Error, Result};
use crate::poly::DensePoly;
use crate::rational::Rational;
use crate::scaled::{poly_mul, poly_pow, ratio, taylor_shift_minus_one, Scaled};

/// `c_k = g^(k)(-1)/k!` for `k = 0..=2n-2`, zero-padded to length `2n - 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapCoefficients {
    pub n: usize,
    pub x: Rational,
    pub y: Rational,
    pub c: Vec<Rational>,
}

fn check_inputs(n: usize, x: &Rational, y: &Rational) -> Result<()> {
    check_degree(n)?;
    check_unit("x", x)?;
    check_unit("y", y)
}

fn midpoint(x: &Rational, y: &Rational) -> Rational {
    (x + y) / Rational::from(2i64)
}

fn one_plus(c: &Rational) -> DensePoly {
    DensePoly::linear(Rational::one(), c.clone())
}

/// `g` straight from its definition: expand both generating functions,
/// subtract, divide by `z^2`.
pub fn build_g_definition(n: usize, x: &Rational, y: &Rational) -> Result<DensePoly> {
    check_inputs(n, x, y)?;
    let n32 = u32::try_from(n).map_err(|_| Error::InvalidDegree(n))?;
    let mid = one_plus(&midpoint(x, y)).pow(2 * n32);
    let product = one_plus(x).pow(n32).mul(&one_plus(y).pow(n32));
    (&mid - &product).divide_by_z_squared()
}

/// `g` from the factorization
/// `(x-y)^2/4 · sum_{k=0}^{n-1} (1+mz)^{2(n-1-k)} [(1+xz)(1+yz)]^k`,
/// which follows from `(1+mz)^2 - (1+xz)(1+yz) = ((x-y)z/2)^2`.
pub fn build_g_closedform(n: usize, x: &Rational, y: &Rational) -> Result<DensePoly> {
    check_inputs(n, x, y)?;
    let prefactor = (x - y).pow(2) / Rational::from(4i64);
    if prefactor.is_zero() {
        return Ok(DensePoly::zero());
    }
    let mid_sq = one_plus(&midpoint(x, y)).pow(2);
    let product = one_plus(x).mul(&one_plus(y));
    Ok(geometric_sum(&mid_sq, &product, n).scale(&prefactor))
}

/// `sum_{k=0}^{terms-1} p^{terms-1-k} q^k` by the Horner-style recurrence
/// `s_{j+1} = p s_j + q^j`.
fn geometric_sum(p: &DensePoly, q: &DensePoly, terms: usize) -> DensePoly {
    let mut sum = DensePoly::one();
    let mut q_pow = DensePoly::one();
    for _ in 1..terms {
        q_pow = q_pow.mul(q);
        sum = &sum.mul(p) + &q_pow;
    }
    sum
}

pub fn gap_coefficients(n: usize, x: &Rational, y: &Rational) -> Result<GapCoefficients> {
    check_inputs(n, x, y)?;
    let (numers, denom) = scaled_gap_coefficients(n, x, y)?;
    let c: Vec<Rational> = numers.into_iter().map(|v| ratio(v, &denom)).collect();
    if let Some((k, value)) = c.iter().enumerate().find(|(_, v)| v.is_negative()) {
        return Err(Error::NegativeCoefficient {
            k,
            value: value.clone(),
        });
    }
    Ok(GapCoefficients {
        n,
        x: x.clone(),
        y: y.clone(),
        c,
    })
}

/// Numerators of `c_0..c_{2n-2}` over `(2d)^{2n}`, where `d` is the common
/// denominator of `x` and `y`. Same construction as [`build_g_definition`]
/// followed by a Taylor shift to `-1`, in integer arithmetic: with
/// `x = a/d`, `y = b/d`,
/// `(2d)^{2n} z^2 g(z) = (2d + (a+b) z)^{2n} - 4^n (d + a z)^n (d + b z)^n`.
fn scaled_gap_coefficients(n: usize, x: &Rational, y: &Rational) -> Result<(Vec<BigInt>, BigInt)> {
    let n32 = u32::try_from(n).map_err(|_| Error::InvalidDegree(n))?;
    let d = x.denom().lcm(y.denom());
    let a = x.numer() * (&d / x.denom());
    let b = y.numer() * (&d / y.denom());
    let two_d = &d + &d;
    let mid = poly_pow(&[two_d.clone(), &a + &b], 2 * n32);
    let product = poly_mul(
        &poly_pow(&[d.clone(), a], n32),
        &poly_pow(&[d.clone(), b], n32),
    );
    let four_n = BigInt::from(4u8).pow(n32);
    let diff: Vec<BigInt> = mid
        .iter()
        .zip(&product)
        .map(|(m, p)| m - &four_n * p)
        .collect();
    for (order, v) in diff.iter().take(2).enumerate() {
        if !v.is_zero() {
            return Err(Error::NonDivisible {
                order,
                value: ratio(v.clone(), &two_d.pow(2 * n32)),
            });
        }
    }
    let mut c = taylor_shift_minus_one(&diff[2..]);
    c.resize(2 * n - 1, BigInt::zero());
    Ok((c, two_d.pow(2 * n32)))
}

/// Forward second differences `a_{k+2} - 2 a_{k+1} + a_k`.
pub fn delta2(values: &[Rational]) -> Result<Vec<Rational>> {
    if values.len() < 3 {
        return Err(Error::TooShort(values.len()));
    }
    Ok(values
        .windows(3)
        .map(|w| &w[2] - (&w[1] + &w[1]) + &w[0])
        .collect())
}

fn check_samples(n: usize, samples: &[Rational]) -> Result<()> {
    if samples.len() != 2 * n + 1 {
        return Err(Error::LengthMismatch {
            expected: 2 * n + 1,
            found: samples.len(),
        });
    }
    Ok(())
}

/// `(B_{2n} a)((x+y)/2) - T(x, y)`.
pub fn identity_lhs(n: usize, samples: &[Rational], x: &Rational, y: &Rational) -> Result<Rational> {
    check_inputs(n, x, y)?;
    check_samples(n, samples)?;
    let at_mid = bernstein_apply(2 * n, samples, &midpoint(x, y))?;
    Ok(at_mid - tensor_apply(n, samples, x, y)?)
}

/// `sum_k Δ²a_k · c_k`.
pub fn identity_rhs(coeffs: &GapCoefficients, samples: &[Rational]) -> Result<Rational> {
    check_samples(coeffs.n, samples)?;
    let d2 = delta2(samples)?;
    if d2.len() != coeffs.c.len() {
        return Err(Error::LengthMismatch {
            expected: d2.len(),
            found: coeffs.c.len(),
        });
    }
    Ok(d2.iter().zip(&coeffs.c).map(|(d, c)| d * c).sum())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub n: usize,
    pub x: Rational,
    pub y: Rational,
    pub gap1: Rational,
    pub gap2: Rational,
    pub gap3: Rational,
    pub gap4: Rational,
    /// `identity_lhs - identity_rhs`; zero whenever the arithmetic is sound.
    pub identity_residual: Rational,
    pub on_diagonal: bool,
    pub affine_samples: bool,
}

impl GapReport {
    /// Names of the exact relations this report breaks. Empty on success.
    pub fn violations(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.gap1 != self.gap2 {
            out.push("gap1 = gap2");
        }
        if self.gap2 != &self.gap3 + &self.gap4 + &self.gap4 {
            out.push("gap2 = gap3 + 2*gap4");
        }
        if !self.identity_residual.is_zero() {
            out.push("identity residual = 0");
        }
        out
    }
}

/// Left side of the original two-point inequality as one double sum, with
/// the weights `sum_{i+j=k} p_{n,i}(u) p_{n,j}(v)` collected per `k`.
fn gap1_double_sum(row_x: &Scaled, row_y: &Scaled, samples: &Scaled) -> Rational {
    let pair = |u: &Scaled, v: &Scaled| {
        let w = u.convolve(v);
        ratio(w.dot_at(samples, 0), &(&w.denom * &samples.denom))
    };
    pair(row_x, row_x) + pair(row_y, row_y) - pair(row_x, row_y) * Rational::from(2i64)
}

pub fn gap_report(n: usize, samples: &[Rational], x: &Rational, y: &Rational) -> Result<GapReport> {
    check_inputs(n, x, y)?;
    check_samples(n, samples)?;
    let scaled = Scaled::from_rationals(samples);
    let m = midpoint(x, y);
    let b_x = bernstein_scaled(2 * n, &scaled, x);
    let b_y = bernstein_scaled(2 * n, &scaled, y);
    let b_mid = bernstein_scaled(2 * n, &scaled, &m);
    let row_x = Scaled::basis_row(n, x);
    let row_y = Scaled::basis_row(n, y);
    let tensor = tensor_scaled(&row_x, &row_y, &scaled);
    let end_sum = &b_x + &b_y;

    let gap1 = gap1_double_sum(&row_x, &row_y, &scaled);
    let gap2 = &end_sum - &tensor - &tensor;
    let gap3 = &end_sum - &b_mid - &b_mid;
    let gap4 = &b_mid - &tensor;

    let (c, c_denom) = scaled_gap_coefficients(n, x, y)?;
    if let Some(k) = c.iter().position(|v| v.is_negative()) {
        return Err(Error::NegativeCoefficient {
            k,
            value: ratio(c[k].clone(), &c_denom),
        });
    }
    let d2: Vec<BigInt> = scaled
        .numers
        .windows(3)
        .map(|w| &w[2] - &w[1] - &w[1] + &w[0])
        .collect();
    let rhs_numer: BigInt = d2.iter().zip(&c).map(|(d, c)| d * c).sum();
    let rhs = ratio(rhs_numer, &(&c_denom * &scaled.denom));
    let identity_residual = &gap4 - rhs;
    let affine_samples = d2.iter().all(Zero::is_zero);

    Ok(GapReport {
        n,
        x: x.clone(),
        y: y.clone(),
        gap1,
        gap2,
        gap3,
        gap4,
        identity_residual,
        on_diagonal: x == y,
        affine_samples,
    })
}

/// Floating-point counterpart of [`GapReport`], used only for plot output.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FloatGapReport {
    pub n: usize,
    pub x: f64,
    pub y: f64,
    pub gap1: f64,
    pub gap2: f64,
    pub gap3: f64,
    pub gap4: f64,
    pub identity_residual: f64,
}

fn mul_f64(p: &[f64], q: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

/// `c_k` in floating point.
///
/// Works directly in `w = z + 1`, where `1 + t z = (1 - t) + t w`. On the unit
/// square every factor then has nonnegative coefficients, so no cancellation
/// occurs.
pub fn gap_coefficients_float(n: usize, x: f64, y: f64) -> Result<Vec<f64>> {
    check_degree(n)?;
    for (name, v) in [("x", x), ("y", y)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(Error::Domain {
                name,
                value: v.to_string(),
            });
        }
    }
    let m = 0.5 * (x + y);
    let mid = [1.0 - m, m];
    let mid_sq = mul_f64(&mid, &mid);
    let product = mul_f64(&[1.0 - x, x], &[1.0 - y, y]);
    let mut sum = vec![1.0];
    let mut q_pow = vec![1.0];
    for _ in 1..n {
        q_pow = mul_f64(&q_pow, &product);
        sum = mul_f64(&sum, &mid_sq);
        for (s, q) in sum.iter_mut().zip(&q_pow) {
            *s += q;
        }
    }
    let prefactor = 0.25 * (x - y) * (x - y);
    sum.iter_mut().for_each(|s| *s *= prefactor);
    sum.resize(2 * n - 1, 0.0);
    Ok(sum)
}

pub fn gap_report_float(n: usize, samples: &[f64], x: f64, y: f64) -> Result<FloatGapReport> {
    if samples.len() != 2 * n + 1 {
        return Err(Error::LengthMismatch {
            expected: 2 * n + 1,
            found: samples.len(),
        });
    }
    let coeffs = gap_coefficients_float(n, x, y)?;
    let m = 0.5 * (x + y);
    let b_x = bernstein_apply_float(2 * n, samples, x)?;
    let b_y = bernstein_apply_float(2 * n, samples, y)?;
    let b_mid = bernstein_apply_float(2 * n, samples, m)?;
    let tensor = tensor_apply_float(n, samples, x, y)?;

    let row_x = basis_row_float(n, x)?;
    let row_y = basis_row_float(n, y)?;
    let xx = mul_f64(&row_x, &row_x);
    let yy = mul_f64(&row_y, &row_y);
    let xy = mul_f64(&row_x, &row_y);
    let gap1 = (0..=2 * n)
        .map(|k| (xx[k] + yy[k] - 2.0 * xy[k]) * samples[k])
        .sum();

    let gap4 = b_mid - tensor;
    let rhs: f64 = samples
        .windows(3)
        .zip(&coeffs)
        .map(|(w, c)| (w[2] - 2.0 * w[1] + w[0]) * c)
        .sum();
    Ok(FloatGapReport {
        n,
        x,
        y,
        gap1,
        gap2: b_x + b_y - 2.0 * tensor,
        gap3: b_x + b_y - 2.0 * b_mid,
        gap4,
        identity_residual: gap4 - rhs,
    })
}
