//! Integer numerators over a single shared denominator.
//!
//! Sums of products of rationals are accumulated as `BigInt`s and reduced
//! once at the end, instead of normalising after every operation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::binomial::binomial_row;
use crate::rational::Rational;

/// The vector `numers[k] / denom`, with `denom > 0`.
#[derive(Clone, Debug)]
pub(crate) struct Scaled {
    pub numers: Vec<BigInt>,
    pub denom: BigInt,
}

impl Scaled {
    pub fn from_rationals(values: &[Rational]) -> Self {
        let denom = values
            .iter()
            .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let numers = values
            .iter()
            .map(|v| v.numer() * (&denom / v.denom()))
            .collect();
        Scaled { numers, denom }
    }

    /// `p_{n,v}(x)` for `v = 0..=n`, over the denominator `q^n` where
    /// `x = p/q`. The caller guarantees `0 <= x <= 1`.
    pub fn basis_row(n: usize, x: &Rational) -> Self {
        let (p, q) = (x.numer(), x.denom());
        let r = q - p;
        let mut p_pows = Vec::with_capacity(n + 1);
        let mut pp = BigInt::one();
        for _ in 0..=n {
            p_pows.push(pp.clone());
            pp *= p;
        }
        let mut numers = vec![BigInt::zero(); n + 1];
        let mut rp = BigInt::one();
        for (v, c) in binomial_row(n as u64).into_iter().enumerate().rev() {
            numers[v] = BigInt::from(c) * &p_pows[v] * &rp;
            rp *= &r;
        }
        Scaled {
            numers,
            denom: q.pow(n as u32),
        }
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.numers.iter().map(|v| ratio(v.clone(), &self.denom)).collect()
    }

    /// `sum_v numers[v] * other.numers[offset + v]`, over `denom * other.denom`.
    pub fn dot_at(&self, other: &Scaled, offset: usize) -> BigInt {
        self.numers
            .iter()
            .zip(&other.numers[offset..offset + self.numers.len()])
            .filter(|(w, _)| !w.is_zero())
            .map(|(w, a)| w * a)
            .sum()
    }

    /// Coefficients of the product of the two generating polynomials.
    pub fn convolve(&self, other: &Scaled) -> Scaled {
        let mut numers = vec![BigInt::zero(); self.numers.len() + other.numers.len() - 1];
        for (i, a) in self.numers.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.numers.iter().enumerate() {
                numers[i + j] += a * b;
            }
        }
        Scaled {
            numers,
            denom: &self.denom * &other.denom,
        }
    }
}

pub(crate) fn ratio(numer: BigInt, denom: &BigInt) -> Rational {
    Rational::try_new(numer, denom.clone()).expect("denominator is positive")
}

/// Integer polynomial product.
pub(crate) fn poly_mul(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    out
}

pub(crate) fn poly_pow(base: &[BigInt], mut exp: u32) -> Vec<BigInt> {
    let mut result = vec![BigInt::one()];
    let mut base = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            result = poly_mul(&result, &base);
        }
        exp >>= 1;
        if exp > 0 {
            base = poly_mul(&base, &base);
        }
    }
    result
}

/// Coefficients of `p(w - 1)`, i.e. the Taylor coefficients of `p` at `-1`.
pub(crate) fn taylor_shift_minus_one(p: &[BigInt]) -> Vec<BigInt> {
    let mut shifted: Vec<BigInt> = Vec::with_capacity(p.len());
    for c in p.iter().rev() {
        shifted.push(BigInt::zero());
        for k in (1..shifted.len()).rev() {
            let prev = std::mem::take(&mut shifted[k - 1]);
            shifted[k] = &prev - &shifted[k];
            shifted[k - 1] = prev;
        }
        shifted[0] = c - &shifted[0];
    }
    shifted
}
