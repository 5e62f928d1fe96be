//! Dense univariate polynomials over [`Rational`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Coefficients in ascending order: `coeffs[i]` multiplies `z^i`.
///
/// Always normalized: no trailing zeros, the zero polynomial is the empty
/// vector. Equality is therefore structural.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DensePoly {
    coeffs: Vec<Rational>,
}

impl DensePoly {
    pub fn zero() -> Self {
        DensePoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        DensePoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        DensePoly::from_coeffs(vec![c])
    }

    /// `c0 + c1 z`
    pub fn linear(c0: Rational, c1: Rational) -> Self {
        DensePoly::from_coeffs(vec![c0, c1])
    }

    /// `c z^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        DensePoly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        DensePoly { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        DensePoly::from_coeffs(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `z^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> DensePoly {
        if c.is_zero() {
            return DensePoly::zero();
        }
        DensePoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Horner evaluation.
    pub fn eval(&self, z: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * z + c)
    }

    /// Exact convolution of the two coefficient sequences.
    pub fn mul(&self, other: &DensePoly) -> DensePoly {
        if self.is_zero() || other.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePoly::from_coeffs(out)
    }

    /// `self^m` by square-and-multiply; `p^0 = 1` (including `0^0`).
    pub fn pow(&self, mut m: u32) -> DensePoly {
        let mut result = DensePoly::one();
        let mut base = self.clone();
        while m > 0 {
            if m & 1 == 1 {
                result = result.mul(&base);
            }
            m >>= 1;
            if m > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Coefficients of `self` re-expanded around `a`: entry `k` is
    /// `p^(k)(a) / k!`, for `k = 0..=degree`. Empty for the zero polynomial.
    ///
    /// Computed as `p(a + w)` by Horner's scheme in the shifted variable `w`,
    /// so no derivatives or factorials appear.
    pub fn taylor_coeffs_at(&self, a: &Rational) -> Vec<Rational> {
        let mut shifted: Vec<Rational> = Vec::with_capacity(self.coeffs.len());
        for c in self.coeffs.iter().rev() {
            // shifted <- shifted * (w + a) + c
            shifted.push(Rational::zero());
            for k in (1..shifted.len()).rev() {
                let scaled = &shifted[k] * a;
                shifted[k] = scaled + &shifted[k - 1];
            }
            shifted[0] = &shifted[0] * a + c;
        }
        shifted
    }

    /// `q` with `self = z^2 q`; fails unless the `z^0` and `z^1` coefficients
    /// are both exactly zero.
    pub fn divide_by_z_squared(&self) -> Result<DensePoly> {
        for order in 0..2 {
            let c = self.coeff(order);
            if !c.is_zero() {
                return Err(Error::NonDivisible { order, value: c });
            }
        }
        Ok(DensePoly::from_coeffs(
            self.coeffs.iter().skip(2).cloned().collect(),
        ))
    }
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensePoly{:?}", self.coeffs)
    }
}

impl fmt::Display for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        DensePoly::mul(self, rhs)
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        DensePoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for DensePoly {
            type Output = DensePoly;
            fn $method(self, rhs: DensePoly) -> DensePoly {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
