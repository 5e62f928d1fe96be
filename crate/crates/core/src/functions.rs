//! Test functions on `[0, 1]`, sampled on the grid `k / (2n)`.
//!
//! Textual forms (also accepted by the CLI):
//!
//! ```text
//! spec     := mono | abs | hat | pwl | "exp"
//! mono     := "e" POWER                     t^POWER, POWER >= 1
//! abs      := "abs:" RAT                    |t - c|, c in [0, 1]
//! hat      := "hat:" RAT                    tent (0,0)-(c,1)-(1,0), c in (0, 1)
//! pwl      := "pwl:" POINT (";" POINT)+     linear interpolation
//! POINT    := RAT "," RAT                   breakpoint t, value
//! RAT      := INT | INT "/" INT
//! ```
//!
//! `pwl` breakpoints must start at 0, end at 1 and strictly increase.
//! Whitespace is not allowed. `exp` is `e^t` and has no exact samples.

use std::fmt;
use std::str::FromStr;

use crate::bernstein::SampleVector;
use crate::error::{Error, Result};
use crate::gap::delta2;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Exact,
    Float,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exact => "exact",
            Mode::Float => "float",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(format!("unknown mode `{other}` (expected exact or float)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FunctionSpec {
    /// `t^p`, `p >= 1`.
    Monomial(u32),
    /// `|t - c|`.
    AbsShift(Rational),
    /// Tent peaking at `c` with height 1; concave, used as a control.
    Hat(Rational),
    /// Breakpoints `(t, value)` with `t` strictly increasing from 0 to 1.
    PiecewiseLinear(Vec<(Rational, Rational)>),
    /// `e^t`, float-only.
    Exp,
}

impl FunctionSpec {
    pub fn piecewise_linear(points: Vec<(Rational, Rational)>) -> Result<Self> {
        let spec = FunctionSpec::PiecewiseLinear(points);
        spec.validate()?;
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let fail = |reason: &str| Error::ParseFunction {
            spec: self.to_string(),
            reason: reason.to_string(),
        };
        match self {
            FunctionSpec::Monomial(0) => Err(fail("power must be at least 1")),
            FunctionSpec::AbsShift(c) if !c.in_unit_interval() => {
                Err(fail("center must lie in [0, 1]"))
            }
            FunctionSpec::Hat(c) if !c.is_positive() || c >= &Rational::one() => {
                Err(fail("peak must lie strictly inside (0, 1)"))
            }
            FunctionSpec::PiecewiseLinear(points) => {
                if points.len() < 2 {
                    return Err(fail("need at least two breakpoints"));
                }
                if !points[0].0.is_zero() || points[points.len() - 1].0 != Rational::one() {
                    return Err(fail("breakpoints must start at 0 and end at 1"));
                }
                if points.windows(2).any(|w| w[0].0 >= w[1].0) {
                    return Err(fail("breakpoints must strictly increase"));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn is_exact_capable(&self) -> bool {
        !matches!(self, FunctionSpec::Exp)
    }

    /// Analytic convexity of the catalog entry itself.
    pub fn is_convex(&self) -> bool {
        match self {
            FunctionSpec::Monomial(_) | FunctionSpec::AbsShift(_) | FunctionSpec::Exp => true,
            FunctionSpec::Hat(_) => false,
            FunctionSpec::PiecewiseLinear(points) => {
                let slopes: Vec<Rational> = points
                    .windows(2)
                    .map(|w| (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0))
                    .collect();
                slopes.windows(2).all(|s| s[0] <= s[1])
            }
        }
    }

    pub fn eval_exact(&self, t: &Rational) -> Result<Rational> {
        Ok(match self {
            FunctionSpec::Monomial(p) => t.pow(*p),
            FunctionSpec::AbsShift(c) => (t - c).abs(),
            FunctionSpec::Hat(c) => {
                if t <= c {
                    t / c
                } else {
                    (Rational::one() - t) / (Rational::one() - c)
                }
            }
            FunctionSpec::PiecewiseLinear(points) => {
                if !t.in_unit_interval() {
                    return Err(Error::domain("t", t));
                }
                let seg = points
                    .windows(2)
                    .find(|w| t <= &w[1].0)
                    .expect("breakpoints cover [0, 1]");
                let (t0, v0) = &seg[0];
                let (t1, v1) = &seg[1];
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
            FunctionSpec::Exp => return Err(Error::UnsupportedExact(self.to_string())),
        })
    }

    pub fn eval_float(&self, t: f64) -> f64 {
        match self {
            FunctionSpec::Monomial(p) => t.powi(*p as i32),
            FunctionSpec::AbsShift(c) => (t - c.to_f64()).abs(),
            FunctionSpec::Hat(c) => {
                let c = c.to_f64();
                if t <= c {
                    t / c
                } else {
                    (1.0 - t) / (1.0 - c)
                }
            }
            FunctionSpec::PiecewiseLinear(points) => {
                let pts: Vec<(f64, f64)> =
                    points.iter().map(|(a, b)| (a.to_f64(), b.to_f64())).collect();
                let seg = pts
                    .windows(2)
                    .find(|w| t <= w[1].0)
                    .unwrap_or(&pts[pts.len() - 2..]);
                let ((t0, v0), (t1, v1)) = (seg[0], seg[1]);
                v0 + (v1 - v0) * (t - t0) / (t1 - t0)
            }
            FunctionSpec::Exp => t.exp(),
        }
    }

    /// Samples `f(k / grid_size)` for `k = 0..=grid_size`.
    pub fn sample(&self, grid_size: usize, mode: Mode) -> Result<SampleVector> {
        if grid_size < 2 || !grid_size.is_multiple_of(2) {
            return Err(Error::InvalidGridSize(grid_size));
        }
        match mode {
            Mode::Exact => {
                let values = (0..=grid_size)
                    .map(|k| self.eval_exact(&Rational::from_frac(k as i64, grid_size as i64)))
                    .collect::<Result<Vec<_>>>()?;
                SampleVector::exact(values)
            }
            Mode::Float => SampleVector::float(
                (0..=grid_size)
                    .map(|k| self.eval_float(k as f64 / grid_size as f64))
                    .collect(),
            ),
        }
    }
}

/// Canonical text: integers print without `/1`.
fn short(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        r.to_string()
    }
}

impl fmt::Display for FunctionSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FunctionSpec::Monomial(p) => write!(f, "e{p}"),
            FunctionSpec::AbsShift(c) => write!(f, "abs:{}", short(c)),
            FunctionSpec::Hat(c) => write!(f, "hat:{}", short(c)),
            FunctionSpec::PiecewiseLinear(points) => {
                let body: Vec<String> = points
                    .iter()
                    .map(|(t, v)| format!("{},{}", short(t), short(v)))
                    .collect();
                write!(f, "pwl:{}", body.join(";"))
            }
            FunctionSpec::Exp => write!(f, "exp"),
        }
    }
}

impl FromStr for FunctionSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let fail = |reason: &str| Error::ParseFunction {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let rat = |t: &str| -> Result<Rational> {
            if t.is_empty() || t.chars().any(char::is_whitespace) {
                return Err(fail(&format!("bad rational `{t}`")));
            }
            t.parse().map_err(|_| fail(&format!("bad rational `{t}`")))
        };
        let spec = if s == "exp" {
            FunctionSpec::Exp
        } else if let Some(c) = s.strip_prefix("abs:") {
            FunctionSpec::AbsShift(rat(c)?)
        } else if let Some(c) = s.strip_prefix("hat:") {
            FunctionSpec::Hat(rat(c)?)
        } else if let Some(body) = s.strip_prefix("pwl:") {
            let points = body
                .split(';')
                .map(|pt| {
                    let (t, v) = pt
                        .split_once(',')
                        .ok_or_else(|| fail(&format!("breakpoint `{pt}` is not `t,value`")))?;
                    Ok((rat(t)?, rat(v)?))
                })
                .collect::<Result<Vec<_>>>()?;
            FunctionSpec::PiecewiseLinear(points)
        } else if let Some(p) = s.strip_prefix('e') {
            if p.is_empty() || !p.bytes().all(|b| b.is_ascii_digit()) {
                return Err(fail("unknown function"));
            }
            FunctionSpec::Monomial(p.parse().map_err(|_| fail("power out of range"))?)
        } else {
            return Err(fail("unknown function"));
        };
        spec.validate().map_err(|e| match e {
            Error::ParseFunction { reason, .. } => fail(&reason),
            other => other,
        })?;
        Ok(spec)
    }
}

/// Discrete convexity: every second difference of the samples is `>= 0`.
///
/// Float samples are held to a relative slack of `1e-12` of their largest
/// magnitude, since affine stretches otherwise round to tiny negatives.
pub fn is_convex_samples(samples: &SampleVector) -> Result<bool> {
    match samples.as_exact() {
        Some(values) => Ok(delta2(values)?.iter().all(|d| !d.is_negative())),
        None => {
            let values = samples.to_f64_vec();
            let scale = values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
            Ok(values
                .windows(3)
                .all(|w| w[2] - 2.0 * w[1] + w[0] >= -1e-12 * scale))
        }
    }
}

/// Built-in entries: convex ones first, then the non-convex controls.
pub fn catalog() -> Vec<FunctionSpec> {
    [
        "e1",
        "e2",
        "e3",
        "abs:1/4",
        "abs:1/2",
        "abs:3/4",
        "abs:1/3",
        "pwl:0,1;1/3,0;2/3,0;1,1",
        "exp",
        "hat:1/2",
        "hat:1/3",
        "pwl:0,0;1/2,1;1,0",
    ]
    .iter()
    .map(|s| s.parse().expect("catalog entries parse"))
    .collect()
}
