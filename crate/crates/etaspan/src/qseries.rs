//! Truncated Laurent series in q with exact coefficient arithmetic.
//!
//! The kernel is generic over the coefficient scalar via [`Coeff`], so the
//! same code runs over exact rationals (the default, see [`crate::QSeries`]),
//! big integers (eta products have unit leading coefficients, so inversion
//! stays integral), and prime fields (fast rank computations).
//!
//! A [`Series`] stores a dense coefficient block starting at its valuation
//! together with an explicit precision horizon `H`: every term with exponent
//! `< H` is correct, nothing is claimed at or beyond `H`. All arithmetic
//! propagates horizons; it never fabricates precision.

use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Minimum requirements on series coefficients.
pub trait Coeff:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = Self>
        + Sub<Output = Self>
        + Div<Output = Self>
{
}

/// A truncated Laurent series `c_v q^v + c_{v+1} q^{v+1} + ... + O(q^H)`.
///
/// Invariants maintained by every constructor and operation:
/// - `coeffs[0]` corresponds to exponent `valuation`; it is nonzero unless
///   the series has no known nonzero terms at all.
/// - the zero series is stored with an empty coefficient block and
///   `valuation == precision`.
/// - `precision > valuation` for any nonzero series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Series<C> {
    valuation: i64,
    coeffs: Vec<C>,
    precision: i64,
}

impl<C: Coeff> Series<C> {
    /// Build a series from a dense coefficient block starting at `valuation`,
    /// normalizing leading zeros and clipping at the horizon.
    pub fn new(valuation: i64, coeffs: Vec<C>, precision: i64) -> Self {
        let mut s = Series {
            valuation,
            coeffs,
            precision,
        };
        s.normalize();
        s
    }

    /// The zero series, known to be zero below `precision`.
    pub fn zero_series(precision: i64) -> Self {
        Series {
            valuation: precision,
            coeffs: Vec::new(),
            precision,
        }
    }

    /// The constant series 1 + O(q^precision).
    pub fn one_series(precision: i64) -> Self {
        if precision <= 0 {
            return Self::zero_series(precision);
        }
        Series {
            valuation: 0,
            coeffs: vec![C::one()],
            precision,
        }
    }

    /// `c * q^exponent + O(q^precision)`.
    pub fn monomial(c: C, exponent: i64, precision: i64) -> Self {
        Self::new(exponent, vec![c], precision)
    }

    fn normalize(&mut self) {
        // Clip coefficients at or beyond the horizon.
        if self.valuation >= self.precision {
            self.coeffs.clear();
        } else {
            let max_len = (self.precision - self.valuation) as usize;
            self.coeffs.truncate(max_len);
        }
        // Trim leading zeros so coeffs[0] is the true leading coefficient.
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.valuation = self.precision;
            }
        }
        // Trailing zeros are dropped so equality is structural; dense_coeffs
        // re-pads them on demand.
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn precision(&self) -> i64 {
        self.precision
    }

    /// True if no nonzero coefficient is known below the horizon.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `q^n`. Panics if `n` is at or beyond the horizon.
    pub fn coeff(&self, n: i64) -> C {
        assert!(
            n < self.precision,
            "coefficient of q^{n} requested at or beyond precision horizon {}",
            self.precision
        );
        if n < self.valuation {
            return C::zero();
        }
        let idx = (n - self.valuation) as usize;
        self.coeffs.get(idx).cloned().unwrap_or_else(C::zero)
    }

    /// Dense coefficients from the valuation up (length `precision - valuation`,
    /// padded with zeros). Empty for the zero series.
    pub fn dense_coeffs(&self) -> Vec<C> {
        if self.is_zero() {
            return Vec::new();
        }
        let len = (self.precision - self.valuation) as usize;
        let mut out = self.coeffs.clone();
        out.resize(len, C::zero());
        out
    }

    /// Multiply by `q^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Series {
            valuation: self.valuation + shift,
            coeffs: self.coeffs.clone(),
            precision: self.precision + shift,
        }
    }

    /// Drop all terms with exponent >= `horizon` and lower the precision
    /// accordingly.
    pub fn truncate(&self, horizon: i64) -> Self {
        Self::new(
            self.valuation,
            self.coeffs.clone(),
            self.precision.min(horizon),
        )
    }

    /// Multiply every coefficient by a scalar.
    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero_series(self.precision);
        }
        Series {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            precision: self.precision,
        }
    }

    /// Apply `f` to every coefficient, changing the scalar type.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::new(
            self.valuation,
            self.coeffs.iter().map(f).collect(),
            self.precision,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let precision = self.precision.min(other.precision);
        if self.is_zero() {
            return other.truncate(precision);
        }
        if other.is_zero() {
            return self.truncate(precision);
        }
        let valuation = self.valuation.min(other.valuation);
        if valuation >= precision {
            return Self::zero_series(precision);
        }
        let len = (precision - valuation) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.valuation + i as i64;
            if e < precision {
                coeffs[(e - valuation) as usize] = c.clone();
            }
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            let e = other.valuation + i as i64;
            if e < precision {
                let slot = &mut coeffs[(e - valuation) as usize];
                *slot = slot.clone() + c.clone();
            }
        }
        Self::new(valuation, coeffs, precision)
    }

    pub fn neg(&self) -> Self {
        Series {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            precision: self.precision,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product. The result is correct below
    /// `min(a.precision + b.valuation, b.precision + a.valuation)`.
    pub fn mul(&self, other: &Self) -> Self {
        let precision = (self.precision + other.valuation).min(other.precision + self.valuation);
        if self.is_zero() || other.is_zero() {
            return Self::zero_series(precision);
        }
        let valuation = self.valuation + other.valuation;
        if valuation >= precision {
            return Self::zero_series(precision);
        }
        let len = (precision - valuation) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let jmax = len.saturating_sub(i);
            for (j, b) in other.coeffs.iter().enumerate().take(jmax) {
                if b.is_zero() {
                    continue;
                }
                let slot = &mut coeffs[i + j];
                *slot = slot.clone() + a.clone() * b.clone();
            }
        }
        Self::new(valuation, coeffs, precision)
    }

    /// Multiplicative inverse. Requires a nonzero leading coefficient that is
    /// invertible in the coefficient scalar (always true over a field; over
    /// the integers the lead must be a unit). The result is correct below
    /// `precision - 2 * valuation`.
    pub fn invert(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let rel = self.precision - self.valuation;
        let lead = self.coeffs[0].clone();
        let lead_inv = C::one() / lead.clone();
        let n = rel as usize;
        let mut inv = Vec::with_capacity(n);
        inv.push(lead_inv.clone());
        let unit = self.dense_coeffs();
        for k in 1..n {
            // lead * inv[k] + sum_{j=1..=k} unit[j] * inv[k-j] = 0
            let mut acc = C::zero();
            for j in 1..=k {
                if !unit[j].is_zero() && !inv[k - j].is_zero() {
                    acc = acc + unit[j].clone() * inv[k - j].clone();
                }
            }
            inv.push(-(acc * lead_inv.clone()));
        }
        Ok(Series::new(-self.valuation, inv, rel - self.valuation))
    }

    /// Integer power, negative exponents via inversion. `pow(a, 0)` is the
    /// constant 1 at the relative precision of `a`.
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one_series(self.precision - self.valuation));
        }
        let (mut base, mut k) = if e < 0 {
            (self.invert()?, e.unsigned_abs())
        } else {
            (self.clone(), e as u64)
        };
        let mut acc: Option<Self> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc.expect("nonzero exponent"))
    }
}

impl<C: Coeff + num_traits::FromPrimitive> Series<C> {
    /// Convenience constructor from integer coefficients.
    pub fn from_integers(valuation: i64, coeffs: &[i64], precision: i64) -> Self {
        Self::new(
            valuation,
            coeffs
                .iter()
                .map(|&c| C::from_i64(c).expect("representable"))
                .collect(),
            precision,
        )
    }
}

/// Expansion of `prod_{n>=1} (1 - q^{scale*n})` truncated below `precision`,
/// computed by the pentagonal-number theorem: the product is the sparse sum
/// `sum_{j in Z} (-1)^j q^{scale * j(3j-1)/2}`.
pub fn eta_body<C: Coeff>(scale: u64, precision: i64) -> Result<Series<C>> {
    if scale == 0 {
        return Err(Error::invalid("eta_body: scale must be positive"));
    }
    if precision < 1 {
        return Err(Error::invalid("eta_body: precision must be >= 1"));
    }
    let len = precision as usize;
    let mut coeffs = vec![C::zero(); len];
    let scale = scale as i64;
    // j = 0 gives the constant term 1.
    coeffs[0] = C::one();
    for j in 1i64.. {
        let g_pos = j * (3 * j - 1) / 2;
        let g_neg = j * (3 * j + 1) / 2;
        let sign = if j % 2 == 1 { -C::one() } else { C::one() };
        let mut placed = false;
        for g in [g_pos, g_neg] {
            if let Some(e) = g.checked_mul(scale) {
                if e < precision {
                    coeffs[e as usize] = sign.clone();
                    placed = true;
                }
            }
        }
        if !placed {
            break;
        }
    }
    Ok(Series::new(0, coeffs, precision))
}

impl<C: Coeff + fmt::Display> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "O(q^{})", self.precision);
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.valuation + i as i64;
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*q")?,
                _ => write!(f, "({c})*q^{e}")?,
            }
        }
        write!(f, " + O(q^{})", self.precision)
    }
}
