//! Eta-quotients `prod_{delta | N} eta(delta z)^{r_delta}` and everything
//! intrinsic to a single quotient: Newman's congruence conditions, Ligozat
//! cusp orders, q-expansion, the V(m) rescaling operator, existence
//! witnesses per level, and recognition of integer q-expansions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{divisors, euler_phi, factor, gcd, ord_p};
use crate::error::{Error, RecognitionError, Result};
use crate::gamma0::level_invariants;
use crate::qseries::{eta_body, Coeff, Series};
use crate::{QSeries, Rational};

/// Levels are capped so that scaled cusp-order arithmetic stays within
/// machine integers (the scaled per-divisor coefficient is at most N).
pub const MAX_LEVEL: u64 = 1 << 20;

/// An eta-quotient of level N: a finitely supported map divisor -> integer
/// exponent. Zero exponents are never stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawEtaQuotient", into = "RawEtaQuotient")]
pub struct EtaQuotient {
    level: u64,
    exponents: BTreeMap<u64, i64>,
}

#[derive(Serialize, Deserialize)]
struct RawEtaQuotient {
    level: u64,
    exponents: BTreeMap<u64, i64>,
}

impl TryFrom<RawEtaQuotient> for EtaQuotient {
    type Error = Error;
    fn try_from(raw: RawEtaQuotient) -> Result<Self> {
        EtaQuotient::new(raw.level, raw.exponents)
    }
}

impl From<EtaQuotient> for RawEtaQuotient {
    fn from(q: EtaQuotient) -> Self {
        RawEtaQuotient {
            level: q.level,
            exponents: q.exponents,
        }
    }
}

impl EtaQuotient {
    pub fn new(level: u64, exponents: impl IntoIterator<Item = (u64, i64)>) -> Result<Self> {
        if level == 0 {
            return Err(Error::invalid("level must be positive"));
        }
        if level > MAX_LEVEL {
            return Err(Error::invalid(format!("level {level} exceeds {MAX_LEVEL}")));
        }
        let mut map = BTreeMap::new();
        for (d, r) in exponents {
            if d == 0 || level % d != 0 {
                return Err(Error::invalid(format!(
                    "exponent key {d} does not divide level {level}"
                )));
            }
            if r != 0 {
                let slot = map.entry(d).or_insert(0i64);
                *slot = slot.checked_add(r).ok_or_else(|| {
                    Error::invalid("exponent overflow")
                })?;
                if *slot == 0 {
                    map.remove(&d);
                }
            }
        }
        Ok(EtaQuotient {
            level,
            exponents: map,
        })
    }

    /// Delta = eta(z)^24 viewed at level N.
    pub fn delta(level: u64) -> Result<Self> {
        Self::new(level, [(1u64, 24i64)])
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exponents
    }

    pub fn exponent(&self, delta: u64) -> i64 {
        self.exponents.get(&delta).copied().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.is_empty()
    }

    /// `2k = sum r_delta`; the weight is k = doubled_weight / 2 and may be
    /// half-integral (odd sum), in which case space-level operations reject
    /// the quotient.
    pub fn doubled_weight(&self) -> i64 {
        self.exponents.values().sum()
    }

    /// `sum delta * r_delta`, the q-exponent prefactor in units of 1/24.
    pub fn twentyfourths(&self) -> i64 {
        self.exponents
            .iter()
            .map(|(&d, &r)| d as i64 * r)
            .sum()
    }

    /// Multiply by another quotient at the same level (add exponents).
    pub fn mul(&self, other: &EtaQuotient) -> Result<EtaQuotient> {
        if self.level != other.level {
            return Err(Error::invalid("level mismatch in eta-quotient product"));
        }
        let mut map = self.exponents.clone();
        for (&d, &r) in &other.exponents {
            let slot = map.entry(d).or_insert(0);
            *slot += r;
            if *slot == 0 {
                map.remove(&d);
            }
        }
        Ok(EtaQuotient {
            level: self.level,
            exponents: map,
        })
    }

    pub fn pow(&self, e: i64) -> EtaQuotient {
        let mut map = BTreeMap::new();
        if e != 0 {
            for (&d, &r) in &self.exponents {
                map.insert(d, r * e);
            }
        }
        EtaQuotient {
            level: self.level,
            exponents: map,
        }
    }

    /// Apply the rescaling operator V(m): f(z) -> f(mz). The level becomes
    /// m*N and every key delta becomes m*delta.
    pub fn apply_v(&self, m: u64) -> Result<EtaQuotient> {
        if m == 0 {
            return Err(Error::invalid("V operator requires a positive scale"));
        }
        EtaQuotient::new(
            self.level * m,
            self.exponents.iter().map(|(&d, &r)| (d * m, r)),
        )
    }

    /// Re-view the quotient at a higher level (every key must divide it).
    pub fn at_level(&self, level: u64) -> Result<EtaQuotient> {
        EtaQuotient::new(level, self.exponents.iter().map(|(&d, &r)| (d, r)))
    }

    /// Newman's conditions: `sum delta r_delta = 0 mod 24`,
    /// `sum (N/delta) r_delta = 0 mod 24`, and `prod delta^{r_delta}` a
    /// rational square (each prime's exponent even). Together they make the
    /// quotient transform like a weight `(sum r_delta)/2` modular form on
    /// Gamma_0(N).
    pub fn newman_is_valid(&self) -> bool {
        let n = self.level;
        let mut sum_dr: i64 = 0;
        let mut sum_ndr: i64 = 0;
        for (&d, &r) in &self.exponents {
            sum_dr = (sum_dr + (d % 24) as i64 * (r % 24)) % 24;
            sum_ndr = (sum_ndr + ((n / d) % 24) as i64 * (r % 24)) % 24;
        }
        if sum_dr % 24 != 0 || sum_ndr % 24 != 0 {
            return false;
        }
        for (p, _) in factor(n) {
            let parity: i64 = self
                .exponents
                .iter()
                .map(|(&d, &r)| ord_p(d, p) as i64 * (r & 1))
                .sum();
            if parity % 2 != 0 {
                return false;
            }
        }
        true
    }

    /// The integer `N gcd(d, delta)^2 / (gcd(d, N/d) d delta)`: 24 times the
    /// contribution of one unit of `r_delta` to the order at denominator d.
    /// Always a non-negative integer, and at most N.
    pub(crate) fn order_scale_coeff(level: u64, d: u64, delta: u64) -> u64 {
        let g = gcd(d, delta) as u128;
        let num = level as u128 * g * g;
        let den = gcd(d, level / d) as u128 * d as u128 * delta as u128;
        debug_assert!(num % den == 0);
        (num / den) as u64
    }

    /// `24 * ord_{c/d}` as an exact integer: `sum_delta coeff * r_delta`.
    pub(crate) fn scaled_order(&self, d: u64) -> i128 {
        self.exponents
            .iter()
            .map(|(&delta, &r)| {
                Self::order_scale_coeff(self.level, d, delta) as i128 * r as i128
            })
            .sum()
    }

    /// Ligozat's formula: the order of vanishing at any cusp c/d with
    /// denominator d | N is
    /// `(N/24) sum_{delta | N} gcd(d, delta)^2 r_delta / (gcd(d, N/d) d delta)`,
    /// independent of c.
    pub fn ligozat_order(&self, d: u64) -> Result<Rational> {
        if d == 0 || self.level % d != 0 {
            return Err(Error::invalid(format!(
                "cusp denominator {d} does not divide level {}",
                self.level
            )));
        }
        Ok(Rational::new(
            BigInt::from(self.scaled_order(d)),
            BigInt::from(24),
        ))
    }

    /// Orders at every cusp class, keyed by denominator.
    pub fn cusp_orders(&self) -> Result<CuspOrderVector> {
        let divs = divisors(self.level);
        let mut orders = BTreeMap::new();
        for &d in &divs {
            orders.insert(d, self.ligozat_order(d)?);
        }
        Ok(CuspOrderVector {
            level: self.level,
            orders,
        })
    }

    /// Newman-valid and non-negative order at every cusp.
    pub fn is_holomorphic(&self) -> bool {
        self.newman_is_valid()
            && divisors(self.level)
                .into_iter()
                .all(|d| self.scaled_order(d) >= 0)
    }

    /// q-expansion over any coefficient scalar. Eta factors have unit
    /// leading coefficients, so this is exact over the integers and over
    /// prime fields as well as over Q.
    pub fn q_expansion_in<C: Coeff>(&self, precision: i64) -> Result<Series<C>> {
        let tf = self.twentyfourths();
        if tf % 24 != 0 {
            return Err(Error::FractionalValuation { twentyfourths: tf });
        }
        let valuation = tf / 24;
        let rel = precision - valuation;
        if rel <= 0 {
            return Ok(Series::zero_series(precision));
        }
        let mut acc = Series::<C>::one_series(rel);
        for (&delta, &r) in &self.exponents {
            let body = eta_body::<C>(delta, rel)?;
            acc = acc.mul(&body.pow(r)?);
        }
        Ok(acc.shift(valuation))
    }

    /// q-expansion with exact rational coefficients. The valuation is
    /// `(1/24) sum delta r_delta` and the leading coefficient is 1.
    pub fn q_expansion(&self, precision: i64) -> Result<QSeries> {
        // Integer arithmetic internally; rationals only at the surface.
        let z = self.q_expansion_in::<BigInt>(precision)?;
        Ok(z.map(|c| Rational::from(c.clone())))
    }
}

impl fmt::Display for EtaQuotient {
    /// Text format: `"<delta>:<r>,<delta>:<r>,..."` with delta ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, r) in &self.exponents {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{d}:{r}")?;
        }
        Ok(())
    }
}

/// Parse the `"1:-2,2:5,4:-2"` text format against a given level.
pub fn parse_eta_quotient(level: u64, text: &str) -> Result<EtaQuotient> {
    let mut pairs = Vec::new();
    let mut last_delta = 0u64;
    for part in text.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (d, r) = part
            .split_once(':')
            .ok_or_else(|| Error::invalid(format!("malformed factor {part:?}")))?;
        let d: u64 = d
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad divisor in {part:?}")))?;
        let r: i64 = r
            .trim()
            .parse()
            .map_err(|_| Error::invalid(format!("bad exponent in {part:?}")))?;
        if d <= last_delta {
            return Err(Error::invalid("divisors must be strictly ascending"));
        }
        if r == 0 {
            return Err(Error::invalid("exponents must be nonzero"));
        }
        last_delta = d;
        pairs.push((d, r));
    }
    EtaQuotient::new(level, pairs)
}

/// Exact cusp orders of one quotient, keyed by cusp denominator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspOrderVector {
    pub level: u64,
    pub orders: BTreeMap<u64, Rational>,
}

impl CuspOrderVector {
    /// `sum_d ord_d * phi(gcd(d, N/d))`, which the valence identity pins to
    /// `(doubled_weight / 24) * index`.
    pub fn weighted_degree(&self) -> Rational {
        let mut acc = Rational::zero();
        for (&d, ord) in &self.orders {
            let m = euler_phi(gcd(d, self.level / d));
            acc += ord * Rational::from(BigInt::from(m));
        }
        acc
    }

    /// Check the valence identity for the quotient that produced this vector.
    pub fn valence_holds(&self, doubled_weight: i64) -> bool {
        let index = match level_invariants(self.level) {
            Ok(inv) => inv.index,
            Err(_) => return false,
        };
        self.weighted_degree()
            == Rational::new(
                BigInt::from(doubled_weight) * BigInt::from(index),
                BigInt::from(24),
            )
    }
}

/// The least positive weight admitting a holomorphic eta-quotient on
/// Gamma_0(N), together with an explicit witness of that weight.
///
/// The weight is 12, 6, 4 or 2 according to which of the elliptic-point
/// counts eps2, eps3 vanish; the witnesses are fixed small quotients built
/// from the primes dividing N.
pub fn existence_weight(level: u64) -> Result<(i64, EtaQuotient)> {
    let inv = level_invariants(level)?;
    let primes: Vec<u64> = factor(level).into_iter().map(|(p, _)| p).collect();

    let (weight, witness) = if inv.eps2 > 0 && inv.eps3 > 0 {
        (12, EtaQuotient::delta(level)?)
    } else if inv.eps2 == 0 && inv.eps3 > 0 {
        // eps3 > 0 forces N odd, so some p = 3 mod 4 divides N.
        let p = primes
            .iter()
            .copied()
            .find(|&p| p % 4 == 3)
            .ok_or_else(|| Error::Internal("eps2 = 0 without p = 3 mod 4".into()))?;
        (6, EtaQuotient::new(level, [(1, 6), (p, 6)])?)
    } else if inv.eps2 > 0 && inv.eps3 == 0 {
        // eps2 > 0 forbids 9 | N, so some p = 2 mod 3 (possibly 2) divides N.
        let p = primes
            .iter()
            .copied()
            .find(|&p| p == 2 || p % 3 == 2)
            .ok_or_else(|| Error::Internal("eps3 = 0 without p = 2 mod 3".into()))?;
        if p == 2 {
            (4, EtaQuotient::new(level, [(1, 16), (2, -8)])?)
        } else {
            (4, EtaQuotient::new(level, [(1, 4), (p, 4)])?)
        }
    } else if level % 4 == 0 {
        (2, EtaQuotient::new(level, [(1, 8), (2, -4)])?)
    } else if level % 9 == 0 {
        (2, EtaQuotient::new(level, [(1, 6), (3, -2)])?)
    } else if let Some(p) = primes.iter().copied().find(|&p| p % 12 == 11) {
        (2, EtaQuotient::new(level, [(1, 2), (p, 2)])?)
    } else {
        let p = primes
            .iter()
            .copied()
            .find(|&p| p % 4 == 3)
            .ok_or_else(|| Error::Internal("elliptic-free level without p = 3 mod 4".into()))?;
        let q = primes
            .iter()
            .copied()
            .find(|&q| q != p && (q == 2 || q % 3 == 2))
            .ok_or_else(|| Error::Internal("elliptic-free level without p = 2 mod 3".into()))?;
        if q == 2 {
            (
                2,
                EtaQuotient::new(level, [(1, 4), (p, 4), (2, -2), (2 * p, -2)])?,
            )
        } else {
            (
                2,
                EtaQuotient::new(level, [(1, 1), (p, 1), (q, 1), (p * q, 1)])?,
            )
        }
    };

    debug_assert_eq!(witness.doubled_weight(), 2 * weight);
    debug_assert!(witness.is_holomorphic());
    Ok((weight, witness))
}

/// Recognize an integer q-expansion as `c * g(z)` for an integer c and an
/// eta-quotient g of level N.
///
/// The constructive induction over the divisors `d_0 < d_1 < ...` of N:
/// after dividing out the leading coefficient c (divisibility is verified,
/// not assumed), the candidate exponent `s_{d_l}` is read off from the
/// coefficient of `q^{r + d_l}` once the earlier factors are divided away.
/// A final multiplication to `check_precision` verifies the product; this
/// certifies the series is an integer multiple of an eta-quotient up to the
/// verified horizon (non-vanishing on the upper half plane cannot be seen
/// from a truncation).
pub fn recognize(
    series: &QSeries,
    level: u64,
    check_precision: i64,
) -> Result<(BigInt, EtaQuotient)> {
    if series.is_zero() {
        return Err(Error::invalid("recognize: series is zero"));
    }
    if level == 0 || level > MAX_LEVEL {
        return Err(Error::invalid("recognize: bad level"));
    }
    let valuation = series.valuation();
    let largest = level as i64;
    if check_precision <= valuation + largest {
        return Err(Error::invalid(format!(
            "recognize: check_precision must exceed valuation + largest divisor = {}",
            valuation + largest
        )));
    }
    if series.precision() <= valuation + largest {
        return Err(Error::invalid(
            "recognize: series too short to determine all exponents",
        ));
    }
    for c in series.dense_coeffs() {
        if !c.is_integer() {
            return Err(Error::invalid("recognize: series has non-integer coefficients"));
        }
    }

    let lead = series.coeff(valuation).to_integer();
    // Corollary-style divisibility of every coefficient by the lead.
    for (i, c) in series.dense_coeffs().iter().enumerate() {
        if !(c.to_integer() % &lead).is_zero() {
            return Err(RecognitionError::LeadingDivisibility {
                exponent: valuation + i as i64,
            }
            .into());
        }
    }
    let monic = series.scale(&Rational::new(BigInt::one(), lead.clone()));

    // Solve exponents divisor by divisor. `partial` is the body product of
    // the factors determined so far, at relative precision N + 1.
    let divs = divisors(level);
    let rel = largest + 1;
    let mut partial = QSeries::one_series(rel);
    let mut solved: Vec<(u64, i64)> = Vec::with_capacity(divs.len());
    for (index, &d) in divs.iter().enumerate() {
        // coefficient of q^{r + d} in monic = partial[d] - s_d
        let s = partial.coeff(d as i64) - monic.coeff(valuation + d as i64);
        if !s.is_integer() {
            return Err(RecognitionError::NonIntegerExponent { divisor: d, index }.into());
        }
        let s = s.to_integer();
        let s: i64 = (&s)
            .try_into()
            .map_err(|_| RecognitionError::NonIntegerExponent { divisor: d, index })?;
        if s != 0 {
            partial = partial.mul(&eta_body::<Rational>(d, rel)?.pow(s)?);
            solved.push((d, s));
        }
    }

    // Full verification of the body product against the input.
    let horizon = check_precision.min(series.precision());
    let mut product = QSeries::one_series(horizon - valuation);
    for &(d, s) in &solved {
        product = product.mul(&eta_body::<Rational>(d, horizon - valuation)?.pow(s)?);
    }
    let reconstructed = product.shift(valuation);
    let target = monic.truncate(horizon);
    if reconstructed != target {
        // locate the first disagreeing exponent for the error report
        let lo = reconstructed.valuation().min(target.valuation());
        for e in lo..horizon {
            if reconstructed.coeff(e) != target.coeff(e) {
                return Err(RecognitionError::Mismatch { exponent: e }.into());
            }
        }
        return Err(RecognitionError::Mismatch { exponent: horizon }.into());
    }

    // The bodies reproduce the series; it is c * (an eta-quotient) only if
    // the eta prefactor q^{sum d s_d / 24} lands exactly on the valuation.
    let tf: i64 = solved.iter().map(|&(d, s)| d as i64 * s).sum();
    if tf % 24 != 0 || tf / 24 != valuation {
        return Err(RecognitionError::FractionalValuation {
            twentyfourths: tf - 24 * valuation,
        }
        .into());
    }

    Ok((lead, EtaQuotient::new(level, solved)?))
}

/// Default verification horizon for [`recognize`]: valuation + 4N.
pub fn default_recognition_horizon(series_valuation: i64, level: u64) -> i64 {
    series_valuation + 4 * level as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn eq(level: u64, pairs: &[(u64, i64)]) -> EtaQuotient {
        EtaQuotient::new(level, pairs.iter().copied()).unwrap()
    }

    fn rat(n: i64) -> Rational {
        Rational::from_i64(n).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert!(EtaQuotient::new(4, [(3, 1)]).is_err());
        assert!(EtaQuotient::new(0, [(1, 1)]).is_err());
        // zero exponents are dropped
        assert!(eq(4, &[(2, 0)]).is_trivial());
    }

    #[test]
    fn newman_examples() {
        assert!(EtaQuotient::delta(1).unwrap().newman_is_valid());
        assert!(!eq(1, &[(1, 1)]).newman_is_valid());
        // The congruences hold for the weight-1/2 theta quotient, but
        // prod delta^{r_delta} = 2 is not a rational square.
        let theta = eq(4, &[(1, -2), (2, 5), (4, -2)]);
        assert!(!theta.newman_is_valid());
        // Squaring it lands in the even-weight world and passes.
        assert!(theta.pow(2).newman_is_valid());
        assert!(theta.pow(2).is_holomorphic());
    }

    #[test]
    fn ligozat_examples() {
        let delta = EtaQuotient::delta(1).unwrap();
        assert_eq!(delta.ligozat_order(1).unwrap(), rat(1));

        let f = eq(4, &[(2, -4), (4, 8)]);
        assert_eq!(f.ligozat_order(4).unwrap(), rat(1));
        assert_eq!(f.ligozat_order(1).unwrap(), rat(0));
        assert_eq!(f.ligozat_order(2).unwrap(), rat(0));
        assert!(f.ligozat_order(3).is_err());
    }

    #[test]
    fn holomorphy_examples() {
        assert!(EtaQuotient::delta(1).unwrap().is_holomorphic());

        // Delta(z)^2 / Delta(2z): orders 3 at denominator 1, 0 at 2.
        let e12 = eq(2, &[(1, 48), (2, -24)]);
        assert!(e12.is_holomorphic());
        assert_eq!(e12.ligozat_order(2).unwrap(), rat(0));
        assert_eq!(e12.ligozat_order(1).unwrap(), rat(3));

        // 1/f for f = Delta(2z)/Delta(z): Newman-valid but a pole at
        // denominator 1.
        let g = eq(2, &[(1, -24), (2, 24)]);
        assert!(g.newman_is_valid());
        assert_eq!(g.ligozat_order(1).unwrap(), rat(-1));
        assert!(!g.is_holomorphic());
    }

    #[test]
    fn q_expansions() {
        let delta = EtaQuotient::delta(1).unwrap();
        let s = delta.q_expansion(3).unwrap();
        assert_eq!(s.valuation(), 1);
        assert_eq!(s.coeff(1), rat(1));
        assert_eq!(s.coeff(2), rat(-24));

        // theta series: sum q^{n^2}
        let theta = eq(4, &[(1, -2), (2, 5), (4, -2)]);
        let s = theta.q_expansion(17).unwrap();
        for n in 0..17 {
            let expect = match n {
                0 => 1,
                1 | 4 | 9 | 16 => 2,
                _ => 0,
            };
            assert_eq!(s.coeff(n), rat(expect), "theta coefficient {n}");
        }

        // sum sigma_1(2n+1) q^{2n+1}
        let f = eq(4, &[(2, -4), (4, 8)]);
        let s = f.q_expansion(10).unwrap();
        let sigma1 = |n: i64| -> i64 { (1..=n).filter(|d| n % d == 0).sum() };
        for n in 0..10 {
            let expect = if n % 2 == 1 { sigma1(n) } else { 0 };
            assert_eq!(s.coeff(n), rat(expect), "sigma series coefficient {n}");
        }
    }

    #[test]
    fn fractional_valuation_rejected() {
        let bad = eq(2, &[(1, 1), (2, 1)]);
        assert!(matches!(
            bad.q_expansion(5),
            Err(Error::FractionalValuation { twentyfourths: 3 })
        ));
    }

    #[test]
    fn v_operator() {
        let delta = EtaQuotient::delta(1).unwrap();
        let v2 = delta.apply_v(2).unwrap();
        assert_eq!(v2.level(), 2);
        assert_eq!(v2.exponent(2), 24);

        // q_expansion(Delta | V(2)) = q_expansion(Delta) with q -> q^2
        let d = delta.q_expansion(6).unwrap();
        let dv = v2.q_expansion(12).unwrap();
        for n in 0..6 {
            assert_eq!(dv.coeff(2 * n), d.coeff(n));
        }
        for n in (1..12).step_by(2) {
            assert_eq!(dv.coeff(n), rat(0));
        }

        // order transform consistency at d = 2, e = r = 2
        assert_eq!(v2.ligozat_order(2).unwrap(), rat(2));
        let predicted = rat(2 * gcd(4, 4) as i64 / (2 * gcd(4, 2) as i64))
            * delta.ligozat_order(1).unwrap();
        assert_eq!(predicted, rat(2));
    }

    #[test]
    fn existence_witnesses() {
        let (w, witness) = existence_weight(1).unwrap();
        assert_eq!(w, 12);
        assert_eq!(witness, EtaQuotient::delta(1).unwrap());

        let (w, witness) = existence_weight(4).unwrap();
        assert_eq!(w, 2);
        assert_eq!(witness, eq(4, &[(1, 8), (2, -4)]));

        let (w, witness) = existence_weight(5).unwrap();
        assert_eq!(w, 4);
        assert_eq!(witness, eq(5, &[(1, 4), (5, 4)]));
    }

    #[test]
    fn existence_weights_across_levels() {
        for n in 1..=200 {
            let inv = level_invariants(n).unwrap();
            let (w, witness) = existence_weight(n).unwrap();
            let expect = match (inv.eps2 > 0, inv.eps3 > 0) {
                (true, true) => 12,
                (false, true) => 6,
                (true, false) => 4,
                (false, false) => 2,
            };
            assert_eq!(w, expect, "level {n}");
            assert_eq!(witness.level(), n);
            assert_eq!(witness.doubled_weight(), 2 * w);
            assert!(witness.is_holomorphic(), "witness at level {n}");
        }
    }

    #[test]
    fn recognize_round_trips() {
        let delta = EtaQuotient::delta(1).unwrap();
        let s = delta.q_expansion(31).unwrap();
        let (c, q) = recognize(&s, 1, 30).unwrap();
        assert_eq!(c, BigInt::from(1));
        assert_eq!(q, delta);

        let double = s.scale(&rat(2));
        let (c, q) = recognize(&double, 1, 30).unwrap();
        assert_eq!(c, BigInt::from(2));
        assert_eq!(q, delta);
    }

    #[test]
    fn recognize_rejects_non_quotient() {
        // 1 + q solves s_1 = -1, which predicts 1 + q + q^2 + ...
        let s = QSeries::from_integers(0, &[1, 1], 12);
        let err = recognize(&s, 1, 8).unwrap_err();
        assert!(
            matches!(
                err,
                Error::Recognition(RecognitionError::Mismatch { exponent: 2 })
            ),
            "got {err:?}"
        );
    }

    #[test]
    fn recognize_argument_checks() {
        let delta = EtaQuotient::delta(1).unwrap();
        let s = delta.q_expansion(31).unwrap();
        assert!(recognize(&QSeries::zero_series(5), 1, 10).is_err());
        assert!(recognize(&s, 1, 2).is_err()); // horizon too small
        let frac = s.scale(&Rational::new(BigInt::one(), BigInt::from(2)));
        assert!(recognize(&frac, 1, 30).is_err());
    }

    #[test]
    fn text_format_round_trip() {
        let q = eq(4, &[(1, -2), (2, 5), (4, -2)]);
        assert_eq!(q.to_string(), "1:-2,2:5,4:-2");
        assert_eq!(parse_eta_quotient(4, "1:-2,2:5,4:-2").unwrap(), q);
        assert!(parse_eta_quotient(4, "2:5,1:-2").is_err()); // not ascending
        assert!(parse_eta_quotient(4, "1:0").is_err()); // zero exponent
        assert!(parse_eta_quotient(4, "3:1").is_err()); // not a divisor
    }

    #[test]
    fn json_round_trip() {
        let q = eq(4, &[(1, -2), (2, 5), (4, -2)]);
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, r#"{"level":4,"exponents":{"1":-2,"2":5,"4":-2}}"#);
        let back: EtaQuotient = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
        // invalid data is rejected at deserialization
        assert!(serde_json::from_str::<EtaQuotient>(r#"{"level":4,"exponents":{"3":1}}"#).is_err());
    }

    // ---- randomized properties ----

    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    pub(crate) fn random_newman_valid(rng: &mut StdRng, level: u64) -> EtaQuotient {
        let divs = divisors(level);
        // the range must contain +-24 so that level 1 (r_1 = 0 mod 24) is
        // reachable
        for _ in 0..5_000_000 {
            let pairs: Vec<(u64, i64)> = divs
                .iter()
                .map(|&d| (d, rng.gen_range(-26i64..=26)))
                .collect();
            let q = EtaQuotient::new(level, pairs).unwrap();
            if !q.is_trivial() && q.newman_is_valid() {
                return q;
            }
        }
        panic!("rejection sampling failed at level {level}");
    }

    /// Multiply by enough powers of Delta to clear every pole.
    pub(crate) fn make_holomorphic(q: &EtaQuotient) -> EtaQuotient {
        let divs = divisors(q.level());
        let worst = divs.iter().map(|&d| q.scaled_order(d)).min().unwrap();
        if worst >= 0 {
            return q.clone();
        }
        let delta_min = divs
            .iter()
            .map(|&d| EtaQuotient::delta(q.level()).unwrap().scaled_order(d))
            .min()
            .unwrap();
        let m = (-worst + delta_min - 1) / delta_min;
        q.mul(&EtaQuotient::delta(q.level()).unwrap().pow(m as i64))
            .unwrap()
    }

    #[test]
    fn valuation_matches_order_at_infinity() {
        let mut rng = StdRng::seed_from_u64(0x0e7a);
        let mut done = 0;
        while done < 200 {
            let level = rng.gen_range(1u64..=60);
            let q = random_newman_valid(&mut rng, level);
            let ord = q.ligozat_order(level).unwrap();
            let s = q.q_expansion(q.twentyfourths() / 24 + 3).unwrap();
            assert_eq!(
                ord,
                Rational::from(BigInt::from(s.valuation())),
                "level {level} quotient {q}"
            );
            done += 1;
        }
    }

    #[test]
    fn valence_identity_random() {
        let mut rng = StdRng::seed_from_u64(0x51de);
        for _ in 0..200 {
            let level = rng.gen_range(1u64..=60);
            let q = make_holomorphic(&random_newman_valid(&mut rng, level));
            assert!(q.is_holomorphic());
            let orders = q.cusp_orders().unwrap();
            assert!(orders.valence_holds(q.doubled_weight()), "{level} {q}");
        }
    }

    #[test]
    fn order_transform_under_v() {
        // For gcd(e, N) = 1, r | e, d = d1 d2 with d1 | N, d2 | e:
        // ord_{1/d}(f | V(r) at level eN) =
        //   (e gcd(d2^2, r^2) / (r gcd(d2^2, e))) ord_{1/d1}(f).
        let mut rng = StdRng::seed_from_u64(0x7_1e4);
        let mut instances = 0;
        while instances < 200 {
            let level = rng.gen_range(1u64..=30);
            let candidates: Vec<u64> = [2u64, 3, 4, 5, 7, 8, 9]
                .into_iter()
                .filter(|&e| gcd(e, level) == 1)
                .collect();
            if candidates.is_empty() {
                continue;
            }
            let q = random_newman_valid(&mut rng, level);
            let e = candidates[rng.gen_range(0..candidates.len())];
            for r in divisors(e) {
                let lifted = q.apply_v(r).unwrap().at_level(e * level).unwrap();
                for d1 in divisors(level) {
                    for d2 in divisors(e) {
                        let lhs = lifted.ligozat_order(d1 * d2).unwrap();
                        let factor = Rational::new(
                            BigInt::from(e * gcd(d2 * d2, r * r)),
                            BigInt::from(r * gcd(d2 * d2, e)),
                        );
                        let rhs = factor * q.ligozat_order(d1).unwrap();
                        assert_eq!(lhs, rhs, "level {level} e {e} r {r} d1 {d1} d2 {d2}");
                        instances += 1;
                    }
                }
            }
        }
    }

    #[test]
    fn recognition_round_trip_random() {
        let mut rng = StdRng::seed_from_u64(0xc0de);
        let mut done = 0;
        let mut attempts = 0;
        while done < 40 {
            attempts += 1;
            assert!(attempts < 100_000, "sampling starved");
            let level = rng.gen_range(1u64..=24);
            let q = make_holomorphic(&random_newman_valid(&mut rng, level));
            if q.is_trivial() || q.doubled_weight() > 120 {
                continue;
            }
            let horizon = default_recognition_horizon(q.twentyfourths() / 24, level);
            let s = q.q_expansion(horizon + 1).unwrap();
            let (c, back) = recognize(&s, level, horizon).unwrap();
            assert_eq!(c, BigInt::from(1));
            assert_eq!(back, q, "level {level}");

            // integer-multiple extraction
            let m = rng.gen_range(2i64..=9) * if rng.gen_bool(0.5) { 1 } else { -1 };
            let (c, back) = recognize(&s.scale(&rat(m)), level, horizon).unwrap();
            assert_eq!(c, BigInt::from(m));
            assert_eq!(back, q);
            done += 1;
        }
    }
}
