//! Prime-field scalars for fast rank certification.
//!
//! A matrix that has full rank modulo any prime has full rank over Q (a
//! nonzero minor mod p is a nonzero integer minor), so spanning verdicts
//! certified mod p are exact. Reduction mod p can only lose rank, never gain
//! it, which is why negative verdicts still go through exact arithmetic.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{FromPrimitive, One, Zero};

/// Element of F_P for a prime modulus `P < 2^63`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fp<const P: u64>(u64);

/// F_p for p = 2^61 - 1 (Mersenne prime), the work prime.
pub type F61 = Fp<2_305_843_009_213_693_951>;

/// F_p for p = 2^31 - 1, used as an independent second elimination pass.
pub type F31 = Fp<2_147_483_647>;

impl<const P: u64> Fp<P> {
    pub fn new(v: u64) -> Self {
        Fp(v % P)
    }

    pub fn value(self) -> u64 {
        self.0
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp::<P>(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inverse(self) -> Self {
        assert!(self.0 != 0, "inverse of zero in F_p");
        self.pow(P - 2)
    }

    pub fn from_bigint(v: &num_bigint::BigInt) -> Self {
        use num_traits::ToPrimitive;
        let m = v % num_bigint::BigInt::from(P);
        let m = if m < num_bigint::BigInt::from(0) {
            m + num_bigint::BigInt::from(P)
        } else {
            m
        };
        Fp(m.to_u64().expect("reduced value fits"))
    }
}

impl<const P: u64> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u64> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 {
            self.0 - rhs.0
        } else {
            self.0 + P - rhs.0
        })
    }
}

impl<const P: u64> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u64> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp((self.0 as u128 * rhs.0 as u128 % P as u128) as u64)
    }
}

impl<const P: u64> Div for Fp<P> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self * rhs.inverse()
    }
}

impl<const P: u64> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u64> One for Fp<P> {
    fn one() -> Self {
        Fp(1)
    }
}

impl<const P: u64> FromPrimitive for Fp<P> {
    fn from_i64(v: i64) -> Option<Self> {
        let m = v.rem_euclid(P as i64 as i64);
        // P < 2^63 so the rem_euclid above is well-defined for all i64
        Some(Fp(m as u64 % P))
    }
    fn from_u64(v: u64) -> Option<Self> {
        Some(Fp(v % P))
    }
}

/// Streaming Gaussian elimination over F_P, same offer contract as the
/// exact `FractionFreeReducer`.
#[derive(Debug, Default, Clone)]
pub struct ModPReducer<const P: u64> {
    rows: Vec<(usize, Vec<Fp<P>>)>,
}

impl<const P: u64> ModPReducer<P> {
    pub fn new() -> Self {
        Self { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn offer(&mut self, mut row: Vec<Fp<P>>) -> bool {
        for (pivot, basis_row) in &self.rows {
            let c = row[*pivot];
            if c.is_zero() {
                continue;
            }
            // basis rows are monic at their pivot
            for (x, y) in row.iter_mut().zip(basis_row.iter()) {
                *x = *x - c * *y;
            }
        }
        match row.iter().position(|x| !x.is_zero()) {
            None => false,
            Some(pivot) => {
                let inv = row[pivot].inverse();
                for x in row.iter_mut() {
                    *x = *x * inv;
                }
                let at = self
                    .rows
                    .binary_search_by_key(&pivot, |(p, _)| *p)
                    .expect_err("pivot column already occupied after reduction");
                self.rows.insert(at, (pivot, row));
                true
            }
        }
    }
}
