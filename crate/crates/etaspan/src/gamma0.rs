//! Arithmetic invariants of Gamma_0(N) and the modular curve X_0(N):
//! index, cusp classes, elliptic-point counts, genus, dimensions of spaces of
//! modular forms, and the Sturm bound.

use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

use crate::arith::{divisors, euler_phi, factor, gcd};
use crate::error::{Error, Result};

/// Everything the rest of the crate needs to know about one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelInvariants {
    pub level: u64,
    /// Index of Gamma_0(N) in SL_2(Z): `N * prod_{p|N} (1 + 1/p)`.
    pub index: u64,
    /// Divisors of N, ascending.
    pub divisors: Vec<u64>,
    /// Number of order-2 elliptic point orbits.
    pub eps2: u64,
    /// Number of order-3 elliptic point orbits.
    pub eps3: u64,
    /// Cusp classes as (denominator d | N, multiplicity phi(gcd(d, N/d))).
    pub cusp_classes: Vec<(u64, u64)>,
    pub num_cusps: u64,
    pub genus: u64,
}

fn kronecker_minus_one(p: u64) -> i64 {
    // (-1|p) with the p = 2 convention fixed to 0.
    match p % 4 {
        1 => 1,
        3 => -1,
        _ => 0,
    }
}

fn kronecker_minus_three(p: u64) -> i64 {
    // (-3|p) with (-3|3) = 0 and (-3|2) = -1.
    if p == 3 {
        0
    } else if p % 3 == 1 {
        1
    } else {
        -1
    }
}

fn compute(level: u64) -> LevelInvariants {
    let primes = factor(level);

    let mut index = level;
    for &(p, _) in &primes {
        index = index / p * (p + 1);
    }

    let eps2: u64 = if level % 4 == 0 {
        0
    } else {
        primes
            .iter()
            .map(|&(p, _)| (1 + kronecker_minus_one(p)) as u64)
            .product()
    };
    let eps3: u64 = if level % 9 == 0 {
        0
    } else {
        primes
            .iter()
            .map(|&(p, _)| (1 + kronecker_minus_three(p)) as u64)
            .product()
    };

    let divisors = divisors(level);
    let cusp_classes: Vec<(u64, u64)> = divisors
        .iter()
        .map(|&d| (d, euler_phi(gcd(d, level / d))))
        .collect();
    let num_cusps: u64 = cusp_classes.iter().map(|&(_, m)| m).sum();

    // 12(g - 1) = index - 3 eps2 - 4 eps3 - 6 num_cusps, which must balance
    // exactly.
    let twelve_g = 12 + index as i64 - 3 * eps2 as i64 - 4 * eps3 as i64 - 6 * num_cusps as i64;
    assert!(
        twelve_g >= 0 && twelve_g % 12 == 0,
        "genus formula does not balance at level {level}"
    );
    let genus = (twelve_g / 12) as u64;

    LevelInvariants {
        level,
        index,
        divisors,
        eps2,
        eps3,
        cusp_classes,
        num_cusps,
        genus,
    }
}

fn cache() -> &'static Mutex<HashMap<u64, LevelInvariants>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, LevelInvariants>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Invariants of Gamma_0(N). Results are memoized per level; the computation
/// is a pure function of N, so the cache never changes an answer.
pub fn level_invariants(level: u64) -> Result<LevelInvariants> {
    if level == 0 {
        return Err(Error::invalid("level must be positive"));
    }
    if let Some(inv) = cache().lock().unwrap().get(&level) {
        return Ok(inv.clone());
    }
    let inv = compute(level);
    cache().lock().unwrap().insert(level, inv.clone());
    Ok(inv)
}

fn check_weight(weight: i64) -> Result<()> {
    if weight < 2 || weight % 2 != 0 {
        return Err(Error::invalid(format!(
            "weight must be even and >= 2, got {weight}"
        )));
    }
    Ok(())
}

/// Dimension of `M_k(Gamma_0(N))` for even k >= 2.
///
/// Weight 2 needs its own branch: `genus + num_cusps - 1`. For k >= 4 the
/// dimension is `(k-1)(g-1) + floor(k/4) eps2 + floor(k/3) eps3 + (k/2) eps_inf`.
pub fn dim_modular_forms(level: u64, weight: i64) -> Result<u64> {
    check_weight(weight)?;
    let inv = level_invariants(level)?;
    if weight == 2 {
        return Ok(inv.genus + inv.num_cusps - 1);
    }
    let k = weight;
    let dim = (k - 1) * (inv.genus as i64 - 1)
        + (k / 4) * inv.eps2 as i64
        + (k / 3) * inv.eps3 as i64
        + (k / 2) * inv.num_cusps as i64;
    debug_assert!(dim >= 0);
    Ok(dim as u64)
}

/// Number of initial q-coefficients (from q^0) that determine an element of
/// `M_k(Gamma_0(N))`: `floor(k * index / 12) + 1`.
pub fn sturm_bound(level: u64, weight: i64) -> Result<u64> {
    check_weight(weight)?;
    let inv = level_invariants(level)?;
    Ok((weight as u64 * inv.index) / 12 + 1)
}
