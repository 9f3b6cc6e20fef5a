//! Exhaustive enumeration of holomorphic eta-quotients of fixed weight and
//! level.
//!
//! The quotients in `M_k(Gamma_0(N))` are the integer exponent vectors
//! `(r_delta)` with `sum r_delta = 2k`, Newman's congruences, and
//! non-negative Ligozat order at every cusp; every one of them satisfies the
//! sharp bound `sum |r_delta| <= 2k prod_{p|N} ((p+1)/(p-1))^{min(2, ord_p N)}`,
//! which makes the space a bounded polytope.
//!
//! The engine does not search exponent space, where the polytope constraints
//! couple across cusps and prune badly. It walks the scaled cusp-order
//! vectors `S = E r` instead, where `E` is the (invertible) integer matrix
//! of per-divisor order contributions and `S_d` is 24 times the order at
//! denominator d. In those coordinates the constraints are exact and local:
//! `S_d >= 0` (holomorphy), the valence identity
//! `sum_d phi_d S_d = 2k * index` (equivalent to the weight constraint),
//! and `S_1 = S_N = 0 mod 24` (two of Newman's three conditions; the
//! rational-square condition is a parity carried along). Walking a
//! Hermite-triangular basis of the lattice `E Z^t` fixes one cusp per level,
//! so every box constraint lands exactly at its own level, the running
//! phi-weighted degree never exceeds the valence total, and the final level
//! is forced outright.
//!
//! Counting never materializes quotients and fans the top two walk levels
//! out across threads; the total is independent of the partitioning.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{divisors, factor, gcd, ord_p};
use crate::error::{Error, Result};
use crate::etaquot::EtaQuotient;
use crate::gamma0::level_invariants;
use crate::linalg;
use crate::Rational;

/// Exponent-sum bound: `2k prod_{p|N} ((p+1)/(p-1))^{min(2, ord_p N)}` as an
/// exact rational.
pub fn exponent_bound(level: u64, weight: i64) -> Result<Rational> {
    if level == 0 {
        return Err(Error::invalid("level must be positive"));
    }
    if weight <= 0 || weight % 2 != 0 {
        return Err(Error::invalid("weight must be even and positive"));
    }
    let mut bound = Rational::from(BigInt::from(2 * weight));
    for (p, e) in factor(level) {
        let exp = e.min(2);
        let ratio = Rational::new(BigInt::from(p + 1), BigInt::from(p - 1));
        for _ in 0..exp {
            bound *= ratio.clone();
        }
    }
    Ok(bound)
}

/// How enumeration results are delivered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnumerationMode {
    Collect,
    Count,
    Stream,
}

/// A fully determined enumeration problem: level, doubled weight, the exact
/// exponent bound, and the divisor order used to sort collected output.
#[derive(Debug, Clone)]
pub struct EnumerationSpec {
    pub level: u64,
    pub doubled_weight: i64,
    pub mode: EnumerationMode,
    pub bound: Rational,
    pub divisor_order: Vec<u64>,
}

impl EnumerationSpec {
    pub fn new(level: u64, weight: i64) -> Result<Self> {
        if weight < 2 || weight % 2 != 0 {
            return Err(Error::invalid("weight must be even and >= 2"));
        }
        let bound = exponent_bound(level, weight)?;
        let mut divisor_order = divisors(level);
        divisor_order.reverse();
        Ok(EnumerationSpec {
            level,
            doubled_weight: 2 * weight,
            mode: EnumerationMode::Collect,
            bound,
            divisor_order,
        })
    }

    pub fn with_mode(mut self, mode: EnumerationMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn weight(&self) -> i64 {
        self.doubled_weight / 2
    }

    fn tables(&self) -> WalkTables {
        WalkTables::build(self)
    }

    /// All quotients, lexicographically sorted by `divisor_order`.
    pub fn collect(&self) -> Vec<EtaQuotient> {
        let mut out: Vec<EtaQuotient> = self.stream().collect();
        out.sort_by_cached_key(|q| {
            self.divisor_order
                .iter()
                .map(|d| q.exponent(*d))
                .collect::<Vec<i64>>()
        });
        out
    }

    /// Cardinality without materializing. Splits the top walk levels across
    /// the current rayon thread pool.
    pub fn count(&self) -> u64 {
        let tables = self.tables();
        let t = tables.dim();
        let root = WalkState::root(&tables);
        if t <= 2 {
            return count_from(&tables, &root, 0);
        }
        let mut prefixes = Vec::new();
        for x0 in tables.level_values(&root, 0) {
            let s0 = root.child(&tables, 0, x0);
            if !tables.feasible(&s0) {
                continue;
            }
            for x1 in tables.level_values(&s0, 1) {
                let s1 = s0.child(&tables, 1, x1);
                if tables.feasible(&s1) {
                    prefixes.push(s1);
                }
            }
        }
        prefixes
            .into_par_iter()
            .map(|state| count_from(&tables, &state, 2))
            .sum()
    }

    /// Deterministic lazy stream. The walk order differs from the sorted
    /// order of `collect`; it is stable across runs and thread counts.
    pub fn stream(&self) -> EtaQuotientStream {
        EtaQuotientStream::new(self.tables())
    }
}

/// Run the enumeration in the mode recorded on the spec.
pub enum Enumeration {
    List(Vec<EtaQuotient>),
    Count(u64),
    Stream(EtaQuotientStream),
}

pub fn enumerate_eta_quotients(spec: &EnumerationSpec) -> Enumeration {
    match spec.mode {
        EnumerationMode::Collect => Enumeration::List(spec.collect()),
        EnumerationMode::Count => Enumeration::Count(spec.count()),
        EnumerationMode::Stream => Enumeration::Stream(spec.stream()),
    }
}

/// Precomputed data for the cusp-order walk.
struct WalkTables {
    level: u64,
    /// divisors ascending; index is both cusp index and exponent slot
    divs: Vec<u64>,
    /// cusp-class multiplicities phi(gcd(d, N/d))
    phi: Vec<i64>,
    /// per-cusp cap (2k * index) / phi_c from the valence identity
    caps: Vec<i64>,
    /// valence total 2k * index
    degree: i64,
    /// HNF basis of the lattice E Z^t: rows h[i], h[i][c] = 0 for c < i,
    /// h[i][i] > 0
    h: Vec<Vec<i64>>,
    /// exponent vector of each basis row: r^{(i)} = E^{-1} h_i (integral)
    u: Vec<Vec<i64>>,
    /// parity contribution of each basis row: bit b set iff
    /// sum_j ord_{p_b}(delta_j) u[i][j] is odd (rational-square condition)
    parity: Vec<u32>,
}

impl WalkTables {
    fn build(spec: &EnumerationSpec) -> Self {
        let level = spec.level;
        let divs = divisors(level);
        let t = divs.len();
        let inv = level_invariants(level).expect("level validated");
        let phi: Vec<i64> = inv.cusp_classes.iter().map(|&(_, m)| m as i64).collect();
        let degree = spec.doubled_weight * inv.index as i64;
        let caps: Vec<i64> = phi.iter().map(|&m| degree / m).collect();

        // order matrix: rows cusps, columns divisors, both ascending
        let e: Vec<Vec<i64>> = divs
            .iter()
            .map(|&d| {
                divs.iter()
                    .map(|&delta| EtaQuotient::order_scale_coeff(level, d, delta) as i64)
                    .collect()
            })
            .collect();
        // sanity: each eta factor has phi-weighted total order = index
        for j in 0..t {
            let total: i64 = (0..t).map(|c| phi[c] * e[c][j]).sum();
            debug_assert_eq!(total, inv.index as i64);
        }

        // HNF basis of the image lattice E Z^t (generators = columns of E)
        let generators: Vec<Vec<BigInt>> = (0..t)
            .map(|j| (0..t).map(|c| BigInt::from(e[c][j])).collect())
            .collect();
        let hnf = linalg::hnf(generators);
        assert_eq!(hnf.len(), t, "order matrix must have full rank");
        let h: Vec<Vec<i64>> = hnf
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| x.to_i64().expect("basis entry fits"))
                    .collect()
            })
            .collect();

        // map each basis row back to exponent space
        let e_rat: Vec<Vec<Rational>> = e
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&x| Rational::from(BigInt::from(x)))
                    .collect()
            })
            .collect();
        let e_inv = linalg::rational_inverse(e_rat).expect("order matrix invertible");
        let u: Vec<Vec<i64>> = h
            .iter()
            .map(|s_row| {
                (0..t)
                    .map(|j| {
                        let mut acc = Rational::zero();
                        for (c, s) in s_row.iter().enumerate() {
                            acc += &e_inv[j][c] * Rational::from(BigInt::from(*s));
                        }
                        assert!(acc.is_integer(), "lattice basis maps to integer exponents");
                        acc.to_integer().to_i64().expect("exponent fits")
                    })
                    .collect()
            })
            .collect();

        let primes: Vec<u64> = factor(level).into_iter().map(|(p, _)| p).collect();
        let parity: Vec<u32> = u
            .iter()
            .map(|r| {
                let mut mask = 0u32;
                for (b, &p) in primes.iter().enumerate() {
                    let odd: i64 = divs
                        .iter()
                        .zip(r.iter())
                        .map(|(&delta, &x)| ord_p(delta, p) as i64 * (x & 1))
                        .sum();
                    if odd % 2 == 1 {
                        mask |= 1 << b;
                    }
                }
                mask
            })
            .collect();

        WalkTables {
            level,
            divs,
            phi,
            caps,
            degree,
            h,
            u,
            parity,
        }
    }

    fn dim(&self) -> usize {
        self.divs.len()
    }

    /// Valid x values at a level: the exact interval keeping
    /// `0 <= S_level <= min(cap, remaining degree / phi)`, thinned by the
    /// congruence residues that can still lead to a leaf:
    /// - at level 0, `S_0 = x h[0][0]` must be 0 mod 24 (Newman);
    /// - at level t-2, the degree left for the forced final cusp must be
    ///   0 mod 24, a linear congruence in x.
    fn level_values(&self, s: &WalkState, level: usize) -> LevelValues {
        let off = s.s_partial[level];
        let step = self.h[level][level];
        let cap = self.caps[level].min((self.degree - s.degree_spent) / self.phi[level]);
        let lo = div_ceil(-off, step);
        let hi = div_floor(cap - off, step);
        let mut class = (0, 1);
        if level == 0 {
            // S_0 = x * h[0][0] = 0 mod 24
            match solve_congruence(step, 0, 24) {
                Some(c) => class = c,
                None => return LevelValues::empty(),
            }
        }
        if level + 2 == self.dim() {
            // need = degree - spent - phi (off + step x) = 0 mod 24
            let phi = self.phi[level];
            let rhs = self.degree - s.degree_spent - phi * off;
            match solve_congruence(phi * step, rhs, 24) {
                Some(c) => match merge_classes(class, c) {
                    Some(m) => class = m,
                    None => return LevelValues::empty(),
                },
                None => return LevelValues::empty(),
            }
        }
        let (x0, stride) = class;
        let next = x0 + div_ceil(lo - x0, stride) * stride;
        LevelValues { next, hi, stride }
    }

    /// The phi-weighted degree of the fixed cusps may never exceed the
    /// valence total (the remaining cusps only add to it).
    fn feasible(&self, s: &WalkState) -> bool {
        s.degree_spent <= self.degree
    }
}

/// Iterator over valid x values at one level.
struct LevelValues {
    next: i64,
    hi: i64,
    stride: i64,
}

impl LevelValues {
    fn empty() -> Self {
        LevelValues {
            next: 1,
            hi: 0,
            stride: 1,
        }
    }
}

impl Iterator for LevelValues {
    type Item = i64;
    fn next(&mut self) -> Option<i64> {
        if self.next > self.hi {
            return None;
        }
        let v = self.next;
        self.next += self.stride;
        Some(v)
    }
}

/// Solutions of `a x = b (mod m)` as a residue class `(x0, modulus)`.
fn solve_congruence(a: i64, b: i64, m: i64) -> Option<(i64, i64)> {
    let a = a.rem_euclid(m);
    let b = b.rem_euclid(m);
    let g = gcd(a as u64, m as u64) as i64;
    if b % g != 0 {
        return None;
    }
    let m2 = m / g;
    if m2 == 1 {
        return Some((0, 1));
    }
    let a2 = (a / g).rem_euclid(m2);
    let b2 = (b / g).rem_euclid(m2);
    // moduli here are at most 24; brute-force inversion is fine
    (0..m2)
        .find(|&x| (a2 * x).rem_euclid(m2) == b2)
        .map(|x| (x, m2))
}

/// Intersect residue classes.
fn merge_classes(a: (i64, i64), b: (i64, i64)) -> Option<(i64, i64)> {
    let g = gcd(a.1 as u64, b.1 as u64) as i64;
    if (b.0 - a.0).rem_euclid(g) != 0 {
        return None;
    }
    let l = a.1 / g * b.1;
    (0..(l / a.1))
        .map(|k| a.0 + k * a.1)
        .find(|&x| (x - b.0).rem_euclid(b.1) == 0)
        .map(|x| (x.rem_euclid(l), l))
}

#[derive(Clone)]
struct WalkState {
    /// accumulated S value per cusp (final once that cusp's level is passed)
    s_partial: Vec<i64>,
    /// phi-weighted degree of the finalized cusps
    degree_spent: i64,
    /// running parity mask of the exponent vector
    parity: u32,
}

impl WalkState {
    fn root(tables: &WalkTables) -> Self {
        WalkState {
            s_partial: vec![0; tables.dim()],
            degree_spent: 0,
            parity: 0,
        }
    }

    fn child(&self, tables: &WalkTables, level: usize, x: i64) -> Self {
        let mut s = self.clone();
        s.apply(tables, level, x);
        s
    }

    fn apply(&mut self, tables: &WalkTables, level: usize, x: i64) {
        if x != 0 {
            for (c, v) in self.s_partial.iter_mut().enumerate().skip(level) {
                *v += tables.h[level][c] * x;
            }
            if x & 1 == 1 {
                self.parity ^= tables.parity[level];
            }
        }
        self.degree_spent += tables.phi[level] * self.s_partial[level];
    }
}

fn div_floor(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

/// Resolve the final level, where the valence identity forces S outright.
/// Returns the basis coordinate if every remaining condition holds.
fn forced_last(tables: &WalkTables, s: &WalkState) -> Option<i64> {
    let t = tables.dim();
    let last = t - 1;
    let need = tables.degree - s.degree_spent;
    // the cusp of denominator N has multiplicity phi(gcd(N, 1)) = 1
    debug_assert_eq!(tables.phi[last], 1);
    // Newman: S_N = sum delta r_delta must be 0 mod 24
    if need < 0 || need > tables.caps[last] || need % 24 != 0 {
        return None;
    }
    let off = s.s_partial[last];
    let step = tables.h[last][last];
    if (need - off).rem_euclid(step) != 0 {
        return None;
    }
    let x = (need - off) / step;
    // rational-square condition: all prime parities must vanish
    let parity = if x & 1 == 1 {
        s.parity ^ tables.parity[last]
    } else {
        s.parity
    };
    if parity != 0 {
        return None;
    }
    Some(x)
}

fn count_from(tables: &WalkTables, s: &WalkState, level: usize) -> u64 {
    let t = tables.dim();
    if level == t - 1 {
        return forced_last(tables, s).is_some() as u64;
    }
    let mut total = 0;
    for x in tables.level_values(s, level) {
        let child = s.child(tables, level, x);
        if tables.feasible(&child) {
            total += count_from(tables, &child, level + 1);
        }
    }
    total
}

/// Lazy depth-first walk yielding quotients in a deterministic order.
pub struct EtaQuotientStream {
    tables: WalkTables,
    stack: Vec<StreamFrame>,
    started: bool,
    finished: bool,
}

struct StreamFrame {
    state: WalkState,
    values: LevelValues,
    x: i64,
}

impl EtaQuotientStream {
    fn new(tables: WalkTables) -> Self {
        EtaQuotientStream {
            tables,
            stack: Vec::new(),
            started: false,
            finished: false,
        }
    }

    fn emit(&self, leaf_x: i64) -> EtaQuotient {
        let t = self.tables.dim();
        let mut r = vec![0i64; t];
        let xs = self.stack.iter().map(|f| f.x).chain([leaf_x]);
        for (i, x) in xs.enumerate() {
            if x != 0 {
                for (j, v) in r.iter_mut().enumerate() {
                    *v += x * self.tables.u[i][j];
                }
            }
        }
        EtaQuotient::new(
            self.tables.level,
            self.tables.divs.iter().copied().zip(r),
        )
        .expect("walk produces valid quotients")
    }
}

impl Iterator for EtaQuotientStream {
    type Item = EtaQuotient;

    fn next(&mut self) -> Option<EtaQuotient> {
        if self.finished {
            return None;
        }
        let t = self.tables.dim();
        if !self.started {
            self.started = true;
            let root = WalkState::root(&self.tables);
            if t == 1 {
                self.finished = true;
                return forced_last(&self.tables, &root).map(|x| self.emit(x));
            }
            let values = self.tables.level_values(&root, 0);
            self.stack.push(StreamFrame {
                state: root,
                values,
                x: 0,
            });
        }
        while let Some(top) = self.stack.last_mut() {
            let Some(x) = top.values.next() else {
                self.stack.pop();
                continue;
            };
            top.x = x;
            let level = self.stack.len() - 1;
            let child = self.stack[level].state.child(&self.tables, level, x);
            if !self.tables.feasible(&child) {
                continue;
            }
            if level + 1 == t - 1 {
                if let Some(xl) = forced_last(&self.tables, &child) {
                    return Some(self.emit(xl));
                }
            } else {
                let values = self.tables.level_values(&child, level + 1);
                self.stack.push(StreamFrame {
                    state: child,
                    values,
                    x: 0,
                });
            }
        }
        self.finished = true;
        None
    }
}

/// Number of eta-quotients in `M_k(Gamma_0(N))` for genus-zero N, computed
/// as the denumerant of `sum c_d phi(gcd(d, N/d)) = (k/12) index` over
/// non-negative integers: for genus zero the quotients biject with effective
/// cusp divisors of that degree.
pub fn count_genus_zero(level: u64, weight: i64) -> Result<u128> {
    if weight < 2 || weight % 2 != 0 {
        return Err(Error::invalid("weight must be even and >= 2"));
    }
    let inv = level_invariants(level)?;
    if inv.genus != 0 {
        return Err(Error::precondition(format!(
            "level {level} has genus {}, not zero",
            inv.genus
        )));
    }
    let (least, _) = crate::etaquot::existence_weight(level)?;
    if weight % least != 0 {
        return Err(Error::precondition(format!(
            "no holomorphic eta-quotient in weight {weight} at level {level}: \
             weights are multiples of {least} (existence lemma)"
        )));
    }
    let degree_times_12 = weight as u64 * inv.index;
    debug_assert_eq!(degree_times_12 % 12, 0);
    let degree = (degree_times_12 / 12) as usize;
    // denumerant DP over the cusp-class multiplicities
    let mut dp = vec![0u128; degree + 1];
    dp[0] = 1;
    for &(_, m) in &inv.cusp_classes {
        let m = m as usize;
        for v in m..=degree {
            dp[v] = dp[v]
                .checked_add(dp[v - m])
                .ok_or_else(|| Error::Internal("denumerant overflow".into()))?;
        }
    }
    Ok(dp[degree])
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn spec(level: u64, weight: i64) -> EnumerationSpec {
        EnumerationSpec::new(level, weight).unwrap()
    }

    #[test]
    fn bound_examples() {
        assert_eq!(
            exponent_bound(1, 12).unwrap(),
            Rational::from_i64(24).unwrap()
        );
        assert_eq!(
            exponent_bound(4, 2).unwrap(),
            Rational::from_i64(36).unwrap()
        );
        // 4 * 9 * (p+1)/(p-1) < 37 for p > 73, = 37 at p = 73
        assert_eq!(
            exponent_bound(4 * 73, 2).unwrap(),
            Rational::from_i64(37).unwrap()
        );
        for p in [79u64, 83, 97, 101] {
            assert!(exponent_bound(4 * p, 2).unwrap() < Rational::from_i64(37).unwrap());
        }
    }

    #[test]
    fn level_one_weight_twelve_is_delta() {
        let qs = spec(1, 12).collect();
        assert_eq!(qs, vec![EtaQuotient::delta(1).unwrap()]);
        assert_eq!(spec(1, 12).count(), 1);
    }

    #[test]
    fn level_22_weight_2_exact_set() {
        let qs = spec(22, 2).collect();
        let expect: Vec<EtaQuotient> = [
            vec![(1i64, -2i64), (2, 4), (11, -2), (22, 4)],
            vec![(1, 2), (11, 2)],
            vec![(2, 2), (22, 2)],
            vec![(1, 4), (2, -2), (11, 4), (22, -2)],
        ]
        .iter()
        .map(|pairs| {
            EtaQuotient::new(22, pairs.iter().map(|&(d, r)| (d as u64, r))).unwrap()
        })
        .collect();
        assert_eq!(qs.len(), 4);
        for e in &expect {
            assert!(qs.contains(e), "missing {e}");
        }
    }

    #[test]
    fn level_36_weight_2_count() {
        assert_eq!(spec(36, 2).count(), 4988);
    }

    #[test]
    fn level_44_weight_2_count() {
        assert_eq!(spec(44, 2).count(), 28);
    }

    #[test]
    fn count_matches_collect_len() {
        for (n, k) in [(22u64, 2i64), (36, 2), (6, 4), (9, 2), (16, 4), (20, 2)] {
            let s = spec(n, k);
            assert_eq!(s.count(), s.collect().len() as u64, "({n}, {k})");
        }
    }

    #[test]
    fn enumerated_quotients_are_holomorphic_and_bounded() {
        for (n, k) in [(22u64, 2i64), (36, 2), (8, 4), (12, 2)] {
            let s = spec(n, k);
            let bound = s.bound.clone();
            for q in s.stream() {
                assert!(q.is_holomorphic(), "({n},{k}) {q}");
                assert_eq!(q.doubled_weight(), 2 * k);
                let abs: i64 = q.exponents().values().map(|r| r.abs()).sum();
                assert!(
                    Rational::from_i64(abs).unwrap() <= bound,
                    "bound violated at ({n},{k}): {q}"
                );
            }
        }
    }

    /// Oracle: scan the full box |r_delta| <= floor(bound) and filter by the
    /// definition directly.
    fn box_scan(level: u64, weight: i64) -> Vec<EtaQuotient> {
        let divs = divisors(level);
        let b = exponent_bound(level, weight)
            .unwrap()
            .floor()
            .to_integer()
            .to_i64()
            .unwrap();
        let mut out = Vec::new();
        let mut current = vec![-b; divs.len()];
        'outer: loop {
            let sum: i64 = current.iter().sum();
            let abs: i64 = current.iter().map(|r| r.abs()).sum();
            if sum == 2 * weight && abs <= b {
                let q = EtaQuotient::new(
                    level,
                    divs.iter().copied().zip(current.iter().copied()),
                )
                .unwrap();
                if q.newman_is_valid()
                    && divs.iter().all(|&d| q.ligozat_order(d).unwrap() >= Rational::zero())
                {
                    out.push(q);
                }
            }
            for i in 0..current.len() {
                if current[i] < b {
                    current[i] += 1;
                    continue 'outer;
                }
                current[i] = -b;
            }
            break;
        }
        out
    }

    #[test]
    fn matches_box_scan_oracle() {
        for (n, k) in [(4u64, 2i64), (6, 2), (9, 2), (4, 4)] {
            let mut enumerated = spec(n, k).collect();
            let mut oracle = box_scan(n, k);
            enumerated.sort();
            oracle.sort();
            assert_eq!(enumerated, oracle, "({n}, {k})");
        }
    }

    #[test]
    fn matches_box_scan_oracle_level8() {
        let mut enumerated = spec(8, 2).collect();
        let mut oracle = box_scan(8, 2);
        enumerated.sort();
        oracle.sort();
        assert_eq!(enumerated, oracle);
    }

    #[test]
    fn stream_is_deterministic_and_collect_is_sorted() {
        let s = spec(22, 2);
        let a: Vec<_> = s.stream().collect();
        let b: Vec<_> = s.stream().collect();
        assert_eq!(a, b);
        let collected = s.collect();
        assert_eq!(collected.len(), a.len());
        for q in &a {
            assert!(collected.contains(q));
        }
        // collect is lexicographically sorted by the divisor order
        let keys: Vec<Vec<i64>> = collected
            .iter()
            .map(|q| s.divisor_order.iter().map(|d| q.exponent(*d)).collect())
            .collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn genus_zero_counts() {
        // against the closed-form polynomials for N = 4, 8, 16, written over
        // common denominators: k^2/8 + 3k/4 + 1, k^3/6 + k^2 + 11k/6 + 1,
        // and k^4/3 + 2k^3 + 25k^2/6 + 7k/2 + 1
        for k in [2u128, 4, 6, 8, 10, 12] {
            assert_eq!(
                count_genus_zero(4, k as i64).unwrap(),
                (k * k + 6 * k + 8) / 8,
                "N=4 k={k}"
            );
            assert_eq!(
                count_genus_zero(8, k as i64).unwrap(),
                (k * k * k + 6 * k * k + 11 * k + 6) / 6,
                "N=8 k={k}"
            );
            assert_eq!(
                count_genus_zero(16, k as i64).unwrap(),
                (2 * k * k * k * k + 12 * k * k * k + 25 * k * k + 21 * k + 6) / 6,
                "N=16 k={k}"
            );
        }
        assert_eq!(count_genus_zero(4, 2).unwrap(), 3);
        assert_eq!(count_genus_zero(8, 2).unwrap(), 10);
        assert_eq!(count_genus_zero(16, 2).unwrap(), 46);
    }

    #[test]
    fn genus_zero_matches_enumeration() {
        for n in [4u64, 8, 16] {
            for k in [2i64, 4, 6, 8] {
                assert_eq!(
                    count_genus_zero(n, k).unwrap(),
                    spec(n, k).count() as u128,
                    "({n}, {k})"
                );
            }
        }
    }

    #[test]
    fn genus_zero_preconditions() {
        // genus(22) = 2
        assert!(matches!(
            count_genus_zero(22, 2),
            Err(Error::PreconditionViolation(_))
        ));
        // level 5 has eps2 > 0: least weight 4, so weight 2 is empty
        assert!(matches!(
            count_genus_zero(5, 2),
            Err(Error::PreconditionViolation(_))
        ));
        assert_eq!(count_genus_zero(5, 4).unwrap(), spec(5, 4).count() as u128);
    }
}
