use etaspan::arith::{divisors, gcd, factor};
use etaspan::gamma0::level_invariants;
use etaspan::linalg::rational_inverse;
use etaspan::Rational;
use num_bigint::BigInt;
use num_traits::{Signed, Zero, ToPrimitive};

fn main() {
    let n: u64 = std::env::args().nth(1).map(|s| s.parse().unwrap()).unwrap_or(36);
    let k: i64 = std::env::args().nth(2).map(|s| s.parse().unwrap()).unwrap_or(2);
    let inv = level_invariants(n).unwrap();
    let mut order = divisors(n);
    order.reverse();
    let cusps = divisors(n);
    let t = order.len();
    let coeff: Vec<Vec<i64>> = cusps.iter().map(|&d| order.iter().map(|&delta| {
        let g = gcd(d, delta) as i128;
        ((n as i128 * g * g) / (gcd(d, n / d) as i128 * d as i128 * delta as i128)) as i64
    }).collect()).collect();
    let phi: Vec<i64> = inv.cusp_classes.iter().map(|&(_, m)| m as i64).collect();
    let cap: Vec<i64> = phi.iter().map(|&m| 2 * k * inv.index as i64 / m).collect();
    let e: Vec<Vec<Rational>> = (0..t).map(|c| (0..t).map(|j| Rational::from(BigInt::from(coeff[c][j]))).collect()).collect();
    let einv = rational_inverse(e).unwrap();
    println!("caps: {cap:?}");
    for j in 0..t {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for c in 0..t {
            let cc = Rational::from(BigInt::from(cap[c]));
            if einv[j][c].is_positive() { hi += &einv[j][c] * &cc; } else { lo += &einv[j][c] * &cc; }
        }
        println!("delta {}: [{}, {}]", order[j], lo.ceil().to_integer().to_i64().unwrap(), hi.floor().to_integer().to_i64().unwrap());
    }
    let _ = factor(n);
}
