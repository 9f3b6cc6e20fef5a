// instrumented copy of the search to find where nodes explode
use etaspan::arith::{divisors, factor, gcd, ord_p};
use etaspan::gamma0::level_invariants;

fn main() {
    let n: u64 = std::env::args().nth(1).map(|s| s.parse().unwrap()).unwrap_or(36);
    let k: i64 = std::env::args().nth(2).map(|s| s.parse().unwrap()).unwrap_or(2);
    let target = 2 * k;
    let inv = level_invariants(n).unwrap();
    let mut order = divisors(n);
    order.reverse();
    let cusps = divisors(n);
    let t = order.len();
    // bound
    let mut bound_num = 2 * k as i128;
    let mut bound_den = 1i128;
    for (p, e) in factor(n) {
        for _ in 0..e.min(2) {
            bound_num *= (p + 1) as i128;
            bound_den *= (p - 1) as i128;
        }
    }
    let budget = (bound_num / bound_den) as i64;
    eprintln!("budget {budget}");
    let coeff: Vec<Vec<i64>> = cusps.iter().map(|&d| order.iter().map(|&delta| {
        let g = gcd(d, delta) as i128;
        ((n as i128 * g * g) / (gcd(d, n / d) as i128 * d as i128 * delta as i128)) as i64
    }).collect()).collect();
    let phi: Vec<i64> = inv.cusp_classes.iter().map(|&(_, m)| m as i64).collect();
    let cap: Vec<i64> = phi.iter().map(|&m| target * inv.index as i64 / m).collect();
    let mut smax = vec![vec![0i64; t + 1]; cusps.len()];
    let mut smin = vec![vec![i64::MAX; t + 1]; cusps.len()];
    for c in 0..cusps.len() {
        for j in (0..t).rev() {
            smax[c][j] = smax[c][j + 1].max(coeff[c][j]);
            smin[c][j] = smin[c][j + 1].min(coeff[c][j]);
        }
    }
    let primes: Vec<u64> = factor(n).into_iter().map(|(p, _)| p).collect();
    let pbits: Vec<u32> = order.iter().map(|&d| {
        let mut m = 0u32;
        for (i, &p) in primes.iter().enumerate() { if ord_p(d, p) % 2 == 1 { m |= 1 << i; } }
        m
    }).collect();

    let stat_lo: Vec<i64> = if n == 36 { vec![-18,-27,-28,-18,-40,-18,-28,-27,-18] } else { vec![i64::MIN/4; t] };
    let stat_hi: Vec<i64> = if n == 36 { vec![18,36,28,18,58,18,28,36,18] } else { vec![i64::MAX/4; t] };
    let mut nodes = vec![0u64; t + 1];
    let mut found = 0u64;
    struct Ctx<'a> {
        order: &'a [u64], coeff: &'a [Vec<i64>], smax: &'a [Vec<i64>], smin: &'a [Vec<i64>],
        cap: &'a [i64], pbits: &'a [u32], budget: i64, target: i64, t: usize, n: u64,
        stat_lo: &'a [i64], stat_hi: &'a [i64],
    }
    fn feasible(cx: &Ctx, j: usize, w: i64, a: i64, s: &[i64], parity: u32) -> bool {
        let rem = cx.budget - a;
        let wrem = cx.target - w;
        if wrem.abs() > rem { return false; }
        let _ = parity;
        if j >= cx.t { return s.iter().all(|&x| x >= 0); }
        let nmax = (rem - wrem).div_euclid(2);
        for c in 0..s.len() {
            let (mx, mn) = (cx.smax[c][j], cx.smin[c][j]);
            let spread = (mx - mn) * nmax;
            if s[c] + mx * wrem + spread < 0 { return false; }
            if s[c] + mn * wrem - spread > cx.cap[c] { return false; }
        }
        true
    }
    #[allow(clippy::too_many_arguments)]
    fn go(cx: &Ctx, j: usize, w: i64, a: i64, s: &mut Vec<i64>, parity: u32, nodes: &mut Vec<u64>, found: &mut u64, deadline: std::time::Instant) {
        if std::time::Instant::now() > deadline { return; }
        nodes[j] += 1;
        if j == cx.t {
            if w == cx.target && s.iter().all(|&x| x >= 0) { *found += 1; }
            return;
        }
        let rem = cx.budget - a;
        let wrem = cx.target - w;
        let (lo, hi) = if j == cx.t - 1 { (wrem, wrem) } else {
            ((-((-(wrem - rem)).div_euclid(2))).max(cx.stat_lo[j]), ((wrem + rem).div_euclid(2)).min(cx.stat_hi[j]))
        };
        for r in lo..=hi {
            let w2 = w + r; let a2 = a + r.abs();
            if a2 > cx.budget { continue; }
            for c in 0..s.len() { s[c] += cx.coeff[c][j] * r; }
            let p2 = if r % 2 != 0 { parity ^ cx.pbits[j] } else { parity };
            if feasible(cx, j + 1, w2, a2, s, p2) {
                go(cx, j + 1, w2, a2, s, p2, nodes, found, deadline);
            }
            for c in 0..s.len() { s[c] -= cx.coeff[c][j] * r; }
        }
    }
    let cx = Ctx { order: &order, coeff: &coeff, smax: &smax, smin: &smin, cap: &cap, pbits: &pbits, budget, target, t, n, stat_lo: &stat_lo, stat_hi: &stat_hi };
    let _ = (&cx.order, cx.n);
    let mut s = vec![0i64; cusps.len()];
    let deadline = std::time::Instant::now() + std::time::Duration::from_secs(120);
    go(&cx, 0, 0, 0, &mut s, 0, &mut nodes, &mut found, deadline);
    eprintln!("nodes per depth: {nodes:?}");
    eprintln!("found {found} (congruences not checked here)");
}
