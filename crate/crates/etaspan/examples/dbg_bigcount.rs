use etaspan::enumerate::EnumerationSpec;
use std::time::Instant;

fn main() {
    let n: u64 = std::env::args().nth(1).map(|s| s.parse().unwrap()).unwrap_or(36);
    let k: i64 = std::env::args().nth(2).map(|s| s.parse().unwrap()).unwrap_or(12);
    let spec = EnumerationSpec::new(n, k).unwrap();
    let t0 = Instant::now();
    let count = spec.count();
    println!("count({n}, {k}) = {count} in {:?}", t0.elapsed());
}
