use etaspan::enumerate::EnumerationSpec;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: u64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(36);
    let k: i64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(2);
    let spec = EnumerationSpec::new(n, k).unwrap();
    eprintln!("bound = {}", spec.bound);
    let t0 = Instant::now();
    let mut count = 0u64;
    for (i, _q) in spec.stream().enumerate() {
        count = i as u64 + 1;
        if count % 1000 == 0 {
            eprintln!("{} found, {:?}", count, t0.elapsed());
        }
        if t0.elapsed().as_secs() > 20 {
            eprintln!("timeout with {count}");
            return;
        }
    }
    println!("total {count} in {:?}", t0.elapsed());
}
