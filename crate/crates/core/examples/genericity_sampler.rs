//! How often random integer surfaces satisfy the lifting conditions.
//!
//! Usage: `cargo run --example genericity_sampler -- [count] [bound] [seed]`

use f218::workbench::sample_generic;

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer argument")).collect();
    let count = args.first().copied().unwrap_or(200) as usize;
    let bound = args.get(1).copied().unwrap_or(5) as i64;
    let seed = args.get(2).copied().unwrap_or(42);
    let stats = sample_generic(count, bound, seed);
    println!("{}", serde_json::to_string_pretty(&stats).unwrap());
}
