//! Global versus local diagnosis on random circuits with injected faults.
//!
//! cargo run --release --example random_bench -- [seed] [circuits] [components]

use localdiag::cli::{cmd_bench, SystemFile};
use localdiag::gen::{random_circuit, CircuitParams};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arg(n: usize, default: u64) -> u64 {
    std::env::args().nth(n).and_then(|s| s.parse().ok()).unwrap_or(default)
}

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(arg(1, 7));
    let circuits = arg(2, 20);
    let params = CircuitParams {
        components: arg(3, 10) as usize,
        ..CircuitParams::default()
    };

    let (mut local_calls, mut global_calls, mut agree) = (0, 0, 0);
    for i in 0..circuits {
        let c = random_circuit(&mut rng, params);
        // round-trip through the text format, as the binary would
        let file = SystemFile::parse(&c.file.render()).expect("generated files parse");
        let bench = match cmd_bench(&file, &c.observation) {
            Ok(b) => b,
            Err(e) => {
                println!("#{i:<3} skipped: {e}");
                continue;
            }
        };
        local_calls += bench.local.entailment_calls;
        global_calls += bench.global.entailment_calls;
        agree += u64::from(bench.identical);
        println!(
            "#{i:<3} faulty {:?}  local {}/{} formulas {} calls  global {} calls  {}",
            c.faulty.iter().map(|a| a.to_string()).collect::<Vec<_>>(),
            bench.local.compartment_size,
            bench.local.total_formulas,
            bench.local.entailment_calls,
            bench.global.entailment_calls,
            if bench.identical { "same" } else { "DIFFERENT" },
        );
    }
    println!("total calls: local {local_calls}, global {global_calls}; {agree}/{circuits} agree");
}
