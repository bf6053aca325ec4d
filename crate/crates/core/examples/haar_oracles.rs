//! Exact averages over S_n and H_n, Monte Carlo over O_n and B_n, compared
//! with the Weingarten formula.

use eqg::homspace::ClassicalGroup;
use eqg::oracle::{exact_group_average, mc_averages, SampledGroup, GENERATOR};
use eqg::partitions::PartitionCategory;
use eqg::weingarten::{haar_moment, MomentWord};
use num_traits::ToPrimitive;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let n = 4;
    let words: Vec<MomentWord> = ["1,1", "1,1 1,1", "1,1 2,2", "1,1 1,2 2,1 2,2", "1,1 1,1 1,1 1,1"]
        .iter()
        .map(|t| MomentWord::parse(t, n))
        .collect::<Result<_, _>>()?;

    for (group, cat) in [(ClassicalGroup::S, PartitionCategory::S), (ClassicalGroup::H, PartitionCategory::H)] {
        for w in &words {
            let exact = exact_group_average(group, n, w)?;
            let weingarten = haar_moment(cat, n, w)?;
            println!("{cat} [{w}] group average {exact}, Weingarten {weingarten}");
        }
    }

    let samples = 20_000;
    for (group, cat) in [(SampledGroup::Orthogonal, PartitionCategory::O), (SampledGroup::Bistochastic, PartitionCategory::B)] {
        let reports = mc_averages(group, n, &words, samples, 42)?;
        for (w, r) in words.iter().zip(&reports) {
            let exact = haar_moment(cat, n, w)?.to_f64().unwrap_or(f64::NAN);
            println!(
                "{cat} [{w}] MC {:.4} ± {:.4} vs {exact:.4} ({GENERATOR}, seed {})",
                r.mean, r.stderr, r.seed
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("haar_oracles example failed");
}
