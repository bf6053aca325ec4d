//! Transposed-isometry classes of truncated permutation and signed
//! permutation matrices, and the quotient counts #(S_n/S_k), #(H_n/H_k).

use eqg::homspace::{
    classify, count_truncations, format_classes, prop52_equivalence, truncations, ClassicalGroup,
    DEFAULT_TOLERANCE,
};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for group in [ClassicalGroup::S, ClassicalGroup::H] {
        let (n, k) = (3, 1);
        let all = truncations(group, n, k)?;
        println!("{group:?}_{n}/{group:?}_{k}: {} truncations", all.len());
        for m in all.iter().take(3) {
            print!("{}", m.to_tsv());
            println!("  -> {}", format_classes(&classify(m, DEFAULT_TOLERANCE)));
        }
        let holds = all.iter().all(|m| prop52_equivalence(m, DEFAULT_TOLERANCE));
        println!("  magic ⟺ cubic ∧ stochastic on all: {holds}");
    }

    for n in 0..=5 {
        let counts: Vec<u64> = (0..=n)
            .map(|k| count_truncations(ClassicalGroup::S, n, k))
            .collect::<Result<_, _>>()?;
        println!("#(S_{n}/S_k), k=0..{n}: {counts:?}");
    }
    for n in 0..=4 {
        let counts: Vec<u64> = (0..=n)
            .map(|k| count_truncations(ClassicalGroup::H, n, k))
            .collect::<Result<_, _>>()?;
        println!("#(H_{n}/H_k), k=0..{n}: {counts:?}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("matrix_classes example failed");
}
