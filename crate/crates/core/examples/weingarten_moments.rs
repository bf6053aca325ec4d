//! Gram and Weingarten matrices, Haar moments and character moments.

use eqg::partitions::PartitionCategory;
use eqg::weingarten::{character_moment, gram_matrix, haar_moment, weingarten_matrix, MomentWord};
use eqg::Error;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let gram = gram_matrix(PartitionCategory::S, 2, 3)?;
    print!("G for S, s=2, n=3\n{gram}");
    let w = weingarten_matrix(PartitionCategory::S, 2, 3)?;
    print!("W = G⁻¹\n{w}");

    for (cat, n, text) in [
        (PartitionCategory::S, 4, "1,1 2,2"),
        (PartitionCategory::OFree, 3, "1,1 1,1"),
        (PartitionCategory::HFree, 3, "1,1 1,1 2,2 2,2"),
        (PartitionCategory::B, 4, "1,1"),
    ] {
        let word = MomentWord::parse(text, n)?;
        println!("h_{cat}(n={n})[{word}] = {}", haar_moment(cat, n, &word)?);
    }

    for cat in [PartitionCategory::S, PartitionCategory::SFree, PartitionCategory::OFree] {
        let moments: Vec<String> = (0..=5)
            .map(|s| character_moment(cat, 6, s).map(|v| v.to_string()))
            .collect::<Result<_, _>>()?;
        println!("∫χˢ for {cat}, n=6: {}", moments.join(" "));
    }

    match weingarten_matrix(PartitionCategory::S, 3, 2) {
        Err(Error::SingularGram { rank, size }) => println!("S, s=3, n=2: singular Gram, rank {rank} of {size}"),
        other => return Err(format!("expected a singular Gram, got {other:?}").into()),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("weingarten_moments example failed");
}
