//! The invariant state on the row algebra of G_n/G_k agrees with the Haar
//! state on the same word.

use eqg::homspace::invariant_state_moment;
use eqg::partitions::PartitionCategory;
use eqg::weingarten::{haar_moment, MomentWord};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (n, k) = (5, 2);
    for cat in PartitionCategory::FREE {
        for text in ["4,1 4,1", "3,2 5,2 3,2 5,2", "4,1 4,2 5,3", "5,5 5,5 5,5 5,5"] {
            let word = MomentWord::parse(text, n)?;
            let phi = invariant_state_moment(cat, n, k, &word)?;
            let h = haar_moment(cat, n, &word)?;
            println!("{:<6} [{word}]  φ = {phi:<8} h = {h}", cat.label());
            if phi != h {
                return Err(format!("invariant state and Haar state differ on {word}").into());
            }
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("invariant_states example failed");
}
