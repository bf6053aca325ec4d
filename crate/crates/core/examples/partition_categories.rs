//! Enumerate the ten partition categories, take joins, and check which
//! categories are stable under removing blocks.

use eqg::partitions::{is_block_stable, PartitionCategory, SetPartition};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("|D(s)| for s = 0..=6");
    for cat in PartitionCategory::ALL {
        let counts: Vec<usize> = (0..=6).map(|s| cat.enumerate(s).len()).collect();
        println!("  {:<7} {:?}", cat.label(), counts);
    }

    let a: SetPartition = "{1,2}{3,4}".parse()?;
    let b: SetPartition = "{2,3}{1,4}".parse()?;
    let j = a.join(&b)?;
    println!("{a} ∨ {b} = {j} ({} block)", j.block_count());

    let crossing: SetPartition = "{1,3}{2,4}".parse()?;
    println!("{crossing} noncrossing: {}", crossing.is_noncrossing());

    for cat in PartitionCategory::ALL {
        let r = is_block_stable(cat, 6);
        match r.witness {
            None => println!("{:<7} stable up to s=6", cat.label()),
            Some(w) => println!("{:<7} not stable: {w}", cat.label()),
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("partition_categories example failed");
}
