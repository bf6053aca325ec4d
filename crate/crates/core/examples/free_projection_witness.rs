//! Two projections at angle θ: the compression q p q + q⊥ p q⊥ fails to
//! commute with p unless θ is a multiple of π/4.

use eqg::homspace::free_projection_witness;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for t in 0..=8 {
        let theta = std::f64::consts::FRAC_PI_2 * t as f64 / 8.0;
        let (s, c) = theta.sin_cos();
        println!(
            "θ = {theta:.4}  norm = {:.8}  |cs(c²-s²)| = {:.8}",
            free_projection_witness(theta),
            (c * s * (c * c - s * s)).abs()
        );
    }
    println!("θ = π/6: {} (√3/8 = {})", free_projection_witness(std::f64::consts::FRAC_PI_6), 3f64.sqrt() / 8.0);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("free_projection_witness example failed");
}
