//! Group duals: when is the row algebra of G/H the whole quotient algebra?

use eqg::group_dual::{analyze_embedding, close_generators, parse_embedding, DualEmbedding, Permutation, DEFAULT_CAP};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let s3 = "degree=3
k=2
generator=(1 2)
generator=(1 3)
generator=(2 3)
pattern=
1 0 0
0 1 0
0 0 1
";
    let a = analyze_embedding(&parse_embedding(s3, DEFAULT_CAP)?)?;
    print!("S3, diagonal, k=2\n{}", a.to_key_values());

    let c = Permutation::parse_cycles("(1 2 3 4)", 4)?;
    let z4 = close_generators(4, &[c.clone(), c.compose(&c)], DEFAULT_CAP)?;
    let a = analyze_embedding(&DualEmbedding::diagonal(z4, 1)?)?;
    print!("Z4 = <c>, g = (c, c²), k=1\n{}", a.to_key_values());

    // A non-diagonal J mixes the first two generators of S3, so the rows
    // below the cutoff reach every generator.
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let j = vec![vec![h, h, 0.0], vec![h, -h, 0.0], vec![0.0, 0.0, 1.0]];
    let s3 = close_generators(
        3,
        &[
            Permutation::parse_cycles("(1 2)", 3)?,
            Permutation::parse_cycles("(1 2 3)", 3)?,
            Permutation::parse_cycles("()", 3)?,
        ],
        DEFAULT_CAP,
    )?;
    let a = analyze_embedding(&DualEmbedding::from_matrix(s3, &j, 2)?)?;
    print!("S3 = <(1 2), (1 2 3), e>, rotated J, k=2\n{}", a.to_key_values());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("group_duals example failed");
}
