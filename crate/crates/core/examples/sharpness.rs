//! At `λ = 1/3` the threshold `c = 4/9` is sharp: covered at and above it,
//! not covered below.

use selfsim_mult::cli::example_sharpness;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let list = example_sharpness()?;
    print!("{}", list.lines);
    println!("{}/{} checks pass", list.passed, list.total());
    Ok(())
}
