// Sort a sequence holding signed zeros, infinities and NaNs with
// different payloads.

use detsort::{sort, sort_permutation, FloatSeq};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let input = FloatSeq::F64(vec![
        0.0f64.to_bits(),
        (-0.0f64).to_bits(),
        0x7ff8_0000_0000_0002,
        5.0f64.to_bits(),
        f64::NEG_INFINITY.to_bits(),
        0x7ff8_0000_0000_0001,
        0xfff8_0000_0000_0000,
        0.0f64.to_bits(),
    ]);
    let sorted = sort(&input);
    let perm = sort_permutation(&input);
    let mut lines = Vec::new();
    for (i, v) in sorted.to_values().iter().enumerate() {
        lines.push(format!("{i}: {v:?} (from input position {})", perm[i]));
    }
    // negative NaN sorts below -inf; the two +0 entries keep their input order
    assert_eq!(&perm[3..5], &[0, 7]);
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
