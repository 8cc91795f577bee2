// Compare sorted files by digest and locate the first differing element.

use detsort::repro::{compare_files, Comparison};
use detsort::{digest_file, format, sort, FloatSeq, Width};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let a = dir.path().join("a.bin");
    let b = dir.path().join("b.bin");
    let shuffled = FloatSeq::from_f64s(&[3.0, -0.0, 1.0, 0.0, -2.0, 1.0]);
    let sorted = sort(&shuffled);
    format::write_file(&a, &sorted)?;
    format::write_file(
        &b,
        &sort(&FloatSeq::from_f64s(&[1.0, 0.0, -2.0, 1.0, 3.0, -0.0])),
    )?;

    let mut lines = vec![
        format!("a: {}", digest_file(&a, Width::Binary64)?),
        format!("b: {}", digest_file(&b, Width::Binary64)?),
        format!("compare: {:?}", compare_files(&a, &b, Width::Binary64)?),
    ];

    // flip -0 to +0 and the files no longer match
    let mut flipped = sorted.to_values();
    flipped[1] = detsort::FloatValue::from_f64(0.0);
    format::write_file(&b, &FloatSeq::from_values(Width::Binary64, &flipped)?)?;
    let cmp = compare_files(&a, &b, Width::Binary64)?;
    assert_eq!(cmp, Comparison::DifferAt(1));
    lines.push(format!("after flipping the sign of zero: {cmp:?}"));
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
