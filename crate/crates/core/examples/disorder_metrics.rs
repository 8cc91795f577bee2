// Measure how far a sequence is from sorted.

use detsort::{CurveSpec, DisorderReport, FloatSeq};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let nearly = FloatSeq::from_f64s(&[1.0, 2.0, 4.0, 3.0, 5.0, 6.0, 8.0, 7.0]);
    let reversed = FloatSeq::from_f64s(&[8.0, 7.0, 6.0, 5.0, 4.0, 3.0, 2.0, 1.0]);
    let ties = FloatSeq::from_f64s(&[2.0, 1.0, 2.0, 1.0, 2.0, 0.0, -0.0, 0.0]);
    let curves = [
        CurveSpec::Unit,
        CurveSpec::IndexPower(2.0),
        CurveSpec::IndexLog,
        CurveSpec::ValuePower(2.0),
    ];

    let mut lines = Vec::new();
    for (name, s) in [
        ("nearly sorted", &nearly),
        ("reversed", &reversed),
        ("with ties", &ties),
    ] {
        let report = DisorderReport::compute(s, &curves)?;
        lines.push(format!("# {name}"));
        lines.extend(report.to_string().lines().map(str::to_owned));
    }
    Ok(lines)
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
