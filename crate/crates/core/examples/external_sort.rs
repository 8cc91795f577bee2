// Sort a file larger than the memory budget through spilled runs.

use detsort::{
    digest_file, digest_sequence, external_sort, format, generate, sort, CorpusSpec, Distribution,
    ExternalConfig, Width,
};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let input = dir.path().join("input.bin");
    let output = dir.path().join("sorted.bin");
    let data = generate(&CorpusSpec::new(
        Distribution::Gaussian,
        100_000,
        1,
        Width::Binary64,
    ))?;
    format::write_file(&input, &data)?;

    let mut lines = Vec::new();
    for fan_in in [16, 2] {
        let cfg = ExternalConfig::new(16_000 * 8, dir.path()).with_fan_in(fan_in);
        let summary = external_sort(&input, &output, Width::Binary64, &cfg)?;
        let digest = digest_file(&output, Width::Binary64)?;
        assert_eq!(digest, digest_sequence(&sort(&data)));
        lines.push(format!(
            "fan_in={fan_in}: runs={} passes={} peak_run_bytes={} digest={digest}",
            summary.runs, summary.passes, summary.peak_element_bytes
        ));
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
