// Watch the inversion count fall to zero pass by pass.

use detsort::{generate, sort_with_trace, CorpusSpec, Distribution, Width};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let data = generate(&CorpusSpec::new(
        Distribution::Uniform,
        1000,
        7,
        Width::Binary64,
    ))?;
    let (_, trace) = sort_with_trace(&data);
    assert!(trace.is_monotone());
    assert_eq!(trace.final_phi(), Some(0));
    Ok(trace
        .passes
        .iter()
        .map(|p| format!("pass {:>2}: phi = {}", p.pass, p.phi))
        .collect())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    for line in run_example()? {
        println!("{line}");
    }
    Ok(())
}
