// Generate seeded corpora; the same spec always gives the same bytes.

use detsort::{digest_sequence, generate, residual_tie_entropy, CorpusSpec, Distribution, Width};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let dists = [
        Distribution::Gaussian,
        Distribution::Uniform,
        Distribution::DuplicateHeavy { tie_fraction: 0.5 },
        Distribution::DEFAULT_SPECIAL,
    ];
    let mut lines = Vec::new();
    for dist in dists {
        let spec = CorpusSpec::new(dist, 10_000, 42, Width::Binary32);
        let a = generate(&spec)?;
        assert_eq!(digest_sequence(&a), digest_sequence(&generate(&spec)?));
        lines.push(format!(
            "{dist}: tie entropy {:.1} bits, {}",
            residual_tie_entropy(&a),
            digest_sequence(&a)
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
