// Sort the same corpus with different thread counts and compare digests.

use detsort::{
    digest_sequence, generate, parallel_sort, plan_merge, sort, CorpusSpec, Distribution, Width,
};

pub fn run_example() -> Result<Vec<String>, Box<dyn std::error::Error>> {
    let spec = CorpusSpec::new(
        Distribution::DuplicateHeavy { tie_fraction: 0.4 },
        200_000,
        3,
        Width::Binary64,
    );
    let data = generate(&spec)?;
    let reference = digest_sequence(&sort(&data));
    let mut lines = vec![format!("sequential: {reference}")];
    for threads in [1, 2, 3, 8] {
        let plan = plan_merge(data.len(), threads)?;
        let digest = digest_sequence(&parallel_sort(&data, threads)?);
        assert_eq!(digest, reference);
        lines.push(format!(
            "threads={threads} chunks={} levels={}: {digest}",
            plan.chunk_count,
            plan.tree_levels.len()
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
