//! Trajectory basics: totals, success ratio, and window filtering.
//!
//!     cargo run --example trajectory_stats

use trajcluster::trajectory::SUCCESS_RATE_FLOOR;
use trajcluster::{
    filter_and_align, mean_citation_rate, success_ratio, total_citations, CitationTrajectory, TrajectoryCorpus,
};

fn main() -> trajcluster::Result<()> {
    let corpus = TrajectoryCorpus::new(vec![
        CitationTrajectory::new("hot", 2004, vec![3, 12, 30, 22, 14, 9, 6, 4, 3, 2, 1])?,
        CitationTrajectory::new("slow", 2004, vec![0, 1, 2, 4, 6, 9, 12, 16, 20, 26, 30])?,
        CitationTrajectory::new("quiet", 2004, vec![1, 0, 2, 1, 0, 0, 1, 0, 0, 0, 0])?,
        CitationTrajectory::new("young", 2012, vec![5, 9, 11])?,
    ]);

    println!("{:<6} {:>5} {:>6} {:>7}", "id", "total", "rate", "ratio");
    for t in corpus.iter() {
        println!(
            "{:<6} {:>5} {:>6.2} {:>7.2}",
            t.paper_id(),
            total_citations(t),
            mean_citation_rate(t),
            success_ratio(t)
        );
    }

    // s = total / max(mean rate, floor) >= 1 keeps papers with at least
    // `floor` citations inside the window.
    let kept = filter_and_align(&corpus, 10, 1.0)?;
    println!("\nfloor {SUCCESS_RATE_FLOOR} citations/year, window 10:");
    for t in kept.iter() {
        println!("  {} -> {:?}", t.paper_id(), t.counts());
    }
    Ok(())
}
