//! Runs the three verification suites and prints a summary per check.

use lie_fts::sampling::Coverage;
use lie_fts::suite::{run_suite, Suite};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (suite, label, mode) in [
        (Suite::Forms, "d4", Coverage::Exhaustive),
        (Suite::Fts, "e6", Coverage::Exhaustive),
        (Suite::Stab, "e7", Coverage::sampled(1, 50)),
        (Suite::Forms, "e8", Coverage::Exhaustive),
    ] {
        let r = run_suite(suite, label.parse()?, mode, 1, 200)?;
        println!("{} on {} ({})", r.suite, r.dynkin, r.mode);
        if let Some(n) = &r.note {
            println!("  note: {n}");
        }
        for c in &r.checks {
            println!("  {:<26} {:>7} tuples  {} failures", c.check_id, c.tuples_checked, c.failure_count);
        }
    }
    Ok(())
}
