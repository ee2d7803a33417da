//! Runs the three bundled configurations where the orbital set's dimension
//! strictly exceeds max(dim E, dim J), so the naive max-formula fails:
//!
//! 1. `z^2` seeded with `[0, 1]` graded into the superattracting fixed
//!    point: the orbital set fills the whole unit disk.
//! 2. `z^2 + 6` seeded with `{6 + 1/n}` clustering at the critical value:
//!    one backward step lifts the dimension from 1/2 to 2/3.
//! 3. `z^8 + 20` seeded with a product sequence: a single backward step
//!    stretches the decay exponent by the local degree.
//!
//! ```sh
//! cargo run --release --example counterexamples
//! ```

use orbital::experiment::run_counterexamples;

fn main() -> orbital::Result<()> {
    let suite = run_counterexamples()?;
    println!(
        "{:<20} {:>7} {:>7} {:>7} {:>8}  target",
        "case", "dim_E", "dim_J", "dim_O", "gap"
    );
    for case in &suite.cases {
        println!(
            "{:<20} {:>7.4} {:>7.4} {:>7.4} {:>+8.4}  {} [{}]",
            case.name,
            case.dim_e,
            case.dim_j,
            case.dim_o,
            case.formula_gap,
            case.target,
            if case.pass { "pass" } else { "FAIL" }
        );
    }
    println!(
        "suite: {}",
        if suite.all_pass { "all pass" } else { "FAILURES" }
    );
    Ok(())
}
