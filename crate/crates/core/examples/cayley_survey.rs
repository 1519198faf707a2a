//! Universal completability of connected Cayley graphs on `Z_2^n`.
//!
//! Usage: `cargo run --release --example cayley_survey -- [max_n]` (default 4).

use eigenframe::survey::{survey_report, write_table};

fn main() -> eigenframe::Result<()> {
    let max_n: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(4);
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let ns: Vec<u32> = (1..=max_n).collect();
    let report = survey_report(&ns, workers)?;
    write_table(&report, std::io::stdout().lock())
}
