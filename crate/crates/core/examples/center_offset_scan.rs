//! For `m = 0, 1 (mod 4)`, either the centered pair or both pairs offset by
//! `6m` pass the L/R test. Checked from 740 upward, explored below.

use std::time::Instant;

use avoidable::criterion::{persistence_threshold, scan_center_offset, OffsetBranch, ScanMode};
use avoidable::Exec;

fn main() {
    let exec = Exec::from_env();
    let t = Instant::now();
    let rows =
        scan_center_offset(740, 100_000, ScanMode::Assert, &exec).expect("no failures from 740");
    let offset = rows
        .iter()
        .filter(|r| r.branch == OffsetBranch::Offset6m)
        .count();
    println!(
        "m in [740, 100000]: {} values, {} via the center, {} via +-6m, {:?} on {} threads",
        rows.len(),
        rows.len() - offset,
        offset,
        t.elapsed(),
        exec.threads()
    );

    let rows = scan_center_offset(5, 2000, ScanMode::Explore, &exec).unwrap();
    let fails: Vec<u64> = rows.iter().filter(|r| !r.holds()).map(|r| r.m).collect();
    println!(
        "failures below 2000: {} (largest {:?})",
        fails.len(),
        fails.last()
    );
    println!(
        "holds for every scanned m from {:?}",
        persistence_threshold(&rows)
    );
}
