//! Offset families `q(m) = floor(alpha m + beta)`, the interval of `f`
//! around `C(m,2)/2`, and the `m = 2, 3 (mod 4)` exploration.

use avoidable::criterion::{
    scan_interval, scan_mod23, scan_symmetric_offset, IntervalVerdict, QSpec,
};
use avoidable::Exec;

fn main() {
    let exec = Exec::from_env();
    for (alpha, beta) in [("0", "0"), ("1/10", "0"), ("1/7", "3")] {
        let spec = QSpec::affine(alpha, beta).unwrap();
        let r = scan_symmetric_offset(&spec, 1, 20_000, &exec);
        println!(
            "q = floor({alpha} m + {beta}): {} hits in [1, 20000], first {:?}",
            r.hits.len(),
            r.hits.iter().take(5).map(|h| h.m).collect::<Vec<_>>()
        );
    }

    for m in [40, 221, 1276, 7425] {
        let r = scan_interval(m).unwrap();
        let verdict = match &r.verdict {
            IntervalVerdict::AllPass => "all certified".to_string(),
            IntervalVerdict::Failing { fs } => format!("{} uncertified", fs.len()),
            IntervalVerdict::Empty => "empty".to_string(),
        };
        println!(
            "m = {m}: {} values of f around {}: {verdict}",
            r.entries.len(),
            r.center
        );
    }

    let full: Vec<u64> = (40..=6000)
        .filter(|m| m % 4 <= 1)
        .filter(|&m| matches!(scan_interval(m).unwrap().verdict, IntervalVerdict::AllPass))
        .collect();
    println!(
        "m in [40, 6000] with every f in the interval certified: {} values, first {:?}",
        full.len(),
        &full[..full.len().min(8)]
    );

    let rows = scan_mod23(740, 5000, &exec);
    let held = rows.iter().filter(|r| r.holds).count();
    println!(
        "m = 2, 3 (mod 4) in [740, 5000]: {held} of {} certified",
        rows.len()
    );
}
