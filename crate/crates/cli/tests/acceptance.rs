//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use carpets::battery::{run, run_criterion, BatteryConfig, Claim};
use carpets::fault::{with_fault, Fault};

struct Outcome {
    criterion: u8,
    pass: bool,
    detail: String,
}

fn summarize(criterion: u8, claims: &[Claim], elapsed: Duration, limit: Option<Duration>) -> Outcome {
    let failed: Vec<&Claim> = claims.iter().filter(|c| !c.pass).collect();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let mut detail = format!("{} claims, {:.2?}", claims.len(), elapsed);
    if let Some(l) = limit {
        detail.push_str(&format!(" (limit {l:?})"));
    }
    for c in &failed {
        detail.push_str(&format!("; {} FAILED: {} (expected {})", c.id, c.computed, c.expected));
    }
    Outcome { criterion, pass: failed.is_empty() && in_time && !claims.is_empty(), detail }
}

fn timed(criterion: u8, cfg: &BatteryConfig, limit: Option<Duration>) -> Outcome {
    let start = Instant::now();
    let claims = run_criterion(cfg, criterion);
    summarize(criterion, &claims, start.elapsed(), limit)
}

fn verify_paper_binary() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_carpets");
    let start = Instant::now();
    let first = Command::new(bin).arg("verify-paper").output().expect("run verify-paper");
    let elapsed = start.elapsed();
    let second = Command::new(bin).arg("verify-paper").output().expect("run verify-paper");
    let exit_ok = first.status.code() == Some(0);
    let deterministic = first.stdout == second.stdout;
    let in_time = elapsed <= Duration::from_secs(120);

    let mut uncaught = Vec::new();
    for fault in Fault::all_off_by_one() {
        let claims = with_fault(fault, || run(&BatteryConfig::reduced()));
        if claims.iter().all(|c| c.pass) {
            uncaught.push(format!("{fault:?}"));
        }
    }
    // The canonical class faults must surface in the tangent bundle twist rows.
    let canonical_rows = [Fault::CanonicalSection(1), Fault::CanonicalFiber(-1)].iter().all(|&f| {
        with_fault(f, || run_criterion(&BatteryConfig::reduced(), 5))
            .iter()
            .any(|c| !c.pass && c.id == "tangent-twist-pieces")
    });

    Outcome {
        criterion: 9,
        pass: exit_ok && deterministic && in_time && uncaught.is_empty() && canonical_rows,
        detail: format!(
            "verify-paper exit {:?} in {elapsed:.2?}, identical reruns {deterministic}, {} faults all caught: {}{}",
            first.status.code(),
            Fault::all_off_by_one().len(),
            uncaught.is_empty(),
            if uncaught.is_empty() { String::new() } else { format!(" (missed {})", uncaught.join(", ")) },
        ),
    }
}

fn main() {
    let full = BatteryConfig::full();
    let serial = BatteryConfig { parallel: false, ..BatteryConfig::full() };
    let outcomes = vec![
        timed(1, &full, Some(Duration::from_secs(5))),
        timed(2, &full, Some(Duration::from_secs(1))),
        timed(3, &serial, Some(Duration::from_secs(60))),
        timed(4, &full, None),
        timed(5, &full, None),
        timed(6, &full, None),
        timed(7, &full, None),
        timed(8, &full, None),
        verify_paper_binary(),
    ];
    for o in &outcomes {
        println!("criterion {}: {} - {}", o.criterion, if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.pass).map(|o| o.criterion).collect();
    if !failed.is_empty() {
        eprintln!("failing criteria: {failed:?}");
        std::process::exit(1);
    }
}
