//! End-to-end acceptance gate: one line of output per criterion.

use domperm::suite;

fn report(r: &domperm::suite::CheckResult, idx: usize) -> bool {
    let status = if r.pass { "PASS" } else { "FAIL" };
    println!("criterion {idx} ({}): {status} — {}", r.name, r.detail);
    r.pass
}

#[test]
fn acceptance() {
    let results = suite::run_all();
    let mut ok = true;
    for (i, r) in results.iter().enumerate() {
        ok &= report(r, i + 1);
    }
    assert!(ok, "acceptance criteria failed");
}
