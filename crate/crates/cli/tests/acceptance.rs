//! Runs every acceptance criterion exactly and reports one line per criterion.

use std::io::Write;
use std::process::Command;

use riordan_cli::checks::{self, CRITERIA};
use riordan_cli::oeis::{default_fixture_dir, OeisSource};

fn report(line: &str) {
    let mut out = std::io::stdout().lock();
    writeln!(out, "{line}").unwrap();
    out.flush().unwrap();
}

#[test]
fn all_criteria_pass() {
    let results = checks::run(OeisSource::fixtures_only(default_fixture_dir()), &[]);
    let summary = checks::summary(&results);
    assert_eq!(summary.len(), CRITERIA.len(), "every criterion has checks");
    for (c, pass, total) in &summary {
        let status = if pass == total { "PASS" } else { "FAIL" };
        report(&format!("acceptance criterion {c:>2} ({}): {status} {pass}/{total}", CRITERIA[*c as usize - 1]));
    }
    let failures: Vec<String> =
        results.iter().filter(|r| !r.pass).map(|r| format!("{} {}: {}", r.id, r.name, r.detail)).collect();
    assert!(failures.is_empty(), "failing checks:\n{}", failures.join("\n"));
}

#[test]
fn verify_paper_is_deterministic() {
    let run = || Command::new(env!("CARGO_BIN_EXE_riordan")).arg("verify-paper").output().unwrap();
    let (a, b) = (run(), run());
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert!(text.ends_with("verify-paper: PASS (203 checks, 0 failed)\n"), "{text}");
    let ids: Vec<&str> = text.lines().filter_map(|l| l.strip_prefix("PASS ")).map(|l| &l[..5]).collect();
    let mut sorted = ids.clone();
    sorted.sort();
    assert_eq!(ids, sorted);
}
