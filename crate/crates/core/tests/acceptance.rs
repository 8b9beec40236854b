//! Acceptance criteria: one pass/fail line per criterion.
//!
//! Criteria 1–7 run the corresponding verification groups; criterion 8 runs
//! the closed-form groups again with each coefficient perturbed by 1e-3 and
//! requires every run to fail. Runs without the test harness so the
//! lines are always printed.

use std::time::Instant;

use polyshock_core::verification::{run, Group, Perturbation, Report, VerifyOptions};

fn line(number: u8, title: &str, passed: bool, summary: &str) {
    println!(
        "criterion {number} [{}] {title}: {summary}",
        if passed { "PASS" } else { "FAIL" }
    );
}

fn summarize(report: &Report, group: Group) -> String {
    report
        .group(group)
        .map(|c| {
            if c.detail.is_empty() || c.passed {
                format!("{}={:.3e}/{:.0e}", c.name, c.achieved, c.required)
            } else {
                format!("{}=ERR({})", c.name, c.detail)
            }
        })
        .collect::<Vec<_>>()
        .join(", ")
}

fn main() {
    let titles = [
        "production closed forms vs oracle",
        "moments, fluxes, entropy and dissipation vs oracle",
        "exact algebraic anchors",
        "extended-thermodynamics compatibility",
        "collision kinematics",
        "shock dichotomy and conservation",
        "figure-regime properties",
    ];
    let started = Instant::now();
    let report = run(&VerifyOptions::default()).expect("verification run");
    let mut all = true;
    for (group, title) in Group::ALL.into_iter().zip(titles) {
        let ok = report.group_passed(group);
        all &= ok;
        line(group.number(), title, ok, &summarize(&report, group));
    }

    // Negative controls: perturbing any closed-form coefficient must be caught.
    let closed_form_groups = [
        Group::ProductionOracle,
        Group::MomentOracle,
        Group::Anchors,
        Group::EtCompatibility,
    ];
    let mut caught = Vec::new();
    let mut controls_ok = true;
    for target in Perturbation::ALL {
        let options = VerifyOptions::default()
            .with_groups(&closed_form_groups)
            .with_perturbation(Some(target));
        let perturbed = run(&options).expect("perturbed run");
        let failed: Vec<_> = perturbed.failures().map(|c| c.name.clone()).collect();
        controls_ok &= !perturbed.passed();
        caught.push(format!("{target} -> [{}]", failed.join(" ")));
    }
    all &= controls_ok;
    line(8, "negative controls", controls_ok, &caught.join("; "));
    println!(
        "acceptance runtime {:.1} s",
        started.elapsed().as_secs_f64()
    );
    if !all {
        eprintln!("at least one acceptance criterion failed");
        std::process::exit(1);
    }
}
