use std::time::Instant;

use vickset_core::laws::{registry, replay, run, LawConfig, Profile, Verdict};

fn run_profile(profile: Profile) {
    let cfg = LawConfig::new(profile, 0);
    for law in registry() {
        let start = Instant::now();
        let report = run(law, &cfg).unwrap();
        println!(
            "{profile} {:<32} {:>7} cases {:>9.3}s {}",
            report.id,
            report.cases,
            start.elapsed().as_secs_f64(),
            report.verdict
        );
        assert!(report.conforms(), "{} {:?}", law.id, report);
        if report.verdict == Verdict::Fail {
            assert!(!replay(law.id, report.counterexample.as_ref().unwrap()).unwrap());
        }
    }
}

#[test]
fn quick_profile_conforms() {
    run_profile(Profile::Quick);
}

#[test]
fn full_profile_conforms() {
    run_profile(Profile::Full);
}
