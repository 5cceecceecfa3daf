//! Every example under `examples/` runs and prints what it promises.

macro_rules! example {
    ($module:ident, $file:literal) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }
    };
}

example!(analysis_report, "analysis_report.rs");
example!(bounds_sandwich, "bounds_sandwich.rs");
example!(code_families, "code_families.rs");
example!(design_certificates, "design_certificates.rs");
example!(feasibility, "feasibility.rs");
example!(hamming_service_rate, "hamming_service_rate.rs");
example!(recovery_sets, "recovery_sets.rs");
example!(reed_muller, "reed_muller.rs");
example!(simplex_mld, "simplex_mld.rs");

#[test]
fn analysis_report_runs() {
    let out = analysis_report::run().unwrap();
    assert!(out.contains("1-(6,3,2) rate 3"));
    assert!(out.starts_with("code: n = 7, k = 4, d = 3, d_dual = 4"));
}

#[test]
fn bounds_sandwich_runs() {
    let out = bounds_sandwich::run().unwrap();
    assert!(!out.contains("VIOLATED"));
    assert_eq!(out.matches(" ok").count(), 12);
}

#[test]
fn code_families_runs() {
    let out = code_families::run().unwrap();
    assert!(!out.contains("MISMATCH"));
    assert!(out.contains("hamming(4)   [15, 11, 3]  d_dual = 8"));
}

#[test]
fn design_certificates_runs() {
    let out = design_certificates::run().unwrap();
    assert!(out.contains("simplex(4): 2-(15,8,4) design: YES"));
    assert!(out.contains("hamming(4): 2-(15,3,1) design: YES (Steiner)"));
    assert!(out.contains("14 * 4 = 8 * 7: true"));
}

#[test]
fn feasibility_runs() {
    let out = feasibility::run().unwrap();
    assert!(!out.contains("verified false"));
    assert!(out.contains("(3,0,0,0): feasible"));
    assert!(out.contains("(31/10,0,0,0): infeasible"));
}

#[test]
fn hamming_service_rate_runs() {
    let out = hamming_service_rate::run().unwrap();
    assert_eq!(out.matches("lambda_max = 3 ").count(), 11);
    assert!(!out.contains("INVALID"));
    assert!(out.contains("1-(14,7,4) design: YES: rate 3"));
}

#[test]
fn recovery_sets_runs() {
    let out = recovery_sets::run().unwrap();
    assert!(out.contains("92 minimal recovery sets"));
}

#[test]
fn reed_muller_runs() {
    let out = reed_muller::run().unwrap();
    assert_eq!(out.matches("tight = true").count(), 4);
}

#[test]
fn simplex_mld_runs() {
    let out = simplex_mld::run().unwrap();
    assert!(out.contains("t = 2: PASS (121 patterns)"));
    assert!(out.contains("maximum family: 8 votes (J = 7)"));
    assert!(out.contains("weight 3: 455/455 decoded"));
}
