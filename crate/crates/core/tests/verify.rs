use mform::m24::default_table;
use mform::subgroups::{default_fusions, SubgroupFusion};
use mform::trace::Construction;
use mform::verify::*;

#[test]
fn every_suite_passes_at_low_order() {
    let t = default_table();
    let fusions = default_fusions(t).unwrap();
    let ctx = Context { table: t, fusions: &fusions, aux: None, qmax24: 72, ylow: -12 };
    let checks = run_suite(Suite::All, &ctx);
    assert_eq!(checks.len(), 13);
    for c in &checks {
        let want = if c.name == "multiplicities" { Status::Partial } else { Status::Pass };
        assert_eq!(c.status, want, "{}: {}", c.name, c.detail);
    }
}

#[test]
fn suites_select_their_checks() {
    let t = default_table();
    let fusions = default_fusions(t).unwrap();
    let ctx = Context { table: t, fusions: &fusions, aux: None, qmax24: 48, ylow: -8 };
    let names: Vec<String> = run_suite("traces".parse().unwrap(), &ctx).into_iter().map(|c| c.name).collect();
    assert_eq!(names, ["traces.components", "traces.routes", "traces.theorems"]);
    assert!("everything".parse::<Suite>().is_err());
}

#[test]
fn wrong_declared_construction_fails() {
    let t = default_table();
    let mut fusions = default_fusions(t).unwrap();
    let m11 = fusions.iter_mut().find(|f| f.name == "M11").unwrap();
    m11.construction = Construction::I;
    let Err(msg) = check_subgroups(t, &fusions) else { panic!("accepted") };
    assert!(msg.contains("M11"), "{msg}");
    let bad = SubgroupFusion {
        name: "toy".into(),
        fused_classes: vec!["1A".into(), "23A".into()],
        asserted_group_fixed_dim: 0,
        construction: Construction::II,
        note: None,
    };
    assert!(check_subgroups(t, &[bad]).is_err());
}
