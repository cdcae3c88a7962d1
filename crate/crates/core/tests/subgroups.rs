use mform::jacobi::m_g_tilde;
use mform::m24::default_table;
use mform::subgroups::*;
use mform::trace::Construction;

fn split(s: &str) -> Vec<String> {
    s.split(',').map(|t| t.trim().to_string()).collect()
}

// the five example fusions, copied from the source text
#[test]
fn fixtures_match_examples() {
    let f = default_fusions(default_table()).unwrap();
    let want = [
        ("L3(4)", "1A, 2A, 3A, 4B, 4B, 4B, 5A, 5A, 7A, 7B", 4, Construction::I),
        ("M22:2", "1A, 2A, 3A, 4B, 4B, 5A, 6A, 7A, 7B, 8A,11A, 2A, 2B, 4A, 4B, 6A, 8A, 10A, 12A, 14A, 14B", 2, Construction::II),
        ("2^4:A7", "1A, 2A, 2A, 4B, 3A, 3A, 6A, 4B, 8A, 5A, 6A, 7A, 14A, 7B, 14B", 3, Construction::II),
        ("A8", "1A, 2A, 2A, 3A, 3A, 4B, 4B, 5A, 6A, 6A, 7A, 7B,15A, 15B", 3, Construction::II),
        ("M11", "1A, 2A, 3A, 4B, 5A, 6A, 8A, 8A, 11A, 11A", 3, Construction::II),
    ];
    assert_eq!(f.len(), 5);
    for (sf, (name, classes, dim, cons)) in f.iter().zip(want) {
        assert_eq!(sf.name, name);
        assert_eq!(sf.fused_classes, split(classes));
        assert_eq!(sf.asserted_group_fixed_dim, dim);
        let el = eligibility(sf, default_table()).unwrap();
        assert_eq!(el.verdict, Some(cons), "{name}");
        assert!(el.matches_declared());
        assert!(el.min_element_dim >= 4);
    }
}

#[test]
fn m11_eleven_a_has_four_cycles_but_two_fixed_points() {
    let f = default_fusions(default_table()).unwrap();
    let m11 = f.iter().find(|s| s.name == "M11").unwrap();
    let el = eligibility(m11, default_table()).unwrap();
    let row = el.per_class.iter().find(|d| d.class == "11A").unwrap();
    assert_eq!((row.fixed_space_dim, row.chi), (4, 2));
}

#[test]
fn bad_records_are_rejected() {
    let t = default_table();
    let excluded = r#"{"version": "t", "subgroups": [{"name": "X", "fused_classes": ["1A", "3B"], "asserted_group_fixed_dim": 3, "construction": "II"}]}"#;
    assert!(parse_fusions(excluded, t).unwrap_err().to_string().contains("excluded class 3B"));
    let unknown = r#"{"version": "t", "subgroups": [{"name": "X", "fused_classes": ["9Z"], "asserted_group_fixed_dim": 3, "construction": "II"}]}"#;
    assert!(parse_fusions(unknown, t).unwrap_err().to_string().contains("unknown class"));
    let wrong = r#"{"version": "t", "subgroups": [{"name": "X", "fused_classes": ["1A"], "asserted_group_fixed_dim": 2, "construction": "I"}]}"#;
    assert!(parse_fusions(wrong, t).is_err());
}

#[test]
fn trace_tables() {
    let t = default_table();
    let f = default_fusions(t).unwrap();
    let m11 = f.iter().find(|s| s.name == "M11").unwrap();
    let (_, rows) = subgroup_trace_table(m11, t, 48, -6).unwrap();
    assert_eq!(rows.len(), 10);
    assert_eq!(rows[6].series, rows[7].series);
    assert_eq!(rows[8].series, rows[9].series);
    assert!(rows.iter().all(|r| r.series.all_integers()));

    let l34 = f.iter().find(|s| s.name == "L3(4)").unwrap();
    let (_, rows) = subgroup_trace_table(l34, t, 48, -6).unwrap();
    let me = m_g_tilde(t.class("1A").unwrap(), 48, -6).unwrap();
    assert_eq!(rows[0].series.first_difference(&me, 48, -6, 6).unwrap(), None);
}
