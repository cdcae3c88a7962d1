use mform::m24::{self, canonical_pairs, default_table, eigen_data, frame_identity, parse_class_data};
use mform::{Cyclotomic, Error};
use num_traits::ToPrimitive;

#[test]
fn table_loads_and_has_26_classes() {
    let t = default_table();
    assert_eq!(t.classes.len(), 26);
    assert_eq!(t.irreps.len(), 26);
    let sizes: u64 = t.classes.iter().map(|c| c.class_size()).sum();
    assert_eq!(sizes, m24::GROUP_ORDER);
}

#[test]
fn allowed_classes() {
    let t = default_table();
    let names: Vec<&str> = t.allowed().map(|c| c.name.as_str()).collect();
    assert_eq!(
        names,
        ["1A", "2A", "2B", "3A", "4A", "4B", "5A", "6A", "7A", "7B", "8A", "10A", "11A", "12A", "14A", "14B", "15A", "15B"]
    );
    for n in m24::EXCLUDED {
        assert!(matches!(eigen_data(t.class(n).unwrap()), Err(Error::Excluded(_))));
    }
}

#[test]
fn frame_shapes() {
    for c in &default_table().classes {
        frame_identity(c).unwrap();
    }
}

// D_g = (2i)^10 prod sin(pi f) and C_-g = prod 2 cos(pi f), checked in floating point
#[test]
fn constants_against_trigonometry() {
    let t = default_table();
    for c in t.allowed() {
        let e = eigen_data(c).unwrap();
        let fs: Vec<f64> = e.fracs.iter().map(|f| f.to_f64().unwrap()).collect();
        let pi = std::f64::consts::PI;
        let d: f64 = -fs[..10].iter().map(|f| 2.0 * (pi * f).sin()).product::<f64>();
        let cn: f64 = fs.iter().map(|f| 2.0 * (pi * f).cos()).product();
        assert!((e.d_g.to_f64().unwrap() - d).abs() < 1e-6, "{}: D {} vs {d}", c.name, e.d_g);
        assert!((e.c_neg_g.to_f64().unwrap() - cn).abs() < 1e-6, "{}: C-g {} vs {cn}", c.name, e.c_neg_g);
        assert_eq!(e.c_g, mform::qi(0));
    }
    assert_eq!(eigen_data(t.class("1A").unwrap()).unwrap().c_neg_g, mform::qi(4096));
    assert_eq!(eigen_data(t.class("11A").unwrap()).unwrap().d_g, mform::qi(-11));
}

#[test]
fn canonical_pairs_units_last() {
    let p = canonical_pairs(&[(1, 2), (11, 2)], false).unwrap();
    assert_eq!(p.len(), 12);
    assert!(p[10] == mform::qi(0) && p[11] == mform::qi(0));
    assert!(canonical_pairs(&[(1, 1), (3, 1), (20, 1)], false).is_err());
}

#[test]
fn checksum_mismatch_is_reported() {
    let json = m24::embedded_json().replacen("\"checksum\": \"", "\"checksum\": \"00", 1);
    let err = parse_class_data(&json).unwrap_err().to_string();
    assert!(err.contains("checksum mismatch"), "{err}");
}

#[test]
fn corrupt_character_fails_orthogonality() {
    let mut v: serde_json::Value = serde_json::from_str(m24::embedded_json()).unwrap();
    v["classes"][1]["characters"][1] = serde_json::Value::String("8".into());
    let body = serde_json::json!({"classes": v["classes"], "irreps": v["irreps"]});
    v["checksum"] = m24::asset_checksum(&body.to_string()).unwrap().into();
    let err = parse_class_data(&v.to_string()).unwrap_err().to_string();
    assert!(err.contains("orthogonality"), "{err}");
    assert!(err.contains("chi_23"), "{err}");
}

#[test]
fn cyclotomic_characters_parse() {
    let t = default_table();
    let c = t.class("7A").unwrap();
    assert!(c.characters.iter().any(|v| !v.is_rational()));
    let sum: Cyclotomic = c.characters.iter().fold(Cyclotomic::from_integer(0), |a, b| &a + b);
    let _ = sum;
}
