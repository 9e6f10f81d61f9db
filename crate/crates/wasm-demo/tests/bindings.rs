use petaluma_wasm::{c2_histogram_json, draw_svg, invariants_json, random_perm_text, MAX_SAMPLES};

#[test]
fn drawing_has_one_arc_per_petal() {
    let svg = draw_svg("(1,3,5,2,4)", 300).unwrap();
    assert!(svg.starts_with("<svg") && svg.ends_with("</svg>"));
    assert_eq!(svg.matches("<title>").count(), 5);
    assert_eq!(svg.matches("<text").count(), 5);
    // the top arc is drawn last so it covers the others at the centre
    let last = svg.rfind("<title>").unwrap();
    assert!(svg[last..].starts_with("<title>arc 3 height 5"));
    assert!(draw_svg("(1,2)", 300).is_err());
}

#[test]
fn invariant_report() {
    let v: serde_json::Value = serde_json::from_str(&invariants_json("(1,5,3,7,2,4,6)", true).unwrap()).unwrap();
    assert_eq!(v["c2"], -1);
    assert_eq!(v["delta_text"], "-t + 3 - t^-1");
    assert!(v["jones_text"].is_string());
    let big = random_perm_text(21, 3).unwrap();
    let v: serde_json::Value = serde_json::from_str(&invariants_json(&big, true).unwrap()).unwrap();
    assert_eq!(v["jones_skipped"], true);
    assert!(invariants_json("(1,1,3)", false).is_err());
}

#[test]
fn histogram_is_seeded() {
    let a = c2_histogram_json(3, 300, 5).unwrap();
    assert_eq!(a, c2_histogram_json(3, 300, 5).unwrap());
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    let total: i64 = v["counts"].as_array().unwrap().iter().map(|p| p[1].as_i64().unwrap()).sum();
    assert_eq!(total, 300);
    assert!(c2_histogram_json(3, MAX_SAMPLES + 1, 0).is_err());
    assert!(c2_histogram_json(30, 10, 0).is_err());
}
