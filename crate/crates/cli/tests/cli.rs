use aeroplane_cli::run;
use aeroplane_core::Word;
use proptest::prelude::*;
use serde_json::Value;

fn cmd(line: &str) -> aeroplane_cli::Outcome {
    run(std::iter::once("aeroplane").chain(line.split_whitespace()))
}

fn json(line: &str) -> Value {
    let o = cmd(line);
    assert!(o.code == 0, "{line}: {}", o.stderr);
    serde_json::from_str(&o.stdout).unwrap()
}

#[test]
fn itinerary_example() {
    let o = cmd("itinerary 5/16 --depth 6");
    assert_eq!(o.code, 0);
    assert_eq!(o.stdout.lines().next(), Some("L3 L2 C L1 R1 R1"));
}

#[test]
fn boundary_angle_is_an_input_error() {
    let o = cmd("itinerary 3/7 --depth 4");
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("boundary"), "{}", o.stderr);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(cmd("frobnicate").code, 2);
    assert_eq!(cmd("itinerary").code, 2);
    assert_eq!(cmd("exchange --scenario 2.2").code, 2);
    assert_eq!(cmd("family --level 99").code, 2);
    assert_eq!(cmd("arc L4").code, 2);
    assert_eq!(cmd("--help").code, 0);
}

#[test]
fn matings_level_zero() {
    let v = json("matings --level 0 --json");
    assert_eq!(v["schema"], 1);
    let angles = v["data"]["levels"][0]["angles"].as_array().unwrap();
    assert_eq!(angles.len(), 2);
    for a in angles {
        assert_eq!(a["orbit"]["period"], 18);
        assert!(a["q"].as_str().unwrap().ends_with("/262143"));
    }
}

#[test]
fn flagged_claims_fail_only_under_strict() {
    let o = cmd("lengths --max-level 2");
    assert_eq!(o.code, 0);
    assert!(o.stderr.contains("flagged"));
    assert_eq!(cmd("lengths --max-level 2 --strict").code, 1);
    assert_eq!(cmd("verify regions --strict").code, 0);
}

#[test]
fn scenario_aliases_agree() {
    for (alias, name) in [("2.1", "basic"), ("2.5", "level"), ("2.7", "multi"), ("2.8", "mating")] {
        let a = json(&format!("exchange --scenario {alias} --json"));
        let b = json(&format!("exchange --scenario {name} --json"));
        assert_eq!(a["data"], b["data"]);
        assert_eq!(a["claims"], b["claims"]);
    }
}

#[test]
fn exchange_jsonl() {
    let o = cmd("exchange --scenario basic --jsonl");
    assert_eq!(o.code, 0);
    for line in o.stdout.lines() {
        let v: Value = serde_json::from_str(line).unwrap();
        assert!(v["kind"].is_string());
    }
    assert!(o.stdout.contains("\"endpoint_swap\""));
}

#[test]
fn lamination_svg_has_one_chord_per_leaf() {
    let o = cmd("render lamination --depth 8");
    assert_eq!(o.code, 0);
    let svg = &o.stdout;
    assert!(svg.contains(r#"viewBox="0 0 1000 1000""#));
    assert!(svg.contains(r#"<circle class="circle" cx="500" cy="500" r="450"/>"#));
    assert_eq!(svg.matches(r#"class="chord layer-8""#).count(), 256);
    assert_eq!(svg.matches("<line ").count(), (1 << 9) - 1);
}

#[test]
fn region_svg() {
    let svg = cmd("render regions").stdout;
    assert_eq!(svg.matches(r#"class="label""#).count(), 7);
    assert_eq!(svg.matches(r#"class="boundary""#).count(), 6);
    // Chord through 1/14 and 13/14 is vertical at x = 500 + 450 cos(pi/7).
    let x = 500.0 + 450.0 * (std::f64::consts::PI / 7.0).cos();
    let tag = format!(r#"x1="{x:.3}""#);
    assert_eq!(svg.matches(&tag).count(), 1, "{tag}");
}

#[test]
fn scenario_svg_lists_rows_in_order() {
    let svg = cmd("render scenario --scenario 2.1").stdout;
    let rows: Vec<&str> = svg.lines().filter(|l| l.contains(r#"class="row""#)).collect();
    assert_eq!(rows.len(), 8);
    assert!(rows[0].contains(" 5: L3 D'(bot)"));
    assert!(rows[7].contains("12: "));
}

#[test]
fn output_file_gets_the_report() {
    let dir = std::env::temp_dir().join(format!("aeroplane-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("regions.json");
    let o = cmd(&format!("verify regions -o {}", path.display()));
    assert_eq!(o.code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["fail"], 0);
    let svg = dir.join("r.svg");
    assert_eq!(cmd(&format!("render regions -o {}", svg.display())).code, 0);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn printed_words_reparse() {
    let v = json("family --level 2 --json");
    let l = &v["data"]["level"];
    for key in ["v", "w", "u", "t"] {
        let s = l[key].as_str().unwrap();
        let w: Word = s.parse().unwrap();
        assert_eq!(w.to_string(), s);
        assert_eq!(w.compact().parse::<Word>().unwrap(), w);
    }
    let text = cmd("family --level 2").stdout;
    for line in text.lines() {
        let compact = line.rsplit(' ').next().unwrap();
        let w: Word = compact.parse().unwrap();
        assert_eq!(w.compact(), compact);
    }
}

#[test]
fn order_command() {
    let v = json("order L3L2R3L3L2R3L2R3 L3L2R3L3^5 --json");
    assert_eq!(v["data"]["relation"], "<");
    assert_eq!(v["summary"]["pass"], 1);
    assert_eq!(cmd("order L3 L3L2").code, 0);
}

#[test]
fn search_eau_default_word() {
    let v = json("search-eau --level 1 --json");
    assert!(v["data"]["decompositions"].as_array().unwrap().len() >= 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn itinerary_output_reparses(num in 1u32..4096, bits in 13u32..16, depth in 1usize..12) {
        let den = 1u32 << bits;
        let o = cmd(&format!("itinerary {}/{den} --depth {depth} --json", num % den));
        prop_assume!(o.code == 0);
        let v: Value = serde_json::from_str(&o.stdout).unwrap();
        let s = v["data"]["itinerary"].as_str().unwrap();
        let w: Word = s.parse().unwrap();
        prop_assert_eq!(w.len(), depth);
        prop_assert_eq!(w.to_string(), s);
    }
}
