use cosmofate_web::{dust_scan_json, eos_curve_json, simulate_json};
use serde_json::Value;

#[test]
fn simulate_returns_series_and_report() {
    let v: Value = serde_json::from_str(&simulate_json("dust", 0.0, 1.0, 1.0, 0.1, 5.0).unwrap()).unwrap();
    let t = v["series"]["t"].as_array().unwrap();
    let a = v["series"]["a"].as_array().unwrap();
    assert_eq!(t.len(), a.len());
    assert!(t.windows(2).all(|w| w[0].as_f64() < w[1].as_f64()));
    assert!(t.iter().any(|x| x.as_f64() == Some(0.0)));
    assert_eq!(v["report"]["past"]["label"], "BB");
}

#[test]
fn simulate_rejects_bad_input() {
    assert!(simulate_json("dust", 1.0, -1.0, 0.0, 1.0, 1.0).is_err());
    assert!(simulate_json("gamma:7", 1.0, 1.0, 0.0, 1.0, 1.0).is_err());
    assert!(simulate_json("dust", 1.0, 1.0, 0.0, 1.0, 0.0).is_err());
}

#[test]
fn dust_scan_covers_both_branches() {
    let v: Value = serde_json::from_str(&dust_scan_json(0.1, 3.0, 30, true).unwrap()).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 60);
    assert!(dust_scan_json(0.1, 3.0, 0, true).is_err());
}

#[test]
fn eos_curve_for_neutron_gas_is_causal() {
    let v: Value = serde_json::from_str(&eos_curve_json("neutron:1", 12.0, 60).unwrap()).unwrap();
    let cs2: Vec<f64> = v["sound_speed2"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert_eq!(cs2.len(), 60);
    assert!(cs2.iter().all(|&c| (0.0..1.0).contains(&c)));
    let w_top = v["w"].as_array().unwrap().last().unwrap().as_f64().unwrap();
    assert!((w_top - 1.0 / 3.0).abs() < 0.01);
}
