use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cslbounds"))
}

fn scenario(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios").join(name)
}

fn run(args: &[&str], config: &Path) -> Output {
    bin().args(args).arg("--config").arg(config).output().unwrap()
}

fn stderr_line(o: &Output) -> String {
    let s = String::from_utf8_lossy(&o.stderr).into_owned();
    assert_eq!(s.trim_end().lines().count(), 1, "stderr should be one line: {s:?}");
    s
}

const LAB_SUBCOMMANDS: [&str; 6] = ["eta", "damping", "dns", "temperature", "scan-geometry", "exclusion"];
const CUBE_SUBCOMMANDS: [&str; 3] = ["eta", "exclusion", "lisa"];

#[test]
fn bundled_scenarios_run_every_applicable_subcommand() {
    for (file, cmds) in [
        ("lab_coin.json", &LAB_SUBCOMMANDS[..]),
        ("lab_disc_large.json", &LAB_SUBCOMMANDS[..]),
        ("lisa.json", &CUBE_SUBCOMMANDS[..]),
    ] {
        for cmd in cmds {
            let o = run(&[cmd], &scenario(file));
            assert!(o.status.success(), "{file} {cmd}: {}", String::from_utf8_lossy(&o.stderr));
            let text = String::from_utf8(o.stdout).unwrap();
            let mut lines = text.lines();
            let width = lines.next().unwrap().split(',').count();
            assert!(lines.clone().count() > 0, "{file} {cmd}: no rows");
            assert!(lines.all(|l| l.split(',').count() == width && !l.contains("NaN") && !l.contains("inf")));
        }
    }
}

#[test]
fn output_is_byte_identical_across_runs() {
    let a = run(&["exclusion"], &scenario("lab_coin.json"));
    let b = run(&["exclusion"], &scenario("lab_coin.json"));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let one_thread = bin()
        .env("CSLBOUNDS_THREADS", "1")
        .args(["exclusion", "--config"])
        .arg(scenario("lab_coin.json"))
        .output()
        .unwrap();
    assert_eq!(a.stdout, one_thread.stdout);
}

#[test]
fn negative_pressure_exits_2_without_output() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("curve.csv");
    let o = bin()
        .args(["exclusion", "--set", "gas.pressure_mbar=-1", "--out"])
        .arg(&out)
        .arg("--config")
        .arg(scenario("lab_coin.json"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr_line(&o).contains("gas.pressure_mbar"));
    assert!(!out.exists());
}

#[test]
fn missing_gas_section_exits_2() {
    let o = bin().args(["temperature", "--config"]).arg(scenario("lisa.json")).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    stderr_line(&o);

    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("nogas.json");
    std::fs::write(&cfg, r#"{"geometry": {"shape": "cylinder", "radius_m": 1e-4, "length_m": 1e-7}}"#).unwrap();
    let o = run(&["damping"], &cfg);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr_line(&o).contains("gas"));
}

#[test]
fn unreadable_config_exits_4() {
    let o = run(&["eta"], Path::new("/nonexistent/scenario.json"));
    assert_eq!(o.status.code(), Some(4));
    stderr_line(&o);
}

#[test]
fn unwritable_output_exits_4() {
    let o = bin()
        .args(["eta", "--out", "/nonexistent/dir/eta.csv", "--config"])
        .arg(scenario("lisa.json"))
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(4));
}

#[test]
fn unstable_optical_spring_exits_3() {
    // Flipping the detuning sign turns optical damping into anti-damping.
    let o =
        bin().args(["dns", "--set", "cavity.delta0=-1e6", "--config"]).arg(scenario("lab_coin.json")).output().unwrap();
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    stderr_line(&o);
}

#[test]
fn bad_thread_count_exits_2() {
    let o =
        bin().env("CSLBOUNDS_THREADS", "zero").args(["eta", "--config"]).arg(scenario("lisa.json")).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn json_output_and_file_target() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("lisa.json");
    let o = bin()
        .args(["lisa", "--format", "json", "--set", "scan.r_c_points=3", "--out"])
        .arg(&out)
        .arg("--config")
        .arg(scenario("lisa.json"))
        .output()
        .unwrap();
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&out).unwrap()).unwrap();
    let rows = v.as_array().unwrap();
    assert_eq!(rows.len(), 3);
    let s_tau = rows[0]["torque_dns_N2m2_Hz"].as_f64().unwrap();
    assert!((s_tau / 2.66e-34 - 1.0).abs() < 0.01);
}

#[test]
fn verify_oracle_reports_within_tolerance() {
    let o = run(&["verify-oracle"], &scenario("lisa.json"));
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let col = r.headers().unwrap().iter().position(|h| h == "rel_deviation").unwrap();
    let devs: Vec<f64> = r.records().map(|rec| rec.unwrap()[col].parse().unwrap()).collect();
    assert_eq!(devs.len(), 5 * 5 * 3 + 4 * 2);
    assert!(devs.iter().all(|&d| d <= 1e-3));
}
