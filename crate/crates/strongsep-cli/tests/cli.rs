use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use strongsep::separation::{decide_separation, replay};
use strongsep_cli::formats::{parse_certificate, parse_instance};

const TWO_LINES: &str = "\
# two lines through the origin, points on opposite sides
vars = x z
f = (z - x)*(z + x)
alpha x = t
alpha z = 2*t
beta x = t
beta z = -2*t
box x = [0, 1]
";

const ONE_LINE: &str = "\
f = z - x
alpha x = t
alpha z = 2*t
beta x = t
beta z = 3*t
box x = [0, 1]
";

const CRITICAL: &str = "\
f = (z^2 - x^2)*(z^2 - 49*x^2)
alpha x = t
alpha z = -5*t + t^2
alpha sign t = +
beta x = t
beta z = 5*t
box x = [-1/2, 1]
degree-bound = 2
grid = 3
";

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_strongsep")).args(args).env_remove("STRONGSEP_DENOM_BOUND").output().unwrap()
}

fn text(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn polygon_slopes() {
    let o = bin(&["polygon", "-e", "z^2 - (t + t^2)*z + t^3"]);
    assert_eq!(o.status.code(), Some(0));
    let s = text(&o);
    assert!(s.contains("slopes: -2 -1"), "{}", s);
    assert!(s.contains("vertices: (0, 3) (1, 1) (2, 0)"), "{}", s);
    assert!(s.contains("# seed = 0"));
}

#[test]
fn polygon_svg() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("hull.svg");
    let o = bin(&["polygon", "-e", "z^3 - t^2*z + t^5", "--svg", svg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let s = fs::read_to_string(svg).unwrap();
    assert!(s.starts_with("<svg") && s.contains("<polyline"));
}

#[test]
fn branches_report() {
    let o = bin(&["branches", "-e", "z^2 - t^3"]);
    let s = text(&o);
    assert!(s.contains("z = t^(3/2)") && s.contains("z = -t^(3/2)"), "{}", s);
    assert!(s.contains("real = yes, multiplicity = 1"));
    // √t needs denominator 2
    let o = bin(&["branches", "-e", "z^2 - t", "--denom-bound", "1"]);
    assert_eq!(o.status.code(), Some(24));
}

#[test]
fn denominator_bound_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_strongsep"))
        .args(["branches", "-e", "z^2 - t"])
        .env("STRONGSEP_DENOM_BOUND", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(24));
    let o = Command::new(env!("CARGO_BIN_EXE_strongsep"))
        .args(["branches", "-e", "z^2 - t"])
        .env("STRONGSEP_DENOM_BOUND", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(text(&o).contains("# denom-bound = 2"));
}

#[test]
fn separate_two_lines_is_violated_and_replays() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "two.inst", TWO_LINES);
    let cert = dir.path().join("two.cert");
    let o = bin(&["--seed", "7", "separate", &inst, "-o", cert.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(10));
    let c = fs::read_to_string(&cert).unwrap();
    assert!(c.contains("verdict = hypothesis-violated"));
    assert!(c.contains("note seed = 7"));
    let r = bin(&["replay", cert.to_str().unwrap()]);
    assert_eq!(r.status.code(), Some(0), "{}", text(&r));
    assert!(text(&r).contains(", 0 mismatches"));
}

#[test]
fn separate_same_component() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "one.inst", ONE_LINE);
    let o = bin(&["separate", &inst]);
    assert_eq!(o.status.code(), Some(0));
    assert!(text(&o).contains("verdict = same-component"));
}

#[test]
fn tampered_certificate_fails_replay() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "two.inst", TWO_LINES);
    let c = text(&bin(&["separate", &inst]));
    let bad = c.replace("check nu alpha [z] = 1", "check nu alpha [z] = 2");
    assert_ne!(bad, c);
    let p = write(dir.path(), "bad.cert", &bad);
    let r = bin(&["replay", &p]);
    assert_eq!(r.status.code(), Some(4));
    assert!(text(&r).contains("MISMATCH check nu alpha [z] = 2"));
}

#[test]
fn certificates_round_trip() {
    for src in [TWO_LINES, ONE_LINE, CRITICAL] {
        let (inst, _) = parse_instance(src).unwrap();
        let d = decide_separation(&inst).unwrap();
        let s = d.certificate.to_string();
        let back = parse_certificate(&s).unwrap();
        assert_eq!(back, d.certificate);
        assert_eq!(back.to_string(), s);
        assert!(replay(&back).unwrap().iter().all(|(_, ok)| *ok));
    }
}

#[test]
fn emitted_certificate_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "crit.inst", CRITICAL);
    let o = bin(&["--seed", "3", "separate", &inst]);
    assert_eq!(o.status.code(), Some(10), "{}", String::from_utf8_lossy(&o.stderr));
    let s = text(&o);
    assert_eq!(parse_certificate(&s).unwrap().to_string(), s);
}

#[test]
fn identical_seed_identical_output() {
    let dir = tempfile::tempdir().unwrap();
    let inst = write(dir.path(), "crit.inst", CRITICAL);
    let a = bin(&["--seed", "11", "separate", &inst]);
    let b = bin(&["--seed", "11", "separate", &inst]);
    assert_eq!(a.stdout, b.stdout);
    let a = bin(&["--seed", "5", "verify-props", "--scale", "2"]);
    let b = bin(&["--seed", "5", "verify-props", "--scale", "2"]);
    assert_eq!(a.status.code(), Some(0), "{}", text(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(text(&a).contains("# seed = 5"));
    assert_eq!(text(&a).lines().filter(|l| l.starts_with("PASS ")).count(), 8);
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "bad.inst", &TWO_LINES.replace("alpha z = 2*t", "alpha z = 2*t +* t"));
    let o = bin(&["separate", &p]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.inst:5:16:"), "{}", err);
    let o = bin(&["polygon", "-e", "z^2 - 0.5*t"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("<expr>:1:8: decimal"));
    let o = bin(&["replay", dir.path().join("missing.cert").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let o = bin(&["polygon"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn not_monic_maps_to_its_own_code() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "nm.inst", &TWO_LINES.replace("f = (z - x)*(z + x)", "f = 2*z^2 - x^2"));
    assert_eq!(bin(&["separate", &p]).status.code(), Some(26));
}

#[test]
fn valuate_lex_curvettes() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(
        dir.path(),
        "intro.val",
        "vars = x y z\nf = x*z - y^2\nf = x^3 - y*z\nf = x^2*y - z^2\nx = t^(0,3)\ny = t^(0,4) + t^(1,0)\nz = t^(0,5) + 3*t^(1,1)\n",
    );
    let o = bin(&["valuate", &p, "--exponents", "lex2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = text(&o);
    for want in ["nu = (1,4)", "initial term = (1)*t^(1,4)", "nu = (1,5)", "initial term = (-4)*t^(1,5)", "nu = (1,6)", "initial term = (-5)*t^(1,6)"] {
        assert!(s.contains(want), "{} missing in\n{}", want, s);
    }
}

#[test]
fn valuate_with_sign_data() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "v.val", "f = z - x^2\nx = t\nz = t^3\nsign t = -\n");
    let s = text(&bin(&["valuate", &p]));
    // t ↦ −t: z − x² = −t³ − t², leading −t²
    assert!(s.contains("nu = 2") && s.contains("sign = -"), "{}", s);
}

#[test]
fn recenter_report() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "r.in", "g = (z - t - t^2)*(z + t)\nz = t + t^2 + t^5\n");
    let o = bin(&["recenter", &p]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let s = text(&o);
    assert!(s.contains("monotone = true"), "{}", s);
    assert!(s.contains("after: nu_z=6 nu=6"), "{}", s);
}
