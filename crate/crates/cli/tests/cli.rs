use std::path::PathBuf;
use std::process::Command;

use homalg_cli::manifest::parse;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn read(name: &str) -> String {
    std::fs::read_to_string(golden(name)).unwrap()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_homalg")).args(args).current_dir(golden("")).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn corpus_round_trips() {
    for name in ["corpus_z.manifest", "corpus_z4.manifest", "rp2.cx"] {
        let text = read(name);
        let m = parse(&text).unwrap();
        assert_eq!(m.print(), text, "{name}");
        assert_eq!(parse(&m.print()).unwrap(), m);
    }
}

#[test]
fn golden_reports() {
    let cases: &[(&[&str], &str)] = &[
        (&["tor", "--n", "1", "--left", "Z/2", "--right", "Z/4"], "tor.txt"),
        (&["tor", "--n", "1", "--left", "Z/2", "--right", "Z/4", "--format", "machine"], "tor.machine"),
        (&["tor", "--table", "30"], "tor_table.txt"),
        (&["tor", "--table", "30", "--format", "machine"], "tor_table.machine"),
        (&["kunneth", "--left", "rp2.cx", "--right", "rp2.cx"], "kunneth_rp2.txt"),
        (&["kunneth", "--left", "rp2.cx", "--right", "rp2.cx", "--format", "machine"], "kunneth_rp2.machine"),
        (&["homology", "corpus_z.manifest"], "homology_z.txt"),
        (&["homology", "corpus_z4.manifest"], "homology_z4.txt"),
    ];
    for (args, file) in cases {
        let (code, out, err) = run(args);
        assert_eq!(code, 0, "{args:?}: {err}");
        assert_eq!(out, read(file), "{args:?}");
    }
}

#[test]
fn tor_example() {
    let (code, out, _) = run(&["tor", "--n", "1", "--left", "Z/2", "--right", "Z/4"]);
    assert_eq!((code, out.as_str()), (0, "Z/2\n"));
}

#[test]
fn machine_reports_are_manifests() {
    for file in ["tor.machine", "kunneth_rp2.machine"] {
        assert!(parse(&read(file)).is_ok(), "{file}");
    }
    let m = parse(&read("kunneth_rp2.machine")).unwrap();
    let z2 = homalg::fgmod::FgModule::cyclic(homalg::fgmod::Ring::Integers, 2);
    assert!(m.module("middle_1").unwrap().is_isomorphic(&z2));
    assert!(m.module("right_1").unwrap().is_isomorphic(&z2));
}

#[test]
fn deterministic_under_seed() {
    let a = run(&["verify-signs", "--cases", "20", "--seed", "3", "--format", "machine"]);
    let b = run(&["verify-signs", "--cases", "20", "--seed", "3", "--format", "machine"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn kunneth_random_exits_zero() {
    let (code, out, _) = run(&["verify-kunneth-random", "--cases", "200", "--seed", "7"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["no-such-command"]).0, 2);
    assert_eq!(run(&["tor", "--n", "1"]).0, 2);
    assert_eq!(run(&["orthlab-sweep", "--ring", "Z"]).0, 2);
    let dir = std::env::temp_dir().join(format!("homalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.cx");
    std::fs::write(&bad, "ring Z\nmodule A = Z\nmorphism one A A\n  1\ncomplex C\n  deg 0 A\n  deg 1 A\n  deg 2 A\n  d 1 one\n  d 2 one\n")
        .unwrap();
    let (code, _, err) = run(&["homology", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 10") && err.contains("degree 2"), "{err}");
    let report = dir.join("report.txt");
    let (code, out, _) = run(&["verify-adjunctions", "--cases", "5", "--report", report.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(std::fs::read_to_string(&report).unwrap(), out);
}

#[test]
fn violations_embed_a_replayable_manifest() {
    use homalg_cli::commands::failure_manifest;
    let c = homalg::verify::doubling_complex();
    let f = homalg::verify::Failure {
        case: 0,
        check: "x".into(),
        complexes: vec![("left".into(), c.clone())],
        modules: vec![],
        morphisms: vec![],
    };
    let text = failure_manifest(&f).print();
    let back = parse(&text).unwrap();
    assert_eq!(back.complex("left").unwrap().complex, c);
}

#[test]
fn kunneth_outside_hypotheses_is_a_violation() {
    let dir = std::env::temp_dir().join(format!("homalg-cli-k-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let t = dir.join("torsion.cx");
    std::fs::write(&t, "ring Z\nmodule T = Z/2\ncomplex S\n  deg 0 T\n").unwrap();
    let (code, out, _) = run(&["kunneth", "--left", t.to_str().unwrap(), "--right", t.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
}
