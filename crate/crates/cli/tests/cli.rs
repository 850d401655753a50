use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn corpus(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn dgm(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dgm")).args(args).env_remove("DGM_CONFIG").output().expect("run dgm")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn r10_is_not_delta_graphic() {
    let o = dgm(&["recognize", path_str(&corpus("r10.bm"))]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("NOT delta-graphic"), "{}", stdout(&o));
}

#[test]
fn certificate_round_trip_in_fresh_process() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    let k5 = corpus("k5.bm");
    let o = dgm(&["recognize", path_str(&k5), "--certificate", path_str(&cert)]);
    assert_eq!(code(&o), 0);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&cert).unwrap()).unwrap();
    assert_eq!(json["schema"], "delta-graphic-certificate/1");
    assert_eq!(json["delta_graphic"], true);
    let o = dgm(&["verify", path_str(&k5), path_str(&cert)]);
    assert_eq!((code(&o), stdout(&o).trim()), (0, "true"));
    // The same certificate does not fit another matroid.
    let o = dgm(&["verify", path_str(&corpus("k33.bm")), path_str(&cert)]);
    assert_eq!((code(&o), stdout(&o).trim()), (2, "false"));
}

#[test]
fn negative_certificates_verify() {
    let dir = tempfile::tempdir().unwrap();
    for f in ["r10.bm", "tripod.bm", "bench.bm", "u24.bm"] {
        let cert = dir.path().join(format!("{f}.json"));
        assert_eq!(code(&dgm(&["recognize", path_str(&corpus(f)), "--certificate", path_str(&cert)])), 0);
        let o = dgm(&["verify", path_str(&corpus(f)), path_str(&cert)]);
        assert_eq!(stdout(&o).trim(), "true", "{f}");
    }
}

fn search_lines(o: &Output) -> Vec<String> {
    stdout(o).lines().map(str::to_string).collect()
}

#[test]
fn search_seven_and_shard_invariance() {
    let o = dgm(&["search", "--max-n", "7"]);
    assert_eq!(code(&o), 0);
    let lines = search_lines(&o);
    assert_eq!(lines[0], "3 minor-minimal non-delta-graphic matroids on at most 7 elements");
    let names: Vec<&str> = lines[1..].iter().map(|l| l.split_whitespace().next().unwrap()).collect();
    assert_eq!(names, ["U(2,4)", "F7", "F7*"]);

    let dir = tempfile::tempdir().unwrap();
    let d = path_str(dir.path());
    let sharded = dgm(&["search", "--max-n", "7", "--shards", "3", "--resume", d]);
    assert_eq!(search_lines(&sharded), lines);
    assert!(dir.path().join("results.json").exists());
    assert!(dir.path().join("n7-shard2of3.ckpt").exists());
    // Resuming replays the checkpoints.
    let resumed = dgm(&["search", "--max-n", "7", "--shards", "3", "--resume", d]);
    assert_eq!(search_lines(&resumed), lines);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    // Checksum mismatch: parse error.
    let text = std::fs::read_to_string(corpus("f7.bm")).unwrap().replacen("1", "0", 1);
    let bad = dir.path().join("bad.bm");
    std::fs::write(&bad, text).unwrap();
    assert_eq!(code(&dgm(&["info", path_str(&bad)])), 1);
    // Unknown element: precondition.
    assert_eq!(code(&dgm(&["minor", path_str(&corpus("f7.bm")), "--delete", "zz"])), 2);
    // Cap exceeded: resource.
    assert_eq!(code(&dgm(&["search", "--max-n", "11"])), 3);
}

#[test]
fn config_file_and_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("dgm.toml");
    std::fs::write(&cfg, "[caps]\nsearch = 5\n\n[search]\nmax_n = 4\n").unwrap();
    let c = path_str(&cfg);
    assert_eq!(code(&dgm(&["--config", c, "search", "--max-n", "7"])), 3);
    let o = dgm(&["--config", c, "--cap", "search=7", "search", "--max-n", "7"]);
    assert_eq!(code(&o), 0);
    let o = dgm(&["--config", c, "search"]);
    assert_eq!(search_lines(&o)[0], "1 minor-minimal non-delta-graphic matroids on at most 4 elements");
    // The environment variable names the same file.
    let o = Command::new(env!("CARGO_BIN_EXE_dgm")).args(["search", "--max-n", "7"]).env("DGM_CONFIG", c).output().unwrap();
    assert_eq!(code(&o), 3);
    std::fs::write(&cfg, "[caps]\nsearhc = 5\n").unwrap();
    assert_eq!(code(&dgm(&["--config", c, "info", path_str(&corpus("k5.bm"))])), 1);
}

#[test]
fn matrix_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f7 = corpus("f7.bm");
    let dual = dir.path().join("d.bm");
    assert_eq!(code(&dgm(&["dual", path_str(&f7), "-o", path_str(&dual)])), 0);
    let info = stdout(&dgm(&["info", path_str(&dual)]));
    assert!(info.contains("rank        4"), "{info}");
    let o = dgm(&["minor", path_str(&corpus("r10.bm")), "--delete", "1"]);
    assert!(stdout(&o).starts_with("bm 5 9\n"), "{}", stdout(&o));
    // Gluing two triangles along `1` gives a 4-cycle.
    let tri = dir.path().join("t.bm");
    std::fs::write(&tri, "bm 2 3\nlabels 1 a b\n101\n011\n").unwrap();
    let tri2 = dir.path().join("t2.bm");
    std::fs::write(&tri2, "bm 2 3\nlabels 1 c d\n101\n011\n").unwrap();
    let o = dgm(&["twosum", path_str(&tri), path_str(&tri2), "--marker", "1"]);
    assert!(stdout(&o).starts_with("bm 3 4\nlabels a b c d\n"), "{}", stdout(&o));
    let json = dir.path().join("tree.json");
    let o = dgm(&["tree", path_str(&corpus("starlike.bm")), "--json", path_str(&json)]);
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("node ")).count(), 5);
    assert!(std::fs::read_to_string(&json).unwrap().contains("\"nodes\""));
}

#[test]
fn gadgets() {
    let o = dgm(&["gadget", "tripod"]);
    assert!(stdout(&o).starts_with("bm "), "{}", stdout(&o));
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("g.bm");
    std::fs::write(&f, stdout(&o)).unwrap();
    assert!(stdout(&dgm(&["recognize", path_str(&f)])).starts_with("NOT"));
    let o = dgm(&["gadget", "starlike", "-o", path_str(&f)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&dgm(&["recognize", path_str(&f)])).starts_with("delta-graphic (WheelDecomp)"));
    // Class constraints are preconditions.
    assert_eq!(code(&dgm(&["gadget", "tripod", "--part", "m2=M(K33)"])), 2);
    assert_eq!(code(&dgm(&["gadget", "bench", "--part", "zz=M(K33)"])), 2);
}

#[test]
fn graft_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("c4.graft");
    std::fs::write(&g, "graft\nvertices a b c d\nterminals a b c d\nedge 1 a b\nedge 2 b c\nedge 3 c d\nedge 4 d a\n").unwrap();
    let o = dgm(&["graft", "feasible", path_str(&g)]);
    assert_eq!(stdout(&o).lines().next(), Some("5 feasible sets"));
    let d = dir.path().join("c4.cyc");
    assert_eq!(code(&dgm(&["graft", "cyclic", path_str(&g), "-o", path_str(&d)])), 0);
    assert_eq!(stdout(&dgm(&["graft", "cyclic", path_str(&g), "--decomp", path_str(&d)])).trim(), "valid");
    let o = dgm(&["graft", "tomatroid", path_str(&g), "--decomp", path_str(&d)]);
    assert!(stdout(&o).starts_with("bm 2 4\n"), "{}", stdout(&o));
    // Delta1 has no cyclic decomposition.
    let t = dir.path().join("d1.graft");
    std::fs::write(&t, "graft\nvertices a b c\nterminals a b c\nedge 1 a b\nedge 2 b c\nedge 3 a c\n").unwrap();
    let o = dgm(&["graft", "cyclic", path_str(&t)]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("Delta1"));
}

#[test]
fn seeded_generators_are_deterministic() {
    for kind in ["binary", "wheel", "graft"] {
        let a = stdout(&dgm(&["random", kind, "--seed", "11"]));
        let b = stdout(&dgm(&["random", kind, "--seed", "11"]));
        assert_eq!(a, b);
        assert!(a.contains("# sha256 "));
    }
}

#[test]
fn corpus_files_are_sealed() {
    for entry in std::fs::read_dir(corpus("")).unwrap() {
        let p = entry.unwrap().path();
        let text = std::fs::read_to_string(&p).unwrap();
        assert!(text.lines().last().unwrap().starts_with("# sha256 "), "{}", p.display());
        assert_eq!(code(&dgm(&["info", path_str(&p)])), 0, "{}", p.display());
    }
}
