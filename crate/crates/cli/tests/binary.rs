use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

fn bk(args: &[&str], stdin: &str, threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_bk"));
    cmd.args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    if let Some(t) = threads {
        cmd.env("BK_THREADS", t);
    }
    let mut child = cmd.spawn().expect("spawn bk");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(stdin.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn text(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("bk-binary-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const C6: &str = "p tw 6 6\n1 2\n2 3\n3 4\n4 5\n5 6\n6 1\n";

#[test]
fn exit_codes() {
    let sep = bk(&["vbisect", "--k", "2", "--c", "2"], C6, None);
    assert_eq!(sep.status.code(), Some(0));
    assert!(text(&sep).starts_with("sep 2\n"));
    assert_eq!(
        bk(&["vbisect", "--k", "1", "--c", "2"], C6, None)
            .status
            .code(),
        Some(1)
    );
    let bad = bk(&["bisect"], "p tw 2 1\n1 3\n", None);
    assert_eq!(bad.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("line 2"));
    assert_eq!(
        bk(
            &["bpart", "--d", "2", "--graph", "/nonexistent/x.gr"],
            "",
            None
        )
        .status
        .code(),
        Some(2)
    );
    assert_eq!(bk(&["frobnicate"], "", None).status.code(), Some(2));
}

#[test]
fn solve_then_verify() {
    let graph = text(&bk(
        &["gen", "random", "--n", "9", "--seed", "4", "--connected"],
        "",
        None,
    ));
    let gpath = scratch("g.gr");
    std::fs::write(&gpath, &graph).unwrap();
    let sol = bk(&["bisect", "--graph", gpath.to_str().unwrap()], "", None);
    assert_eq!(sol.status.code(), Some(0));
    let spath = scratch("g.sol");
    std::fs::write(&spath, text(&sol)).unwrap();
    let ok = bk(
        &[
            "verify",
            "--graph",
            gpath.to_str().unwrap(),
            "--solution",
            spath.to_str().unwrap(),
        ],
        "",
        None,
    );
    assert_eq!((ok.status.code(), text(&ok).as_str()), (Some(0), "valid\n"));

    // Understating the cut makes the file invalid.
    let body = text(&sol);
    let first = body
        .lines()
        .find(|l| l.starts_with("cut "))
        .unwrap()
        .to_string();
    let value: u64 = first[4..].parse().unwrap();
    if value > 0 {
        std::fs::write(&spath, body.replace(&first, &format!("cut {}", value - 1))).unwrap();
        let bad = bk(
            &[
                "verify",
                "--graph",
                gpath.to_str().unwrap(),
                "--solution",
                spath.to_str().unwrap(),
            ],
            "",
            None,
        );
        assert_eq!(
            (bad.status.code(), text(&bad).as_str()),
            (Some(1), "invalid\n")
        );
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let graph = text(&bk(
        &["gen", "random", "--n", "10", "--p", "0.4", "--seed", "7"],
        "",
        None,
    ));
    for args in [
        &["bpart", "--d", "3"][..],
        &["vbisect", "--k", "3", "--c", "2"],
        &["bisect"],
    ] {
        let one = bk(args, &graph, Some("1"));
        let four = bk(args, &graph, Some("4"));
        assert_eq!(one.stdout, four.stdout, "{args:?}");
        assert_eq!(one.status.code(), four.status.code());
    }
}

#[test]
fn dot_output_and_map_files() {
    let dot = bk(
        &["--dot", "gen", "choice", "--a", "1,3", "--b", "4"],
        "",
        None,
    );
    assert_eq!(dot.status.code(), Some(0));
    assert!(text(&dot).starts_with("graph"));
    let map = scratch("phi.map");
    let trim = bk(
        &[
            "trim",
            "--k",
            "2",
            "--terminals",
            "1,4",
            "--map",
            map.to_str().unwrap(),
        ],
        C6,
        None,
    );
    assert_eq!(trim.status.code(), Some(0));
    let lines = std::fs::read_to_string(&map).unwrap();
    assert_eq!(lines.lines().filter(|l| l.starts_with("phi ")).count(), 6);
    assert!(!text(&trim).contains("phi "));
}

#[test]
fn generator_headers() {
    let out = bk(
        &[
            "gen",
            "binpack",
            "--weights",
            "2,2,2",
            "--bins",
            "3",
            "--cap",
            "2",
        ],
        "",
        None,
    );
    let body = text(&out);
    assert!(body
        .lines()
        .any(|l| l.starts_with("c provenance: binpacking-to-forest ")));
    let solved = bk(&["bpart", "--d", "3"], &body, None);
    assert!(text(&solved).starts_with("cut 0\n"));
}
