use std::path::PathBuf;

use ringcode::cli::{run, TABLE1};

fn ringcode(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("ringcode").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ringcode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn table1_matches_the_golden_file() {
    let (code, out, _) = ringcode(&["verify", "table1"]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "table1: 30 rows checked, all match");
    let (code, out, _) = ringcode(&["verify", "table1", "--max-k", "5"]);
    assert_eq!((code, out.trim()), (0, "table1: 5 rows checked, all match"));
}

#[test]
fn tampered_golden_file_fails() {
    let tampered = TABLE1.replace("(7,6,4)", "(7,5,5)");
    let path = scratch("table1.txt", &tampered);
    let (code, out, _) = ringcode(&["verify", "table1", "--golden", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("17"), "{out}");
    let path = scratch("short.txt", "1: (1)\n");
    assert_eq!(
        ringcode(&["verify", "table1", "--golden", path.to_str().unwrap()]).0,
        1
    );
}

#[test]
fn example_lists() {
    let (code, out, _) = ringcode(&["verify", "example513"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("2^11: (11) (9,2) (8,3) (7,4) (6,5) ok"));
    assert!(out.contains("2^7*3^5*5^2: 6 rings ok"));
}

#[test]
fn partition_commands() {
    let (code, out, _) = ringcode(&["partitions", "maximal", "--k", "17"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 9);
    assert_eq!(out.lines().last(), Some("(7,6,4)"));
    assert_eq!(
        ringcode(&["partitions", "enumerate", "--k", "4"]).1,
        "(4)\n(3,1)\n(2,2)\n(2,1,1)\n(1,1,1,1)\n"
    );
    let (code, out, _) = ringcode(&["partitions", "divides", "--left", "(2,1)", "--right", "(3)"]);
    assert_eq!((code, out.trim()), (0, "(2,1)|(3): YES"));
    let (code, out, _) = ringcode(&["partitions", "divides", "--left", "(3)", "--right", "(2,1)"]);
    assert_eq!((code, out.trim()), (0, "(3)|(2,1): NO"));
    assert_eq!(
        ringcode(&[
            "partitions",
            "divides",
            "--left",
            "(3,2)",
            "--right",
            "(6,4)"
        ])
        .0,
        2
    );
    assert_eq!(ringcode(&["partitions", "maximal", "--k", "0"]).0, 2);
}

#[test]
fn dominance_commands() {
    let (code, out, _) = ringcode(&[
        "dominance",
        "fields",
        "--left",
        "GF(8)xGF(4)",
        "--right",
        "GF(32)",
    ]);
    assert_eq!(code, 0);
    assert!(
        out.contains("left⪯right: NO (prime 2 exponent 5 has no divisor in {3,2})"),
        "{out}"
    );
    assert!(out.contains("right⪯left: NO"), "{out}");
    let (_, out, _) = ringcode(&["dominance", "catalog", "--left", "Z(4)", "--right", "GF(4)"]);
    assert!(out.contains("left⪯right: YES"), "{out}");
    let (_, out, _) = ringcode(&["rings", "maximal", "--size", "2^7*3^5*5^2"]);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn generate_solve_verify_round_trip() {
    let (code, net, _) = ringcode(&["network", "gen", "two-six"]);
    assert_eq!(code, 0);
    let file = scratch("two_six.json", &net);
    let file = file.to_str().unwrap();

    let (code, out, _) = ringcode(&["network", "solve", "--file", file, "--ring", "GF(2)"]);
    assert_eq!((code, out.trim()), (1, "UNSOLVABLE (search exhausted)"));

    let (code, solution, _) = ringcode(&["network", "solve", "--file", file, "--ring", "GF(3)"]);
    assert_eq!(code, 0);
    let (_, parallel, _) = ringcode(&[
        "network", "solve", "--file", file, "--ring", "GF(3)", "--jobs", "3",
    ]);
    assert_eq!(solution, parallel);
    let code_file = scratch("code.json", &solution);
    let code_file = code_file.to_str().unwrap();
    let (code, out, _) = ringcode(&["network", "verify", "--file", file, "--code", code_file]);
    assert_eq!((code, out.trim()), (0, "VERIFIED"));

    let broken = solution.replacen("\"1\"", "\"0\"", 1);
    let broken_file = scratch("broken.json", &broken);
    let (code, out, _) = ringcode(&[
        "network",
        "verify",
        "--file",
        file,
        "--code",
        broken_file.to_str().unwrap(),
    ]);
    assert_eq!((code, out.trim()), (1, "NOT A SOLUTION"));

    let (code, _, err) = ringcode(&[
        "network", "solve", "--file", file, "--ring", "GF(9)", "--budget", "2^10",
    ]);
    assert_eq!(code, 2);
    assert!(err.contains("9^8"), "{err}");
}

#[test]
fn choose_two_threshold_from_the_command_line() {
    for n in 3..=5u64 {
        let (_, net, _) = ringcode(&["network", "gen", "choose-two", "--n", &n.to_string()]);
        let file = scratch(&format!("c{n}.json"), &net);
        for q in [2u64, 3, 4, 5] {
            let ring = format!("GF({q})");
            let (code, _, _) = ringcode(&[
                "network",
                "solve",
                "--file",
                file.to_str().unwrap(),
                "--ring",
                &ring,
            ]);
            assert_eq!(code == 0, q + 1 >= n, "n={n} {ring}");
        }
    }
}

#[test]
fn transforms() {
    let (_, net, _) = ringcode(&["network", "gen", "butterfly"]);
    let file = scratch("butterfly.json", &net);
    let file = file.to_str().unwrap();
    let (_, sol, _) = ringcode(&["network", "solve", "--file", file, "--ring", "GF(2)"]);
    let code_file = scratch("b2.json", &sol);
    let (code, lifted, err) = ringcode(&[
        "network",
        "transform",
        "--file",
        file,
        "--code",
        code_file.to_str().unwrap(),
        "--ring",
        "GF(4)",
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(lifted.contains("GF(2^2)"));

    let (_, sol, _) = ringcode(&["network", "solve", "--file", file, "--ring", "Z(4)"]);
    let code_file = scratch("b4.json", &sol);
    let (code, reduced, err) = ringcode(&[
        "network",
        "transform",
        "--file",
        file,
        "--code",
        code_file.to_str().unwrap(),
        "--ring",
        "Z(2)",
    ]);
    assert_eq!(code, 0, "{err}");
    assert!(reduced.contains("\"Z(2)\""), "{reduced}");
}

#[test]
fn usage_errors() {
    assert_eq!(ringcode(&[]).0, 2);
    assert_eq!(ringcode(&["rings", "parse", "--ring", "GF(6)"]).0, 2);
    assert_eq!(
        ringcode(&["network", "gen", "choose-two", "--n", "20"]).0,
        2
    );
    assert_eq!(
        ringcode(&[
            "network",
            "verify",
            "--file",
            "/nonexistent",
            "--code",
            "/nonexistent"
        ])
        .0,
        2
    );
    let (code, out, _) = ringcode(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("network"));
}
