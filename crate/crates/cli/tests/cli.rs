use std::fs;
use std::io::Write;
use std::process::{Command, Output, Stdio};

use nestint::{parse_graph, Graph};

fn nestint(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_nestint"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

const CLAW: &str = "4 3\n0 1\n0 2\n0 3\n";
const P4: &str = "4 3\n0 1\n1 2\n2 3\n";
const C4: &str = "4 4\n0 1\n1 2\n2 3\n3 0\n";

/// Least adjacency string over all vertex orders (small graphs only).
fn canonical(g: &Graph) -> Vec<bool> {
    fn go(g: &Graph, rest: &mut Vec<usize>, pos: &mut Vec<usize>, best: &mut Option<Vec<bool>>) {
        if rest.is_empty() {
            let n = pos.len();
            let code: Vec<bool> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| g.has_edge(pos[i], pos[j])).collect();
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            pos.push(v);
            go(g, rest, pos, best);
            pos.pop();
            rest.insert(i, v);
        }
    }
    let mut best = None;
    go(g, &mut (0..g.n()).collect(), &mut Vec::new(), &mut best);
    best.unwrap_or_default()
}

#[test]
fn nesting_of_the_claw() {
    let o = nestint(&["nesting"], CLAW);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "nu=2\n");
    let o = nestint(&["nesting", "--triples"], CLAW);
    assert!(stdout(&o).contains("node\tkind\talpha\tbeta\tgamma\n"));
    assert!(stdout(&o).contains("\tP\t2\t1\t1\n"));
}

#[test]
fn recognize_exit_codes() {
    let o = nestint(&["recognize", "--k", "1"], P4);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("yes\n", Some(0)));
    let o = nestint(&["recognize", "--k", "1"], CLAW);
    assert_eq!((stdout(&o).as_str(), o.status.code()), ("no\n", Some(1)));
    let o = nestint(&["recognize", "--k", "3"], C4);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn error_exit_codes() {
    assert_eq!(nestint(&["nesting"], "3 1\n0 7\n").status.code(), Some(2));
    assert_eq!(nestint(&["nesting"], "2 2\n0 1\n").status.code(), Some(2));
    assert_eq!(nestint(&["nesting"], C4).status.code(), Some(3));
    let star = "7 6\n0 1\n0 2\n0 3\n0 4\n0 5\n0 6\n";
    let o = nestint(&["oracle", "--cap", "100"], star);
    assert_eq!(o.status.code(), Some(4));
    assert!(!o.stderr.is_empty());
    assert_eq!(nestint(&["nesting", "/nonexistent/graph"], "").status.code(), Some(2));
}

#[test]
fn oracle_agrees_with_nesting() {
    let o = nestint(&["oracle", "--triples", "--jobs", "2"], CLAW);
    assert_eq!(stdout(&o), "nu=2\ntriple=(2,1,1)\n");
}

#[test]
fn represent_and_layers() {
    let o = nestint(&["represent"], CLAW);
    let r = nestint::parse_representation(&stdout(&o)).unwrap();
    assert!(r.verify(&parse_graph(CLAW).unwrap()));
    assert_eq!(r.nesting_stats().total, 2);
    let text = stdout(&nestint(&["layers"], CLAW));
    let mut labels: Vec<&str> = text.lines().map(|l| l.split(' ').nth(1).unwrap()).collect();
    labels.sort();
    assert_eq!(labels, ["1", "1", "1", "2"]);
}

#[test]
fn gen_encode_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let p = |name: &str| dir.path().join(name).to_str().unwrap().to_string();
    for seed in 0..5 {
        let seed = seed.to_string();
        let o = nestint(&["gen", "--n", "8", "--seed", &seed, "--output", &p("g.txt"), "--repr", &p("g.repr")], "");
        assert!(o.status.success());
        let g = parse_graph(&fs::read_to_string(p("g.txt")).unwrap()).unwrap();
        let r = nestint::parse_representation(&fs::read_to_string(p("g.repr")).unwrap()).unwrap();
        assert!(r.verify(&g));

        for extra in [vec![], vec!["--repr".to_string(), p("g.repr")]] {
            let mut args = vec!["encode".to_string(), p("g.txt"), "--output".into(), p("g.bin")];
            args.extend(extra);
            let args: Vec<&str> = args.iter().map(|s| s.as_str()).collect();
            assert!(nestint(&args, "").status.success());
            let o = nestint(&["decode", &p("g.bin"), "--repr", &p("h.repr")], "");
            assert!(o.status.success());
            let h = parse_graph(&stdout(&o)).unwrap();
            assert_eq!(canonical(&g), canonical(&h), "seed {seed}");
            let hr = nestint::parse_representation(&fs::read_to_string(p("h.repr")).unwrap()).unwrap();
            assert!(hr.verify(&h));
        }
    }
}

#[test]
fn outputs_are_deterministic() {
    for args in
        [&["nesting", "--triples"][..], &["represent"], &["layers"], &["tree"], &["gen", "--n", "30", "--seed", "4"]]
    {
        let a = nestint(args, P4);
        let b = nestint(args, P4);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn tree_dump() {
    let o = nestint(&["tree"], CLAW);
    let text = stdout(&o);
    assert!(text.starts_with("P {0}\n"), "{text}");
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn reduce3p_figure_instance() {
    let dir = tempfile::tempdir().unwrap();
    let pre = dir.path().join("pre.txt");
    let sol = dir.path().join("sol.txt");
    let o = nestint(
        &["reduce3p", "--predrawn", pre.to_str().unwrap(), "--solve", sol.to_str().unwrap()],
        "2 7\n2 2 2 2 3 3\n",
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let g = parse_graph(&stdout(&o)).unwrap();
    assert_eq!(g.n(), 32);
    assert_eq!(fs::read_to_string(&pre).unwrap(), "0 0/1 1/1 1/1\n1 9/1 10/1 1/1\n2 18/1 19/1 1/1\n");
    let r = nestint::parse_representation(&fs::read_to_string(&sol).unwrap()).unwrap();
    assert!(r.verify(&g));
    assert_eq!(r.lengths().len(), 2);

    assert_eq!(nestint(&["reduce3p"], "2 7\n2 2 2 2 2 4\n").status.code(), Some(2));
    let o = nestint(&["reduce3p", "--allow-outside-window", "--solve", sol.to_str().unwrap()], "2 7\n2 2 2 2 2 4\n");
    assert_eq!(o.status.code(), Some(1));
}
