use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn dcix(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcix")).args(args).output().unwrap()
}

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/sample.txt")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn build(dir: &Path, name: &str, extra: &[&str]) -> PathBuf {
    let out = dir.join(name);
    let c = corpus();
    let mut args = vec!["build", c.to_str().unwrap(), "-o", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    let o = dcix(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

fn naive(text: &[u8], pat: &[u8]) -> Vec<usize> {
    (0..=text.len().saturating_sub(pat.len())).filter(|&i| text[i..].starts_with(pat)).collect()
}

#[test]
fn absent_pattern_counts_zero() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build(dir.path(), "a.dcix", &["--embed-text"]);
    let o = dcix(&["count", idx.to_str().unwrap(), "zzzz-not-in-the-corpus"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0\n");
}

#[test]
fn count_and_locate_match_scan() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build(dir.path(), "a.dcix", &["--embed-text", "--fast-report"]);
    let text = std::fs::read(corpus()).unwrap();
    let pats: [&[u8]; 5] = [b"the", b"cover and", b"acgt", b"shifted matches.\nthe", b"q"];
    let list = dir.path().join("pats.txt");
    let mut body = Vec::new();
    for p in pats {
        body.extend_from_slice(&p.iter().map(|&b| if b == b'\n' { b' ' } else { b }).collect::<Vec<_>>());
        body.push(b'\n');
    }
    std::fs::write(&list, &body).unwrap();
    let lines: Vec<Vec<u8>> = body.split(|&b| b == b'\n').filter(|l| !l.is_empty()).map(<[u8]>::to_vec).collect();

    let o = dcix(&["count", idx.to_str().unwrap(), "--patterns", list.to_str().unwrap()]);
    assert!(o.status.success());
    let counts: Vec<usize> = stdout(&o).lines().map(|l| l.parse().unwrap()).collect();
    assert_eq!(counts, lines.iter().map(|p| naive(&text, p).len()).collect::<Vec<_>>());

    let o = dcix(&["locate", idx.to_str().unwrap(), "--patterns", list.to_str().unwrap(), "--sequential"]);
    assert!(o.status.success());
    for (line, p) in stdout(&o).lines().zip(&lines) {
        let got: Vec<usize> = line.split(',').filter(|s| !s.is_empty()).map(|s| s.parse().unwrap()).collect();
        assert_eq!(got, naive(&text, p));
    }
}

#[test]
fn codes_patterns() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build(dir.path(), "a.dcix", &["--embed-text"]);
    let text = std::fs::read(corpus()).unwrap();
    let o = dcix(&["count", idx.to_str().unwrap(), "--codes", "97,99,103"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim().parse::<usize>().unwrap(), naive(&text, b"acg").len());
}

#[test]
fn selfcheck_bundled_corpus() {
    let c = corpus();
    let o = dcix(&["selfcheck", c.to_str().unwrap(), "--queries", "400", "--seed", "9"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).trim_end().ends_with("ok"));
}

#[test]
fn sidecar_text_required_when_not_embedded() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build(dir.path(), "b.dcix", &[]);
    let o = dcix(&["count", idx.to_str().unwrap(), "the"]);
    assert_eq!(o.status.code(), Some(2));
    let c = corpus();
    let o = dcix(&["count", idx.to_str().unwrap(), "the", "--text", c.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read(&c).unwrap();
    assert_eq!(stdout(&o).trim().parse::<usize>().unwrap(), naive(&text, b"the").len());
}

#[test]
fn build_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = build(dir.path(), "a.dcix", &["--embed-text", "--r", "1", "--x0-period", "8"]);
    let b = build(dir.path(), "b.dcix", &["--embed-text", "--r", "1", "--x0-period", "8"]);
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn corrupt_index_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build(dir.path(), "a.dcix", &["--embed-text"]);
    let mut bytes = std::fs::read(&idx).unwrap();
    let mid = bytes.len() / 2;
    bytes[mid] ^= 1;
    std::fs::write(&idx, bytes).unwrap();
    let o = dcix(&["count", idx.to_str().unwrap(), "the"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("checksum"));
}

#[test]
fn stats_components_add_up() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build(dir.path(), "a.dcix", &["--embed-text"]);
    let o = dcix(&["stats", idx.to_str().unwrap()]);
    assert!(o.status.success());
    let out = stdout(&o);
    let table: Vec<(String, u64)> = out
        .lines()
        .skip_while(|l| !l.starts_with("component"))
        .skip(1)
        .filter_map(|l| {
            let mut it = l.split_whitespace();
            Some((it.next()?.to_string(), it.next()?.parse().ok()?))
        })
        .collect();
    let (total, parts): (Vec<_>, Vec<_>) = table.into_iter().partition(|(k, _)| k == "total");
    assert!(parts.len() >= 5);
    assert_eq!(total[0].1, parts.iter().map(|p| p.1).sum::<u64>());
}

#[test]
fn bench_runs() {
    let dir = tempfile::tempdir().unwrap();
    let idx = build(dir.path(), "a.dcix", &["--embed-text"]);
    let o = dcix(&["bench", idx.to_str().unwrap(), "--queries", "100"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("p50") && out.contains("meta_steps"));
}
