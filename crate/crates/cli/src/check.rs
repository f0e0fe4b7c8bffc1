use std::fs;
use std::time::{Duration, Instant};

use dcindex::{oracle, Config, Counters, Index, Mode};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::{open, read_text, BenchArgs, CheckArgs, OpenArgs, Res};

/// Half substrings of the text, half uniformly random strings.
fn workload(text: &[u32], sigma: u32, count: usize, max_len: usize, seed: u64) -> Vec<Vec<u32>> {
    let mut rng = StdRng::seed_from_u64(seed);
    let n = text.len();
    (0..count)
        .map(|k| {
            let len = rng.gen_range(1..=max_len.min(n).max(1));
            if k % 2 == 0 {
                let s = rng.gen_range(0..=n - len);
                text[s..s + len].to_vec()
            } else {
                (0..len).map(|_| rng.gen_range(0..sigma)).collect()
            }
        })
        .collect()
}

struct Row {
    name: &'static str,
    cases: usize,
    failures: usize,
}

fn check_index(idx: &Index, text: &[u32], queries: usize, seed: u64, rows: &mut Vec<Row>) {
    let pats = workload(text, idx.text().sigma(), queries, 200, seed);
    let want: Vec<Vec<usize>> = pats.iter().map(|p| oracle::naive_search(text, p)).collect();

    let (counts, _) = idx.count_batch(&pats, Mode::Parallel);
    let bad = counts.iter().zip(&want).filter(|(c, w)| **c != w.len()).count();
    rows.push(Row { name: "count", cases: pats.len(), failures: bad });

    let (occ, _) = idx.locate_batch(&pats, Mode::Parallel);
    let bad = occ.iter().zip(&want).filter(|(o, w)| o != w).count();
    rows.push(Row { name: "locate", cases: pats.len(), failures: bad });

    let (seq, _) = idx.count_batch(&pats, Mode::Sequential);
    let bad = seq.iter().zip(&counts).filter(|(a, b)| a != b).count();
    rows.push(Row { name: "sequential", cases: pats.len(), failures: bad });

    let bytes = idx.to_bytes(true);
    let (cases, bad) = match Index::from_bytes(&bytes, None) {
        Ok(back) => {
            let same = back.to_bytes(true) == bytes;
            let (c2, _) = back.count_batch(&pats, Mode::Parallel);
            let bad = c2.iter().zip(&counts).filter(|(a, b)| a != b).count();
            (pats.len() + 1, bad + !same as usize)
        }
        Err(_) => (1, 1),
    };
    rows.push(Row { name: "round trip", cases, failures: bad });
}

/// Returns whether every check passed.
pub fn selfcheck(a: &CheckArgs) -> Res<bool> {
    let head = fs::read(&a.path)?;
    let mut rows = Vec::new();
    if head.starts_with(b"DCIX") {
        let (idx, text) = open(&OpenArgs { index: a.path.clone(), text: a.text.clone(), format: a.format })?;
        check_index(&idx, &text, a.queries, a.seed, &mut rows);
    } else {
        let text = read_text(&a.path, a.format)?;
        let sigma = text.iter().max().map_or(2, |&m| (m + 1).max(2));
        for fast in [false, true] {
            let cfg = Config { fast_report: fast, ..Config::default() };
            let idx = Index::build(&text, sigma, &cfg)?;
            check_index(&idx, &text, a.queries, a.seed, &mut rows);
        }
    }
    println!("{:<12}{:>10}{:>10}", "check", "cases", "failures");
    for r in &rows {
        println!("{:<12}{:>10}{:>10}", r.name, r.cases, r.failures);
    }
    let failed: usize = rows.iter().map(|r| r.failures).sum();
    println!("{}", if failed == 0 { "ok" } else { "MISMATCH" });
    Ok(failed == 0)
}

fn percentiles(mut v: Vec<Duration>) -> [Duration; 4] {
    v.sort_unstable();
    let at = |q: f64| v[((v.len() - 1) as f64 * q).round() as usize];
    [at(0.5), at(0.9), at(0.99), *v.last().unwrap()]
}

fn print_counters(c: &Counters) {
    let rows = [
        ("queries", c.queries),
        ("meta_steps", c.meta_steps),
        ("pred_ops", c.pred_ops),
        ("jumps", c.jumps),
        ("shifted_lcp_evals", c.shifted_lcp_evals),
        ("boundary_lcp_evals", c.boundary_lcp_evals),
        ("restricted_searches", c.restricted_searches),
        ("max_restricted_leaves", c.max_restricted_leaves),
        ("range_queries", c.range_queries),
        ("small_queries", c.small_queries),
        ("naive_scans", c.naive_scans),
    ];
    for (k, v) in rows {
        println!("  {k:<22}{v:>12}");
    }
}

pub fn bench(a: &BenchArgs) -> Res<()> {
    let (idx, text) = open(&a.open)?;
    if a.queries == 0 {
        return Err("--queries must be positive".into());
    }
    let pats = workload(&text, idx.text().sigma(), a.queries, a.max_len.max(1), a.seed);
    println!("{} queries, lengths 1..={}", pats.len(), a.max_len);
    println!("{:<8}{:>10}{:>10}{:>10}{:>10}  (microseconds)", "op", "p50", "p90", "p99", "max");
    for locate in [false, true] {
        let mut lat = Vec::with_capacity(pats.len());
        let mut ctr = Counters::default();
        for p in &pats {
            let t = Instant::now();
            if locate {
                std::hint::black_box(idx.locate_with(p, &mut ctr));
            } else {
                std::hint::black_box(idx.count_with(p, &mut ctr));
            }
            lat.push(t.elapsed());
        }
        let us = percentiles(lat).map(|d| d.as_secs_f64() * 1e6);
        let name = if locate { "locate" } else { "count" };
        println!("{name:<8}{:>10.2}{:>10.2}{:>10.2}{:>10.2}", us[0], us[1], us[2], us[3]);
        if !locate {
            println!("counters (count):");
            print_counters(&ctr);
        }
    }
    for mode in [Mode::Sequential, Mode::Parallel] {
        let t = Instant::now();
        std::hint::black_box(idx.count_batch(&pats, mode));
        let secs = t.elapsed().as_secs_f64();
        println!("batch {:<11}{:>10.0} queries/s", format!("{mode:?}"), pats.len() as f64 / secs.max(1e-9));
    }
    Ok(())
}
