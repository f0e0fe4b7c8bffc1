//! Index assembly and the count/locate query algorithm.
//!
//! An occurrence `T[f..f+q)` of a long pattern is classified by the distance
//! `i` from `f` to the first selected position inside it. `i = 0` means `Q`
//! prefixes a sampled suffix; otherwise `Q[i..]` prefixes the sampled suffix
//! at `f+i` and `Q[..i]` matches the run just before it, which is a 2-d
//! range query on (rank, reversed run).

use crate::counters::Counters;
use crate::error::{Error, Result};
use crate::fastreport;
use crate::jumps::{self, jump_binary, jump_short, ShortJumpTables};
use crate::par;
use crate::ranges::PointSets;
use crate::smallpat::SmallPatternIndex;
use crate::sst::{Locus, SampledSuffixTree};
use crate::text::{bits_for, TextModel};

pub const FORMAT_VERSION: u32 = 1;

/// Build options; `None` picks the default for the text.
#[derive(Clone, Debug, PartialEq)]
pub struct Config {
    pub r: Option<u32>,
    pub x0_period: Option<usize>,
    pub x0_max_len: Option<usize>,
    pub fast_report: bool,
    pub group: Option<usize>,
    pub eps: f64,
}

impl Default for Config {
    fn default() -> Self {
        Self { r: None, x0_period: None, x0_max_len: None, fast_report: false, group: None, eps: 1.0 / 3.0 }
    }
}

/// Parameters actually used by a built index.
#[derive(Clone, Debug, PartialEq)]
pub struct Params {
    pub r: u32,
    pub x0_period: usize,
    pub x0_max_len: usize,
    pub fast_report: bool,
    pub group: usize,
    pub eps: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Parallel,
    Sequential,
}

#[derive(Clone, Debug)]
pub struct Index {
    pub(crate) tm: TextModel,
    pub(crate) sst: SampledSuffixTree,
    pub(crate) jumps: ShortJumpTables,
    pub(crate) points: PointSets,
    pub(crate) small: SmallPatternIndex,
    pub(crate) params: Params,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Stats {
    pub n: usize,
    pub sigma: u32,
    pub r: u32,
    pub block: usize,
    pub meta_width: usize,
    pub selected: usize,
    pub tree_nodes: usize,
    pub points_per_class: Vec<(u32, usize)>,
    pub params: Params,
    pub short_names: usize,
    /// (component, bits)
    pub bits: Vec<(&'static str, u64)>,
}

impl Stats {
    pub fn total_bits(&self) -> u64 {
        self.bits.iter().map(|b| b.1).sum()
    }
}

impl Index {
    pub fn build(codes: &[u32], sigma: u32, config: &Config) -> Result<Self> {
        let tm = TextModel::build(codes, sigma, config.r)?;
        Self::from_text(tm, config)
    }

    pub(crate) fn from_text(tm: TextModel, config: &Config) -> Result<Self> {
        let sst = SampledSuffixTree::build(&tm);
        Self::assemble(tm, sst, config)
    }

    pub(crate) fn assemble(tm: TextModel, sst: SampledSuffixTree, config: &Config) -> Result<Self> {
        let params = resolve(&tm, config)?;
        let jumps = ShortJumpTables::build(&tm, &sst, params.x0_period, params.x0_max_len);
        let fast = params.fast_report.then_some((params.group, params.eps));
        let points = PointSets::build(&tm, &sst, fast);
        let small = SmallPatternIndex::build(&tm);
        Ok(Self { tm, sst, jumps, points, small, params })
    }

    pub fn text(&self) -> &TextModel {
        &self.tm
    }

    pub fn tree(&self) -> &SampledSuffixTree {
        &self.sst
    }

    pub fn short_tables(&self) -> &ShortJumpTables {
        &self.jumps
    }

    pub fn points(&self) -> &PointSets {
        &self.points
    }

    pub fn small(&self) -> &SmallPatternIndex {
        &self.small
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.tm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tm.is_empty()
    }

    pub fn count(&self, pattern: &[u32]) -> usize {
        self.count_with(pattern, &mut Counters::default())
    }

    pub fn locate(&self, pattern: &[u32]) -> Vec<usize> {
        self.locate_with(pattern, &mut Counters::default())
    }

    pub fn count_with(&self, pattern: &[u32], ctr: &mut Counters) -> usize {
        self.search(pattern, ctr, false).0
    }

    pub fn locate_with(&self, pattern: &[u32], ctr: &mut Counters) -> Vec<usize> {
        self.search(pattern, ctr, true).1
    }

    /// Count a batch of patterns; counters are merged across the batch.
    pub fn count_batch(&self, patterns: &[Vec<u32>], mode: Mode) -> (Vec<usize>, Counters) {
        let run = |p: &Vec<u32>| {
            let mut c = Counters::default();
            (self.count_with(p, &mut c), c)
        };
        let res: Vec<(usize, Counters)> = match mode {
            Mode::Parallel => par::map(patterns, run),
            Mode::Sequential => patterns.iter().map(run).collect(),
        };
        merge(res)
    }

    pub fn locate_batch(&self, patterns: &[Vec<u32>], mode: Mode) -> (Vec<Vec<usize>>, Counters) {
        let run = |p: &Vec<u32>| {
            let mut c = Counters::default();
            (self.locate_with(p, &mut c), c)
        };
        let res: Vec<(Vec<usize>, Counters)> = match mode {
            Mode::Parallel => par::map(patterns, run),
            Mode::Sequential => patterns.iter().map(run).collect(),
        };
        merge(res)
    }

    fn search(&self, pattern: &[u32], ctr: &mut Counters, report: bool) -> (usize, Vec<usize>) {
        ctr.queries += 1;
        let q = pattern.len();
        if q == 0 || q > self.tm.len() || pattern.iter().any(|&c| c >= self.tm.sigma()) {
            return (0, Vec::new());
        }
        if q <= self.small.max_len() {
            ctr.small_queries += 1;
            return if report {
                let v = self.small.locate(pattern);
                (v.len(), v)
            } else {
                (self.small.count(pattern), Vec::new())
            };
        }
        if self.tm.len() < self.tm.block() {
            // shorter than one cover block: the sampled structures are too sparse to matter
            ctr.naive_scans += 1;
            let n = self.tm.len();
            let out: Vec<usize> =
                (0..=n - q).filter(|&f| pattern.iter().enumerate().all(|(j, &c)| self.tm.code(f + j) == c)).collect();
            return (out.len(), if report { out } else { Vec::new() });
        }
        let pat = self.tm.pack_pattern(pattern).expect("validated");
        let short = q <= self.params.x0_max_len;
        let x0 = if short { self.jumps.find_x0_prefixes(&pat) } else { Vec::new() };
        let order = self.sst.leaf_order();
        let shifts = self.tm.cover().max_gap() as usize; // i in 0..shifts
        let mut loci: Vec<Locus> = Vec::with_capacity(shifts);
        let mut total = 0usize;
        let mut out = Vec::new();
        for i in 0..shifts {
            let x0_locus = |i: usize| {
                let (name, p) = x0[i];
                if p == 0 {
                    return None;
                }
                let (lo, hi) = self.jumps.x0_range(name).unwrap();
                Some(self.sst.locus_from_range(lo, hi, p))
            };
            // the earlier shift whose match reaches furthest
            let best = loci
                .iter()
                .enumerate()
                .map(|(t, l)| (t, t + l.len))
                .max_by_key(|&(t, end)| (end, usize::MAX - t))
                .filter(|&(_, end)| end > i);
            let loc = match best {
                Some((t, end)) => {
                    let target = end - i;
                    let x = order[loci[t].lo as usize] as usize + (i - t);
                    let landed = if short {
                        let (_, p) = x0[i];
                        if p >= target {
                            x0_locus(i).unwrap()
                        } else {
                            jump_short(&self.jumps, &self.tm, &self.sst, &pat, i, x0[i], x, target, ctr)
                        }
                    } else {
                        jump_binary(&self.tm, &self.sst, x, target, (0, order.len() as u32 - 1), ctr)
                    };
                    if landed.len < target || landed.len == q - i {
                        landed
                    } else {
                        self.sst.descend(&self.tm, &pat, i, Some(&landed), ctr)
                    }
                }
                None => {
                    let start = if short { x0_locus(i) } else { None };
                    self.sst.descend(&self.tm, &pat, i, start.as_ref(), ctr)
                }
            };
            if loc.len == q - i {
                if i == 0 {
                    total += loc.count();
                    if report {
                        out.extend(order[loc.lo as usize..=loc.hi as usize].iter().map(|&p| p as usize));
                    }
                } else {
                    ctr.range_queries += 1;
                    let rev = reversed_prefix(pattern, i, self.points.digit_bits());
                    if report {
                        let ranks = self.points.report(i, loc.lo, loc.hi, rev);
                        total += ranks.len();
                        out.extend(ranks.iter().map(|&k| order[k as usize] as usize - i));
                    } else {
                        total += self.points.count(i, loc.lo, loc.hi, rev);
                    }
                }
            }
            loci.push(loc);
        }
        out.sort_unstable();
        (total, out)
    }

    pub fn stats(&self) -> Stats {
        let tm = &self.tm;
        Stats {
            n: tm.len(),
            sigma: tm.sigma(),
            r: tm.r(),
            block: tm.block(),
            meta_width: tm.meta_width(),
            selected: tm.selected().len(),
            tree_nodes: self.sst.nodes().len(),
            points_per_class: self.points.classes().iter().map(|c| (c.run(), c.len())).collect(),
            params: self.params.clone(),
            short_names: self.jumps.names(),
            bits: vec![
                ("text", tm.size_bits()),
                ("cover", tm.cover().size_bits()),
                ("tree", self.sst.size_bits()),
                ("points", self.points.size_bits()),
                ("short_jumps", self.jumps.size_bits()),
                ("small_patterns", self.small.size_bits()),
            ],
        }
    }
}

/// `Q[i-1], Q[i-2], .., Q[0]` as digits, most significant first.
fn reversed_prefix(pattern: &[u32], i: usize, digit_bits: u32) -> u64 {
    (1..=i).fold(0u64, |v, j| (v << digit_bits) | pattern[i - j] as u64)
}

fn merge<T>(res: Vec<(T, Counters)>) -> (Vec<T>, Counters) {
    let mut total = Counters::default();
    let out = res
        .into_iter()
        .map(|(v, c)| {
            total.merge(&c);
            v
        })
        .collect();
    (out, total)
}

fn resolve(tm: &TextModel, config: &Config) -> Result<Params> {
    let r = tm.r();
    let min_len = 4 * r as usize + 4;
    let x0_max_len = config.x0_max_len.unwrap_or_else(|| jumps::default_max_len(r));
    if x0_max_len < min_len {
        return Err(Error::Config(format!("x0 max length must be at least {min_len}, got {x0_max_len}")));
    }
    let x0_period = config.x0_period.unwrap_or_else(|| jumps::default_period(tm.selected().len()));
    if x0_period == 0 {
        return Err(Error::Config("x0 period must be at least 1".into()));
    }
    let group = config.group.unwrap_or_else(|| fastreport::default_group(tm.len(), tm.sigma()));
    if !(1..=255).contains(&group) {
        return Err(Error::Config(format!("group size must be in 1..=255, got {group}")));
    }
    if !(config.eps > 0.0 && config.eps < 0.5) {
        return Err(Error::Config(format!("eps must be in (0, 1/2), got {}", config.eps)));
    }
    debug_assert!(bits_for(tm.sigma() as u64) * (4 * r + 2) <= 64);
    Ok(Params { r, x0_period, x0_max_len, fast_report: config.fast_report, group, eps: config.eps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use rand::{Rng, SeedableRng};

    fn check(codes: &[u32], sigma: u32, config: &Config, pats: &[Vec<u32>]) {
        let idx = Index::build(codes, sigma, config).unwrap();
        for pat in pats {
            let want = oracle::naive_search(codes, pat);
            let mut ctr = Counters::default();
            assert_eq!(idx.count_with(pat, &mut ctr), want.len(), "count {pat:?}");
            assert_eq!(idx.locate(pat), want, "locate {pat:?}");
            let q = pat.len();
            let m = idx.tm.meta_width();
            let bound = q.div_ceil(m) + idx.tm.cover().max_gap() as usize;
            assert!(ctr.meta_steps as usize <= bound, "meta steps {} > {bound}", ctr.meta_steps);
        }
    }

    fn patterns(codes: &[u32], sigma: u32, rng: &mut impl Rng, count: usize) -> Vec<Vec<u32>> {
        (0..count)
            .map(|k| {
                let len = rng.gen_range(1..=120.min(codes.len()));
                if k % 2 == 0 {
                    let a = rng.gen_range(0..=codes.len() - len);
                    let mut p = codes[a..a + len].to_vec();
                    if k % 6 == 0 {
                        let j = rng.gen_range(0..len);
                        p[j] = rng.gen_range(0..sigma);
                    }
                    p
                } else {
                    (0..len).map(|_| rng.gen_range(0..sigma)).collect()
                }
            })
            .collect()
    }

    #[test]
    fn whole_text_and_repeats() {
        let unit: Vec<u32> = b"banana".iter().map(|&c| (c - b'a') as u32 % 3).collect();
        let codes: Vec<u32> = unit.iter().cycle().take(600).copied().collect();
        let mut pats = vec![codes.clone(), codes[1..].to_vec(), codes[..599].to_vec()];
        for len in [1, 3, 7, 15, 16, 40, 100] {
            pats.push(codes[5..5 + len].to_vec());
        }
        for period in [1, 8, 64] {
            let cfg = Config { r: Some(1), x0_period: Some(period), ..Config::default() };
            check(&codes, 3, &cfg, &pats);
            let cfg = Config { r: Some(1), x0_period: Some(period), x0_max_len: Some(8), ..Config::default() };
            check(&codes, 3, &cfg, &pats);
        }
        let idx = Index::build(&codes, 3, &Config::default()).unwrap();
        assert_eq!(idx.locate(&codes), vec![0]);
    }

    #[test]
    fn random_corpus() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for &(sigma, n) in &[(2u32, 1500usize), (4, 3000), (16, 2000), (64, 2500)] {
            for text_kind in 0..2 {
                let codes: Vec<u32> = if text_kind == 0 {
                    (0..n).map(|_| rng.gen_range(0..sigma)).collect()
                } else {
                    let unit: Vec<u32> = (0..rng.gen_range(3..40)).map(|_| rng.gen_range(0..sigma)).collect();
                    (0..n)
                        .map(|i| if rng.gen_ratio(1, 50) { rng.gen_range(0..sigma) } else { unit[i % unit.len()] })
                        .collect()
                };
                let pats = patterns(&codes, sigma, &mut rng, 150);
                for r in [1, 2].map(|r| r.min(crate::text::max_cover_scale(sigma))) {
                    for fast in [false, true] {
                        let cfg = Config { r: Some(r), fast_report: fast, ..Config::default() };
                        check(&codes, sigma, &cfg, &pats);
                    }
                    let cfg = Config {
                        r: Some(r),
                        x0_max_len: Some(4 * r as usize + 4),
                        x0_period: Some(8),
                        ..Config::default()
                    };
                    check(&codes, sigma, &cfg, &pats);
                }
            }
        }
    }

    #[test]
    fn batch_modes_agree() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        let codes: Vec<u32> = (0..5000).map(|_| rng.gen_range(0..4)).collect();
        let idx = Index::build(&codes, 4, &Config::default()).unwrap();
        let pats = patterns(&codes, 4, &mut rng, 200);
        let (a, ca) = idx.count_batch(&pats, Mode::Parallel);
        let (b, cb) = idx.count_batch(&pats, Mode::Sequential);
        assert_eq!(a, b);
        assert_eq!(ca, cb);
        let (la, _) = idx.locate_batch(&pats, Mode::Parallel);
        assert_eq!(la.iter().map(Vec::len).collect::<Vec<_>>(), a);
    }

    #[test]
    fn rejects_bad_config() {
        let codes = vec![0u32; 100];
        assert!(Index::build(&codes, 2, &Config { r: Some(1), x0_max_len: Some(7), ..Config::default() }).is_err());
        assert!(Index::build(&codes, 2, &Config { x0_period: Some(0), ..Config::default() }).is_err());
        let idx = Index::build(&codes, 2, &Config::default()).unwrap();
        assert_eq!(idx.count(&[2]), 0);
        assert_eq!(idx.count(&[]), 0);
        assert!(idx.stats().total_bits() > 0);
    }
}
