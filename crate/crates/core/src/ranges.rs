//! Points (rank of a selected suffix, reversed preceding run) grouped by run
//! length, with 2-d range counting and reporting.

use crate::fastreport::FastReport;
use crate::sst::SampledSuffixTree;
use crate::text::{bits_for, TextModel};
use crate::wavelet::WaveletTree;

#[derive(Clone, Debug)]
pub struct PointClass {
    pub(crate) run: u32,
    pub(crate) xs: Vec<u32>,
    pub(crate) wt: WaveletTree,
    pub(crate) fast: Option<FastReport>,
}

impl PointClass {
    pub fn run(&self) -> u32 {
        self.run
    }

    pub fn xs(&self) -> &[u32] {
        &self.xs
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn y(&self, i: usize) -> u64 {
        self.wt.access(i)
    }

    pub fn wavelet(&self) -> &WaveletTree {
        &self.wt
    }

    pub fn fast(&self) -> Option<&FastReport> {
        self.fast.as_ref()
    }

    fn index_range(&self, lo: u32, hi: u32) -> (usize, usize) {
        (self.xs.partition_point(|&x| x < lo), self.xs.partition_point(|&x| x <= hi))
    }

    /// Points with x in `[lo, hi]` and y in `[a, b]`.
    pub fn count(&self, lo: u32, hi: u32, a: u64, b: u64) -> usize {
        let (l, r) = self.index_range(lo, hi);
        self.wt.count(l, r, a, b)
    }

    /// x-coordinates of the points in the rectangle, ascending.
    pub fn report(&self, lo: u32, hi: u32, a: u64, b: u64) -> Vec<u32> {
        let (l, r) = self.index_range(lo, hi);
        self.wt.report(l, r, a, b).into_iter().map(|i| self.xs[i]).collect()
    }

    pub fn report_fast(&self, lo: u32, hi: u32, a: u64, b: u64) -> Option<Vec<u32>> {
        let fr = self.fast.as_ref()?;
        let (l, r) = self.index_range(lo, hi);
        Some(fr.query(l, r, a, b).into_iter().map(|i| self.xs[i]).collect())
    }

    pub fn size_bits(&self) -> u64 {
        self.xs.len() as u64 * 32 + self.wt.size_bits() + self.fast.as_ref().map_or(0, FastReport::size_bits)
    }
}

#[derive(Clone, Debug)]
pub struct PointSets {
    pub(crate) digit_bits: u32,
    pub(crate) classes: Vec<PointClass>,
}

/// Digits for the run before a selected position `p`: `T[p-1]` is the most
/// significant.
pub fn reversed_run(tm: &TextModel, p: usize, len: usize, digit_bits: u32) -> u64 {
    let mut v = 0u64;
    for j in 1..=len {
        v = (v << digit_bits) | tm.code(p - j) as u64;
    }
    v
}

impl PointSets {
    /// `fast` = Some((group, eps)) also builds the fast reporting structure.
    pub fn build(tm: &TextModel, sst: &SampledSuffixTree, fast: Option<(usize, f64)>) -> Self {
        let r = tm.r();
        let digit_bits = bits_for(tm.sigma() as u64);
        let runs = [r, 2 * r, 2 * r + 1, 4 * r + 2];
        let mut pts: Vec<Vec<(u32, u64)>> = vec![Vec::new(); runs.len()];
        for (k, &p) in tm.selected().iter().enumerate() {
            let l = tm.run_len(k);
            if l == 0 {
                continue;
            }
            let c = runs.iter().position(|&x| x == l).expect("run length is one of the four classes");
            let x = sst.rank_of(tm, p as usize).unwrap();
            pts[c].push((x, reversed_run(tm, p as usize, l as usize, digit_bits)));
        }
        let classes = runs
            .iter()
            .zip(pts)
            .map(|(&run, mut v)| {
                v.sort_unstable();
                let ys: Vec<u64> = v.iter().map(|p| p.1).collect();
                PointClass::from_parts(run, v.iter().map(|p| p.0).collect(), &ys, digit_bits, fast)
            })
            .collect();
        Self { digit_bits, classes }
    }

    pub fn classes(&self) -> &[PointClass] {
        &self.classes
    }

    pub fn digit_bits(&self) -> u32 {
        self.digit_bits
    }

    pub fn has_fast(&self) -> bool {
        self.classes.iter().any(|c| c.fast.is_some())
    }

    /// y interval of a class whose reversed run starts with the `i` digits
    /// of `rev_prefix`.
    pub fn prefix_interval(&self, run: u32, i: usize, rev_prefix: u64) -> Option<(u64, u64)> {
        if i > run as usize {
            return None;
        }
        let free = (run as usize - i) as u32 * self.digit_bits;
        let lo = rev_prefix << free;
        Some((lo, lo | ((1u64 << free) - 1)))
    }

    /// Occurrences starting `i` positions before a selected suffix with rank
    /// in `[lo, hi]`, whose preceding `i` symbols reversed are `rev_prefix`.
    pub fn count(&self, i: usize, lo: u32, hi: u32, rev_prefix: u64) -> usize {
        self.classes
            .iter()
            .filter_map(|c| self.prefix_interval(c.run, i, rev_prefix).map(|(a, b)| c.count(lo, hi, a, b)))
            .sum()
    }

    /// Ranks of the matching selected suffixes, per class, using the fast
    /// structure when present.
    pub fn report(&self, i: usize, lo: u32, hi: u32, rev_prefix: u64) -> Vec<u32> {
        let mut out = Vec::new();
        for c in &self.classes {
            if let Some((a, b)) = self.prefix_interval(c.run, i, rev_prefix) {
                match c.report_fast(lo, hi, a, b) {
                    Some(v) => out.extend(v),
                    None => out.extend(c.report(lo, hi, a, b)),
                }
            }
        }
        out
    }

    pub fn size_bits(&self) -> u64 {
        self.classes.iter().map(PointClass::size_bits).sum()
    }
}

impl PointClass {
    pub(crate) fn from_parts(run: u32, xs: Vec<u32>, ys: &[u64], digit_bits: u32, fast: Option<(usize, f64)>) -> Self {
        let height = run * digit_bits;
        Self {
            run,
            xs,
            wt: WaveletTree::build(ys, height),
            fast: fast.filter(|_| !ys.is_empty()).map(|(g, eps)| FastReport::build(ys, height, g, eps)),
        }
    }
}
