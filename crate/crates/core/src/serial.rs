//! On-disk index format.
//!
//! ```text
//! "DCIX" | version u32 | section* | crc32c u32
//! section = tag u32 | payload length u64 | payload
//! ```
//!
//! Integers are little-endian. The checksum covers every preceding byte.
//! Hash maps and the fast reporting structure are rebuilt on load, so the
//! output depends only on the index contents and is byte-for-byte stable.

use std::fs::File;
use std::io::{BufReader, BufWriter, Read, Write};
use std::path::Path;

use crate::bitvec::BitVec;
use crate::diffcover::DifferenceCover;
use crate::engine::{Index, Params, FORMAT_VERSION};
use crate::error::{Error, Result};
use crate::fastreport::FastReport;
use crate::jumps::ShortJumpTables;
use crate::packed::PackedSeq;
use crate::ranges::{PointClass, PointSets};
use crate::smallpat::SmallPatternIndex;
use crate::sst::SampledSuffixTree;
use crate::text::{bits_for, TextModel};
use crate::wavelet::WaveletTree;

const MAGIC: &[u8; 4] = b"DCIX";
const NONE: u32 = u32::MAX;

const TAG_CONFIG: u32 = 1;
const TAG_TEXT: u32 = 2;
const TAG_COVER: u32 = 3;
const TAG_SST: u32 = 4;
const TAG_POINTS: u32 = 5;
const TAG_JUMPTABLES: u32 = 6;
const TAG_SMALLPAT: u32 = 7;
const TAG_FASTREPORT: u32 = 8;

#[derive(Default)]
struct Buf(Vec<u8>);

impl Buf {
    fn u8(&mut self, v: u8) {
        self.0.push(v);
    }
    fn u32(&mut self, v: u32) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn u64(&mut self, v: u64) {
        self.0.extend_from_slice(&v.to_le_bytes());
    }
    fn f64(&mut self, v: f64) {
        self.u64(v.to_bits());
    }
    fn u32s(&mut self, v: &[u32]) {
        self.u64(v.len() as u64);
        v.iter().for_each(|&x| self.u32(x));
    }
    fn u64s(&mut self, v: &[u64]) {
        self.u64(v.len() as u64);
        v.iter().for_each(|&x| self.u64(x));
    }
    fn section(&mut self, tag: u32, body: Buf) {
        self.u32(tag);
        self.u64(body.0.len() as u64);
        self.0.extend_from_slice(&body.0);
    }
}

struct Cur<'a> {
    data: &'a [u8],
    at: usize,
}

fn bad(msg: impl Into<String>) -> Error {
    Error::Format(msg.into())
}

impl<'a> Cur<'a> {
    fn new(data: &'a [u8]) -> Self {
        Self { data, at: 0 }
    }
    fn take(&mut self, k: usize) -> Result<&'a [u8]> {
        if self.data.len() - self.at < k {
            return Err(bad("unexpected end of data"));
        }
        let s = &self.data[self.at..self.at + k];
        self.at += k;
        Ok(s)
    }
    fn u8(&mut self) -> Result<u8> {
        Ok(self.take(1)?[0])
    }
    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }
    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_bits(self.u64()?))
    }
    fn count(&mut self, elem: usize) -> Result<usize> {
        let k = self.u64()?;
        if k.checked_mul(elem as u64).is_none_or(|b| b > (self.data.len() - self.at) as u64) {
            return Err(bad("array length exceeds section"));
        }
        Ok(k as usize)
    }
    fn u32s(&mut self) -> Result<Vec<u32>> {
        let k = self.count(4)?;
        (0..k).map(|_| self.u32()).collect()
    }
    fn u64s(&mut self) -> Result<Vec<u64>> {
        let k = self.count(8)?;
        (0..k).map(|_| self.u64()).collect()
    }
    fn done(&self, what: &str) -> Result<()> {
        if self.at != self.data.len() {
            return Err(bad(format!("trailing bytes in {what} section")));
        }
        Ok(())
    }
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(bad(msg))
    }
}

impl Index {
    /// Serialize; without `embed_text` the text has to be supplied on load.
    pub fn to_bytes(&self, embed_text: bool) -> Vec<u8> {
        let tm = &self.tm;
        let p = &self.params;
        let mut out = Buf::default();
        out.0.extend_from_slice(MAGIC);
        out.u32(FORMAT_VERSION);

        let mut b = Buf::default();
        b.u64(tm.len() as u64);
        b.u32(tm.sigma());
        b.u32(p.r);
        b.u64(p.x0_period as u64);
        b.u64(p.x0_max_len as u64);
        b.u32(text_crc(tm.seq()));
        out.section(TAG_CONFIG, b);

        if embed_text {
            let mut b = Buf::default();
            b.u32(tm.seq().width());
            b.u64s(tm.seq().words());
            out.section(TAG_TEXT, b);
        }

        let mut b = Buf::default();
        b.u32(tm.cover().r());
        b.u32(tm.cover().modulus());
        b.u32s(tm.cover().elements());
        out.section(TAG_COVER, b);

        let sst = &self.sst;
        let mut b = Buf::default();
        b.u32s(sst.leaf_order());
        let lcp: Vec<u32> =
            (0..sst.leaves() as u32).map(|k| if k == 0 { 0 } else { sst.leaf_lcp(tm, k - 1, k) as u32 }).collect();
        b.u32s(&lcp);
        out.section(TAG_SST, b);

        let mut b = Buf::default();
        b.u32(self.points.digit_bits);
        b.u32(self.points.classes.len() as u32);
        for c in &self.points.classes {
            b.u32(c.run);
            b.u32s(&c.xs);
            b.u32(c.wt.height);
            for bv in &c.wt.levels {
                b.u64s(bv.words());
            }
        }
        out.section(TAG_POINTS, b);

        let j = &self.jumps;
        let (parent, sym, x0_range) = j.trie_parts();
        let mut b = Buf::default();
        b.u64(j.period() as u64);
        b.u64(j.max_len() as u64);
        b.u32s(parent);
        b.u32s(sym);
        let flags: Vec<u32> = (0..parent.len() as u32).map(|x| j.is_x0(x) as u32).collect();
        b.u32s(&flags);
        b.u32s(&x0_range.iter().flat_map(|&(l, h)| [l, h]).collect::<Vec<_>>());
        out.section(TAG_JUMPTABLES, b);

        let s = &self.small;
        let mut b = Buf::default();
        b.u64s(&s.alphas.iter().flat_map(|&a| [(a >> 64) as u64, a as u64]).collect::<Vec<_>>());
        b.u32s(&s.tbl_start);
        b.u32s(&s.tbl_pos);
        b.u64s(&s.keys);
        b.u32s(&s.pair_slot);
        b.u32s(&s.pair_off.iter().map(|&o| o as u32).collect::<Vec<_>>());
        b.u64s(&s.prefix_count);
        out.section(TAG_SMALLPAT, b);

        // the structure itself is rebuilt from the stored points
        let mut b = Buf::default();
        b.u8(p.fast_report as u8);
        b.u32(p.group as u32);
        b.f64(p.eps);
        out.section(TAG_FASTREPORT, b);

        let crc = crc32c::crc32c(&out.0);
        out.u32(crc);
        out.0
    }

    pub fn save<W: Write>(&self, mut w: W, embed_text: bool) -> Result<()> {
        w.write_all(&self.to_bytes(embed_text))?;
        w.flush()?;
        Ok(())
    }

    pub fn save_file(&self, path: impl AsRef<Path>, embed_text: bool) -> Result<()> {
        self.save(BufWriter::new(File::create(path)?), embed_text)
    }

    /// `text` (original codes) is required when the file does not embed it,
    /// and must match the indexed text if it does.
    pub fn from_bytes(data: &[u8], text: Option<&[u32]>) -> Result<Self> {
        check(data.len() >= 12, "file too short")?;
        check(&data[..4] == MAGIC, "bad magic")?;
        let (body, tail) = data.split_at(data.len() - 4);
        let stored = u32::from_le_bytes(tail.try_into().unwrap());
        let computed = crc32c::crc32c(body);
        if stored != computed {
            return Err(Error::Checksum { stored, computed });
        }
        let mut cur = Cur::new(&body[4..]);
        let version = cur.u32()?;
        if version != FORMAT_VERSION {
            return Err(bad(format!("unsupported format version {version}")));
        }
        let mut sections: Vec<(u32, &[u8])> = Vec::new();
        while cur.at < cur.data.len() {
            let tag = cur.u32()?;
            let len = cur.u64()?;
            check(len <= (cur.data.len() - cur.at) as u64, "section overruns file")?;
            sections.push((tag, cur.take(len as usize)?));
        }
        let find = |tag: u32| sections.iter().find(|s| s.0 == tag).map(|s| s.1);
        let need = |tag: u32, name: &str| find(tag).ok_or_else(|| bad(format!("missing {name} section")));

        let mut c = Cur::new(need(TAG_CONFIG, "config")?);
        let n = c.u64()? as usize;
        let sigma = c.u32()?;
        let r = c.u32()?;
        let x0_period = c.u64()? as usize;
        let x0_max_len = c.u64()? as usize;
        let crc = c.u32()?;
        c.done("config")?;
        let mut c = Cur::new(need(TAG_FASTREPORT, "fast report")?);
        let fast_report = c.u8()? != 0;
        let group = c.u32()? as usize;
        let eps = c.f64()?;
        c.done("fast report")?;
        check((1..=255).contains(&group) && eps > 0.0 && eps < 0.5, "fast report parameters invalid")?;
        let params = Params { r, x0_period, x0_max_len, fast_report, group, eps };

        let tm = match (find(TAG_TEXT), text) {
            (Some(sec), _) => {
                let mut c = Cur::new(sec);
                let width = c.u32()?;
                let words = c.u64s()?;
                c.done("text")?;
                check(width == bits_for(sigma as u64 + 1), "text width does not match alphabet")?;
                check(words.len() == (n * width as usize).div_ceil(64) + 2, "text length mismatch")?;
                let tm = TextModel::from_parts(PackedSeq::from_words(words, n, width), sigma, r)?;
                if let Some(t) = text {
                    check(t.len() == n && tm.codes() == t, "supplied text differs from the indexed text")?;
                }
                tm
            }
            (None, Some(t)) => {
                let tm = TextModel::build(t, sigma, Some(r))?;
                check(tm.len() == n && text_crc(tm.seq()) == crc, "supplied text differs from the indexed text")?;
                tm
            }
            (None, None) => return Err(bad("text is not embedded and was not supplied")),
        };
        check(text_crc(tm.seq()) == crc, "text checksum mismatch")?;

        let mut c = Cur::new(need(TAG_COVER, "cover")?);
        let (cr, cs, elements) = (c.u32()?, c.u32()?, c.u32s()?);
        c.done("cover")?;
        let dc = DifferenceCover::new(cr)?;
        check(cr == r && cs == dc.modulus() && elements == dc.elements(), "cover does not match")?;

        let selected = tm.selected().len();
        let mut c = Cur::new(need(TAG_SST, "sst")?);
        let leaf_order = c.u32s()?;
        let lcp = c.u32s()?;
        c.done("tree")?;
        check(leaf_order.len() == selected && lcp.len() == selected, "tree size mismatch")?;
        let mut seen = vec![false; n];
        for &p in &leaf_order {
            check((p as usize) < n && tm.is_selected(p as usize) && !seen[p as usize], "tree leaves invalid")?;
            seen[p as usize] = true;
        }
        check(lcp.iter().all(|&l| l as usize <= n), "tree lcp out of range")?;
        let sst = SampledSuffixTree::from_sorted(&tm, leaf_order, &lcp);

        let points = read_points(need(TAG_POINTS, "points")?, &tm, &params, selected)?;
        let jumps = read_short(need(TAG_JUMPTABLES, "jump tables")?, &tm, &params, selected)?;
        let small = read_small(need(TAG_SMALLPAT, "smallpat")?, &tm)?;
        Ok(Self { tm, sst, jumps, points, small, params })
    }

    pub fn load<R: Read>(mut r: R, text: Option<&[u32]>) -> Result<Self> {
        let mut data = Vec::new();
        r.read_to_end(&mut data)?;
        Self::from_bytes(&data, text)
    }

    pub fn load_file(path: impl AsRef<Path>, text: Option<&[u32]>) -> Result<Self> {
        Self::load(BufReader::new(File::open(path)?), text)
    }
}

fn text_crc(seq: &PackedSeq) -> u32 {
    let bytes: Vec<u8> = seq.words().iter().flat_map(|w| w.to_le_bytes()).collect();
    crc32c::crc32c(&bytes)
}

fn read_points(sec: &[u8], tm: &TextModel, params: &Params, selected: usize) -> Result<PointSets> {
    let mut c = Cur::new(sec);
    let digit_bits = c.u32()?;
    check(digit_bits == bits_for(tm.sigma() as u64), "point digit width mismatch")?;
    let k = c.u32()?;
    let r = tm.r();
    let runs = [r, 2 * r, 2 * r + 1, 4 * r + 2];
    check(k as usize == runs.len(), "wrong number of point classes")?;
    let fast = params.fast_report.then_some((params.group, params.eps));
    let mut classes = Vec::with_capacity(runs.len());
    for &want in &runs {
        let run = c.u32()?;
        let xs = c.u32s()?;
        let height = c.u32()?;
        check(run == want && height == run * digit_bits, "point class header mismatch")?;
        check(xs.windows(2).all(|w| w[0] < w[1]) && xs.iter().all(|&x| (x as usize) < selected), "point x invalid")?;
        let mut levels = Vec::with_capacity(height as usize);
        for _ in 0..height {
            let words = c.u64s()?;
            check(words.len() == xs.len().div_ceil(64), "wavelet level size mismatch")?;
            levels.push(BitVec::from_words(words, xs.len()));
        }
        let wt = WaveletTree { height, len: xs.len(), levels };
        let fast = fast.filter(|_| !xs.is_empty()).map(|(g, eps)| {
            let ys: Vec<u64> = (0..xs.len()).map(|i| wt.access(i)).collect();
            FastReport::build(&ys, height, g, eps)
        });
        classes.push(PointClass { run, xs, wt, fast });
    }
    c.done("points")?;
    Ok(PointSets { digit_bits, classes })
}

fn read_short(sec: &[u8], tm: &TextModel, params: &Params, selected: usize) -> Result<ShortJumpTables> {
    let mut c = Cur::new(sec);
    let period = c.u64()? as usize;
    let max_len = c.u64()? as usize;
    let parent = c.u32s()?;
    let sym = c.u32s()?;
    let flags = c.u32s()?;
    let ranges = c.u32s()?;
    c.done("short jump")?;
    check(period == params.x0_period && max_len == params.x0_max_len, "short jump parameters mismatch")?;
    let total = parent.len();
    check(total >= 1 && sym.len() == total && flags.len() == total && ranges.len() == 2 * total, "short jump sizes")?;
    check(parent[0] == NONE && (1..total).all(|i| (parent[i] as usize) < i), "short jump trie not in preorder")?;
    check(sym.iter().skip(1).all(|&s| s >= 1 && s <= tm.sigma()), "short jump symbol out of range")?;
    let x0_range: Vec<(u32, u32)> = ranges.chunks(2).map(|p| (p[0], p[1])).collect();
    check(
        x0_range.iter().all(|&(l, h)| (l == NONE && h == NONE) || (l <= h && (h as usize) < selected)),
        "short jump range invalid",
    )?;
    let is_x0: Vec<bool> = flags.iter().map(|&f| f != 0).collect();
    Ok(ShortJumpTables::from_parts(
        period,
        max_len,
        tm.cover().max_gap() as usize,
        tm.seq().width(),
        tm.meta_width(),
        parent,
        sym,
        &is_x0,
        x0_range,
    ))
}

fn read_small(sec: &[u8], tm: &TextModel) -> Result<SmallPatternIndex> {
    let mut c = Cur::new(sec);
    let halves = c.u64s()?;
    let tbl_start = c.u32s()?;
    let tbl_pos = c.u32s()?;
    let keys = c.u64s()?;
    let pair_slot = c.u32s()?;
    let pair_off = c.u32s()?;
    let prefix_count = c.u64s()?;
    c.done("small pattern")?;
    let p = tm.cover().max_gap() as usize;
    let n = tm.len();
    check(halves.len() % 2 == 0, "small pattern blocks")?;
    let alphas: Vec<u128> = halves.chunks(2).map(|h| (h[0] as u128) << 64 | h[1] as u128).collect();
    let d = alphas.len();
    check(
        tbl_pos.len() == n.div_ceil(p) && tbl_pos.iter().all(|&i| (i as usize) < n.div_ceil(p)),
        "small pattern table",
    )?;
    check(
        tbl_start.len() == d + 1
            && tbl_start.first() == Some(&0)
            && tbl_start.last() == Some(&(tbl_pos.len() as u32))
            && tbl_start.windows(2).all(|w| w[0] <= w[1]),
        "small pattern offsets",
    )?;
    let np = keys.len();
    check(
        pair_slot.len() == np
            && pair_off.len() == np
            && prefix_count.len() == np + 1
            && pair_slot.iter().all(|&s| (s as usize) < d)
            && pair_off.iter().all(|&o| (o as usize) < p)
            && keys.windows(2).all(|w| w[0] <= w[1]),
        "small pattern pairs",
    )?;
    Ok(SmallPatternIndex {
        p,
        width: tm.seq().width(),
        n,
        alphas,
        tbl_start,
        tbl_pos,
        keys,
        pair_slot,
        pair_off: pair_off.into_iter().map(|o| o as u8).collect(),
        prefix_count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Config;
    use rand::{Rng, SeedableRng};

    fn sample(seed: u64, n: usize, sigma: u32) -> Vec<u32> {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        (0..n).map(|_| rng.gen_range(0..sigma)).collect()
    }

    #[test]
    fn round_trip() {
        let codes = sample(1, 3000, 4);
        let cfg = Config { fast_report: true, ..Config::default() };
        let idx = Index::build(&codes, 4, &cfg).unwrap();
        let bytes = idx.to_bytes(true);
        assert_eq!(bytes, idx.to_bytes(true));
        let back = Index::from_bytes(&bytes, None).unwrap();
        assert_eq!(back.to_bytes(true), bytes);
        assert_eq!(back.params(), idx.params());
        let mut rng = rand::rngs::StdRng::seed_from_u64(2);
        for _ in 0..300 {
            let len = rng.gen_range(1..40);
            let s = rng.gen_range(0..codes.len() - len);
            let pat = codes[s..s + len].to_vec();
            assert_eq!(back.locate(&pat), idx.locate(&pat));
        }
    }

    #[test]
    fn external_text() {
        let codes = sample(3, 2000, 2);
        let idx = Index::build(&codes, 2, &Config::default()).unwrap();
        let bytes = idx.to_bytes(false);
        assert!(bytes.len() < idx.to_bytes(true).len());
        assert!(matches!(Index::from_bytes(&bytes, None), Err(Error::Format(_))));
        let mut other = codes.clone();
        other[10] ^= 1;
        assert!(Index::from_bytes(&bytes, Some(&other)).is_err());
        let back = Index::from_bytes(&bytes, Some(&codes)).unwrap();
        assert_eq!(back.to_bytes(false), bytes);
        assert_eq!(back.count(&codes[100..120]), idx.count(&codes[100..120]));
    }

    #[test]
    fn corruption_detected() {
        let codes = sample(4, 1500, 16);
        let bytes = Index::build(&codes, 16, &Config::default()).unwrap().to_bytes(true);
        for at in [0, 5, bytes.len() / 2, bytes.len() - 1] {
            let mut bad = bytes.clone();
            bad[at] ^= 0x10;
            assert!(Index::from_bytes(&bad, None).is_err());
        }
        assert!(Index::from_bytes(&bytes[..bytes.len() - 9], None).is_err());
    }
}
