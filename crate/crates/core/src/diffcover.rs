//! Colbourn–Ling difference covers and the shift function `h(i, j)`.
//!
//! For a cover scale `r`, the modulus is `s = 12r² + 18r + 6` and the cover has
//! `6r + 4` elements. For any two residues `i, j` there is a shift `h < s` that
//! moves both into the cover at once; the sampled index relies on this to
//! compare arbitrary shifted suffixes through two sampled ones.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceCover {
    r: u32,
    s: u32,
    elements: Vec<u32>,
    residues: Vec<u32>,
    is_residue: Vec<bool>,
    d_table: Vec<u32>,
}

/// The increments `b_1..b_{6r+3}` whose prefix sums give the cover elements.
fn increments(r: u32) -> impl Iterator<Item = u32> {
    (1..=6 * r + 3).map(move |i| {
        if i <= r {
            1
        } else if i == r + 1 {
            r + 1
        } else if i <= 2 * r + 1 {
            2 * r + 1
        } else if i <= 4 * r + 2 {
            4 * r + 3
        } else if i <= 5 * r + 3 {
            2 * r + 2
        } else {
            1
        }
    })
}

impl DifferenceCover {
    pub fn new(r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::Config("cover scale r must be at least 1".into()));
        }
        let s = (r as u64)
            .checked_mul(r as u64)
            .and_then(|r2| r2.checked_mul(12))
            .and_then(|v| v.checked_add(18 * r as u64 + 6))
            .filter(|&s| s <= u32::MAX as u64 / 4)
            .ok_or_else(|| Error::Config(format!("cover modulus overflows for r = {r}")))? as u32;

        let mut elements = Vec::with_capacity(6 * r as usize + 4);
        elements.push(0);
        let mut acc = 0u32;
        for b in increments(r) {
            acc += b;
            elements.push(acc);
        }

        let mut is_residue = vec![false; s as usize];
        for &a in &elements {
            is_residue[(a % s) as usize] = true;
        }
        let residues: Vec<u32> = (0..s).filter(|&x| is_residue[x as usize]).collect();

        // d[x] = smallest f in the cover with (f + x) mod s also in the cover.
        let mut d_table = vec![u32::MAX; s as usize];
        for x in 0..s {
            for &f in &residues {
                if is_residue[((f + x) % s) as usize] {
                    d_table[x as usize] = f;
                    break;
                }
            }
            if d_table[x as usize] == u32::MAX {
                return Err(Error::Config(format!("difference {x} is not covered modulo {s}")));
            }
        }

        Ok(Self { r, s, elements, residues, is_residue, d_table })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn modulus(&self) -> u32 {
        self.s
    }

    /// The raw elements `a_0..a_{6r+3}`; the last one equals `s`.
    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    /// Distinct cover residues in increasing order.
    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    #[inline]
    pub fn contains(&self, residue: u32) -> bool {
        self.is_residue[(residue % self.s) as usize]
    }

    pub fn d_table(&self) -> &[u32] {
        &self.d_table
    }

    /// Largest increment, i.e. the maximum distance between consecutive
    /// selected positions.
    pub fn max_gap(&self) -> u32 {
        4 * self.r + 3
    }

    /// Shift `h < s` such that both `(i + h) mod s` and `(j + h) mod s` are
    /// cover residues.
    #[inline]
    pub fn h(&self, i: u32, j: u32) -> u32 {
        let s = self.s;
        let (i, j) = (i % s, j % s);
        let x = (j + s - i) % s;
        (self.d_table[x as usize] + s - i) % s
    }

    pub fn size_bits(&self) -> u64 {
        (self.elements.len() as u64 + self.d_table.len() as u64) * 32 + self.s as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn covers_every_difference(dc: &DifferenceCover) -> bool {
        let s = dc.modulus();
        let mut seen = vec![false; s as usize];
        for &a in dc.elements() {
            for &b in dc.elements() {
                seen[((a + s - b % s) % s) as usize] = true;
            }
        }
        seen.iter().skip(1).all(|&x| x)
    }

    #[test]
    fn r1_elements() {
        let dc = DifferenceCover::new(1).unwrap();
        assert_eq!(dc.modulus(), 36);
        assert_eq!(dc.elements(), &[0, 1, 3, 6, 13, 20, 27, 31, 35, 36]);
        assert_eq!(dc.residues().len(), 9);
        assert!(covers_every_difference(&dc));
    }

    #[test]
    fn sizes_follow_formula() {
        for r in 1..=8 {
            let dc = DifferenceCover::new(r).unwrap();
            assert_eq!(dc.modulus(), 12 * r * r + 18 * r + 6);
            assert_eq!(dc.elements().len() as u32, 6 * r + 4);
            assert_eq!(*dc.elements().last().unwrap(), dc.modulus());
            assert!(covers_every_difference(&dc), "r = {r}");
        }
    }

    #[test]
    fn r2_modulus() {
        let dc = DifferenceCover::new(2).unwrap();
        assert_eq!(dc.modulus(), 90);
        assert_eq!(dc.elements().len(), 16);
    }

    #[test]
    fn rejects_zero() {
        assert!(DifferenceCover::new(0).is_err());
    }

    #[test]
    fn shift_lands_both_in_cover() {
        let dc = DifferenceCover::new(1).unwrap();
        let h = dc.h(5, 17);
        let valid: Vec<u32> = (0..36).filter(|&h| dc.contains(5 + h) && dc.contains(17 + h)).collect();
        assert!(!valid.is_empty());
        assert!(valid.contains(&h));
        assert!(dc.contains(dc.h(0, 0)));
        for r in 1..=3 {
            let dc = DifferenceCover::new(r).unwrap();
            let s = dc.modulus();
            for i in 0..s {
                for j in 0..s {
                    let h = dc.h(i, j);
                    assert!(h < s);
                    assert!(dc.contains(i + h) && dc.contains(j + h));
                }
            }
        }
    }

    #[test]
    fn d_table_entries_are_valid() {
        let dc = DifferenceCover::new(4).unwrap();
        let s = dc.modulus();
        for (x, &f) in dc.d_table().iter().enumerate() {
            assert!(dc.contains(f));
            assert!(dc.contains((f + x as u32) % s));
        }
    }
}
