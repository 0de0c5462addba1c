//! Fixed-width bit sets indexed by truth-table row.
//!
//! Row `r` of an `n`-variable table stores variable `v` (0-based) in bit
//! `n - 1 - v` of `r`, so variable 0 is the most significant bit.

use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Bits {
    words: Vec<u64>,
    len: usize,
}

impl Bits {
    pub fn zeros(len: usize) -> Self {
        Bits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    fn trim(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .any(|(a, b)| a & b != 0)
    }

    /// `self & !other`
    pub fn and_not(&self, other: &Bits) -> Bits {
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a & !b)
                .collect(),
            len: self.len,
        }
    }

    /// Existential projection over the variable whose row bit has weight
    /// `stride` (a power of two): every row becomes the OR of itself and its
    /// partner row differing in that bit.
    pub fn exists(&mut self, stride: usize) {
        if stride >= 64 {
            let ws = stride / 64;
            let block = 2 * ws;
            for base in (0..self.words.len()).step_by(block) {
                for k in 0..ws {
                    let m = self.words[base + k] | self.words[base + k + ws];
                    self.words[base + k] = m;
                    self.words[base + k + ws] = m;
                }
            }
        } else {
            let hi = high_mask(stride);
            for w in &mut self.words {
                let up = (*w & hi) >> stride;
                let down = (*w & !hi) << stride;
                *w |= up | down;
            }
            self.trim();
        }
    }
}

/// Mask of bit positions within a 64-bit word whose `stride` bit is set.
pub(crate) fn high_mask(stride: usize) -> u64 {
    debug_assert!(stride.is_power_of_two() && stride < 64);
    let mut m = 0u64;
    for p in 0..64 {
        if p & stride != 0 {
            m |= 1 << p;
        }
    }
    m
}

/// Rows where variable `var` is 1, for an `n_vars` table.
pub(crate) fn column(n_vars: usize, var: usize) -> Bits {
    let len = 1usize << n_vars;
    let stride = 1usize << (n_vars - 1 - var);
    let mut b = Bits::zeros(len);
    if stride >= 64 {
        let ws = stride / 64;
        for (wi, w) in b.words.iter_mut().enumerate() {
            if (wi / ws) % 2 == 1 {
                *w = !0;
            }
        }
    } else {
        let m = high_mask(stride);
        for w in &mut b.words {
            *w = m;
        }
        b.trim();
    }
    b
}

impl BitAnd for &Bits {
    type Output = Bits;
    fn bitand(self, rhs: &Bits) -> Bits {
        Bits {
            words: self.words.iter().zip(&rhs.words).map(|(a, b)| a & b).collect(),
            len: self.len,
        }
    }
}

impl BitOr for &Bits {
    type Output = Bits;
    fn bitor(self, rhs: &Bits) -> Bits {
        Bits {
            words: self.words.iter().zip(&rhs.words).map(|(a, b)| a | b).collect(),
            len: self.len,
        }
    }
}

impl BitAndAssign<&Bits> for Bits {
    fn bitand_assign(&mut self, rhs: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a &= b;
        }
    }
}

impl BitOrAssign<&Bits> for Bits {
    fn bitor_assign(&mut self, rhs: &Bits) {
        for (a, b) in self.words.iter_mut().zip(&rhs.words) {
            *a |= b;
        }
    }
}

impl Not for &Bits {
    type Output = Bits;
    fn not(self) -> Bits {
        let mut b = Bits {
            words: self.words.iter().map(|w| !w).collect(),
            len: self.len,
        };
        b.trim();
        b
    }
}
