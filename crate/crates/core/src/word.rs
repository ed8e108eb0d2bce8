//! Packed words over at most 16 letters, of length at most 16.

use std::fmt;

pub const MAX_LETTERS: usize = 16;
pub const MAX_LEN: usize = 16;

/// A word stored as 4-bit letters, first letter most significant.
///
/// The derived order is graded-lexicographic: shorter words first, then
/// lexicographic among words of equal length.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    len: u8,
    bits: u64,
}

impl Word {
    pub const EMPTY: Word = Word { len: 0, bits: 0 };

    pub fn letter(i: usize) -> Word {
        debug_assert!(i < MAX_LETTERS);
        Word { len: 1, bits: i as u64 }
    }

    pub fn from_letters(ls: &[usize]) -> Word {
        assert!(ls.len() <= MAX_LEN, "word too long");
        let mut w = Word::EMPTY;
        for &l in ls {
            assert!(l < MAX_LETTERS, "letter out of range");
            w.bits = (w.bits << 4) | l as u64;
            w.len += 1;
        }
        w
    }

    /// First word of length `len` in graded-lex order.
    pub fn first_of_len(len: usize) -> Word {
        Word { len: len as u8, bits: 0 }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> usize {
        debug_assert!(i < self.len());
        ((self.bits >> (4 * (self.len() - 1 - i))) & 0xf) as usize
    }

    #[inline]
    pub fn first(&self) -> usize {
        self.get(0)
    }

    #[inline]
    pub fn last(&self) -> usize {
        (self.bits & 0xf) as usize
    }

    #[inline]
    pub fn concat(&self, o: &Word) -> Word {
        debug_assert!(self.len() + o.len() <= MAX_LEN);
        let bits = if o.len == 0 { self.bits } else { (self.bits << (4 * o.len)) | o.bits };
        Word { len: self.len + o.len, bits }
    }

    #[inline]
    pub fn push(&self, l: usize) -> Word {
        Word { len: self.len + 1, bits: (self.bits << 4) | l as u64 }
    }

    #[inline]
    pub fn prepend(&self, l: usize) -> Word {
        Word { len: self.len + 1, bits: ((l as u64) << (4 * self.len)) | self.bits }
    }

    /// The first `k` letters.
    #[inline]
    pub fn prefix(&self, k: usize) -> Word {
        debug_assert!(k <= self.len());
        let drop = self.len() - k;
        let bits = if drop == 16 { 0 } else { self.bits >> (4 * drop) };
        Word { len: k as u8, bits }
    }

    /// Everything from position `k` on.
    #[inline]
    pub fn suffix_from(&self, k: usize) -> Word {
        debug_assert!(k <= self.len());
        let keep = self.len() - k;
        let bits = if keep == 16 { self.bits } else { self.bits & ((1u64 << (4 * keep)) - 1) };
        Word { len: keep as u8, bits }
    }

    /// Rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        self.suffix_from(k).concat(&self.prefix(k))
    }

    pub fn letters(&self) -> impl DoubleEndedIterator<Item = usize> + ExactSizeIterator + '_ {
        (0..self.len()).map(move |i| self.get(i))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.letters().collect()
    }

    pub fn reversed(&self) -> Word {
        let v: Vec<usize> = self.letters().rev().collect();
        Word::from_letters(&v)
    }

    pub fn max_letter(&self) -> Option<usize> {
        self.letters().max()
    }

    /// Lexicographically least rotation.
    pub fn least_rotation(&self) -> Word {
        (0..self.len().max(1)).map(|k| self.rotate(k)).min().unwrap_or(*self)
    }

    pub fn is_lyndon(&self) -> bool {
        let n = self.len();
        n > 0 && (1..n).all(|k| self.rotate(k) > *self)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ε");
        }
        for l in self.letters() {
            write!(f, "{}", l + 1)?;
        }
        Ok(())
    }
}
