//! Sign vectors over `{+, −, 0}` and their sign-variation statistics.
//!
//! A [`SignVector`] stores the positive and negative supports as bit masks,
//! so ground sets are limited to 64 elements. The same type doubles as a
//! signed set `X = (X⁺, X⁻)` in the oriented-matroid code.

use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::linalg::{rational_sign, Rational};
use crate::{Error, Result};

pub const MAX_GROUND: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn negate(self) -> Self {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn is_zero(self) -> bool {
        self == Sign::Zero
    }

    pub fn to_char(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }

    /// Accepts `+`, `-`, the Unicode minus sign and `0`.
    pub fn from_char(c: char) -> Option<Self> {
        match c {
            '+' => Some(Sign::Pos),
            '-' | '\u{2212}' => Some(Sign::Neg),
            '0' => Some(Sign::Zero),
            _ => None,
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Pos,
            _ => Sign::Neg,
        }
    }

    // 0 < + < − ; makes "+ first" the smaller of {v, −v}.
    fn rank(self) -> u8 {
        match self {
            Sign::Zero => 0,
            Sign::Pos => 1,
            Sign::Neg => 2,
        }
    }
}

/// A length-`len` sequence of signs.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignVector {
    len: u8,
    pos: u64,
    neg: u64,
}

fn mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

impl SignVector {
    pub fn zero(len: usize) -> Result<Self> {
        if len > MAX_GROUND {
            return Err(Error::GroundTooLarge(len));
        }
        Ok(Self {
            len: len as u8,
            pos: 0,
            neg: 0,
        })
    }

    /// Build from raw masks; bits at or beyond `len` and bits set in both
    /// masks are rejected.
    pub fn from_masks(len: usize, pos: u64, neg: u64) -> Result<Self> {
        if len > MAX_GROUND {
            return Err(Error::GroundTooLarge(len));
        }
        if pos & neg != 0 || (pos | neg) & !mask(len) != 0 {
            return Err(Error::DimensionMismatch(String::from(
                "sign masks overlap or exceed the ground set",
            )));
        }
        Ok(Self {
            len: len as u8,
            pos,
            neg,
        })
    }

    pub fn from_signs(signs: &[Sign]) -> Result<Self> {
        let mut v = Self::zero(signs.len())?;
        for (i, &s) in signs.iter().enumerate() {
            v.set(i, s);
        }
        Ok(v)
    }

    pub fn from_rationals(values: &[Rational]) -> Result<Self> {
        let mut v = Self::zero(values.len())?;
        for (i, x) in values.iter().enumerate() {
            v.set(i, rational_sign(x));
        }
        Ok(v)
    }

    /// Signed set with 1-based positive and negative index lists.
    pub fn from_signed_set(len: usize, positive: &[usize], negative: &[usize]) -> Result<Self> {
        let mut v = Self::zero(len)?;
        for (idx, s) in positive
            .iter()
            .map(|&i| (i, Sign::Pos))
            .chain(negative.iter().map(|&i| (i, Sign::Neg)))
        {
            if idx == 0 || idx > len {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    bound: len,
                });
            }
            if !v.get(idx - 1).is_zero() {
                return Err(Error::DimensionMismatch(alloc::format!(
                    "element {idx} listed twice in a signed set"
                )));
            }
            v.set(idx - 1, s);
        }
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn positive_mask(&self) -> u64 {
        self.pos
    }

    pub fn negative_mask(&self) -> u64 {
        self.neg
    }

    pub fn support_mask(&self) -> u64 {
        self.pos | self.neg
    }

    pub fn zero_mask(&self) -> u64 {
        !self.support_mask() & mask(self.len())
    }

    /// 1-based members of `X⁺`.
    pub fn positive(&self) -> Vec<usize> {
        bits(self.pos)
    }

    /// 1-based members of `X⁻`.
    pub fn negative(&self) -> Vec<usize> {
        bits(self.neg)
    }

    /// 0-based indices of the zero entries.
    pub fn zeros(&self) -> Vec<usize> {
        bits(self.zero_mask()).into_iter().map(|i| i - 1).collect()
    }

    pub fn support_size(&self) -> usize {
        self.support_mask().count_ones() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.support_mask() == 0
    }

    pub fn is_full(&self) -> bool {
        self.zero_mask() == 0
    }

    pub fn get(&self, i: usize) -> Sign {
        let b = 1u64 << i;
        if self.pos & b != 0 {
            Sign::Pos
        } else if self.neg & b != 0 {
            Sign::Neg
        } else {
            Sign::Zero
        }
    }

    pub fn set(&mut self, i: usize, s: Sign) {
        assert!(i < self.len(), "sign index out of range");
        let b = 1u64 << i;
        self.pos &= !b;
        self.neg &= !b;
        match s {
            Sign::Pos => self.pos |= b,
            Sign::Neg => self.neg |= b,
            Sign::Zero => {}
        }
    }

    pub fn signs(&self) -> Vec<Sign> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    pub fn negate(&self) -> Self {
        Self {
            len: self.len,
            pos: self.neg,
            neg: self.pos,
        }
    }

    /// Flip the signs on the 0-based elements in `flip`.
    pub fn reorient(&self, flip: u64) -> Self {
        let flip = flip & mask(self.len());
        Self {
            len: self.len,
            pos: (self.pos & !flip) | (self.neg & flip),
            neg: (self.neg & !flip) | (self.pos & flip),
        }
    }

    /// Representative of `{v, −v}` whose first nonzero entry is `+`.
    pub fn canonical(&self) -> Self {
        let support = self.support_mask();
        if support == 0 {
            return *self;
        }
        let first = support & support.wrapping_neg();
        if self.pos & first != 0 {
            *self
        } else {
            self.negate()
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// The sequence read in the given order: entry `j` of the result is
    /// entry `order[j]` of `self`.
    pub fn read_in_order(&self, order: &[usize]) -> Self {
        let mut out = Self {
            len: self.len,
            pos: 0,
            neg: 0,
        };
        for (j, &i) in order.iter().enumerate() {
            out.set(j, self.get(i));
        }
        out
    }

    /// Composition `X ∘ Y`: signs of `X`, with zeros filled in from `Y`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_len(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self {
            len: self.len,
            pos: self.pos | (other.pos & !self.neg),
            neg: self.neg | (other.neg & !self.pos),
        }
    }

    /// `S(X, Y)` as a 0-based bit mask: elements where the signs disagree.
    pub fn separation_mask(&self, other: &Self) -> u64 {
        (self.pos & other.neg) | (self.neg & other.pos)
    }

    /// `X ⊥ Y` iff `S(X, Y)` and `S(X, −Y)` are both empty or both nonempty.
    pub fn orthogonal(&self, other: &Self) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.orthogonal_unchecked(other))
    }

    pub(crate) fn orthogonal_unchecked(&self, other: &Self) -> bool {
        let s = self.separation_mask(other);
        let t = self.separation_mask(&other.negate());
        (s == 0) == (t == 0)
    }

    /// `self ≤ other` in the conformal order: every nonzero entry of `self`
    /// appears with the same sign in `other`.
    pub fn conforms_to(&self, other: &Self) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }

    fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch(alloc::format!(
                "sign vectors of lengths {} and {}",
                self.len,
                other.len
            )));
        }
        Ok(())
    }

    /// `var`: sign changes with zeros ignored.
    pub fn var(&self) -> usize {
        let mut last = Sign::Zero;
        let mut changes = 0;
        for i in 0..self.len() {
            let s = self.get(i);
            if s.is_zero() {
                continue;
            }
            if !last.is_zero() && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// `var̄`: the largest number of sign changes over all ways of filling
    /// the zero entries with signs.
    pub fn varbar(&self) -> usize {
        // best[0]: prefix ending in +, best[1]: ending in −; None if the
        // prefix cannot end in that sign.
        let mut best: [Option<usize>; 2] = [None, None];
        for i in 0..self.len() {
            let s = self.get(i);
            let options: &[usize] = match s {
                Sign::Pos => &[0],
                Sign::Neg => &[1],
                Sign::Zero => &[0, 1],
            };
            let mut next = [None, None];
            for &o in options {
                let stay = best[o];
                let switch = best[1 - o].map(|v| v + 1);
                next[o] = match (stay, switch) {
                    (None, None) => Some(0),
                    (a, b) => a.max(b),
                };
            }
            best = next;
        }
        best[0].max(best[1]).unwrap_or(0)
    }

    /// Compact signed-set notation with 1-based indices, e.g. `"2 -4"`.
    pub fn to_signed_set_string(&self) -> String {
        let mut out = String::new();
        for i in 0..self.len() {
            let s = self.get(i);
            if s.is_zero() {
                continue;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            if s == Sign::Neg {
                out.push('-');
            }
            out.push_str(&alloc::format!("{}", i + 1));
        }
        out
    }
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        let i = m.trailing_zeros() as usize;
        out.push(i + 1);
        m &= m - 1;
    }
    out
}

/// `var` and `var̄` of a rational vector. Errors on the zero vector.
pub fn sign_variation(values: &[Rational]) -> Result<(usize, usize)> {
    let v = SignVector::from_rationals(values)?;
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok((v.var(), v.varbar()))
}

impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.len.cmp(&other.len) {
            Ordering::Equal => {}
            o => return o,
        }
        let diff = (self.pos ^ other.pos) | (self.neg ^ other.neg);
        if diff == 0 {
            return Ordering::Equal;
        }
        let i = diff.trailing_zeros() as usize;
        self.get(i).rank().cmp(&other.get(i).rank())
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            write!(f, "{}", self.get(i).to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignVector({self})")
    }
}

impl FromStr for SignVector {
    type Err = Error;

    /// Parses strings such as `"+-0+"`; commas, spaces and parentheses are
    /// ignored.
    fn from_str(s: &str) -> Result<Self> {
        let mut signs = Vec::new();
        for c in s.chars() {
            if c == ',' || c == '(' || c == ')' || c.is_whitespace() {
                continue;
            }
            signs.push(Sign::from_char(c).ok_or_else(|| {
                Error::DimensionMismatch(alloc::format!(
                    "unexpected character {c:?} in sign vector"
                ))
            })?);
        }
        Self::from_signs(&signs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn brute_varbar(v: &SignVector) -> usize {
        let zeros = v.zeros();
        (0..1u64 << zeros.len())
            .map(|choice| {
                let mut w = *v;
                for (b, &i) in zeros.iter().enumerate() {
                    w.set(
                        i,
                        if choice >> b & 1 == 1 {
                            Sign::Neg
                        } else {
                            Sign::Pos
                        },
                    );
                }
                w.var()
            })
            .max()
            .unwrap()
    }

    #[test]
    fn variation_examples() {
        assert_eq!((sv("+-+-").var(), sv("+-+-").varbar()), (3, 3));
        assert_eq!((sv("+0+").var(), sv("+0+").varbar()), (0, 2));
        assert_eq!((sv("+0---").var(), sv("+0---").varbar()), (1, 1));
        assert_eq!((sv("++++++").var(), sv("++++++").varbar()), (0, 0));
        assert_eq!(sv("0").varbar(), 0);
        assert_eq!(sv("00").varbar(), 1);
    }

    #[test]
    fn rational_variation_rejects_zero() {
        let z: alloc::vec::Vec<Rational> = alloc::vec![Rational::from_integer(0.into()); 3];
        assert_eq!(sign_variation(&z), Err(Error::ZeroVector));
        let v: alloc::vec::Vec<Rational> = [1, 0, -1, -3, -2]
            .iter()
            .map(|&x: &i64| Rational::from_integer(x.into()))
            .collect();
        assert_eq!(sign_variation(&v).unwrap(), (1, 1));
    }

    #[test]
    fn varbar_matches_brute_force_exhaustively() {
        for len in 1..=7usize {
            let mut count = 1;
            for _ in 0..len {
                count *= 3;
            }
            for code in 0..count {
                let mut c = code;
                let mut v = SignVector::zero(len).unwrap();
                for i in 0..len {
                    v.set(i, [Sign::Zero, Sign::Pos, Sign::Neg][c % 3]);
                    c /= 3;
                }
                assert_eq!(v.varbar(), brute_varbar(&v), "{v}");
                assert!(v.var() <= v.varbar());
            }
        }
    }

    #[test]
    fn canonical_form_has_leading_plus() {
        assert_eq!(sv("0-+").canonical(), sv("0+-"));
        assert_eq!(sv("0+-").canonical(), sv("0+-"));
        assert_eq!(sv("000").canonical(), sv("000"));
        assert!(sv("0+-") < sv("0-+"));
    }

    #[test]
    fn composition_and_orthogonality() {
        let x = sv("0+0-");
        let y = sv("-0+0");
        assert_eq!(x.compose(&y).unwrap(), sv("-++-"));
        assert_eq!(x.compose(&x).unwrap(), x);
        assert_eq!(x.compose(&x.negate()).unwrap(), x);
        let c = SignVector::from_signed_set(4, &[2, 4], &[1, 3]).unwrap();
        let d = SignVector::from_signed_set(4, &[2], &[4]).unwrap();
        assert!(c.orthogonal(&d).unwrap());
        let e = SignVector::from_signed_set(2, &[1], &[]).unwrap();
        assert!(!e.orthogonal(&e).unwrap());
        assert!(sv("+000").orthogonal(&sv("0+00")).unwrap());
        assert!(x.compose(&sv("+")).is_err());
    }

    #[test]
    fn signed_set_notation() {
        let c = SignVector::from_signed_set(4, &[2, 4], &[1, 3]).unwrap();
        assert_eq!(alloc::format!("{c}"), "-+-+");
        assert_eq!(c.to_signed_set_string(), "-1 2 -3 4");
        assert_eq!(c.positive(), alloc::vec![2, 4]);
        assert!(SignVector::from_signed_set(4, &[2], &[2]).is_err());
        assert!(SignVector::from_signed_set(4, &[5], &[]).is_err());
    }
}
