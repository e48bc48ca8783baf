//! Restricted root data of type A(n-1): the split Cartan subspace of
//! traceless diagonal matrices, the closed dominant chamber of weakly
//! decreasing tuples, the Weyl group acting by coordinate permutation, and
//! the trace-form inner product `<x, y> = sum x_i * y_i`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{ExactScalar, IrrationalBasis, Rational, Sign};

/// An element of the split Cartan subspace: an `n`-tuple of exact scalars
/// with exact zero sum, `n >= 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanPoint {
    entries: Vec<ExactScalar>,
}

impl CartanPoint {
    /// Build a point, checking rank, uniform basis, and tracelessness.
    pub fn new(entries: Vec<ExactScalar>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidPoint(format!(
                "rank must be at least 2, got {}",
                entries.len()
            )));
        }
        let mut sum = ExactScalar::zero(entries[0].basis());
        for e in &entries {
            sum = sum.add(e)?;
        }
        if !sum.is_zero() {
            return Err(Error::InvalidPoint(format!(
                "entries sum to {sum}, not zero"
            )));
        }
        Ok(CartanPoint { entries })
    }

    /// Internal constructor for entries already known to be traceless.
    pub(crate) fn from_entries_unchecked(entries: Vec<ExactScalar>) -> Self {
        debug_assert!(entries.len() >= 2);
        CartanPoint { entries }
    }

    pub fn from_integers(basis: &Arc<IrrationalBasis>, values: &[i64]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|&v| ExactScalar::from_integer(basis, v))
                .collect(),
        )
    }

    pub fn from_rationals(basis: &Arc<IrrationalBasis>, values: &[Rational]) -> Result<Self> {
        Self::new(
            values
                .iter()
                .map(|q| ExactScalar::from_rational(basis, q.clone()))
                .collect(),
        )
    }

    /// Parse the comma-separated scalar form, e.g. `6,6,1,-4,-9` or
    /// `sqrt2,1,0,-1,-sqrt2`. Rejected if the exact sum is nonzero.
    pub fn parse(basis: &Arc<IrrationalBasis>, input: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut offset = 0;
        for piece in input.split(',') {
            let scalar = ExactScalar::parse(basis, piece).map_err(|e| e.offset_parse(offset))?;
            entries.push(scalar);
            offset += piece.len() + 1;
        }
        Self::new(entries)
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[ExactScalar] {
        &self.entries
    }

    pub fn basis(&self) -> &Arc<IrrationalBasis> {
        self.entries[0].basis()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(ExactScalar::is_zero)
    }

    /// True iff every entry is rational.
    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(ExactScalar::is_rational)
    }

    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.entries.iter().map(ExactScalar::as_rational).collect()
    }

    pub fn scale(&self, q: &Rational) -> Self {
        CartanPoint {
            entries: self.entries.iter().map(|e| e.scale(q)).collect(),
        }
    }

    /// The trace-form inner product `sum_i x_i * y_i`, computed exactly.
    /// In every coordinate at least one factor must be rational, otherwise
    /// the product leaves the formal span ([`Error::UnsupportedProduct`]).
    pub fn inner(&self, other: &Self) -> Result<ExactScalar> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch {
                expected: self.n(),
                actual: other.n(),
            });
        }
        let mut acc = ExactScalar::zero(self.basis());
        for (a, b) in self.entries.iter().zip(&other.entries) {
            acc = acc.add(&a.mul(b)?)?;
        }
        Ok(acc)
    }

    /// Reverse and negate: the involution `x -> -w0.x`, which preserves the
    /// closed dominant chamber.
    pub fn minus_w0(&self) -> Self {
        CartanPoint {
            entries: self.entries.iter().rev().map(ExactScalar::neg).collect(),
        }
    }

    /// True iff the entries are weakly decreasing.
    pub fn is_dominant(&self) -> Result<bool> {
        for pair in self.entries.windows(2) {
            if cmp_scalars(&pair[0], &pair[1])? == Ordering::Less {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True iff the point lies in the minus-w0-fixed part of the dominant
    /// chamber: weakly decreasing and equal to its own reverse-negation.
    pub fn in_b_plus(&self) -> Result<bool> {
        Ok(self.is_dominant()? && self.minus_w0() == *self)
    }

    /// The weakly decreasing representative of the Weyl orbit, together with
    /// the Weyl element `w` mapping this point onto it (`act(w, x) = x+`).
    ///
    /// Ties are broken by a stable sort, which makes `w` the
    /// lexicographically smallest permutation achieving the sort.
    pub fn dominant_representative(&self) -> Result<(CartanPoint, WeylElement)> {
        let n = self.n();
        let mut idx: Vec<usize> = (0..n).collect();
        // stable insertion sort, descending; comparisons may fail with
        // UndecidedSign, which plain sort_by cannot propagate
        for i in 1..n {
            let mut j = i;
            while j > 0 {
                match cmp_scalars(&self.entries[idx[j - 1]], &self.entries[idx[j]])? {
                    Ordering::Less => {
                        idx.swap(j - 1, j);
                        j -= 1;
                    }
                    _ => break,
                }
            }
        }
        let sorted = CartanPoint {
            entries: idx.iter().map(|&i| self.entries[i].clone()).collect(),
        };
        let mut images = vec![0usize; n];
        for (target, &source) in idx.iter().enumerate() {
            images[source] = target;
        }
        let w = WeylElement { images };
        debug_assert_eq!(w.act(self)?, sorted);
        Ok((sorted, w))
    }
}

/// Exact comparison of two scalars via the sign of their difference.
pub fn cmp_scalars(a: &ExactScalar, b: &ExactScalar) -> Result<Ordering> {
    Ok(match a.sub(b)?.sign()? {
        Sign::Negative => Ordering::Less,
        Sign::Zero => Ordering::Equal,
        Sign::Positive => Ordering::Greater,
    })
}

impl fmt::Display for CartanPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in &self.entries {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

/// A rational basis of the span of the minus-w0-fixed cone: the vectors
/// `e_i - e_(n+1-i)` for `i = 1 ..= floor(n/2)`.
pub fn b_plus_basis(basis: &Arc<IrrationalBasis>, n: usize) -> Result<Vec<CartanPoint>> {
    if n < 2 {
        return Err(Error::InvalidPoint(format!(
            "rank must be at least 2, got {n}"
        )));
    }
    let mut out = Vec::with_capacity(n / 2);
    for i in 0..n / 2 {
        let mut entries = vec![0i64; n];
        entries[i] = 1;
        entries[n - 1 - i] = -1;
        out.push(CartanPoint::from_integers(basis, &entries)?);
    }
    Ok(out)
}

/// An element of the Weyl group of type A(n-1), i.e. a permutation of the
/// coordinate indices, stored 0-based as an image array: `i -> images[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    images: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            images: (0..n).collect(),
        }
    }

    /// Build from a 0-based image array, validating bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(format!(
                    "image array {images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[i] = true;
        }
        Ok(WeylElement { images })
    }

    /// Build from a 1-based image array (the serialized form).
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        if images.contains(&0) {
            return Err(Error::InvalidPermutation(
                "one-based image array contains 0".into(),
            ));
        }
        Self::from_images(images.iter().map(|&i| i - 1).collect())
    }

    /// The transposition of `i` and `j` (0-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i >= n || j >= n {
            return Err(Error::InvalidPermutation(format!(
                "transposition ({i} {j}) out of range for n = {n}"
            )));
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(i, j);
        Ok(WeylElement { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// The image array, 1-based, as used in serialized certificates.
    pub fn one_based_images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0usize; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j] = i;
        }
        WeylElement { images }
    }

    /// Group composition `self . other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch {
                expected: self.n(),
                actual: other.n(),
            });
        }
        let images = (0..self.n())
            .map(|i| self.images[other.images[i]])
            .collect();
        Ok(WeylElement { images })
    }

    /// Left action on a Cartan point: entry `i` of the result is entry
    /// `w^-1(i)` of `x`, so that `act(u, act(v, x)) = act(uv, x)`.
    pub fn act(&self, x: &CartanPoint) -> Result<CartanPoint> {
        if self.n() != x.n() {
            return Err(Error::RankMismatch {
                expected: self.n(),
                actual: x.n(),
            });
        }
        let mut entries = vec![ExactScalar::zero(x.basis()); x.n()];
        for (i, e) in x.entries().iter().enumerate() {
            entries[self.images[i]] = e.clone();
        }
        Ok(CartanPoint::from_entries_unchecked(entries))
    }

    /// Same action on a plain rational vector (no tracelessness involved).
    pub(crate) fn act_rationals(&self, v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); v.len()];
        for (i, q) in v.iter().enumerate() {
            out[self.images[i]] = q.clone();
        }
        out
    }

    /// All `n!` Weyl elements in lexicographic order of their image arrays,
    /// starting from the identity.
    pub fn all(n: usize) -> impl Iterator<Item = WeylElement> {
        LexPermutations {
            next: Some((0..n).collect()),
        }
    }
}

impl fmt::Display for WeylElement {
    /// One-based image array, e.g. `[2,1,3]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, &i) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "]")
    }
}

struct LexPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for LexPermutations {
    type Item = WeylElement;

    fn next(&mut self) -> Option<WeylElement> {
        let current = self.next.take()?;
        let mut a = current.clone();
        // standard next-permutation step
        self.next = (|| {
            let n = a.len();
            if n < 2 {
                return None;
            }
            let mut i = n - 1;
            while i > 0 && a[i - 1] >= a[i] {
                i -= 1;
            }
            if i == 0 {
                return None;
            }
            let mut j = n - 1;
            while a[j] <= a[i - 1] {
                j -= 1;
            }
            a.swap(i - 1, j);
            a[i..].reverse();
            Some(a)
        })();
        Some(WeylElement { images: current })
    }
}
