//! Exact arithmetic in the rational span of a declared family of irrational
//! symbols.
//!
//! A scalar is a finite rational combination `q0 + q1*t1 + ... + qk*tk` where
//! the symbols `ti` are *declared* (not proved) to be linearly independent
//! over the rationals together with 1. Under that declaration, zero testing
//! is a coefficient check and therefore exact; sign determination falls back
//! to interval arithmetic over rational enclosures of the symbols, refined on
//! demand. No floating point is involved anywhere.
//!
//! The shipped basis consists of square roots of distinct primes
//! (`sqrt2`, `sqrt3`, `sqrt5`, ...), which are genuinely independent, with
//! correctly rounded 12-digit rational enclosures that refine by interval
//! Newton steps on `y^2 = p`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

mod parse;

/// Rational number type used throughout the crate. Arbitrary precision:
/// interval refinement squares denominators, which overflows any fixed-width
/// representation almost immediately.
pub type Rational = BigRational;

/// Default number of refinement rounds [`ExactScalar::sign`] spends before
/// giving up with [`Error::UndecidedSign`]. One round performs one interval
/// Newton step per refinable symbol and roughly doubles its correct digits,
/// so the default takes the shipped 12-digit enclosures to several thousand
/// digits before conceding.
pub const DEFAULT_SIGN_BUDGET: u32 = 12;

/// Sign of a scalar, decided exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(q: &Rational) -> Sign {
        if q.is_zero() {
            Sign::Zero
        } else if q.is_positive() {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

/// One formal symbol of an [`IrrationalBasis`]: a name, a positive rational
/// enclosure of its real value, and optionally the rational it is the square
/// root of (which makes the enclosure refinable).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisSymbol {
    name: String,
    lo: Rational,
    hi: Rational,
    square: Option<Rational>,
}

fn pow10(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

impl BasisSymbol {
    /// A symbol with a fixed enclosure and no refinement rule. The enclosure
    /// must satisfy `0 < lo <= hi`.
    pub fn opaque(name: impl Into<String>, lo: Rational, hi: Rational) -> Result<Self> {
        let name = name.into();
        validate_name(&name)?;
        if !lo.is_positive() {
            return Err(Error::InvalidBasis(format!(
                "enclosure of '{name}' must have lo > 0"
            )));
        }
        if lo > hi {
            return Err(Error::InvalidBasis(format!(
                "enclosure of '{name}' has lo > hi"
            )));
        }
        Ok(BasisSymbol {
            name,
            lo,
            hi,
            square: None,
        })
    }

    /// The positive square root of an integer `radicand >= 2`, enclosed by
    /// the correctly rounded 12-digit decimal bounds
    /// `floor(sqrt(radicand) * 10^12) / 10^12` and the next 12-digit decimal.
    pub fn square_root(name: impl Into<String>, radicand: u64) -> Result<Self> {
        let name = name.into();
        validate_name(&name)?;
        if radicand < 2 {
            return Err(Error::InvalidBasis(format!(
                "radicand of '{name}' must be at least 2"
            )));
        }
        let scale = pow10(12);
        let lo_int = (BigInt::from(radicand) * pow10(24)).sqrt();
        let lo = Rational::new(lo_int.clone(), scale.clone());
        let hi = Rational::new(lo_int + BigInt::one(), scale);
        Ok(BasisSymbol {
            name,
            lo,
            hi,
            square: Some(Rational::from_integer(BigInt::from(radicand))),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Current rational enclosure `(lo, hi)` of the symbol's real value.
    pub fn enclosure(&self) -> (&Rational, &Rational) {
        (&self.lo, &self.hi)
    }
}

fn validate_name(name: &str) -> Result<()> {
    let mut chars = name.chars();
    let ok = match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {
            chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
        }
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidBasis(format!(
            "symbol name '{name}' must match [a-z][a-z0-9]*"
        )))
    }
}

/// An ordered family of formal irrational symbols, declared linearly
/// independent over the rationals together with 1.
///
/// Independence is an axiom of the basis, not a verified fact: every zero
/// test in the crate is sound exactly when the declaration is true. The
/// shipped [`IrrationalBasis::sqrt_primes`] basis is genuinely independent.
#[derive(Debug, PartialEq, Eq)]
pub struct IrrationalBasis {
    symbols: Vec<BasisSymbol>,
}

impl IrrationalBasis {
    pub fn new(symbols: Vec<BasisSymbol>) -> Result<Arc<Self>> {
        for (i, s) in symbols.iter().enumerate() {
            if symbols[..i].iter().any(|t| t.name == s.name) {
                return Err(Error::InvalidBasis(format!(
                    "duplicate symbol name '{}'",
                    s.name
                )));
            }
        }
        Ok(Arc::new(IrrationalBasis { symbols }))
    }

    /// The square roots of the first `count` primes: `sqrt2, sqrt3, sqrt5, ...`
    pub fn sqrt_primes(count: usize) -> Arc<Self> {
        let mut symbols = Vec::with_capacity(count);
        let mut p: u64 = 2;
        while symbols.len() < count {
            if is_prime(p) {
                symbols.push(
                    BasisSymbol::square_root(format!("sqrt{p}"), p)
                        .expect("prime radicand is valid"),
                );
            }
            p += 1;
        }
        Arc::new(IrrationalBasis { symbols })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[BasisSymbol] {
        &self.symbols
    }

    /// Index of a symbol by name, if present.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.symbols.iter().position(|s| s.name == name)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn same_basis(a: &Arc<IrrationalBasis>, b: &Arc<IrrationalBasis>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An element of the rational span of `{1} ∪ basis`, stored as a canonical
/// coefficient map: key 0 is the rational unit, key `i >= 1` is symbol
/// `i - 1` of the basis, and zero coefficients are never stored.
///
/// Values are immutable; all operations return new scalars. Safe to share
/// and send across threads.
#[derive(Debug, Clone)]
pub struct ExactScalar {
    basis: Arc<IrrationalBasis>,
    coeffs: BTreeMap<usize, Rational>,
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        same_basis(&self.basis, &other.basis) && self.coeffs == other.coeffs
    }
}

impl Eq for ExactScalar {}

impl ExactScalar {
    fn from_map(basis: Arc<IrrationalBasis>, mut coeffs: BTreeMap<usize, Rational>) -> Self {
        coeffs.retain(|_, q| !q.is_zero());
        ExactScalar { basis, coeffs }
    }

    pub fn zero(basis: &Arc<IrrationalBasis>) -> Self {
        ExactScalar {
            basis: Arc::clone(basis),
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_rational(basis: &Arc<IrrationalBasis>, q: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(0, q);
        Self::from_map(Arc::clone(basis), coeffs)
    }

    pub fn from_integer(basis: &Arc<IrrationalBasis>, value: i64) -> Self {
        Self::from_rational(basis, Rational::from_integer(BigInt::from(value)))
    }

    /// The scalar `1 * symbol`, by symbol name.
    pub fn symbol(basis: &Arc<IrrationalBasis>, name: &str) -> Result<Self> {
        let idx = basis
            .index_of(name)
            .ok_or_else(|| Error::InvalidBasis(format!("unknown symbol '{name}'")))?;
        Self::symbol_at(basis, idx)
    }

    /// The scalar `1 * symbol`, by symbol index (0-based into the basis).
    pub fn symbol_at(basis: &Arc<IrrationalBasis>, index: usize) -> Result<Self> {
        if index >= basis.len() {
            return Err(Error::InvalidBasis(format!(
                "symbol index {index} out of range for a basis of {} symbols",
                basis.len()
            )));
        }
        let mut coeffs = BTreeMap::new();
        coeffs.insert(index + 1, Rational::one());
        Ok(ExactScalar {
            basis: Arc::clone(basis),
            coeffs,
        })
    }

    /// Parse the textual scalar grammar: rational literals `p/q`, symbol
    /// names, `+`/`-`, and rational coefficients as in `3/2*sqrt2-1`.
    /// Decimal floats are rejected.
    pub fn parse(basis: &Arc<IrrationalBasis>, input: &str) -> Result<Self> {
        parse::parse_scalar(basis, input)
    }

    pub fn basis(&self) -> &Arc<IrrationalBasis> {
        &self.basis
    }

    /// Coefficient of the rational unit.
    pub fn rational_part(&self) -> Rational {
        self.coeffs.get(&0).cloned().unwrap_or_else(Rational::zero)
    }

    /// Coefficient of basis symbol `index` (0-based into the basis).
    pub fn symbol_coeff(&self, index: usize) -> Rational {
        self.coeffs
            .get(&(index + 1))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// True iff every coefficient vanishes. Exact under the independence
    /// declaration of the basis.
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True iff the scalar lies in the rational unit line.
    pub fn is_rational(&self) -> bool {
        self.coeffs.keys().all(|&k| k == 0)
    }

    /// The value as a rational, if it is one.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_rational() {
            Some(self.rational_part())
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !same_basis(&self.basis, &other.basis) {
            return Err(Error::BasisMismatch);
        }
        let mut coeffs = self.coeffs.clone();
        for (k, q) in &other.coeffs {
            let entry = coeffs.entry(*k).or_insert_with(Rational::zero);
            *entry += q;
        }
        Ok(Self::from_map(Arc::clone(&self.basis), coeffs))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let coeffs = self.coeffs.iter().map(|(k, q)| (*k, -q.clone())).collect();
        ExactScalar {
            basis: Arc::clone(&self.basis),
            coeffs,
        }
    }

    pub fn scale(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero(&self.basis);
        }
        let coeffs = self.coeffs.iter().map(|(k, c)| (*k, c * q)).collect();
        ExactScalar {
            basis: Arc::clone(&self.basis),
            coeffs,
        }
    }

    /// Product of two scalars. At least one factor must be rational, since
    /// a product of two symbols leaves the formal span.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if !same_basis(&self.basis, &other.basis) {
            return Err(Error::BasisMismatch);
        }
        if let Some(q) = self.as_rational() {
            Ok(other.scale(&q))
        } else if let Some(q) = other.as_rational() {
            Ok(self.scale(&q))
        } else {
            Err(Error::UnsupportedProduct)
        }
    }

    /// Exact sign with the default refinement budget.
    pub fn sign(&self) -> Result<Sign> {
        self.sign_with_budget(DEFAULT_SIGN_BUDGET)
    }

    /// Exact sign, refining symbol enclosures up to `budget` rounds.
    ///
    /// Returns `Zero` iff the coefficient map is empty. Otherwise the sign is
    /// determined by interval arithmetic over the symbol enclosures, refined
    /// (for square-root symbols, by interval Newton steps on `y^2 = p`) until
    /// the enclosing interval of the sum excludes zero. Refinement works on
    /// private copies; the basis itself is never mutated. For a scalar that
    /// is nonzero under the independence declaration, refinement terminates;
    /// if the budget runs out first the result is [`Error::UndecidedSign`],
    /// never a wrong answer.
    pub fn sign_with_budget(&self, budget: u32) -> Result<Sign> {
        if self.coeffs.is_empty() {
            return Ok(Sign::Zero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Sign::of_rational(&q));
        }

        // Private working enclosures for the symbols that actually occur.
        struct Working {
            coeff: Rational,
            lo: Rational,
            hi: Rational,
            square: Option<Rational>,
        }
        let mut working: Vec<Working> = self
            .coeffs
            .iter()
            .filter(|(k, _)| **k > 0)
            .map(|(k, q)| {
                let sym = &self.basis.symbols[*k - 1];
                Working {
                    coeff: q.clone(),
                    lo: sym.lo.clone(),
                    hi: sym.hi.clone(),
                    square: sym.square.clone(),
                }
            })
            .collect();
        let rational = self.rational_part();

        let mut rounds = 0;
        loop {
            let mut lo = rational.clone();
            let mut hi = rational.clone();
            for w in &working {
                if w.coeff.is_positive() {
                    lo += &w.coeff * &w.lo;
                    hi += &w.coeff * &w.hi;
                } else {
                    lo += &w.coeff * &w.hi;
                    hi += &w.coeff * &w.lo;
                }
            }
            if lo.is_positive() {
                return Ok(Sign::Positive);
            }
            if hi.is_negative() {
                return Ok(Sign::Negative);
            }
            if rounds >= budget {
                return Err(Error::UndecidedSign { rounds });
            }
            // One interval Newton step per refinable symbol:
            // hi' = (hi + p/hi)/2 >= sqrt(p), lo' = p/hi' <= sqrt(p).
            let mut refined_any = false;
            for w in &mut working {
                if let Some(p) = &w.square {
                    let newton = (&w.hi + p / &w.hi) / Rational::from_integer(BigInt::from(2));
                    let new_hi = if newton < w.hi { newton } else { w.hi.clone() };
                    let new_lo = p / &new_hi;
                    if new_lo > w.lo {
                        w.lo = new_lo;
                        refined_any = true;
                    }
                    if new_hi < w.hi {
                        w.hi = new_hi;
                        refined_any = true;
                    }
                }
            }
            if !refined_any {
                return Err(Error::UndecidedSign { rounds });
            }
            rounds += 1;
        }
    }
}

fn fmt_rational(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for ExactScalar {
    /// Canonical textual form, re-parsable by [`ExactScalar::parse`]: symbol
    /// terms in basis order, rational term last, as in `3/2*sqrt2-1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut write_term =
            |f: &mut fmt::Formatter<'_>, q: &Rational, name: Option<&str>| -> fmt::Result {
                let mag = q.abs();
                if first {
                    if q.is_negative() {
                        write!(f, "-")?;
                    }
                    first = false;
                } else if q.is_negative() {
                    write!(f, "-")?;
                } else {
                    write!(f, "+")?;
                }
                match name {
                    Some(name) => {
                        if mag.is_one() {
                            write!(f, "{name}")
                        } else {
                            write!(f, "{}*{name}", fmt_rational(&mag))
                        }
                    }
                    None => write!(f, "{}", fmt_rational(&mag)),
                }
            };
        for (k, q) in self.coeffs.iter().filter(|(k, _)| **k > 0) {
            write_term(f, q, Some(self.basis.symbols[*k - 1].name()))?;
        }
        if let Some(q) = self.coeffs.get(&0) {
            write_term(f, q, None)?;
        }
        Ok(())
    }
}
