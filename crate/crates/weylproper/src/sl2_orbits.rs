//! Hyperbolic elements of sl(2,R)-homomorphisms into sl(n,R), indexed by
//! partitions of n.
//!
//! A homomorphism is determined up to equivalence by the Jordan block sizes
//! of its image, i.e. a partition `[d1, ..., dk]` of n, and its hyperbolic
//! element is the dominant representative of the concatenated weight strings
//! `di-1, di-3, ..., 1-di`. All such elements are fixed by reverse-negation.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exact::IrrationalBasis;
use crate::root_data::CartanPoint;

/// A partition of `n`: weakly decreasing positive parts summing to `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition("parts must be positive".into()));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "parts {parts:?} are not weakly decreasing"
            )));
        }
        Ok(Partition { parts })
    }

    /// Parse `[4,1]` or `4,1`.
    pub fn parse(input: &str) -> Result<Self> {
        let trimmed = input.trim();
        let inner = trimmed
            .strip_prefix('[')
            .map(|rest| {
                rest.strip_suffix(']').ok_or(Error::Parse {
                    position: trimmed.len(),
                    message: "missing closing ']'".into(),
                })
            })
            .transpose()?
            .unwrap_or(trimmed);
        let mut parts = Vec::new();
        for piece in inner.split(',') {
            let p: u32 = piece.trim().parse().map_err(|_| Error::Parse {
                position: 0,
                message: format!("invalid part '{piece}'"),
            })?;
            parts.push(p);
        }
        Self::new(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// The integer being partitioned.
    pub fn n(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }
}

impl fmt::Display for Partition {
    /// Exponent form as in `[3,1^2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        let mut i = 0;
        let mut first = true;
        while i < self.parts.len() {
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == self.parts[i] {
                j += 1;
            }
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if j - i == 1 {
                write!(f, "{}", self.parts[i])?;
            } else {
                write!(f, "{}^{}", self.parts[i], j - i)?;
            }
            i = j;
        }
        write!(f, "]")
    }
}

/// All partitions of `n` in reverse-lexicographic order: `[n]` first,
/// `[1^n]` last.
pub fn partitions(n: usize) -> Vec<Partition> {
    assert!(n >= 1, "partitions of n require n >= 1");
    let mut out = Vec::new();
    let mut current: Vec<u32> = vec![n as u32];
    loop {
        out.push(Partition {
            parts: current.clone(),
        });
        // next partition in reverse-lex order: decrement the rightmost part
        // greater than 1 and refill the tail greedily
        let Some(k) = current.iter().rposition(|&p| p > 1) else {
            break;
        };
        let mut remainder = (current.len() - k) as u32 + current[k] - 1;
        let cap = current[k] - 1;
        current.truncate(k);
        while remainder > 0 {
            let part = remainder.min(cap);
            current.push(part);
            remainder -= part;
        }
    }
    out
}

/// The hyperbolic element attached to a partition: the dominant, integral,
/// reverse-negation-fixed point whose entries are the merged weight strings
/// of the parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperbolicElement {
    partition: Partition,
    point: CartanPoint,
}

impl HyperbolicElement {
    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn point(&self) -> &CartanPoint {
        &self.point
    }

    /// The integer entries of the point, weakly decreasing.
    pub fn weights(&self) -> Vec<i64> {
        a_phi_weights(&self.partition)
    }
}

/// The weight multiset of a partition, sorted descending: each part `d`
/// contributes the string `d-1, d-3, ..., 1-d`.
pub fn a_phi_weights(partition: &Partition) -> Vec<i64> {
    let mut weights = Vec::with_capacity(partition.n());
    for &d in partition.parts() {
        let d = d as i64;
        let mut w = d - 1;
        while w >= 1 - d {
            weights.push(w);
            w -= 2;
        }
    }
    weights.sort_unstable_by(|a, b| b.cmp(a));
    weights
}

/// The hyperbolic element of a partition of `n >= 2`.
pub fn a_phi(basis: &Arc<IrrationalBasis>, partition: &Partition) -> Result<HyperbolicElement> {
    let weights = a_phi_weights(partition);
    let point = CartanPoint::from_integers(basis, &weights)?;
    Ok(HyperbolicElement {
        partition: partition.clone(),
        point,
    })
}

/// All hyperbolic elements for rank `n`, one per partition, in the partition
/// order of [`partitions`]. The points are pairwise distinct.
pub fn hyperbolic_set(basis: &Arc<IrrationalBasis>, n: usize) -> Result<Vec<HyperbolicElement>> {
    if n < 2 {
        return Err(Error::InvalidPartition(format!(
            "rank must be at least 2, got {n}"
        )));
    }
    partitions(n).iter().map(|p| a_phi(basis, p)).collect()
}
