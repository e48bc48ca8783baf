//! Exhaustive, canonicalized search over integer normal vectors for
//! subalgebras where the discontinuous-group criterion holds while every
//! sl(2,R)-direction is obstructed.
//!
//! Candidates are evaluated with exact machine-integer arithmetic (entries
//! and inner products stay far below the i64 range at desk scale), and every
//! surviving candidate is re-certified through [`crate::criteria`], so each
//! emitted hit carries replayable certificates for both clauses.
//!
//! The candidate stream is deduplicated by the symmetries that fix the
//! problem — coordinate permutation, global negation, and reverse-negation —
//! and split across jobs by static range partition, so the output is
//! identical for every parallelism width.

use std::sync::Arc;
use std::time::Instant;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::criteria::{
    benoist_check, sl2_obstruction, BenoistCertificate, BenoistVerdict, CertificateDoc, Sl2Report,
    SplitSubalgebra,
};
use crate::error::{Error, Result};
use crate::exact::{IrrationalBasis, Rational};
use crate::sl2_orbits::{a_phi_weights, partitions};

/// Parameters of one search run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSpec {
    n: usize,
    bound: i64,
    codim: usize,
    limit: Option<usize>,
    jobs: usize,
}

impl SearchSpec {
    pub fn new(n: usize, bound: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidSearchSpec(format!(
                "rank must be at least 2, got {n}"
            )));
        }
        if bound < 1 {
            return Err(Error::InvalidSearchSpec(format!(
                "bound must be at least 1, got {bound}"
            )));
        }
        Ok(SearchSpec {
            n,
            bound,
            codim: 1,
            limit: None,
            jobs: 1,
        })
    }

    pub fn with_codim(mut self, codim: usize) -> Result<Self> {
        if codim < 1 || codim > self.n - 1 {
            return Err(Error::InvalidSearchSpec(format!(
                "codim must lie in 1..={}, got {codim}",
                self.n - 1
            )));
        }
        self.codim = codim;
        Ok(self)
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_jobs(mut self, jobs: usize) -> Result<Self> {
        if jobs < 1 {
            return Err(Error::InvalidSearchSpec("jobs must be at least 1".into()));
        }
        self.jobs = jobs;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn codim(&self) -> usize {
        self.codim
    }

    pub fn jobs(&self) -> usize {
        self.jobs
    }
}

/// One certified find: a canonical normal tuple for which the
/// discontinuous-group criterion holds and no proper sl(2,R)-direction
/// exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchHit {
    pub normals: Vec<Vec<i64>>,
    pub benoist: BenoistCertificate,
    pub sl2: Sl2Report,
}

/// JSON-lines form of a hit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchHitDoc {
    pub normals: Vec<Vec<String>>,
    pub benoist: CertificateDoc,
    pub sl2: CertificateDoc,
}

impl SearchHit {
    pub fn to_doc(&self) -> SearchHitDoc {
        SearchHitDoc {
            normals: self
                .normals
                .iter()
                .map(|v| v.iter().map(i64::to_string).collect())
                .collect(),
            benoist: self.benoist.to_doc(),
            sl2: self.sl2.to_doc(),
        }
    }
}

/// Summary counters of one run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub candidates: u64,
    pub palindrome_rejects: u64,
    pub sl2_rejects: u64,
    pub hits: u64,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub hits: Vec<SearchHit>,
    pub stats: SearchStats,
    pub truncated: bool,
}

/// All canonical codimension-one candidates: traceless integer vectors with
/// entries in `[-bound, bound]` and coprime entries, one representative per
/// orbit under coordinate permutation, global negation, and
/// reverse-negation. The representative is weakly decreasing and
/// lexicographically least among the two weakly decreasing vectors of its
/// orbit; the stream is emitted in ascending lexicographic order.
pub fn canonical_normals(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    descend_sorted(n, bound, bound, 0, &mut current, &mut |v| {
        if gcd_of(v) == 1 && is_canonical_pair_least(v) {
            out.push(v.to_vec());
        }
    });
    out
}

/// Weakly decreasing integer vectors with entries in `[-bound, prev]`
/// summing to `-partial_sum`, enumerated in ascending lexicographic order.
fn descend_sorted(
    remaining: usize,
    bound: i64,
    prev: i64,
    partial_sum: i64,
    current: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]),
) {
    if remaining == 0 {
        if partial_sum == 0 {
            emit(current);
        }
        return;
    }
    let r = remaining as i64;
    let target = -partial_sum;
    // d >= target/r since the tail is bounded above by d itself, and the
    // tail is bounded below by -bound
    let lo = (-bound).max(div_ceil_i64(target, r));
    let hi = prev.min(target + (r - 1) * bound);
    for d in lo..=hi {
        current.push(d);
        descend_sorted(remaining - 1, bound, d, partial_sum + d, current, emit);
        current.pop();
    }
}

fn div_ceil_i64(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    if a % b == 0 || a < 0 {
        a / b
    } else {
        a / b + 1
    }
}

fn gcd_of(v: &[i64]) -> i64 {
    v.iter().fold(0i64, |acc, &x| acc.gcd(&x))
}

/// Reverse-negate, the other weakly decreasing vector of the orbit.
fn reverse_negate(v: &[i64]) -> Vec<i64> {
    v.iter().rev().map(|&x| -x).collect()
}

fn is_canonical_pair_least(v: &[i64]) -> bool {
    let rn = reverse_negate(v);
    *v <= rn[..]
}

/// Sign-canonical form: first nonzero entry positive.
fn sign_canonical(v: &[i64]) -> Vec<i64> {
    match v.iter().find(|&&x| x != 0) {
        Some(&x) if x < 0 => v.iter().map(|&x| -x).collect(),
        _ => v.to_vec(),
    }
}

/// All primitive traceless sign-canonical vectors, in ascending
/// lexicographic order (the pool for codimension >= 2 tuples).
fn signed_pool(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    descend_free(n, bound, 0, &mut current, &mut |v| {
        if gcd_of(v) == 1 && v.iter().find(|&&x| x != 0).copied().unwrap_or(0) > 0 {
            out.push(v.to_vec());
        }
    });
    out
}

/// All integer vectors with entries in `[-bound, bound]` summing to zero,
/// without the sorted constraint.
fn descend_free(
    remaining: usize,
    bound: i64,
    partial_sum: i64,
    current: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]),
) {
    if remaining == 0 {
        if partial_sum == 0 {
            emit(current);
        }
        return;
    }
    let r = remaining as i64;
    let target = -partial_sum;
    let lo = (-bound).max(target - (r - 1) * bound);
    let hi = bound.min(target + (r - 1) * bound);
    for d in lo..=hi {
        current.push(d);
        descend_free(remaining - 1, bound, partial_sum + d, current, emit);
        current.pop();
    }
}

fn apply_perm(images: &[usize], v: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; v.len()];
    for (i, &x) in v.iter().enumerate() {
        out[images[i]] = x;
    }
    out
}

fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize]) -> bool) {
    let mut a: Vec<usize> = (0..n).collect();
    loop {
        if f(&a) {
            return;
        }
        // next permutation in lexicographic order
        let Some(i) = (1..n).rev().find(|&i| a[i - 1] < a[i]) else {
            return;
        };
        let j = (i..n)
            .rev()
            .find(|&j| a[j] > a[i - 1])
            .expect("suffix is decreasing");
        a.swap(i - 1, j);
        a[i..].reverse();
    }
}

/// Canonical tuples of `codim` pairwise independent normals, deduplicated by
/// the simultaneous symmetry (one permutation applied to all normals at
/// once, plus per-normal sign normalization, which subsumes global negation
/// and reverse-negation).
fn canonical_tuples(n: usize, bound: i64, codim: usize) -> Vec<Vec<Vec<i64>>> {
    if codim == 1 {
        return canonical_normals(n, bound)
            .into_iter()
            .map(|v| vec![v])
            .collect();
    }
    let pool = signed_pool(n, bound);
    let mut out = Vec::new();
    if pool.len() < codim {
        return out;
    }
    let mut indices: Vec<usize> = (0..codim).collect();
    'outer: loop {
        let tuple: Vec<&Vec<i64>> = indices.iter().map(|&i| &pool[i]).collect();
        if is_canonical_tuple(n, &tuple) {
            out.push(tuple.into_iter().cloned().collect());
        }
        // next index combination
        let mut i = codim;
        while i > 0 {
            i -= 1;
            if indices[i] < pool.len() - (codim - i) {
                indices[i] += 1;
                for j in i + 1..codim {
                    indices[j] = indices[j - 1] + 1;
                }
                continue 'outer;
            }
        }
        return out;
    }
}

/// A tuple (sorted ascending) is canonical iff no simultaneous permutation
/// produces a lexicographically smaller sorted tuple of sign-canonical
/// images.
fn is_canonical_tuple(n: usize, tuple: &[&Vec<i64>]) -> bool {
    let original: Vec<Vec<i64>> = tuple.iter().map(|v| (*v).clone()).collect();
    let mut smaller_found = false;
    for_each_permutation(n, |images| {
        let mut moved: Vec<Vec<i64>> = tuple
            .iter()
            .map(|v| sign_canonical(&apply_perm(images, v)))
            .collect();
        moved.sort();
        if moved < original {
            smaller_found = true;
            return true;
        }
        false
    });
    !smaller_found
}

/// Why the fast path rejected a candidate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Reject {
    /// Some simultaneous Weyl image of the normals is palindromic, so the
    /// criterion for a non-virtually-abelian discontinuous group fails.
    Palindrome,
    /// Some nonzero hyperbolic element escapes every image of the
    /// subalgebra, so a proper sl(2,R)-direction exists.
    Sl2,
}

/// Shared per-run data for the integer fast path: the nonzero hyperbolic
/// weight multisets, cheapest orbit first.
struct EvalContext {
    n: usize,
    points: Vec<Vec<i64>>,
}

impl EvalContext {
    fn new(n: usize) -> Self {
        let mut points: Vec<Vec<i64>> = partitions(n)
            .iter()
            .map(a_phi_weights)
            .filter(|w| w.iter().any(|&x| x != 0))
            .collect();
        points.sort_by_key(|w| orbit_size(w));
        EvalContext { n, points }
    }
}

fn orbit_size(sorted_weights: &[i64]) -> u64 {
    let n = sorted_weights.len() as u64;
    let mut size = (1..=n).product::<u64>();
    let mut i = 0;
    while i < sorted_weights.len() {
        let mut j = i;
        while j < sorted_weights.len() && sorted_weights[j] == sorted_weights[i] {
            j += 1;
        }
        size /= (1..=(j - i) as u64).product::<u64>();
        i = j;
    }
    size
}

/// Palindromic arrangement feasibility: some simultaneous permutation makes
/// every normal palindromic iff the coordinate columns of the tuple pair up,
/// i.e. at most one column class has odd multiplicity (exactly the middle
/// slot, for odd n).
fn palindrome_feasible(n: usize, tuple: &[Vec<i64>]) -> bool {
    let mut counts: std::collections::HashMap<Vec<i64>, usize> = std::collections::HashMap::new();
    for i in 0..n {
        let column: Vec<i64> = tuple.iter().map(|v| v[i]).collect();
        *counts.entry(column).or_insert(0) += 1;
    }
    let odd = counts.values().filter(|&&c| c % 2 == 1).count();
    odd <= if n % 2 == 1 { 1 } else { 0 }
}

/// Is some arrangement of `weights` simultaneously orthogonal to every row?
/// Enumerates distinct multiset arrangements with incremental partial sums.
fn exists_orthogonal_arrangement(weights_desc: &[i64], rows: &[Vec<i64>]) -> bool {
    let mut values = Vec::new();
    let mut counts = Vec::new();
    for &w in weights_desc {
        if values.last() == Some(&w) {
            *counts.last_mut().expect("counts nonempty") += 1;
        } else {
            values.push(w);
            counts.push(1usize);
        }
    }
    let mut partial = vec![0i64; rows.len()];
    recurse_arrangements(&values, &mut counts, rows, 0, &mut partial)
}

fn recurse_arrangements(
    values: &[i64],
    counts: &mut [usize],
    rows: &[Vec<i64>],
    pos: usize,
    partial: &mut [i64],
) -> bool {
    if pos == rows[0].len() {
        return partial.iter().all(|&d| d == 0);
    }
    for k in 0..values.len() {
        if counts[k] == 0 {
            continue;
        }
        counts[k] -= 1;
        for (j, row) in rows.iter().enumerate() {
            partial[j] += values[k] * row[pos];
        }
        let found = recurse_arrangements(values, counts, rows, pos + 1, partial);
        for (j, row) in rows.iter().enumerate() {
            partial[j] -= values[k] * row[pos];
        }
        counts[k] += 1;
        if found {
            return true;
        }
    }
    false
}

fn evaluate_candidate(ctx: &EvalContext, tuple: &[Vec<i64>]) -> Option<Reject> {
    if palindrome_feasible(ctx.n, tuple) {
        return Some(Reject::Palindrome);
    }
    for weights in &ctx.points {
        if !exists_orthogonal_arrangement(weights, tuple) {
            return Some(Reject::Sl2);
        }
    }
    None
}

#[derive(Debug, Default)]
struct ChunkResult {
    hit_tuples: Vec<Vec<Vec<i64>>>,
    palindrome_rejects: u64,
    sl2_rejects: u64,
}

fn evaluate_chunk(ctx: &EvalContext, chunk: &[Vec<Vec<i64>>]) -> ChunkResult {
    let mut result = ChunkResult::default();
    for tuple in chunk {
        match evaluate_candidate(ctx, tuple) {
            Some(Reject::Palindrome) => result.palindrome_rejects += 1,
            Some(Reject::Sl2) => result.sl2_rejects += 1,
            None => result.hit_tuples.push(tuple.clone()),
        }
    }
    result
}

/// Run the search. The candidate stream is partitioned into `jobs`
/// contiguous ranges evaluated independently; the merged hit list is in
/// canonical (ascending candidate) order regardless of parallelism. Each hit
/// is re-certified through the exact decision procedures before it is
/// emitted.
pub fn hunt(spec: &SearchSpec) -> Result<SearchOutcome> {
    let started = Instant::now();
    let candidates = canonical_tuples(spec.n, spec.bound, spec.codim);
    let ctx = EvalContext::new(spec.n);

    let chunk_size = candidates.len().div_ceil(spec.jobs).max(1);
    let chunks: Vec<&[Vec<Vec<i64>>]> = candidates.chunks(chunk_size).collect();
    let results = evaluate_chunks(&ctx, &chunks, spec.jobs);

    let mut palindrome_rejects = 0;
    let mut sl2_rejects = 0;
    let mut hit_tuples = Vec::new();
    for r in results {
        palindrome_rejects += r.palindrome_rejects;
        sl2_rejects += r.sl2_rejects;
        hit_tuples.extend(r.hit_tuples);
    }

    let total_hits = hit_tuples.len();
    let truncated = spec.limit.is_some_and(|l| total_hits > l);
    if let Some(limit) = spec.limit {
        hit_tuples.truncate(limit);
    }

    let basis = crate::default_basis(spec.n);
    let hits = hit_tuples
        .into_iter()
        .map(|tuple| certify_hit(&basis, spec.n, tuple))
        .collect::<Result<Vec<_>>>()?;

    Ok(SearchOutcome {
        hits,
        stats: SearchStats {
            candidates: candidates.len() as u64,
            palindrome_rejects,
            sl2_rejects,
            hits: total_hits as u64,
            elapsed_ms: started.elapsed().as_millis() as u64,
        },
        truncated,
    })
}

#[cfg(feature = "parallel")]
fn evaluate_chunks(
    ctx: &EvalContext,
    chunks: &[&[Vec<Vec<i64>>]],
    jobs: usize,
) -> Vec<ChunkResult> {
    if jobs <= 1 {
        return chunks.iter().map(|c| evaluate_chunk(ctx, c)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool construction");
    pool.install(|| chunks.par_iter().map(|c| evaluate_chunk(ctx, c)).collect())
}

#[cfg(not(feature = "parallel"))]
fn evaluate_chunks(
    ctx: &EvalContext,
    chunks: &[&[Vec<Vec<i64>>]],
    _jobs: usize,
) -> Vec<ChunkResult> {
    chunks.iter().map(|c| evaluate_chunk(ctx, c)).collect()
}

/// Sequential evaluation regardless of the jobs setting or the `parallel`
/// feature; the baseline the benchmark suite compares against.
pub fn hunt_sequential(spec: &SearchSpec) -> Result<SearchOutcome> {
    let mut sequential = spec.clone();
    sequential.jobs = 1;
    hunt(&sequential)
}

fn certify_hit(basis: &Arc<IrrationalBasis>, n: usize, tuple: Vec<Vec<i64>>) -> Result<SearchHit> {
    let rows: Vec<Vec<Rational>> = tuple
        .iter()
        .map(|v| {
            v.iter()
                .map(|&x| Rational::from_integer(x.into()))
                .collect()
        })
        .collect();
    let h = SplitSubalgebra::new(basis, n, &rows)?;
    let benoist = benoist_check(&h)?;
    let sl2 = sl2_obstruction(&h)?;
    // the fast integer path and the certified path decide the same
    // predicates; a disagreement is a bug, not an input condition
    assert_eq!(
        benoist.verdict,
        BenoistVerdict::Holds,
        "fast path accepted {tuple:?}"
    );
    assert!(!sl2.proper_sl2_exists, "fast path accepted {tuple:?}");
    Ok(SearchHit {
        normals: tuple,
        benoist,
        sl2,
    })
}
