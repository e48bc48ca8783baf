#![allow(dead_code)] // each test target uses a different subset

//! Shared helpers for the integration suites: brute-force oracles that stay
//! independent of the library's enumeration and deduplication paths.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::Rng;

use weylproper::Rational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// All permutations of `0..n` in no particular order (plain recursion).
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let n = used.len();
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Naive membership oracle: blindly test all `n!` permutations with raw
/// rational dot products. `x` is a member of the union of Weyl images of
/// the common kernel of `normals` iff some permutation `p` has
/// `sum_i x[i] * v[p[i]] = 0` for every normal `v` simultaneously.
pub fn naive_member(x: &[Rational], normals: &[Vec<Rational>]) -> bool {
    let n = x.len();
    for p in all_permutations(n) {
        let ok = normals.iter().all(|v| {
            let dot: Rational = x.iter().enumerate().map(|(i, xi)| xi * &v[p[i]]).sum();
            dot.is_zero()
        });
        if ok {
            return true;
        }
    }
    false
}

/// Integer variant of the naive oracle.
pub fn naive_member_ints(x: &[i64], normals: &[Vec<i64>]) -> bool {
    let xr: Vec<Rational> = x.iter().map(|&v| rat(v, 1)).collect();
    let nr: Vec<Vec<Rational>> = normals
        .iter()
        .map(|v| v.iter().map(|&q| rat(q, 1)).collect())
        .collect();
    naive_member(&xr, &nr)
}

/// A random traceless rational vector with small entries, never zero.
pub fn random_traceless(rng: &mut StdRng, n: usize) -> Vec<Rational> {
    loop {
        let mut v: Vec<Rational> = (0..n - 1)
            .map(|_| rat(rng.gen_range(-12..=12), rng.gen_range(1..=4)))
            .collect();
        let sum: Rational = v.iter().sum();
        v.push(-sum);
        if v.iter().any(|q| !q.is_zero()) {
            return v;
        }
    }
}
