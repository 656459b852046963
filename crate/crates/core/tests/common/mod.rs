//! Brute-force reference computations shared by the property tests and the
//! acceptance suite. Nothing here calls into the normal-form code it checks.
#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Determinant by cofactor expansion along the first row.
pub fn det_laplace(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for (c, a) in m[0].iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = a * det_laplace(&minor);
        if c % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == k)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// |gcd of all k x k minors|, zero when there are none or all vanish.
pub fn minor_gcd(m: &[Vec<BigInt>], k: usize) -> BigInt {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    if k > rows || k > cols {
        return BigInt::zero();
    }
    let mut g = BigInt::zero();
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<BigInt>> = rs
                .iter()
                .map(|&i| cs.iter().map(|&j| m[i][j].clone()).collect())
                .collect();
            g = g.gcd(&det_laplace(&sub));
        }
    }
    g.abs()
}

/// Number of homomorphisms `⊕ Z/d_i -> ⊕ Z/e_j`, counted by enumerating
/// every tuple of generator images and keeping those killed by `d_i`.
pub fn brute_hom_count(source: &[u64], target: &[u64]) -> u64 {
    let elements = all_elements(target);
    // killed[i][c]: d_i annihilates element c
    let killed: Vec<Vec<bool>> = source
        .iter()
        .map(|&d| {
            elements
                .iter()
                .map(|x| x.iter().zip(target).all(|(&x, &e)| (x * d) % e == 0))
                .collect()
        })
        .collect();
    let mut choice = vec![0usize; source.len()];
    let mut count = 0u64;
    loop {
        if choice.iter().enumerate().all(|(i, &c)| killed[i][c]) {
            count += 1;
        }
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                return count;
            }
            choice[pos] += 1;
            if choice[pos] < elements.len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

fn all_elements(orders: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &o in orders {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..o).map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x);
                    p
                })
            })
            .collect();
    }
    out
}

/// Every invariant-factor list `d_1 | d_2 | ... | d_k` (all `>= 2`) whose
/// product is at most `max_order`; the empty list is the trivial group.
pub fn finite_groups_up_to(max_order: u64) -> Vec<Vec<u64>> {
    fn extend(prefix: &mut Vec<u64>, product: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        out.push(prefix.clone());
        let start = prefix.last().copied().unwrap_or(2);
        let mut next = start;
        while product * next <= max {
            if prefix.last().is_none_or(|&last| next % last == 0) {
                prefix.push(next);
                extend(prefix, product * next, max, out);
                prefix.pop();
            }
            next += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_order, &mut out);
    out
}

/// All decreasingly sorted Platonic tuples of the given length with entries
/// in `1..=max`, built directly from the five families.
pub fn platonic_sorted_tuples(len: usize, max: u64) -> BTreeSet<Vec<u64>> {
    let mut heads: BTreeSet<Vec<u64>> = BTreeSet::new();
    for t in [[5, 3, 2], [4, 3, 2], [3, 3, 2]] {
        if t[0] <= max {
            heads.insert(t.to_vec());
        }
    }
    for x in 2..=max {
        heads.insert(vec![x, 2, 2]);
    }
    for x in 1..=max {
        for y in 1..=x {
            heads.insert(vec![x, y, 1]);
        }
    }
    heads
        .into_iter()
        .filter_map(|head| {
            if len >= 3 {
                let mut t = head;
                t.resize(len, 1);
                Some(t)
            } else if head[len..].iter().all(|&x| x == 1) {
                Some(head[..len].to_vec())
            } else {
                None
            }
        })
        .collect()
}

/// All decreasingly sorted tuples of length `len` with entries in `1..=max`.
pub fn sorted_tuples(len: usize, max: u64) -> Vec<Vec<u64>> {
    fn go(len: usize, bound: u64, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for x in 1..=bound {
            cur.push(x);
            go(len, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, max, &mut Vec::new(), &mut out);
    out
}
