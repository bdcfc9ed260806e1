//! Brute-force reference implementations, written from the definitions and
//! sharing no code with the library beyond reading tables.
#![allow(dead_code)]

use rand::Rng;
use vbf_core::{BoolFn, VectFn};

pub fn bits(f: &BoolFn) -> Vec<bool> {
    (0..f.len() as u32).map(|x| f.get(x)).collect()
}

pub fn table(f: &VectFn) -> Vec<u32> {
    (0..f.len() as u32).map(|x| f.get(x)).collect()
}

fn dot(a: u32, b: u32) -> bool {
    (a & b).count_ones() % 2 == 1
}

fn sign(b: bool) -> i64 {
    if b {
        -1
    } else {
        1
    }
}

pub fn walsh(t: &[bool]) -> Vec<i64> {
    let n = t.len() as u32;
    (0..n).map(|u| (0..n).map(|x| sign(t[x as usize] ^ dot(u, x))).sum()).collect()
}

/// ANF coefficients by summing over subsets.
pub fn anf(t: &[bool]) -> Vec<bool> {
    let n = t.len() as u32;
    (0..n)
        .map(|u| (0..n).filter(|&x| x & u == x).fold(false, |acc, x| acc ^ t[x as usize]))
        .collect()
}

pub fn degree(t: &[bool]) -> usize {
    anf(t)
        .iter()
        .enumerate()
        .filter(|(_, &c)| c)
        .map(|(u, _)| (u as u32).count_ones() as usize)
        .max()
        .unwrap_or(0)
}

pub fn weight(t: &[bool]) -> usize {
    t.iter().filter(|&&b| b).count()
}

pub fn derivative(t: &[bool], a: u32) -> Vec<bool> {
    (0..t.len()).map(|x| t[x] ^ t[x ^ a as usize]).collect()
}

pub fn is_balanced(t: &[bool]) -> bool {
    2 * weight(t) == t.len()
}

pub fn is_constant(t: &[bool]) -> bool {
    t.iter().all(|&b| b == t[0])
}

pub fn gamma(t: &[bool]) -> usize {
    (1..t.len() as u32).filter(|&a| is_balanced(&derivative(t, a))).count()
}

pub fn linear_structures(t: &[bool]) -> Vec<u32> {
    (0..t.len() as u32).filter(|&a| is_constant(&derivative(t, a))).collect()
}

pub fn is_bent(t: &[bool]) -> bool {
    (1..t.len() as u32).all(|a| is_balanced(&derivative(t, a)))
}

pub fn is_plateaued(t: &[bool]) -> bool {
    let w = walsh(t);
    let mut nz = w.iter().filter(|&&v| v != 0).map(|v| v.abs());
    let first = nz.next();
    nz.all(|v| Some(v) == first)
}

pub fn component(t: &[u32], lambda: u32) -> Vec<bool> {
    t.iter().map(|&y| dot(lambda, y)).collect()
}

pub fn ddt(t: &[u32]) -> Vec<Vec<u32>> {
    let n = t.len();
    let mut d = vec![vec![0u32; n]; n];
    for a in 0..n {
        for x in 0..n {
            d[a][(t[x] ^ t[x ^ a]) as usize] += 1;
        }
    }
    d
}

pub fn delta(t: &[u32]) -> u32 {
    ddt(t)[1..].iter().flat_map(|r| r.iter().copied()).max().unwrap_or(0)
}

pub fn is_permutation(t: &[u32]) -> bool {
    let mut seen = vec![false; t.len()];
    t.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
}

/// Smallest integer `d` with `|Im D_a F| > 2^(m-1) / d`, maximized over `a != 0`.
pub fn weak_delta(t: &[u32]) -> u32 {
    let n = t.len();
    (1..n)
        .map(|a| {
            let mut img: Vec<u32> = (0..n).map(|x| t[x] ^ t[x ^ a]).collect();
            img.sort_unstable();
            img.dedup();
            let s = img.len() as u32;
            (1..).find(|&d| s * d > n as u32 / 2).unwrap()
        })
        .max()
        .unwrap_or(0)
}

/// `sum_lambda F(D_a F_lambda)^2` over every mask `lambda`, including 0.
pub fn nyberg_sum(t: &[u32], a: u32) -> i64 {
    let n = t.len() as u32;
    (0..n)
        .map(|lambda| {
            let f: i64 = (0..n).map(|x| sign(dot(lambda, t[x as usize] ^ t[(x ^ a) as usize]))).sum();
            f * f
        })
        .sum()
}

pub fn component_degrees(t: &[u32]) -> Vec<usize> {
    (1..t.len() as u32).map(|l| degree(&component(t, l))).collect()
}

/// `max_a |{lambda != 0 : D_a F_lambda constant}|`.
pub fn n_hat(t: &[u32]) -> usize {
    let n = t.len() as u32;
    (1..n)
        .map(|a| (1..n).filter(|&l| is_constant(&derivative(&component(t, l), a))).count())
        .max()
        .unwrap_or(0)
}

/// Every linear subspace of `F_2^m`, as member lists.
pub fn subspaces(m: usize) -> Vec<Vec<u32>> {
    let n = 1u32 << m;
    let mut out: Vec<Vec<u32>> = vec![vec![0]];
    let mut seen = std::collections::HashSet::new();
    seen.insert(vec![0u32]);
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for s in &frontier {
            for v in 0..n {
                if s.contains(&v) {
                    continue;
                }
                let mut t: Vec<u32> = s.iter().flat_map(|&x| [x, x ^ v]).collect();
                t.sort_unstable();
                if seen.insert(t.clone()) {
                    next.push(t);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

fn restricted_bent(t: &[bool], u: &[u32]) -> bool {
    u.iter().skip(1).all(|&a| {
        let ones = u.iter().filter(|&&x| t[x as usize] ^ t[(x ^ a) as usize]).count();
        2 * ones == u.len()
    })
}

fn restricted_affine(t: &[bool], v: &[u32]) -> bool {
    v.iter().all(|&a| v.iter().all(|&b| !(t[(a ^ b) as usize] ^ t[a as usize] ^ t[b as usize] ^ t[0])))
}

/// Partially bent in the decomposition sense: `F_2^m = U + V` with `f`
/// bent on `U`, affine on `V`, and `f(u + v) = f(u) + f(v) + f(0)`.
/// Exhaustive over subspace pairs, so only for small `m`.
pub fn partially_bent_by_subspaces(t: &[bool]) -> bool {
    let m = t.len().trailing_zeros() as usize;
    assert!(m <= 4, "oracle is exponential in the number of subspaces");
    let subs = subspaces(m);
    subs.iter().any(|v| {
        restricted_affine(t, v)
            && subs.iter().any(|u| {
                u.len() * v.len() == t.len()
                    && u.iter().filter(|x| v.contains(x)).count() == 1
                    && restricted_bent(t, u)
                    && u.iter().all(|&a| v.iter().all(|&b| t[(a ^ b) as usize] == t[a as usize] ^ t[b as usize] ^ t[0]))
            })
    })
}

/// Truth table of the function with the given ANF monomial masks.
pub fn from_monomials(m: usize, monomials: &[u32]) -> Vec<bool> {
    (0..1u32 << m).map(|x| monomials.iter().filter(|&&u| x & u == u).count() % 2 == 1).collect()
}

pub fn to_boolfn(t: &[bool]) -> BoolFn {
    BoolFn::from_bits(t).unwrap()
}

/// Random function of degree exactly 2.
pub fn random_quadratic<R: Rng>(m: usize, rng: &mut R) -> Vec<bool> {
    let quad: Vec<u32> = (0..1u32 << m).filter(|u| u.count_ones() == 2).collect();
    loop {
        let mut mons: Vec<u32> = quad.iter().copied().filter(|_| rng.gen()).collect();
        if mons.is_empty() {
            continue;
        }
        mons.extend((0..=m).filter(|_| rng.gen()).map(|i| if i == m { 0 } else { 1 << i }));
        return from_monomials(m, &mons);
    }
}

/// Random function of degree exactly 3.
pub fn random_cubic<R: Rng>(m: usize, rng: &mut R) -> Vec<bool> {
    let low: Vec<u32> = (0..1u32 << m).filter(|u| u.count_ones() <= 2).collect();
    let cubic: Vec<u32> = (0..1u32 << m).filter(|u| u.count_ones() == 3).collect();
    loop {
        let mut mons: Vec<u32> = cubic.iter().copied().filter(|_| rng.gen()).collect();
        if mons.is_empty() {
            continue;
        }
        mons.extend(low.iter().copied().filter(|_| rng.gen::<bool>()));
        return from_monomials(m, &mons);
    }
}

pub fn random_bits<R: Rng>(m: usize, rng: &mut R) -> Vec<bool> {
    (0..1usize << m).map(|_| rng.gen()).collect()
}

pub fn random_table<R: Rng>(m: usize, rng: &mut R) -> Vec<u32> {
    (0..1u32 << m).map(|_| rng.gen_range(0..1u32 << m)).collect()
}
