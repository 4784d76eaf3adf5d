//! Extreme rays of the cone `{a >= 0, -C a >= 0}` by the double description
//! method, in exact integer arithmetic.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::graph::{Divisor, ValidGraph};

/// Default bound on the number of components for ray enumeration.
pub const DEFAULT_RAY_LIMIT: usize = 16;

/// Extreme rays, each scaled to coprime non-negative integers, sorted
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RayFamily {
    pub rays: Vec<Divisor>,
}

impl RayFamily {
    pub fn len(&self) -> usize {
        self.rays.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rays.is_empty()
    }
}

/// Inequality rows `h` with `h . a >= 0`: first the coordinate rows, then the
/// psef rows `-C_i` with denominators cleared.
pub(crate) fn cone_rows(g: &ValidGraph) -> Vec<Vec<BigInt>> {
    let n = g.len();
    let mut rows: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    for i in 0..n {
        let row = g.intersections().row(i);
        let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        rows.push(
            row.iter()
                .map(|x| -(x.numer() * (&l / x.denom())))
                .collect(),
        );
    }
    rows
}

fn eval(h: &[BigInt], r: &[BigInt]) -> BigInt {
    h.iter().zip(r).map(|(a, b)| a * b).sum()
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() && !g.is_one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

struct Ray {
    coords: Vec<BigInt>,
    /// Bit `k` set iff processed row `k` vanishes on the ray.
    zeros: Vec<u64>,
}

fn zero_set(rows: &[Vec<BigInt>], coords: &[BigInt]) -> Vec<u64> {
    let mut bits = alloc::vec![0u64; rows.len().div_ceil(64)];
    for (k, h) in rows.iter().enumerate() {
        if eval(h, coords).is_zero() {
            bits[k / 64] |= 1 << (k % 64);
        }
    }
    bits
}

fn intersect(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| x & y).collect()
}

fn contains(sup: &[u64], sub: &[u64]) -> bool {
    sup.iter().zip(sub).all(|(x, y)| x & y == *y)
}

fn count(bits: &[u64]) -> usize {
    bits.iter().map(|b| b.count_ones() as usize).sum()
}

/// Extreme rays of the pointed cone `{a : h . a >= 0 for all rows h}`, where
/// the first `d` rows are the coordinate rows.
pub(crate) fn extreme_rays(rows: &[Vec<BigInt>], d: usize) -> Vec<Vec<BigInt>> {
    // The orthant: its rays are the unit vectors.
    let mut rays: Vec<Ray> = (0..d)
        .map(|i| {
            let coords = rows[i].clone();
            let zeros = zero_set(&rows[..d], &coords);
            Ray { coords, zeros }
        })
        .collect();

    for k in d..rows.len() {
        let h = &rows[k];
        let processed = &rows[..=k];
        let values: Vec<BigInt> = rays.iter().map(|r| eval(h, &r.coords)).collect();
        let pos: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_positive())
            .collect();
        let neg: Vec<usize> = (0..rays.len())
            .filter(|&i| values[i].is_negative())
            .collect();

        let mut next: Vec<Vec<BigInt>> = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = intersect(&rays[p].zeros, &rays[q].zeros);
                if count(&common) + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !contains(&r.zeros, &common));
                if !adjacent {
                    continue;
                }
                let (vp, vq) = (&values[p], &values[q]);
                let combined: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(xq, xp)| vp * xq - vq * xp)
                    .collect();
                next.push(primitive(combined));
            }
        }
        let kept = rays
            .into_iter()
            .zip(&values)
            .filter(|(_, v)| !v.is_negative())
            .map(|(r, _)| r.coords);
        rays = kept
            .chain(next)
            .map(|coords| {
                let zeros = zero_set(processed, &coords);
                Ray { coords, zeros }
            })
            .collect();
    }

    let mut out: Vec<Vec<BigInt>> = rays.into_iter().map(|r| primitive(r.coords)).collect();
    out.sort();
    out.dedup();
    out
}

pub fn enumerate_rays(g: &ValidGraph) -> Result<RayFamily> {
    enumerate_rays_with_limit(g, DEFAULT_RAY_LIMIT)
}

pub fn enumerate_rays_with_limit(g: &ValidGraph, limit: usize) -> Result<RayFamily> {
    if g.len() > limit {
        return Err(Error::Capacity {
            vertices: g.len(),
            limit,
        });
    }
    let rays = extreme_rays(&cone_rows(g), g.len())
        .into_iter()
        .map(|r| {
            Divisor::new(r.into_iter().map(Rat::from).collect()).expect("cone rays are effective")
        })
        .collect();
    Ok(RayFamily { rays })
}
