use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use super::{ResolutionGraph, Vertex};
use crate::error::{Error, Result};
use crate::exactnum::Rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AdeFamily {
    A,
    D,
    E,
}

impl fmt::Display for AdeFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AdeFamily::A => "A",
            AdeFamily::D => "D",
            AdeFamily::E => "E",
        })
    }
}

impl FromStr for AdeFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "A" | "a" => Ok(AdeFamily::A),
            "D" | "d" => Ok(AdeFamily::D),
            "E" | "e" => Ok(AdeFamily::E),
            other => Err(Error::Parameter(format!("unknown ADE family `{other}`"))),
        }
    }
}

/// Minimal resolution graph of the rational double point of type `family_k`.
///
/// Components are named `E1..Ek` and every edge is a transversal
/// intersection of `-2`-curves. Vertex numbering:
///
/// * `A_k`: the chain `E1 - E2 - ... - Ek`, all multiplicities 1.
/// * `D_k`: the chain `E1 - ... - E(k-2)` with `E(k-1)` and `Ek` both
///   attached to the fork `E(k-2)`; multiplicities `(1, 2, ..., 2, 1, 1)`.
/// * `E_6, E_7, E_8`: the fork is `E3`, with `E4` as the short arm, `E1 - E2`
///   on one side and `E5 - E6 - ...` on the other.
pub fn ade_graph(family: AdeFamily, k: usize) -> Result<ResolutionGraph> {
    let (edges, mult): (Vec<(usize, usize)>, Vec<u64>) = match family {
        AdeFamily::A if k >= 1 => ((1..k).map(|i| (i, i + 1)).collect(), [1].repeat(k)),
        AdeFamily::D if k >= 4 => {
            let mut edges: Vec<_> = (1..k - 2).map(|i| (i, i + 1)).collect();
            edges.push((k - 2, k - 1));
            edges.push((k - 2, k));
            let mut m = Vec::with_capacity(k);
            m.push(1);
            m.extend([2].repeat(k - 3));
            m.extend([1, 1]);
            (edges, m)
        }
        AdeFamily::E if (6..=8).contains(&k) => {
            let mut edges = alloc::vec![(1, 2), (2, 3), (3, 4), (3, 5)];
            edges.extend((5..k).map(|i| (i, i + 1)));
            let m: &[u64] = match k {
                6 => &[1, 2, 3, 2, 2, 1],
                7 => &[2, 3, 4, 2, 3, 2, 1],
                _ => &[2, 4, 6, 3, 5, 4, 3, 2],
            };
            (edges, m.to_vec())
        }
        _ => {
            let range = match family {
                AdeFamily::A => "k >= 1",
                AdeFamily::D => "k >= 4",
                AdeFamily::E => "k in 6..=8",
            };
            return Err(Error::Parameter(format!("{family}_{k}: need {range}")));
        }
    };

    let vertices = mult
        .iter()
        .enumerate()
        .map(|(i, &m)| Vertex::new(format!("E{}", i + 1), m))
        .collect();
    let mut g = ResolutionGraph::new(format!("{family}{k}"), 2, vertices);
    for i in 0..k {
        g.set_intersection(i, i, Rat::from(-2i64));
    }
    for (a, b) in edges {
        g.set_intersection(a - 1, b - 1, Rat::one());
    }
    Ok(g)
}

/// Every ADE graph with the given bound on `k` for the A and D families.
pub fn ade_catalogue(max_a: usize, max_d: usize) -> Vec<ResolutionGraph> {
    let a = (1..=max_a).map(|k| (AdeFamily::A, k));
    let d = (4..=max_d).map(|k| (AdeFamily::D, k));
    let e = (6..=8).map(|k| (AdeFamily::E, k));
    a.chain(d)
        .chain(e)
        .map(|(f, k)| ade_graph(f, k).expect("in range"))
        .collect()
}
