//! Izumi-type chain estimate for the spread of `a_i / m_i` over the cone.
//!
//! Along a chain of meeting components `E_1, ..., E_r`, each psef row gives
//! `a_{i+1} c_{i,i+1} <= a_i |c_ii|`, hence
//!
//! ```text
//!     a_r / m_r <= Π_i  m_i |c_ii| / (m_{i+1} c_{i,i+1})  ·  a_1 / m_1.
//! ```
//!
//! Since the argmin and argmax depend on the divisor, every ordered pair is
//! considered and the cheapest simple path is taken for each.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::Rat;
use crate::graph::ValidGraph;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathBound {
    /// Vertex ids from source to target.
    pub path: Vec<String>,
    /// One factor per step.
    pub factors: Vec<Rat>,
    /// Product of the factors; 1 for an empty path.
    pub product: Rat,
}

fn step_factor(g: &ValidGraph, i: usize, j: usize) -> Result<Rat> {
    let c_ii = g.intersection(i, i).abs();
    if c_ii.is_zero() {
        return Err(Error::InconsistentGraph(format!(
            "zero self-intersection at {} on a chain",
            g.vertices()[i].id
        )));
    }
    let (mi, mj) = (Rat::from(g.vertices()[i].m), Rat::from(g.vertices()[j].m));
    Ok(mi * c_ii / (mj * g.intersection(i, j)))
}

struct Search<'a> {
    g: &'a ValidGraph,
    target: usize,
    on_path: Vec<bool>,
    path: Vec<usize>,
    factors: Vec<Rat>,
    best: Option<(Rat, Vec<usize>, Vec<Rat>)>,
}

impl Search<'_> {
    fn walk(&mut self, u: usize, product: &Rat) -> Result<()> {
        if u == self.target {
            if self.best.as_ref().is_none_or(|(p, _, _)| product < p) {
                self.best = Some((product.clone(), self.path.clone(), self.factors.clone()));
            }
            return Ok(());
        }
        let neighbors: Vec<usize> = self.g.neighbors(u).collect();
        for v in neighbors {
            if self.on_path[v] {
                continue;
            }
            let f = step_factor(self.g, u, v)?;
            let next = product * &f;
            self.on_path[v] = true;
            self.path.push(v);
            self.factors.push(f);
            self.walk(v, &next)?;
            self.factors.pop();
            self.path.pop();
            self.on_path[v] = false;
        }
        Ok(())
    }
}

fn best_path(g: &ValidGraph, from: usize, to: usize) -> Result<PathBound> {
    let mut search = Search {
        g,
        target: to,
        on_path: vec![false; g.len()],
        path: vec![from],
        factors: Vec::new(),
        best: None,
    };
    search.on_path[from] = true;
    search.walk(from, &Rat::one())?;
    let (product, path, factors) = search.best.ok_or_else(|| {
        Error::InconsistentGraph(format!(
            "{} and {} are not connected",
            g.vertices()[from].id,
            g.vertices()[to].id
        ))
    })?;
    Ok(PathBound {
        path: path
            .into_iter()
            .map(|i| g.vertices()[i].id.clone())
            .collect(),
        factors,
        product,
    })
}

/// The simple path `from -> to` with the smallest product of step factors.
/// Exhaustive: factors can be below 1, so greedy shortest paths are not
/// optimal. Ties go to the first path in depth-first order by vertex index.
pub fn path_bound(g: &ValidGraph, from: &str, to: &str) -> Result<PathBound> {
    let (u, v) = (g.resolve(from)?, g.resolve(to)?);
    if u == v {
        return Err(Error::Parameter(format!("path endpoints coincide: {from}")));
    }
    best_path(g, u, v)
}

/// `max` over ordered pairs of the best path product; 1 for a single vertex.
/// For every cone divisor, `max_i a_i/m_i <= C · min_i a_i/m_i`.
pub fn global_chain_constant(g: &ValidGraph) -> Result<Rat> {
    let mut best = Rat::one();
    for u in 0..g.len() {
        for v in 0..g.len() {
            if u != v {
                best = best.max(best_path(g, u, v)?.product);
            }
        }
    }
    Ok(best)
}
