//! Weighted dual graphs of log resolutions, their validation rules, and
//! divisors supported on the exceptional components.

mod ade;

use alloc::collections::{BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Deref;

use crate::error::{Error, Result};
use crate::exactnum::{Rat, RatMatrix};
use crate::invariants;

pub use ade::{ade_catalogue, ade_graph, AdeFamily};

/// An exceptional component `E_i` with multiplicity `m_i` in the pullback of
/// the maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub m: u64,
}

impl Vertex {
    pub fn new(id: impl Into<String>, m: u64) -> Self {
        Vertex { id: id.into(), m }
    }
}

/// Dual graph of the exceptional divisor `E = Σ m_i E_i`.
///
/// `intersections[(i, j)]` is `c_ij = E_i · E_j · ω^{n-2}`; for surfaces these
/// are the plain intersection numbers. `theta_degrees` are the `e_i`; they are
/// derived from the intersection data when `dimension == 2` and must be
/// supplied otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionGraph {
    name: String,
    dimension: u32,
    vertices: Vec<Vertex>,
    intersections: RatMatrix,
    theta_degrees: Option<Vec<Rat>>,
}

impl ResolutionGraph {
    /// A graph with all intersection numbers zero.
    pub fn new(name: impl Into<String>, dimension: u32, vertices: Vec<Vertex>) -> Self {
        let n = vertices.len();
        ResolutionGraph {
            name: name.into(),
            dimension,
            vertices,
            intersections: RatMatrix::zeros(n, n),
            theta_degrees: None,
        }
    }

    /// Raw constructor; nothing is checked until [`validate`](Self::validate).
    pub fn from_parts(
        name: impl Into<String>,
        dimension: u32,
        vertices: Vec<Vertex>,
        intersections: RatMatrix,
        theta_degrees: Option<Vec<Rat>>,
    ) -> Self {
        ResolutionGraph {
            name: name.into(),
            dimension,
            vertices,
            intersections,
            theta_degrees,
        }
    }

    /// Sets `c_ij` and `c_ji`.
    pub fn set_intersection(&mut self, i: usize, j: usize, value: Rat) {
        self.intersections[(j, i)] = value.clone();
        self.intersections[(i, j)] = value;
    }

    pub fn set_theta_degrees(&mut self, theta: Option<Vec<Rat>>) {
        self.theta_degrees = theta;
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn intersections(&self) -> &RatMatrix {
        &self.intersections
    }

    pub fn intersection(&self, i: usize, j: usize) -> &Rat {
        &self.intersections[(i, j)]
    }

    pub fn theta_degrees(&self) -> Option<&[Rat]> {
        self.theta_degrees.as_deref()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn multiplicities(&self) -> Vec<Rat> {
        self.vertices.iter().map(|v| Rat::from(v.m)).collect()
    }

    /// Distinct `j` with `c_ij > 0`, in vertex order.
    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&j| j != i && self.intersections[(i, j)].is_positive())
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| {
                self.neighbors(i)
                    .filter(move |&j| j > i)
                    .map(move |j| (i, j))
            })
            .collect()
    }

    fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Every violated invariant; an empty report means the graph is valid.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let v = &mut report.violations;
        let n = self.len();

        if self.dimension < 2 {
            v.push(Violation::DimensionTooSmall(self.dimension));
        }
        if n == 0 {
            v.push(Violation::NoVertices);
            return report;
        }
        let mut ids = BTreeSet::new();
        for vert in &self.vertices {
            if !ids.insert(vert.id.as_str()) {
                v.push(Violation::DuplicateVertex(vert.id.clone()));
            }
            if vert.m == 0 {
                v.push(Violation::NonPositiveMultiplicity(vert.id.clone()));
            }
        }
        let c = &self.intersections;
        if c.rows() != n || c.cols() != n {
            v.push(Violation::MatrixShape {
                rows: c.rows(),
                cols: c.cols(),
                vertices: n,
            });
            return report;
        }
        let id = |i: usize| self.vertices[i].id.clone();
        for i in 0..n {
            for j in i + 1..n {
                if c[(i, j)] != c[(j, i)] {
                    v.push(Violation::Asymmetric(id(i), id(j)));
                }
                for (a, b) in [(i, j), (j, i)] {
                    if c[(a, b)].is_negative() {
                        v.push(Violation::NegativeOffDiagonal {
                            a: id(a),
                            b: id(b),
                            value: c[(a, b)].clone(),
                        });
                    }
                }
            }
        }
        let components = self.components();
        if components.len() > 1 {
            v.push(Violation::Disconnected(
                components
                    .into_iter()
                    .map(|comp| comp.into_iter().map(id).collect())
                    .collect(),
            ));
        }
        if self.dimension == 2 && c.is_symmetric() && !c.is_negative_definite().unwrap_or(false) {
            v.push(Violation::NotNegativeDefinite);
        }

        match &self.theta_degrees {
            Some(theta) if theta.len() != n => v.push(Violation::ThetaLength {
                expected: n,
                found: theta.len(),
            }),
            None if self.dimension > 2 => v.push(Violation::MissingThetaDegrees),
            _ => {
                let theta = match &self.theta_degrees {
                    Some(t) => t.clone(),
                    None => invariants::derived_theta_degrees(self),
                };
                for (i, e) in theta.iter().enumerate() {
                    if e.is_negative() {
                        v.push(Violation::NegativeThetaDegree {
                            vertex: id(i),
                            value: e.clone(),
                        });
                    }
                }
                let mult: Rat = crate::exactnum::dot(&self.multiplicities(), &theta);
                if !mult.is_positive() {
                    v.push(Violation::NonPositiveMultiplicitySum(mult));
                }
            }
        }
        report
    }

    pub fn into_valid(self) -> Result<ValidGraph> {
        ValidGraph::new(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DimensionTooSmall(u32),
    NoVertices,
    DuplicateVertex(String),
    NonPositiveMultiplicity(String),
    MatrixShape {
        rows: usize,
        cols: usize,
        vertices: usize,
    },
    Asymmetric(String, String),
    NegativeOffDiagonal {
        a: String,
        b: String,
        value: Rat,
    },
    Disconnected(Vec<Vec<String>>),
    NotNegativeDefinite,
    MissingThetaDegrees,
    ThetaLength {
        expected: usize,
        found: usize,
    },
    NegativeThetaDegree {
        vertex: String,
        value: Rat,
    },
    NonPositiveMultiplicitySum(Rat),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionTooSmall(d) => write!(f, "dimension {d} is below 2"),
            Violation::NoVertices => write!(f, "no exceptional components"),
            Violation::DuplicateVertex(id) => write!(f, "duplicate vertex id {id}"),
            Violation::NonPositiveMultiplicity(id) => {
                write!(f, "non-positive multiplicity at {id}")
            }
            Violation::MatrixShape {
                rows,
                cols,
                vertices,
            } => write!(
                f,
                "intersection matrix is {rows}x{cols} for {vertices} vertices"
            ),
            Violation::Asymmetric(a, b) => write!(f, "asymmetric intersection at ({a},{b})"),
            Violation::NegativeOffDiagonal { a, b, value } => {
                write!(f, "negative off-diagonal intersection ({a},{b}) = {value}")
            }
            Violation::Disconnected(comps) => {
                write!(f, "disconnected: {} components", comps.len())?;
                for comp in comps {
                    write!(f, " [{}]", comp.join(","))?;
                }
                Ok(())
            }
            Violation::NotNegativeDefinite => {
                write!(f, "intersection matrix is not negative definite")
            }
            Violation::MissingThetaDegrees => {
                write!(f, "theta degrees are required when dimension > 2")
            }
            Violation::ThetaLength { expected, found } => {
                write!(f, "theta degrees have length {found}, expected {expected}")
            }
            Violation::NegativeThetaDegree { vertex, value } => {
                write!(f, "negative theta degree at {vertex}: {value}")
            }
            Violation::NonPositiveMultiplicitySum(mult) => {
                write!(f, "multiplicity sum m.e = {mult} is not positive")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (k, v) in self.violations.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "- {v}")?;
        }
        Ok(())
    }
}

/// A graph that passed [`ResolutionGraph::validate`], together with its
/// theta-degrees and multiplicity. Everything downstream takes this type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidGraph {
    graph: ResolutionGraph,
    theta: Vec<Rat>,
    multiplicity: Rat,
}

impl ValidGraph {
    pub fn new(graph: ResolutionGraph) -> Result<Self> {
        let report = graph.validate();
        if !report.is_valid() {
            return Err(Error::Invalid(report));
        }
        let theta = invariants::theta_degrees(&graph)?;
        let multiplicity = crate::exactnum::dot(&graph.multiplicities(), &theta);
        Ok(ValidGraph {
            graph,
            theta,
            multiplicity,
        })
    }

    pub fn graph(&self) -> &ResolutionGraph {
        &self.graph
    }

    pub fn into_graph(self) -> ResolutionGraph {
        self.graph
    }

    /// The `e_i`.
    pub fn theta(&self) -> &[Rat] {
        &self.theta
    }

    pub fn multiplicity(&self) -> &Rat {
        &self.multiplicity
    }

    pub(crate) fn check_divisor(&self, a: &Divisor) -> Result<()> {
        if a.len() != self.len() {
            return Err(Error::Shape(format!(
                "divisor has {} coefficients, graph {} has {} components",
                a.len(),
                self.name(),
                self.len()
            )));
        }
        Ok(())
    }

    pub fn resolve(&self, id: &str) -> Result<usize> {
        self.index_of(id)
            .ok_or_else(|| Error::UnknownVertex(id.into()))
    }
}

impl Deref for ValidGraph {
    type Target = ResolutionGraph;

    fn deref(&self) -> &ResolutionGraph {
        &self.graph
    }
}

/// Effective divisor `Σ a_i E_i`, coefficients in vertex order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Divisor(Vec<Rat>);

impl Divisor {
    pub fn new(coefficients: Vec<Rat>) -> Result<Self> {
        if let Some(index) = coefficients.iter().position(Rat::is_negative) {
            return Err(Error::NotEffective { index });
        }
        Ok(Divisor(coefficients))
    }

    pub fn from_integers(coefficients: &[i64]) -> Result<Self> {
        Self::new(coefficients.iter().map(|&x| Rat::from(x)).collect())
    }

    pub fn zero(len: usize) -> Self {
        Divisor(vec![Rat::zero(); len])
    }

    /// The divisor `Σ m_i E_i` itself.
    pub fn fundamental(g: &ResolutionGraph) -> Self {
        Divisor(g.multiplicities())
    }

    pub fn coefficients(&self) -> &[Rat] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn scaled(&self, t: &Rat) -> Result<Self> {
        Self::new(self.0.iter().map(|x| x * t).collect())
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rat::is_integer)
    }
}

impl core::ops::Add<&Divisor> for &Divisor {
    type Output = Divisor;

    fn add(self, rhs: &Divisor) -> Divisor {
        assert_eq!(self.len(), rhs.len(), "divisor length mismatch");
        Divisor(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_a1() -> ResolutionGraph {
        let mut g =
            ResolutionGraph::new("A1+A1", 2, vec![Vertex::new("E1", 1), Vertex::new("F1", 1)]);
        g.set_intersection(0, 0, Rat::from(-2i64));
        g.set_intersection(1, 1, Rat::from(-2i64));
        g
    }

    #[test]
    fn a2_is_valid() {
        let g = ade_graph(AdeFamily::A, 2).unwrap();
        assert!(g.validate().is_valid(), "{}", g.validate());
    }

    #[test]
    fn negative_off_diagonal_is_reported() {
        let mut g = ade_graph(AdeFamily::A, 2).unwrap();
        g.set_intersection(0, 1, Rat::from(-1i64));
        let report = g.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NegativeOffDiagonal { .. })));
        assert!(alloc::string::ToString::to_string(&report).contains("negative off-diagonal"));
    }

    #[test]
    fn disjoint_union_is_disconnected() {
        let report = two_a1().validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Disconnected(c) if c.len() == 2)));
        assert!(alloc::string::ToString::to_string(&report).contains("disconnected"));
    }

    #[test]
    fn zero_multiplicity_is_reported() {
        let mut g = ade_graph(AdeFamily::A, 2).unwrap();
        g.vertices[0].m = 0;
        assert!(g
            .validate()
            .violations
            .contains(&Violation::NonPositiveMultiplicity("E1".into())));
    }

    #[test]
    fn higher_dimension_needs_theta() {
        let mut g = ResolutionGraph::new("cone", 3, vec![Vertex::new("E", 1)]);
        g.set_intersection(0, 0, Rat::from(-3i64));
        assert!(g
            .validate()
            .violations
            .contains(&Violation::MissingThetaDegrees));
        g.set_theta_degrees(Some(vec![Rat::from(3i64)]));
        assert!(g.validate().is_valid());
        g.set_theta_degrees(Some(vec![Rat::from(-1i64)]));
        assert!(!g.validate().is_valid());
    }

    #[test]
    fn semidefinite_surface_graph_is_rejected() {
        let mut g = ResolutionGraph::new("flat", 2, vec![Vertex::new("E", 1)]);
        g.set_intersection(0, 0, Rat::zero());
        let report = g.validate();
        assert!(report.violations.contains(&Violation::NotNegativeDefinite));
    }

    #[test]
    fn negative_theta_on_surface_is_reported() {
        // m = (1, 3) on A_2: e = -C m = (2 - 3, 6 - 1) has a negative entry.
        let mut g = ade_graph(AdeFamily::A, 2).unwrap();
        g.vertices[1].m = 3;
        assert!(g
            .validate()
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NegativeThetaDegree { vertex, .. } if vertex == "E1")));
    }

    #[test]
    fn divisor_rejects_negative_coefficients() {
        assert_eq!(
            Divisor::from_integers(&[1, -1]),
            Err(Error::NotEffective { index: 1 })
        );
    }
}
