//! Slope, Demailly–Lelong number, multiplicity and the linearized psef cone
//! for divisors on a validated graph.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactnum::{dot, Rat};
use crate::graph::{Divisor, ResolutionGraph, ValidGraph};

/// `e = -C m` componentwise. On a surface, the pullback of a class from the
/// base is numerically trivial on exceptional curves, so the residual class
/// has degree `-Σ_j c_ij m_j` on `E_i`.
pub fn derived_theta_degrees(g: &ResolutionGraph) -> Vec<Rat> {
    let m = g.multiplicities();
    (0..g.len())
        .map(|i| -dot(g.intersections().row(i), &m))
        .collect()
}

/// The theta-degrees `e_i`: the supplied ones, or `-C m` for surfaces.
pub fn theta_degrees(g: &ResolutionGraph) -> Result<Vec<Rat>> {
    let n = g.len();
    if g.intersections().rows() != n || g.intersections().cols() != n {
        return Err(Error::Shape(format!(
            "intersection matrix does not match {n} vertices"
        )));
    }
    let theta = match g.theta_degrees() {
        Some(t) if t.len() != n => {
            return Err(Error::Shape(format!(
                "{} theta degrees for {n} vertices",
                t.len()
            )))
        }
        Some(t) => t.to_vec(),
        None if g.dimension() == 2 => derived_theta_degrees(g),
        None => return Err(Error::MissingThetaDegrees(g.dimension())),
    };
    if let Some(i) = theta.iter().position(Rat::is_negative) {
        return Err(Error::InconsistentGraph(format!(
            "theta degree of {} is {} < 0",
            g.vertices()[i].id,
            theta[i]
        )));
    }
    if !dot(&g.multiplicities(), &theta).is_positive() {
        return Err(Error::InconsistentGraph("m.e is not positive".into()));
    }
    Ok(theta)
}

/// `mult(X, x) = Σ m_i e_i`.
pub fn multiplicity(g: &ValidGraph) -> Rat {
    g.multiplicity().clone()
}

/// `min_i a_i / m_i`.
pub fn slope(g: &ValidGraph, a: &Divisor) -> Result<Rat> {
    g.check_divisor(a)?;
    Ok(a.coefficients()
        .iter()
        .zip(g.vertices())
        .map(|(ai, v)| ai / Rat::from(v.m))
        .min()
        .expect("valid graphs are non-empty"))
}

/// `Σ a_i e_i`.
pub fn lelong(g: &ValidGraph, a: &Divisor) -> Result<Rat> {
    g.check_divisor(a)?;
    Ok(dot(a.coefficients(), g.theta()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeCheck {
    pub in_cone: bool,
    /// `-Σ_j c_ij a_j` for every `i`.
    pub slack: Vec<Rat>,
}

/// Whether `-D|E_i` has non-negative degree on every component.
pub fn in_psef_cone(g: &ValidGraph, a: &Divisor) -> Result<ConeCheck> {
    g.check_divisor(a)?;
    let slack: Vec<Rat> = (0..g.len())
        .map(|i| -dot(g.intersections().row(i), a.coefficients()))
        .collect();
    Ok(ConeCheck {
        in_cone: slack.iter().all(|s| !s.is_negative()),
        slack,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantReport {
    pub slope: Rat,
    pub lelong: Rat,
    pub multiplicity: Rat,
    /// `lelong / (multiplicity · slope)`; `None` when the slope is zero.
    pub ratio: Option<Rat>,
    pub in_cone: bool,
    pub slack: Vec<Rat>,
}

pub fn report(g: &ValidGraph, a: &Divisor) -> Result<InvariantReport> {
    let slope = slope(g, a)?;
    let lelong = lelong(g, a)?;
    let cone = in_psef_cone(g, a)?;
    let multiplicity = multiplicity(g);
    let ratio = (!slope.is_zero()).then(|| &lelong / &(&multiplicity * &slope));
    Ok(InvariantReport {
        slope,
        lelong,
        multiplicity,
        ratio,
        in_cone: cone.in_cone,
        slack: cone.slack,
    })
}

/// `|G|^(n-1)`, the comparison constant for a quotient `C^n / G`.
pub fn quotient_bound(group_order: u64, dimension: u32) -> Result<BigUint> {
    if group_order == 0 {
        return Err(Error::Parameter("group order must be at least 1".into()));
    }
    if dimension < 2 {
        return Err(Error::Parameter("dimension must be at least 2".into()));
    }
    Ok(num_traits::pow(
        BigUint::from(group_order),
        dimension as usize - 1,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdStep {
    pub k: u64,
    /// `ord_x(I^k) = max { l : k a_i >= l m_i for all i }`.
    pub order: BigInt,
    /// `order / k`.
    pub lower: Rat,
    /// `(order + 1) / k`.
    pub upper: Rat,
}

/// Vanishing orders of the powers `I^1 .. I^k_max` of the ideal with
/// divisorial data `a`; each step brackets the slope.
pub fn ord_sequence(g: &ValidGraph, a: &Divisor, k_max: u64) -> Result<Vec<OrdStep>> {
    g.check_divisor(a)?;
    if k_max == 0 {
        return Err(Error::Parameter("k_max must be at least 1".into()));
    }
    if !a.is_integral() {
        return Err(Error::Domain(
            "vanishing orders need integer divisor coefficients".into(),
        ));
    }
    let steps = (1..=k_max)
        .map(|k| {
            let kk = BigInt::from(k);
            let order = a
                .coefficients()
                .iter()
                .zip(g.vertices())
                .map(|(ai, v)| (ai.numer() * &kk) / BigInt::from(v.m))
                .min()
                .unwrap_or_else(BigInt::zero);
            let kr = Rat::from(k);
            OrdStep {
                k,
                lower: Rat::from(order.clone()) / &kr,
                upper: Rat::from(&order + BigInt::one()) / &kr,
                order,
            }
        })
        .collect();
    Ok(steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{ade_graph, AdeFamily, Vertex};
    use alloc::vec;

    fn valid(f: AdeFamily, k: usize) -> ValidGraph {
        ade_graph(f, k).unwrap().into_valid().unwrap()
    }

    fn div(xs: &[i64]) -> Divisor {
        Divisor::from_integers(xs).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| Rat::from(x)).collect()
    }

    #[test]
    fn theta_of_ade_graphs() {
        assert_eq!(valid(AdeFamily::A, 1).theta(), ints(&[2]));
        assert_eq!(valid(AdeFamily::A, 5).theta(), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(valid(AdeFamily::D, 4).theta(), ints(&[0, 1, 0, 0]));
        assert_eq!(valid(AdeFamily::D, 7).theta(), ints(&[0, 1, 0, 0, 0, 0, 0]));
        assert_eq!(valid(AdeFamily::E, 6).theta(), ints(&[0, 0, 0, 1, 0, 0]));
        assert_eq!(valid(AdeFamily::E, 7).theta(), ints(&[1, 0, 0, 0, 0, 0, 0]));
        assert_eq!(
            valid(AdeFamily::E, 8).theta(),
            ints(&[0, 0, 0, 0, 0, 0, 0, 1])
        );
    }

    #[test]
    fn missing_theta_in_higher_dimension() {
        let mut g = ResolutionGraph::new("x", 3, vec![Vertex::new("E", 1)]);
        g.set_intersection(0, 0, Rat::from(-1i64));
        assert_eq!(theta_degrees(&g), Err(Error::MissingThetaDegrees(3)));
    }

    #[test]
    fn negative_theta_is_inconsistent() {
        let mut g = ResolutionGraph::new("x", 3, vec![Vertex::new("E", 1)]);
        g.set_theta_degrees(Some(ints(&[-1])));
        assert!(matches!(
            theta_degrees(&g),
            Err(Error::InconsistentGraph(_))
        ));
    }

    #[test]
    fn single_vertex_multiplicity() {
        let mut g = ResolutionGraph::new("cone3", 2, vec![Vertex::new("E", 3)]);
        g.set_intersection(0, 0, Rat::from(-1i64));
        let g = g.into_valid().unwrap();
        assert_eq!(g.theta(), ints(&[3]));
        assert_eq!(multiplicity(&g), Rat::from(9i64));
    }

    #[test]
    fn slope_and_lelong_examples() {
        let a2 = valid(AdeFamily::A, 2);
        let a3 = valid(AdeFamily::A, 3);
        assert_eq!(slope(&a2, &div(&[1, 2])).unwrap(), Rat::one());
        assert_eq!(slope(&a3, &div(&[2, 2, 1])).unwrap(), Rat::one());
        assert_eq!(lelong(&a3, &div(&[1, 2, 3])).unwrap(), Rat::from(4i64));
        let d5 = valid(AdeFamily::D, 5);
        let m = Divisor::fundamental(&d5);
        assert_eq!(lelong(&d5, &m).unwrap(), Rat::from(2i64));
        assert!(matches!(slope(&a2, &div(&[1])), Err(Error::Shape(_))));
        assert!(matches!(
            lelong(&a2, &div(&[1, 2, 3])),
            Err(Error::Shape(_))
        ));
    }

    #[test]
    fn cone_membership_examples() {
        let a2 = valid(AdeFamily::A, 2);
        let c = in_psef_cone(&a2, &div(&[1, 1])).unwrap();
        assert!(c.in_cone);
        assert_eq!(c.slack, ints(&[1, 1]));
        let c = in_psef_cone(&a2, &div(&[1, 3])).unwrap();
        assert!(!c.in_cone);
        assert_eq!(c.slack[0], Rat::from(-1i64));
        let a3 = valid(AdeFamily::A, 3);
        let c = in_psef_cone(&a3, &div(&[1, 2, 3])).unwrap();
        assert!(c.in_cone);
        assert_eq!(c.slack, ints(&[0, 0, 4]));
    }

    #[test]
    fn report_examples() {
        let a3 = valid(AdeFamily::A, 3);
        let r = report(&a3, &div(&[1, 2, 3])).unwrap();
        assert_eq!(
            (r.slope, r.lelong, r.multiplicity, r.ratio, r.in_cone),
            (
                Rat::one(),
                Rat::from(4i64),
                Rat::from(2i64),
                Some(Rat::from(2i64)),
                true
            )
        );
        let e6 = valid(AdeFamily::E, 6);
        let r = report(&e6, &Divisor::fundamental(&e6)).unwrap();
        assert_eq!(
            (r.slope, r.lelong, r.multiplicity, r.ratio),
            (
                Rat::one(),
                Rat::from(2i64),
                Rat::from(2i64),
                Some(Rat::one())
            )
        );
        let a2 = valid(AdeFamily::A, 2);
        let r = report(&a2, &div(&[0, 0])).unwrap();
        assert_eq!(
            (r.slope, r.lelong, r.ratio),
            (Rat::zero(), Rat::zero(), None)
        );
    }

    #[test]
    fn quotient_bound_examples() {
        assert_eq!(quotient_bound(5, 2).unwrap(), BigUint::from(5u32));
        assert_eq!(quotient_bound(1, 7).unwrap(), BigUint::one());
        assert_eq!(quotient_bound(4, 3).unwrap(), BigUint::from(16u32));
        assert!(quotient_bound(0, 2).is_err());
        assert!(quotient_bound(3, 1).is_err());
    }

    #[test]
    fn ord_examples() {
        let a2 = valid(AdeFamily::A, 2);
        let orders: Vec<BigInt> = ord_sequence(&a2, &div(&[1, 2]), 3)
            .unwrap()
            .into_iter()
            .map(|s| s.order)
            .collect();
        assert_eq!(
            orders,
            vec![BigInt::from(1), BigInt::from(2), BigInt::from(3)]
        );
        let a3 = valid(AdeFamily::A, 3);
        let step = &ord_sequence(&a3, &div(&[1, 1, 2]), 2).unwrap()[1];
        assert_eq!(step.order, BigInt::from(2));
        let e7 = valid(AdeFamily::E, 7);
        for s in ord_sequence(&e7, &Divisor::fundamental(&e7), 6).unwrap() {
            assert_eq!(s.order, BigInt::from(s.k));
        }
        let half = Divisor::new(vec![Rat::ratio(1, 2), Rat::one()]).unwrap();
        assert!(matches!(ord_sequence(&a2, &half, 2), Err(Error::Domain(_))));
        assert!(matches!(
            ord_sequence(&a2, &div(&[1, 1]), 0),
            Err(Error::Parameter(_))
        ));
    }
}
