//! Newton polygons `Δ(g, z)`: lower hulls, edges, slopes and edge initial
//! forms.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exp::{Exponent, Val};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::series::Series;
use crate::zpoly::ZPoly;

/// A lower-hull edge from `(i, eps)` to `(j, theta)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge<E: Exponent> {
    pub i: usize,
    pub eps: E,
    pub j: usize,
    pub theta: E,
    pub slope: E::Hull,
}

impl<E: Exponent> Edge<E> {
    fn new(i: usize, eps: E, j: usize, theta: E) -> Edge<E> {
        let slope = E::slope(i, &eps, j, &theta);
        Edge { i, eps, j, theta, slope }
    }

    /// Whether `(k, v)` lies on the line through the edge.
    pub fn on_line(&self, k: usize, v: &E) -> bool {
        let lhs = v.to_hull();
        let rhs = E::hull_plus(&self.eps.to_hull(), &E::hull_times(&self.slope, k as i64 - self.i as i64));
        lhs == rhs
    }

    /// Horizontal length `j − i`.
    pub fn length(&self) -> usize {
        self.j - self.i
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polygon<E: Exponent> {
    /// `(i, ν(a_i))` for every coefficient of finite value.
    pub points: Vec<(usize, E)>,
    /// Lower-hull vertices, increasing abscissa.
    pub hull: Vec<(usize, E)>,
    pub edges: Vec<Edge<E>>,
}

/// Lower convex hull of points with distinct increasing abscissae; interior
/// collinear points are dropped.
fn lower_hull<E: Exponent>(pts: &[(usize, E)]) -> Vec<(usize, E)> {
    let mut h: Vec<(usize, E)> = Vec::new();
    for p in pts {
        while h.len() >= 2 {
            let a = &h[h.len() - 2];
            let b = &h[h.len() - 1];
            let s1 = E::slope(a.0, &a.1, b.0, &b.1);
            let s2 = E::slope(b.0, &b.1, p.0, &p.1);
            if s1 >= s2 {
                h.pop();
            } else {
                break;
            }
        }
        h.push(p.clone());
    }
    h
}

impl<E: Exponent> Polygon<E> {
    /// Newton polygon from the values of the coefficients.
    pub fn build_with(g: &ZPoly<E>, nu: impl Fn(&Series<E>) -> Result<Val<E>>) -> Result<Polygon<E>> {
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut points = Vec::new();
        for (i, a) in g.coeffs().iter().enumerate() {
            if let Val::Fin(v) = nu(a)? {
                points.push((i, v));
            }
        }
        let hull = lower_hull(&points);
        let edges = hull
            .windows(2)
            .map(|w| Edge::new(w[0].0, w[0].1.clone(), w[1].0, w[1].1.clone()))
            .collect();
        Ok(Polygon { points, hull, edges })
    }

    /// Newton polygon for the `t`-adic valuation on coefficients.
    pub fn build(g: &ZPoly<E>) -> Result<Polygon<E>> {
        Polygon::build_with(g, |a| a.order())
    }

    pub fn slopes(&self) -> Vec<E::Hull> {
        self.edges.iter().map(|e| e.slope.clone()).collect()
    }

    /// The edge of smallest slope.
    pub fn min_slope_side(&self) -> Result<&Edge<E>> {
        self.edges.first().ok_or(Error::NoEdges)
    }

    /// Indices whose point lies on the edge `l`.
    pub fn on_edge(&self, l: &Edge<E>) -> Vec<usize> {
        self.points
            .iter()
            .filter(|(k, v)| *k >= l.i && *k <= l.j && l.on_line(*k, v))
            .map(|(k, _)| *k)
            .collect()
    }

    fn check_edge(&self, l: &Edge<E>) -> Result<()> {
        if self.edges.iter().any(|e| e == l) {
            Ok(())
        } else {
            Err(Error::NotAnEdge)
        }
    }
}

/// The initial form `in_L(g)` (the terms of `g` on the edge `L`) and its
/// one-variable collapse `g̃(u) = Σ in(a_k) u^k` over the points on `L`.
pub fn initial_form_edge<E: Exponent>(g: &ZPoly<E>, l: &Edge<E>) -> Result<(ZPoly<E>, Poly<Scalar>)> {
    let p = Polygon::build(g)?;
    p.check_edge(l)?;
    let on = p.on_edge(l);
    let mut inl = Vec::new();
    let mut gt = Vec::new();
    for k in 0..=l.j {
        if on.contains(&k) {
            let (e, c) = g.coeff(k).leading()?.expect("point of finite value");
            inl.push(Series::monomial(c.clone(), e));
            gt.push(c);
        } else {
            inl.push(Series::zero());
            gt.push(Scalar::from(0));
        }
    }
    Ok((ZPoly::new(inl), Poly::new(gt)))
}

/// `δ(g, z) = 0` for `ν(z) = nu_of_z` with `t`-adic coefficient values.
pub fn deltanul_check<E: Exponent>(g: &ZPoly<E>, nu_of_z: &Val<E>) -> Result<bool> {
    Ok(g.nu_z(nu_of_z)?.delta() == 0)
}

/// Cross-check of `δ(g, z) = 0 ⇔ ν(z) > ν(ψ)` given the branch values of a
/// monic `g` and the index of a privileged branch; returns `δ = 0`.
pub fn deltanul_crosscheck<E: Exponent>(
    g: &ZPoly<E>,
    nu_of_z: &Val<E>,
    privileged_value: &Val<E>,
) -> Result<bool> {
    let d0 = deltanul_check(g, nu_of_z)?;
    let a = *nu_of_z > *privileged_value;
    if a != d0 {
        return Err(Error::InvalidInput(alloc::format!(
            "delta criterion mismatch: delta=0 is {} but nu(z) > nu(psi) is {}",
            d0, a
        )));
    }
    Ok(d0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exp::{qe, qi, QExp};
    use crate::zpoly::zpoly_q;

    #[test]
    fn build_examples() {
        let g = zpoly_q(&[&[(-1, 1, 1)], &[], &[(1, 0, 1)]]);
        let p = Polygon::build(&g).unwrap();
        assert_eq!(p.hull, alloc::vec![(0, qi(1)), (2, qi(0))]);
        assert_eq!(p.slopes(), alloc::vec![qe(-1, 2)]);
        let g = zpoly_q(&[&[(1, 3, 1)], &[(-1, 1, 1), (-1, 2, 1)], &[(1, 0, 1)]]);
        let p = Polygon::build(&g).unwrap();
        assert_eq!(p.hull, alloc::vec![(0, qi(3)), (1, qi(1)), (2, qi(0))]);
        assert_eq!(p.slopes(), alloc::vec![qi(-2), qi(-1)]);
        assert_eq!(p.min_slope_side().unwrap().slope, qi(-2));
        let m = zpoly_q(&[&[], &[], &[], &[(1, 0, 1)]]);
        let p = Polygon::build(&m).unwrap();
        assert_eq!(p.hull, alloc::vec![(3, qi(0))]);
        assert_eq!(p.min_slope_side(), Err(Error::NoEdges));
    }

    #[test]
    fn collinear_points_are_dropped() {
        // z^2 + t z + t^2: points (0,2),(1,1),(2,0) on one line
        let g = zpoly_q(&[&[(1, 2, 1)], &[(1, 1, 1)], &[(1, 0, 1)]]);
        let p = Polygon::build(&g).unwrap();
        assert_eq!(p.hull.len(), 2);
        assert_eq!(p.on_edge(&p.edges[0]), alloc::vec![0, 1, 2]);
    }

    #[test]
    fn edge_initial_forms() {
        let g = zpoly_q(&[&[(-1, 1, 1)], &[], &[(1, 0, 1)]]);
        let p = Polygon::build(&g).unwrap();
        let (_, gt) = initial_form_edge(&g, &p.edges[0]).unwrap();
        assert_eq!(gt, Poly::new(alloc::vec![Scalar::from(-1), Scalar::from(0), Scalar::from(1)]));
        let g = zpoly_q(&[&[(1, 3, 1)], &[(-1, 1, 1), (-1, 2, 1)], &[(1, 0, 1)]]);
        let p = Polygon::build(&g).unwrap();
        let (inl, gt) = initial_form_edge(&g, &p.edges[1]).unwrap();
        assert_eq!(gt, Poly::new(alloc::vec![Scalar::from(0), Scalar::from(-1), Scalar::from(1)]));
        assert_eq!(inl, zpoly_q(&[&[], &[(-1, 1, 1)], &[(1, 0, 1)]]));
        let bogus = Edge::new(0, qi(3), 2, qi(0));
        assert_eq!(initial_form_edge(&g, &bogus).map(|_| ()), Err(Error::NotAnEdge));
    }

    #[test]
    fn deltanul_examples() {
        let g = zpoly_q(&[&[(-1, 1, 1)], &[], &[(1, 0, 1)]]);
        let half: Val<QExp> = Val::Fin(qe(1, 2));
        assert!(deltanul_crosscheck(&g, &Val::Fin(qi(2)), &half).unwrap());
        assert!(!deltanul_crosscheck(&g, &half, &half).unwrap());
    }
}
