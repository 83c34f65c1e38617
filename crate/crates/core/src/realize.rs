//! Square-tiling realization of two-dimensional extremal metrics.
//!
//! Every positive-weight vertex becomes the square whose coordinate-`i`
//! corner is the inclusive shortest distance from face `i`'s zero side minus
//! the vertex weight; the target rectangle has the two face-to-face
//! distances as its sides. The construction is only guaranteed to tile for
//! extremal metrics, so correctness is enforced afterwards by exact-rational
//! validation rather than assumed: non-extremal input surfaces as a failed
//! validation report.

use crate::boxes::{DiscreteBox, Indexed};
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::rat::Rat;
use crate::shortest::pair_structure;
use crate::tiling::{validate_tiling, Cube, CubeTiling, GeometricBox};
use crate::weight::{Weight, R64};

/// A realized tiling plus the zero-weight vertices it omits.
#[derive(Debug, Clone, PartialEq)]
pub struct RealizeOutcome {
    pub tiling: CubeTiling,
    pub omitted: Vec<String>,
}

/// Realizes a (near-)extremal metric on a 2-dimensional box as a square
/// tiling. `tol` is the validation tolerance: zero for exact rational
/// metrics, positive for solver output.
pub fn realize_square_tiling(bx: &DiscreteBox, m: &Metric, tol: &Rat) -> Result<RealizeOutcome> {
    if bx.n != 2 {
        return Err(Error::DimensionNot2(bx.n));
    }
    let idx = Indexed::new(bx)?;
    match m {
        Metric::Real(_) => {
            let w: Vec<R64> = m.weights_f64(&idx)?.into_iter().map(R64).collect();
            place(&idx, &w, tol)
        }
        Metric::Rational(_) => {
            let w = m.weights_rat(&idx)?;
            place(&idx, &w, tol)
        }
    }
}

fn place<W: Weight>(idx: &Indexed, weights: &[W], tol: &Rat) -> Result<RealizeOutcome> {
    let mut dims = Vec::with_capacity(2);
    let mut corners: Vec<Vec<Rat>> = vec![Vec::with_capacity(2); idx.len()];
    for axis in 1..=2 {
        let sp = pair_structure(idx, weights, axis)?;
        let extent = sp
            .shortest
            .as_ref()
            .ok_or(Error::Unreachable { axis })?
            .to_rat();
        dims.push(extent);
        for v in 0..idx.len() {
            let d = sp.dist_from_source[v]
                .as_ref()
                .ok_or(Error::Unreachable { axis })?
                .to_rat();
            corners[v].push(d - weights[v].to_rat());
        }
    }

    let mut cubes = Vec::new();
    let mut omitted = Vec::new();
    for v in 0..idx.len() {
        let side = weights[v].to_rat();
        if side.is_positive() {
            cubes.push(Cube {
                id: idx.name(v).to_string(),
                corner: corners[v].clone(),
                side,
            });
        } else {
            omitted.push(idx.name(v).to_string());
        }
    }

    let tiling = CubeTiling {
        bounds: GeometricBox { dims },
        cubes,
    };
    let report = validate_tiling(&tiling, tol);
    if !report.is_valid() {
        return Err(Error::RealizeValidation(report));
    }
    Ok(RealizeOutcome { tiling, omitted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::metric::Metric;

    fn r(v: i64) -> Rat {
        Rat::from_int(v)
    }

    fn rh(num: i64, den: i64) -> Rat {
        Rat::new(num, den)
    }

    #[test]
    fn q4_uniform_half_realizes_the_unit_square() {
        // Corners evaluated by hand from the placement rule.
        let q4 = fixtures::q4();
        let half = fixtures::uniform(&q4, 0.5);
        let out = realize_square_tiling(&q4, &half, &Rat::zero()).unwrap();
        assert!(out.omitted.is_empty());
        assert_eq!(out.tiling.bounds.dims, vec![r(1), r(1)]);
        let corner = |id: &str| {
            out.tiling
                .cubes
                .iter()
                .find(|c| c.id == id)
                .map(|c| c.corner.clone())
                .unwrap()
        };
        assert_eq!(corner("a"), vec![r(0), r(0)]);
        assert_eq!(corner("b"), vec![r(0), rh(1, 2)]);
        assert_eq!(corner("c"), vec![rh(1, 2), r(0)]);
        assert_eq!(corner("d"), vec![rh(1, 2), rh(1, 2)]);
        assert!(out.tiling.cubes.iter().all(|c| c.side == rh(1, 2)));
    }

    #[test]
    fn q7_tiling_metric_reproduces_the_geometry() {
        // The exact tiling metric is extremal; scaled by 1/2 it must rebuild
        // the source geometry scaled by 1/2, exactly.
        let bx = fixtures::q7_contact_box();
        let s = fixtures::q7_tiling_metric();
        let half = s.scaled_exact(&rh(1, 2)).unwrap();
        let out = realize_square_tiling(&bx, &half, &Rat::zero()).unwrap();
        assert_eq!(out.tiling.bounds.dims, vec![r(1), r(1)]);
        let source = fixtures::q7_geometry();
        for c in &source.cubes {
            let placed = out.tiling.cubes.iter().find(|p| p.id == c.id).unwrap();
            let expected: Vec<Rat> = c.corner.iter().map(|x| x * &rh(1, 2)).collect();
            assert_eq!(placed.corner, expected, "{}", c.id);
            assert_eq!(placed.side, &c.side * &rh(1, 2));
        }
    }

    #[test]
    fn non_extremal_metric_fails_validation() {
        let q4 = fixtures::q4();
        let bad = Metric::real_from_pairs([("a", 1.0), ("b", 0.0), ("c", 0.0), ("d", 1.0)]);
        let err = realize_square_tiling(&q4, &bad, &Rat::new(1, 1_000_000)).unwrap_err();
        let Error::RealizeValidation(report) = err else {
            panic!("expected a validation failure");
        };
        assert!(!report.is_valid());
    }

    #[test]
    fn dimension_must_be_two() {
        let k8 = fixtures::k8();
        let half = fixtures::uniform(&k8, 0.5);
        assert!(matches!(
            realize_square_tiling(&k8, &half, &Rat::zero()),
            Err(Error::DimensionNot2(3))
        ));
    }
}
