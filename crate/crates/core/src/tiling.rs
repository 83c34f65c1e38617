//! Exact-rational cube tilings of geometric boxes.
//!
//! All coordinates are rationals and every predicate (containment, contact,
//! interior overlap) is exact; corner contacts are honored, never blurred by
//! an epsilon. A tolerance parameter exists only for tilings produced by the
//! binary64 realizer, where placements carry rounding.

use std::collections::BTreeSet;
use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::boxes::{DiscreteBox, FacePair, FaceStructurePair, Side};
use crate::error::{Error, Result};
use crate::metric::Metric;
use crate::rat::Rat;

/// Axis-aligned box `[0,h_1] x ... x [0,h_n]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeometricBox {
    pub dims: Vec<Rat>,
}

impl GeometricBox {
    pub fn n(&self) -> usize {
        self.dims.len()
    }

    /// Product of the side lengths.
    pub fn volume(&self) -> Rat {
        self.dims.iter().fold(Rat::one(), |acc, h| acc * h)
    }
}

/// An axis-aligned cube: corner plus side length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cube {
    pub id: String,
    pub corner: Vec<Rat>,
    pub side: Rat,
}

impl Cube {
    pub fn lo(&self, axis0: usize) -> &Rat {
        &self.corner[axis0]
    }

    pub fn hi(&self, axis0: usize) -> Rat {
        &self.corner[axis0] + &self.side
    }
}

/// A set of cubes tiling a geometric box.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeTiling {
    pub bounds: GeometricBox,
    pub cubes: Vec<Cube>,
}

/// How cube adjacency is read off the geometry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ContactMode {
    /// Any closed intersection, corner contacts included.
    Full,
    /// Shared (n-1)-dimensional facet portion only.
    Facet,
}

impl std::str::FromStr for ContactMode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "full" => Ok(ContactMode::Full),
            "facet" => Ok(ContactMode::Facet),
            other => Err(format!("unknown contact mode `{other}` (full|facet)")),
        }
    }
}

/// Re-export so tiling call sites can say which facet they mean.
pub type FacetSide = Side;

impl CubeTiling {
    pub fn n(&self) -> usize {
        self.bounds.n()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tiling serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Format(format!("tiling file: {e}")))
    }

    /// Multiset of side lengths, sorted ascending.
    pub fn sides_sorted(&self) -> Vec<Rat> {
        let mut sides: Vec<Rat> = self.cubes.iter().map(|c| c.side.clone()).collect();
        sides.sort();
        sides
    }
}

// ---------------------------------------------------------------------------
// JSON schema: {"n": int, "dims": [rat], "cubes": [{"id","corner","side"}]}
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CubeFile {
    id: String,
    corner: Vec<Rat>,
    side: Rat,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TilingFile {
    n: usize,
    dims: Vec<Rat>,
    cubes: Vec<CubeFile>,
}

impl Serialize for CubeTiling {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        TilingFile {
            n: self.n(),
            dims: self.bounds.dims.clone(),
            cubes: self
                .cubes
                .iter()
                .map(|c| CubeFile {
                    id: c.id.clone(),
                    corner: c.corner.clone(),
                    side: c.side.clone(),
                })
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CubeTiling {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = TilingFile::deserialize(deserializer)?;
        if file.dims.len() != file.n {
            return Err(de::Error::custom(format!(
                "n = {} but dims has {} entries",
                file.n,
                file.dims.len()
            )));
        }
        Ok(CubeTiling {
            bounds: GeometricBox { dims: file.dims },
            cubes: file
                .cubes
                .into_iter()
                .map(|c| Cube {
                    id: c.id,
                    corner: c.corner,
                    side: c.side,
                })
                .collect(),
        })
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum TilingViolation {
    NonPositiveDim { axis: usize },
    DuplicateId { id: String },
    WrongCornerArity { id: String },
    NonPositiveSide { id: String },
    OutOfBounds { id: String, axis: usize },
    InteriorOverlap { first: String, second: String },
    VolumeMismatch { expected: Rat, actual: Rat },
}

impl fmt::Display for TilingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TilingViolation::NonPositiveDim { axis } => {
                write!(f, "box dimension {axis} is not positive")
            }
            TilingViolation::DuplicateId { id } => write!(f, "duplicate cube id `{id}`"),
            TilingViolation::WrongCornerArity { id } => {
                write!(f, "cube `{id}` corner arity differs from the box dimension")
            }
            TilingViolation::NonPositiveSide { id } => {
                write!(f, "cube `{id}` side is not positive")
            }
            TilingViolation::OutOfBounds { id, axis } => {
                write!(f, "cube `{id}` leaves the box along axis {axis}")
            }
            TilingViolation::InteriorOverlap { first, second } => {
                write!(f, "cubes `{first}` and `{second}` overlap in their interiors")
            }
            TilingViolation::VolumeMismatch { expected, actual } => {
                write!(f, "cube volumes sum to {actual}, box volume is {expected}")
            }
        }
    }
}

/// Result of [`validate_tiling`]; empty means the cubes tile the box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
pub struct TilingReport {
    pub violations: Vec<TilingViolation>,
}

impl TilingReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for TilingReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "- {v}")?;
        }
        Ok(())
    }
}

/// Checks containment, pairwise interior disjointness, and the exact volume
/// identity (cube volumes summing to the box volume forces coverage once
/// interiors are disjoint). `tol = 0` means exact; a positive tolerance
/// admits binary64 placement error from the realizer: containment may
/// protrude by `tol`, overlaps below `tol` are ignored, and the volume
/// identity is relaxed by `tol` times its first-order sensitivity
/// `n * sum(side^(n-1)) + sum_a(box_volume / h_a)`.
pub fn validate_tiling(t: &CubeTiling, tol: &Rat) -> TilingReport {
    let mut out = Vec::new();
    let n = t.n();
    for (a, h) in t.bounds.dims.iter().enumerate() {
        if !h.is_positive() {
            out.push(TilingViolation::NonPositiveDim { axis: a + 1 });
        }
    }

    let mut ids = BTreeSet::new();
    let mut shaped = Vec::new();
    for c in &t.cubes {
        if !ids.insert(c.id.as_str()) {
            out.push(TilingViolation::DuplicateId { id: c.id.clone() });
        }
        if c.corner.len() != n {
            out.push(TilingViolation::WrongCornerArity { id: c.id.clone() });
            continue;
        }
        if !c.side.is_positive() {
            out.push(TilingViolation::NonPositiveSide { id: c.id.clone() });
            continue;
        }
        for a in 0..n {
            let neg_tol = -tol.clone();
            if *c.lo(a) < neg_tol || c.hi(a) > &t.bounds.dims[a] + tol {
                out.push(TilingViolation::OutOfBounds {
                    id: c.id.clone(),
                    axis: a + 1,
                });
            }
        }
        shaped.push(c);
    }

    // Interior overlaps: sweep along axis 0 to prune the pair loop.
    if n > 0 {
        let mut order: Vec<&Cube> = shaped.clone();
        order.sort_by(|a, b| a.lo(0).cmp(b.lo(0)).then(a.id.cmp(&b.id)));
        for i in 0..order.len() {
            let ci = order[i];
            let reach = ci.hi(0);
            for cj in order.iter().skip(i + 1) {
                if *cj.lo(0) >= &reach - tol {
                    break;
                }
                let overlapping = (0..n).all(|a| {
                    let lo = ci.lo(a).clone().max(cj.lo(a).clone());
                    let hi = ci.hi(a).min(cj.hi(a));
                    &hi - &lo > *tol
                });
                if overlapping {
                    let (first, second) = if ci.id <= cj.id {
                        (ci.id.clone(), cj.id.clone())
                    } else {
                        (cj.id.clone(), ci.id.clone())
                    };
                    out.push(TilingViolation::InteriorOverlap { first, second });
                }
            }
        }
    }

    if n > 0 && t.bounds.dims.iter().all(Rat::is_positive) {
        let expected = t.bounds.volume();
        let actual: Rat = shaped.iter().map(|c| c.side.pow(n as i32)).sum();
        let sensitivity = {
            let sides: Rat = shaped.iter().map(|c| c.side.pow(n as i32 - 1)).sum();
            let faces: Rat = t.bounds.dims.iter().map(|h| &expected / h).sum();
            Rat::from_int(n as i64) * sides + faces
        };
        if (&expected - &actual).abs() > tol * &sensitivity {
            out.push(TilingViolation::VolumeMismatch { expected, actual });
        }
    }

    TilingReport { violations: out }
}

// ---------------------------------------------------------------------------
// Contact graphs
// ---------------------------------------------------------------------------

/// Closed contact between two cubes, classified by the number of axes where
/// the intersection is a single coordinate. `None` when the cubes are apart.
fn contact_degeneracy(a: &Cube, b: &Cube, n: usize) -> Option<usize> {
    let mut degenerate = 0;
    for axis in 0..n {
        let lo = a.lo(axis).clone().max(b.lo(axis).clone());
        let hi = a.hi(axis).min(b.hi(axis));
        if hi < lo {
            return None;
        }
        if hi == lo {
            degenerate += 1;
        }
    }
    Some(degenerate)
}

fn touches(a: &Cube, b: &Cube, n: usize, mode: ContactMode) -> bool {
    match (contact_degeneracy(a, b, n), mode) {
        (Some(_), ContactMode::Full) => true,
        (Some(1), ContactMode::Facet) => true,
        _ => false,
    }
}

/// Extracts the discrete box and the tiling metric (each cube's side length)
/// from a valid tiling. Face `i` pos holds the cubes touching coordinate-`i`
/// face at `h_i`, neg those at 0. Face structure is populated one level deep
/// by slicing, so the necessary-condition checks can recurse.
pub fn contact_graph(t: &CubeTiling, mode: ContactMode) -> Result<(DiscreteBox, Metric)> {
    if t.n() == 0 {
        return Err(Error::Format("tiling has dimension 0".into()));
    }
    let report = validate_tiling(t, &Rat::zero());
    if !report.is_valid() {
        return Err(Error::InvalidTiling(report));
    }
    let with_faces = t.n() >= 2;
    let bx = contact_box(t, mode, with_faces)?;
    let metric = Metric::rational_from_pairs(
        t.cubes.iter().map(|c| (c.id.clone(), c.side.clone())),
    );
    Ok((bx, metric))
}

fn contact_box(t: &CubeTiling, mode: ContactMode, with_faces: bool) -> Result<DiscreteBox> {
    let n = t.n();
    for c in &t.cubes {
        for a in 0..n {
            if c.side == t.bounds.dims[a] {
                return Err(Error::CubeSpansExtent {
                    id: c.id.clone(),
                    axis: a + 1,
                });
            }
        }
    }

    let vertices: Vec<String> = t.cubes.iter().map(|c| c.id.clone()).collect();

    // Sweep along axis 0 so the pair test skips far-apart cubes.
    let mut order: Vec<usize> = (0..t.cubes.len()).collect();
    order.sort_by(|&i, &j| t.cubes[i].lo(0).cmp(t.cubes[j].lo(0)).then(i.cmp(&j)));
    let mut edge_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    for (rank, &i) in order.iter().enumerate() {
        let ci = &t.cubes[i];
        let reach = ci.hi(0);
        for &j in order.iter().skip(rank + 1) {
            let cj = &t.cubes[j];
            if *cj.lo(0) > reach {
                break;
            }
            if touches(ci, cj, n, mode) {
                edge_set.insert((i.min(j), i.max(j)));
            }
        }
    }
    let edges: Vec<(String, String)> = edge_set
        .into_iter()
        .map(|(i, j)| (vertices[i].clone(), vertices[j].clone()))
        .collect();

    let mut face_pairs = Vec::with_capacity(n);
    for a in 0..n {
        let h = &t.bounds.dims[a];
        let pos: Vec<String> = t
            .cubes
            .iter()
            .filter(|c| c.hi(a) == *h)
            .map(|c| c.id.clone())
            .collect();
        let neg: Vec<String> = t
            .cubes
            .iter()
            .filter(|c| c.lo(a).is_zero())
            .map(|c| c.id.clone())
            .collect();
        face_pairs.push(FacePair { pos, neg });
    }

    let face_structure = if with_faces && n >= 2 {
        let mut fs = Vec::with_capacity(n);
        for a in 1..=n {
            let pos = contact_box(&face_tiling(t, a, Side::Pos)?, mode, false)?;
            let neg = contact_box(&face_tiling(t, a, Side::Neg)?, mode, false)?;
            fs.push(FaceStructurePair { pos, neg });
        }
        Some(fs)
    } else {
        None
    };

    Ok(DiscreteBox {
        n,
        vertices,
        edges,
        face_pairs,
        face_structure,
    })
}

/// The (n-1)-dimensional tiling induced on a facet by the cubes touching it.
/// Each touching cube contributes its face, keeping its id; `axis` is
/// 1-based and the facet lives on the remaining axes in increasing order.
pub fn face_tiling(t: &CubeTiling, axis: usize, side: FacetSide) -> Result<CubeTiling> {
    let n = t.n();
    if n < 2 {
        return Err(Error::DimensionTooSmall(n));
    }
    if axis == 0 || axis > n {
        return Err(Error::AxisOutOfRange { axis, n });
    }
    let a = axis - 1;
    let h = &t.bounds.dims[a];
    let touching = t.cubes.iter().filter(|c| match side {
        Side::Pos => c.hi(a) == *h,
        Side::Neg => c.lo(a).is_zero(),
    });
    let cubes = touching
        .map(|c| Cube {
            id: c.id.clone(),
            corner: c
                .corner
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != a)
                .map(|(_, x)| x.clone())
                .collect(),
            side: c.side.clone(),
        })
        .collect();
    let dims = t
        .bounds
        .dims
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != a)
        .map(|(_, h)| h.clone())
        .collect();
    Ok(CubeTiling {
        bounds: GeometricBox { dims },
        cubes,
    })
}

// ---------------------------------------------------------------------------
// Discrete lines
// ---------------------------------------------------------------------------

/// All cubes met by the line through a top-face point `p` perpendicular to
/// that face, ordered from the top face down (decreasing corner coordinate 1)
/// and forming a top-to-bottom path in the full-contact graph.
///
/// `p` is given in full coordinates and must satisfy `p[0] == h_1`.
pub fn discrete_line(t: &CubeTiling, p: &[Rat]) -> Result<Vec<String>> {
    let n = t.n();
    if p.len() != n {
        return Err(Error::PointNotOnTopFace(format!(
            "point has {} coordinates, box has {n}",
            p.len()
        )));
    }
    if p[0] != t.bounds.dims[0] {
        return Err(Error::PointNotOnTopFace(format!(
            "coordinate 1 is {}, expected {}",
            p[0], t.bounds.dims[0]
        )));
    }
    for j in 1..n {
        if p[j].is_negative() || p[j] > t.bounds.dims[j] {
            return Err(Error::PointNotOnTopFace(format!(
                "coordinate {} is outside [0, {}]",
                j + 1,
                t.bounds.dims[j]
            )));
        }
    }

    let mut met: Vec<&Cube> = t
        .cubes
        .iter()
        .filter(|c| (1..n).all(|j| *c.lo(j) <= p[j] && p[j] <= c.hi(j)))
        .collect();
    met.sort_by(|a, b| {
        b.lo(0)
            .cmp(a.lo(0))
            .then_with(|| a.corner.cmp(&b.corner))
            .then_with(|| a.id.cmp(&b.id))
    });
    if met.is_empty() {
        // Cannot happen for a valid tiling; the line is inside the box.
        return Err(Error::DiscreteLineNotPath);
    }

    let is_path = |cubes: &[&Cube]| -> bool {
        cubes.windows(2).all(|w| touches(w[0], w[1], n, ContactMode::Full))
            && cubes.first().map(|c| c.hi(0) == t.bounds.dims[0]) == Some(true)
            && cubes.last().map(|c| c.lo(0).is_zero()) == Some(true)
    };
    if is_path(&met) {
        return Ok(met.iter().map(|c| c.id.clone()).collect());
    }

    // Grazing ties can break the sorted order; look for a reordering that is
    // a top-to-bottom Hamiltonian path of the met cubes.
    let k = met.len();
    let mut used = vec![false; k];
    let mut path: Vec<usize> = Vec::with_capacity(k);
    fn extend(met: &[&Cube], n: usize, used: &mut [bool], path: &mut Vec<usize>) -> bool {
        if path.len() == met.len() {
            return met[*path.last().unwrap()].lo(0).is_zero();
        }
        let last = *path.last().unwrap();
        for next in 0..met.len() {
            if used[next] || !touches(met[last], met[next], n, ContactMode::Full) {
                continue;
            }
            used[next] = true;
            path.push(next);
            if extend(met, n, used, path) {
                return true;
            }
            path.pop();
            used[next] = false;
        }
        false
    }
    for start in 0..k {
        if met[start].hi(0) != t.bounds.dims[0] {
            continue;
        }
        used[start] = true;
        path.push(start);
        if extend(&met, n, &mut used, &mut path) {
            return Ok(path.iter().map(|&i| met[i].id.clone()).collect());
        }
        path.pop();
        used[start] = false;
    }
    Err(Error::DiscreteLineNotPath)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::metric::path_length_exact;

    fn r(v: i64) -> Rat {
        Rat::from_int(v)
    }

    fn rh(num: i64, den: i64) -> Rat {
        Rat::new(num, den)
    }

    #[test]
    fn q7_is_exactly_valid() {
        let report = validate_tiling(&fixtures::q7_geometry(), &Rat::zero());
        assert!(report.is_valid(), "{report}");
    }

    #[test]
    fn moved_square_overlaps() {
        let mut t = fixtures::q4_geometry();
        t.cubes[3].corner = vec![rh(1, 2), rh(1, 2)];
        let report = validate_tiling(&t, &Rat::zero());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, TilingViolation::InteriorOverlap { .. })));
    }

    #[test]
    fn missing_square_is_a_volume_deficit() {
        let mut t = fixtures::q4_geometry();
        t.cubes.pop();
        let report = validate_tiling(&t, &Rat::zero());
        assert_eq!(
            report.violations,
            vec![TilingViolation::VolumeMismatch {
                expected: r(4),
                actual: r(3),
            }]
        );
    }

    #[test]
    fn q4_full_contact_is_k4() {
        let (bx, s) = contact_graph(&fixtures::q4_geometry(), ContactMode::Full).unwrap();
        assert_eq!(bx.n, 2);
        assert_eq!(bx.edges.len(), 6); // complete graph on four cubes
        assert_eq!(bx.face_pairs[0].pos, vec!["c", "d"]);
        assert_eq!(bx.face_pairs[0].neg, vec!["a", "b"]);
        assert_eq!(bx.face_pairs[1].pos, vec!["b", "d"]);
        assert_eq!(bx.face_pairs[1].neg, vec!["a", "c"]);
        assert!(bx.vertices.iter().all(|v| s.get_exact(v) == Some(r(1))));
        assert!(crate::boxes::validate_box(&bx).is_valid());
    }

    #[test]
    fn q4_facet_contact_drops_diagonals() {
        let (bx, _) = contact_graph(&fixtures::q4_geometry(), ContactMode::Facet).unwrap();
        assert_eq!(bx.edges.len(), 4); // the 4-cycle
        let has = |a: &str, b: &str| {
            bx.edges
                .iter()
                .any(|(x, y)| (x == a && y == b) || (x == b && y == a))
        };
        assert!(!has("a", "d"));
        assert!(!has("b", "c"));
    }

    #[test]
    fn k8_full_contact_is_complete() {
        let (bx, s) = contact_graph(&fixtures::k8_geometry(), ContactMode::Full).unwrap();
        assert_eq!(bx.edges.len(), 28);
        assert!(bx.vertices.iter().all(|v| s.get_exact(v) == Some(r(1))));
        assert_eq!(bx, {
            // Hand fixture agrees except for face structure.
            let mut k8 = fixtures::k8();
            k8.face_structure = bx.face_structure.clone();
            k8
        });
    }

    #[test]
    fn stack3_spanning_cube_is_an_error() {
        let err = contact_graph(&fixtures::stack3_geometry(), ContactMode::Full).unwrap_err();
        assert!(matches!(err, Error::CubeSpansExtent { axis: 1, .. }));
    }

    #[test]
    fn face_tilings_of_q7() {
        let q7 = fixtures::q7_geometry();
        // Top (coordinate 1 at 2): one unit segment and two halves.
        let top = face_tiling(&q7, 1, Side::Pos).unwrap();
        assert_eq!(top.bounds.dims, vec![r(2)]);
        assert_eq!(top.sides_sorted(), vec![rh(1, 2), rh(1, 2), r(1)]);
        assert!(validate_tiling(&top, &Rat::zero()).is_valid());
        // Bottom: two unit segments.
        let bottom = face_tiling(&q7, 1, Side::Neg).unwrap();
        assert_eq!(bottom.sides_sorted(), vec![r(1), r(1)]);
        assert!(validate_tiling(&bottom, &Rat::zero()).is_valid());
    }

    #[test]
    fn face_tiling_of_k8_is_the_square_grid() {
        let top = face_tiling(&fixtures::k8_geometry(), 1, Side::Pos).unwrap();
        assert_eq!(top.bounds.dims, vec![r(2), r(2)]);
        assert_eq!(top.cubes.len(), 4);
        assert!(validate_tiling(&top, &Rat::zero()).is_valid());
        assert_eq!(top.sides_sorted(), vec![r(1); 4]);
    }

    #[test]
    fn face_volume_identity() {
        let q7 = fixtures::q7_geometry();
        for axis in 1..=2 {
            for side in [Side::Pos, Side::Neg] {
                let ft = face_tiling(&q7, axis, side).unwrap();
                let facet_volume = ft.bounds.volume();
                let total: Rat = ft.cubes.iter().map(|c| c.side.pow(1)).sum();
                assert_eq!(total, facet_volume);
            }
        }
    }

    #[test]
    fn discrete_line_through_q4_interior() {
        // p = (2, 1/2): passes through the interiors of c then a.
        let t = fixtures::q4_geometry();
        let line = discrete_line(&t, &[r(2), rh(1, 2)]).unwrap();
        assert_eq!(line, vec!["c", "a"]);
    }

    #[test]
    fn discrete_line_through_q7_at_five_quarters() {
        // Traced by hand: x2 = 5/4 meets t21, t11, then s01; metric length 2.
        let t = fixtures::q7_geometry();
        let line = discrete_line(&t, &[r(2), rh(5, 4)]).unwrap();
        assert_eq!(line, vec!["t21", "t11", "s01"]);
        let s = fixtures::q7_tiling_metric();
        assert_eq!(path_length_exact(&s, &line).unwrap(), r(2));
    }

    #[test]
    fn grazing_line_meets_all_four_squares() {
        let t = fixtures::q4_geometry();
        let line = discrete_line(&t, &[r(2), r(1)]).unwrap();
        assert_eq!(line.len(), 4);
        // Still a path in the full-contact graph (K4, any order works), from
        // the top face to the bottom face.
        let by_id = |id: &String| t.cubes.iter().find(|c| &c.id == id).unwrap();
        assert_eq!(by_id(&line[0]).hi(0), r(2));
        assert!(by_id(&line[3]).lo(0).is_zero());
    }

    #[test]
    fn line_point_must_sit_on_the_top_face() {
        let t = fixtures::q4_geometry();
        assert!(discrete_line(&t, &[r(1), r(1)]).is_err());
        assert!(discrete_line(&t, &[r(2), r(3)]).is_err());
        assert!(discrete_line(&t, &[r(2)]).is_err());
    }

    #[test]
    fn tiling_json_round_trip() {
        let t = fixtures::q7_geometry();
        let back = CubeTiling::from_json(&t.to_json()).unwrap();
        assert_eq!(back, t);
        assert!(CubeTiling::from_json(r#"{"n":1,"dims":["2","3"],"cubes":[]}"#).is_err());
        assert!(
            CubeTiling::from_json(r#"{"n":1,"dims":["2"],"cubes":[],"extra":true}"#).is_err()
        );
    }

    #[test]
    fn realizer_tolerance_admits_tiny_gaps() {
        let mut t = fixtures::q4_geometry();
        // Nudge one square inward by 2^-40: exact validation fails, the
        // tolerance-based validation accepts.
        let eps = Rat::new(1, 1 << 40);
        t.cubes[3].corner = vec![&r(1) + &eps, r(1)];
        assert!(!validate_tiling(&t, &Rat::zero()).is_valid());
        assert!(validate_tiling(&t, &Rat::new(1, 1 << 20)).is_valid());
    }
}
