//! Discrete boxes: finite graphs with designated opposing face pairs.
//!
//! The face pair at index 0 (axis 1) is the distinguished top/bottom pair.
//! For every axis `i`, `pos` is the face at coordinate `h_i` and `neg` the
//! face at coordinate 0. Invariant violations are data, not errors: a box
//! parses even when invalid, and [`validate_box`] reports every violation.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One pair of opposing faces: `pos` at the far coordinate, `neg` at zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FacePair {
    pub pos: Vec<String>,
    pub neg: Vec<String>,
}

impl FacePair {
    pub fn new<S: Into<String> + Clone>(pos: &[S], neg: &[S]) -> Self {
        FacePair {
            pos: pos.iter().cloned().map(Into::into).collect(),
            neg: neg.iter().cloned().map(Into::into).collect(),
        }
    }

    pub fn side(&self, side: Side) -> &[String] {
        match side {
            Side::Pos => &self.pos,
            Side::Neg => &self.neg,
        }
    }
}

/// Which side of a face pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Pos,
    Neg,
}

/// Nested boxes describing the two faces of one pair as (n-1)-boxes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceStructurePair {
    pub pos: DiscreteBox,
    pub neg: DiscreteBox,
}

/// A finite graph with `n` disjoint opposing face pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteBox {
    pub n: usize,
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String)>,
    /// Length `n`; index 0 is the top/bottom pair (axis 1).
    pub face_pairs: Vec<FacePair>,
    /// Optional per-axis nested face boxes, parallel to `face_pairs`.
    pub face_structure: Option<Vec<FaceStructurePair>>,
}

impl DiscreteBox {
    /// Face pair for a 1-based axis.
    pub fn pair(&self, axis: usize) -> Result<&FacePair> {
        if axis == 0 || axis > self.n {
            return Err(Error::AxisOutOfRange { axis, n: self.n });
        }
        Ok(&self.face_pairs[axis - 1])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("discrete box serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Format(format!("box file: {e}")))
    }
}

// ---------------------------------------------------------------------------
// JSON schema
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FacePairFile {
    pos: Vec<String>,
    neg: Vec<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FaceStructureFile {
    pos: DiscreteBox,
    neg: DiscreteBox,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoxFile {
    n: usize,
    vertices: Vec<String>,
    edges: Vec<(String, String)>,
    faces: BTreeMap<String, FacePairFile>,
    #[serde(rename = "faceStructure", default, skip_serializing_if = "Option::is_none")]
    face_structure: Option<BTreeMap<String, FaceStructureFile>>,
}

fn axis_keys<T>(map: BTreeMap<String, T>, n: usize, what: &str) -> std::result::Result<Vec<T>, String> {
    let mut by_axis: BTreeMap<usize, T> = BTreeMap::new();
    for (k, v) in map {
        let axis: usize = k
            .parse()
            .map_err(|_| format!("{what} key `{k}` is not an axis index"))?;
        if axis == 0 || axis > n {
            return Err(format!("{what} key `{axis}` out of range 1..={n}"));
        }
        if by_axis.insert(axis, v).is_some() {
            return Err(format!("duplicate {what} key `{axis}`"));
        }
    }
    if by_axis.len() != n {
        return Err(format!("{what} must have exactly one entry per axis 1..={n}"));
    }
    Ok(by_axis.into_values().collect())
}

impl Serialize for DiscreteBox {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let faces = self
            .face_pairs
            .iter()
            .enumerate()
            .map(|(i, p)| {
                (
                    (i + 1).to_string(),
                    FacePairFile {
                        pos: p.pos.clone(),
                        neg: p.neg.clone(),
                    },
                )
            })
            .collect();
        let face_structure = self.face_structure.as_ref().map(|fs| {
            fs.iter()
                .enumerate()
                .map(|(i, p)| {
                    (
                        (i + 1).to_string(),
                        FaceStructureFile {
                            pos: p.pos.clone(),
                            neg: p.neg.clone(),
                        },
                    )
                })
                .collect()
        });
        BoxFile {
            n: self.n,
            vertices: self.vertices.clone(),
            edges: self.edges.clone(),
            faces,
            face_structure,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DiscreteBox {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let file = BoxFile::deserialize(deserializer)?;
        let face_pairs = axis_keys(file.faces, file.n, "faces")
            .map_err(de::Error::custom)?
            .into_iter()
            .map(|p| FacePair {
                pos: p.pos,
                neg: p.neg,
            })
            .collect();
        let face_structure = match file.face_structure {
            None => None,
            Some(fs) => Some(
                axis_keys(fs, file.n, "faceStructure")
                    .map_err(de::Error::custom)?
                    .into_iter()
                    .map(|p| FaceStructurePair {
                        pos: p.pos,
                        neg: p.neg,
                    })
                    .collect(),
            ),
        };
        Ok(DiscreteBox {
            n: file.n,
            vertices: file.vertices,
            edges: file.edges,
            face_pairs,
            face_structure,
        })
    }
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

/// A single violated invariant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum Violation {
    ZeroDimension,
    DuplicateVertex { id: String },
    SelfLoop { id: String },
    UnknownVertexInEdge { id: String },
    UnknownVertexInFace { axis: usize, id: String },
    EmptyFace { axis: usize, side: Side },
    FaceOverlap { axis: usize, shared: Vec<String> },
    Disconnected { unreached: Vec<String> },
    FaceStructureAxisCount { expected: usize, actual: usize },
    FaceStructureDimension { axis: usize, side: Side, expected: usize, actual: usize },
    FaceStructureVertexMismatch { axis: usize, side: Side },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::ZeroDimension => write!(f, "dimension n must be positive"),
            Violation::DuplicateVertex { id } => write!(f, "duplicate vertex `{id}`"),
            Violation::SelfLoop { id } => write!(f, "self-loop at `{id}`"),
            Violation::UnknownVertexInEdge { id } => {
                write!(f, "edge references unknown vertex `{id}`")
            }
            Violation::UnknownVertexInFace { axis, id } => {
                write!(f, "face {axis} references unknown vertex `{id}`")
            }
            Violation::EmptyFace { axis, side } => write!(f, "face {axis} {side:?} is empty"),
            Violation::FaceOverlap { axis, shared } => write!(
                f,
                "face pair {axis} is not disjoint (shared: {})",
                shared.join(", ")
            ),
            Violation::Disconnected { unreached } => {
                write!(f, "graph is not connected (unreached: {})", unreached.join(", "))
            }
            Violation::FaceStructureAxisCount { expected, actual } => write!(
                f,
                "faceStructure has {actual} entries, expected {expected}"
            ),
            Violation::FaceStructureDimension { axis, side, expected, actual } => write!(
                f,
                "face box {axis} {side:?} has dimension {actual}, expected {expected}"
            ),
            Violation::FaceStructureVertexMismatch { axis, side } => write!(
                f,
                "face box {axis} {side:?} vertex set differs from the face set"
            ),
        }
    }
}

/// Result of [`validate_box`]: empty means valid.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Default)]
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
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "- {v}")?;
        }
        Ok(())
    }
}

/// Checks every structural invariant and reports all violations found.
pub fn validate_box(bx: &DiscreteBox) -> ValidationReport {
    let mut out = Vec::new();
    if bx.n == 0 {
        out.push(Violation::ZeroDimension);
    }

    let mut seen = HashSet::new();
    for v in &bx.vertices {
        if !seen.insert(v.as_str()) {
            out.push(Violation::DuplicateVertex { id: v.clone() });
        }
    }
    let known: HashSet<&str> = bx.vertices.iter().map(String::as_str).collect();

    let mut flagged_edge: HashSet<&str> = HashSet::new();
    for (a, b) in &bx.edges {
        if a == b {
            out.push(Violation::SelfLoop { id: a.clone() });
        }
        for end in [a, b] {
            if !known.contains(end.as_str()) && flagged_edge.insert(end) {
                out.push(Violation::UnknownVertexInEdge { id: end.clone() });
            }
        }
    }

    for (i, pair) in bx.face_pairs.iter().enumerate() {
        let axis = i + 1;
        for (side, verts) in [(Side::Pos, &pair.pos), (Side::Neg, &pair.neg)] {
            if verts.is_empty() {
                out.push(Violation::EmptyFace { axis, side });
            }
            let mut flagged: HashSet<&str> = HashSet::new();
            for v in verts {
                if !known.contains(v.as_str()) && flagged.insert(v) {
                    out.push(Violation::UnknownVertexInFace { axis, id: v.clone() });
                }
            }
        }
        let pos: BTreeSet<&str> = pair.pos.iter().map(String::as_str).collect();
        let neg: BTreeSet<&str> = pair.neg.iter().map(String::as_str).collect();
        let shared: Vec<String> = pos.intersection(&neg).map(|s| s.to_string()).collect();
        if !shared.is_empty() {
            out.push(Violation::FaceOverlap { axis, shared });
        }
    }

    // Connectivity over the declared vertex set.
    if !bx.vertices.is_empty() {
        let index: HashMap<&str, usize> = bx
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut adj = vec![Vec::new(); bx.vertices.len()];
        for (a, b) in &bx.edges {
            if let (Some(&ia), Some(&ib)) = (index.get(a.as_str()), index.get(b.as_str())) {
                if ia != ib {
                    adj[ia].push(ib);
                    adj[ib].push(ia);
                }
            }
        }
        let mut reached = vec![false; bx.vertices.len()];
        let mut stack = vec![0usize];
        reached[0] = true;
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !reached[v] {
                    reached[v] = true;
                    stack.push(v);
                }
            }
        }
        let unreached: Vec<String> = bx
            .vertices
            .iter()
            .zip(&reached)
            .filter(|(_, &r)| !r)
            .map(|(v, _)| v.clone())
            .collect();
        if !unreached.is_empty() {
            out.push(Violation::Disconnected { unreached });
        }
    }

    if let Some(fs) = &bx.face_structure {
        if fs.len() != bx.face_pairs.len() {
            out.push(Violation::FaceStructureAxisCount {
                expected: bx.face_pairs.len(),
                actual: fs.len(),
            });
        }
        for (i, (pair, nested)) in bx.face_pairs.iter().zip(fs).enumerate() {
            let axis = i + 1;
            for (side, face, inner) in [
                (Side::Pos, &pair.pos, &nested.pos),
                (Side::Neg, &pair.neg, &nested.neg),
            ] {
                if bx.n >= 1 && inner.n != bx.n - 1 {
                    out.push(Violation::FaceStructureDimension {
                        axis,
                        side,
                        expected: bx.n - 1,
                        actual: inner.n,
                    });
                }
                let face_set: BTreeSet<&str> = face.iter().map(String::as_str).collect();
                let inner_set: BTreeSet<&str> = inner.vertices.iter().map(String::as_str).collect();
                if face_set != inner_set {
                    out.push(Violation::FaceStructureVertexMismatch { axis, side });
                }
            }
        }
    }

    ValidationReport { violations: out }
}

/// Returns the same box with face pair `axis` promoted to the top/bottom
/// position (pairs 1 and `axis` swapped, all others unchanged).
pub fn rotate_box(bx: &DiscreteBox, axis: usize) -> Result<DiscreteBox> {
    if axis == 0 || axis > bx.n {
        return Err(Error::AxisOutOfRange { axis, n: bx.n });
    }
    let mut out = bx.clone();
    out.face_pairs.swap(0, axis - 1);
    if let Some(fs) = &mut out.face_structure {
        if fs.len() == out.face_pairs.len() {
            fs.swap(0, axis - 1);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Indexed view used by algorithms
// ---------------------------------------------------------------------------

/// Index-based view of a *valid* discrete box.
pub struct Indexed<'a> {
    pub bx: &'a DiscreteBox,
    pub index_of: HashMap<&'a str, usize>,
    /// Sorted, deduplicated neighbor lists.
    pub adj: Vec<Vec<usize>>,
    /// Per axis: (pos set, neg set) as vertex indices.
    pub faces: Vec<(BTreeSet<usize>, BTreeSet<usize>)>,
}

impl<'a> Indexed<'a> {
    /// Validates the box and builds the view; fails on any violation.
    pub fn new(bx: &'a DiscreteBox) -> Result<Self> {
        let report = validate_box(bx);
        if !report.is_valid() {
            return Err(Error::InvalidBox(report));
        }
        let index_of: HashMap<&str, usize> = bx
            .vertices
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut adj = vec![BTreeSet::new(); bx.vertices.len()];
        for (a, b) in &bx.edges {
            let ia = index_of[a.as_str()];
            let ib = index_of[b.as_str()];
            adj[ia].insert(ib);
            adj[ib].insert(ia);
        }
        let adj = adj.into_iter().map(|s| s.into_iter().collect()).collect();
        let faces = bx
            .face_pairs
            .iter()
            .map(|p| {
                (
                    p.pos.iter().map(|v| index_of[v.as_str()]).collect(),
                    p.neg.iter().map(|v| index_of[v.as_str()]).collect(),
                )
            })
            .collect();
        Ok(Indexed {
            bx,
            index_of,
            adj,
            faces,
        })
    }

    pub fn len(&self) -> usize {
        self.bx.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bx.vertices.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.bx.vertices[i]
    }

    pub fn names(&self, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&i| self.bx.vertices[i].clone()).collect()
    }

    /// (pos, neg) index sets for a 1-based axis.
    pub fn face_sets(&self, axis: usize) -> Result<(&BTreeSet<usize>, &BTreeSet<usize>)> {
        if axis == 0 || axis > self.faces.len() {
            return Err(Error::AxisOutOfRange {
                axis,
                n: self.faces.len(),
            });
        }
        let (pos, neg) = &self.faces[axis - 1];
        Ok((pos, neg))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn q4_is_valid() {
        let q4 = fixtures::q4();
        assert!(validate_box(&q4).is_valid());
    }

    #[test]
    fn stack3_lateral_faces_coincide() {
        let bad = fixtures::stack3();
        let report = validate_box(&bad);
        assert!(!report.is_valid());
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::FaceOverlap { axis: 1, .. })));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::FaceOverlap { axis: 2, .. })));
    }

    #[test]
    fn face_overlap_detected_when_bottom_vertex_added_to_top() {
        let mut q4 = fixtures::q4();
        q4.face_pairs[0].pos.push("a".to_string()); // `a` is already in neg
        let report = validate_box(&q4);
        assert_eq!(
            report.violations,
            vec![Violation::FaceOverlap {
                axis: 1,
                shared: vec!["a".to_string()]
            }]
        );
    }

    #[test]
    fn validate_reports_unknowns_and_disconnection() {
        let bx = DiscreteBox {
            n: 1,
            vertices: vec!["a".into(), "b".into(), "c".into(), "a".into()],
            edges: vec![("a".into(), "a".into()), ("a".into(), "z".into())],
            face_pairs: vec![FacePair::new(&["b"], &["c", "w"])],
            face_structure: None,
        };
        let report = validate_box(&bx);
        let kinds: Vec<_> = report.violations.iter().collect();
        assert!(kinds.iter().any(|v| matches!(v, Violation::DuplicateVertex { .. })));
        assert!(kinds.iter().any(|v| matches!(v, Violation::SelfLoop { .. })));
        assert!(kinds.iter().any(|v| matches!(v, Violation::UnknownVertexInEdge { .. })));
        assert!(kinds.iter().any(|v| matches!(v, Violation::UnknownVertexInFace { .. })));
        assert!(kinds.iter().any(|v| matches!(v, Violation::Disconnected { .. })));
    }

    #[test]
    fn rotate_is_an_involution() {
        let k8 = fixtures::k8();
        let rotated = rotate_box(&k8, 2).unwrap();
        assert_ne!(rotated, k8);
        assert!(validate_box(&rotated).is_valid());
        assert_eq!(rotate_box(&rotated, 2).unwrap(), k8);
        assert_eq!(rotate_box(&k8, 1).unwrap(), k8);
        assert!(rotate_box(&k8, 4).is_err());
        assert!(rotate_box(&k8, 0).is_err());
    }

    #[test]
    fn rotate_q4_swaps_distinguished_pair() {
        let q4 = fixtures::q4();
        let r = rotate_box(&q4, 2).unwrap();
        assert_eq!(r.face_pairs[0], q4.face_pairs[1]);
        assert_eq!(r.face_pairs[1], q4.face_pairs[0]);
    }

    #[test]
    fn json_round_trip() {
        let q7 = fixtures::q7_contact_box();
        let text = q7.to_json();
        let back = DiscreteBox::from_json(&text).unwrap();
        assert_eq!(back, q7);
    }

    #[test]
    fn unknown_keys_rejected() {
        let text = r#"{"n":1,"vertices":["a","b"],"edges":[["a","b"]],
            "faces":{"1":{"pos":["b"],"neg":["a"]}},"extra":1}"#;
        assert!(DiscreteBox::from_json(text).is_err());
    }

    #[test]
    fn face_keys_must_cover_axes() {
        let text = r#"{"n":2,"vertices":["a","b"],"edges":[["a","b"]],
            "faces":{"1":{"pos":["b"],"neg":["a"]}}}"#;
        assert!(DiscreteBox::from_json(text).is_err());
        let text = r#"{"n":1,"vertices":["a","b"],"edges":[["a","b"]],
            "faces":{"2":{"pos":["b"],"neg":["a"]}}}"#;
        assert!(DiscreteBox::from_json(text).is_err());
    }
}
