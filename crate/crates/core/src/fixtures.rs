//! Small hand-built boxes and tilings shared by tests, docs, and examples.
//!
//! Naming: `q4` is the 2x2 square tiling of `[0,2]^2` (contact graph K4),
//! `k8` the 2x2x2 cube tiling of `[0,2]^3` (contact graph K8), `q7` the
//! seven-square tiling of `[0,2]^2` with the top-right cell refined, and
//! `stack3` the invalid column of three cubes in a 1x1x3 box.

use crate::boxes::{DiscreteBox, FacePair};
use crate::metric::Metric;
use crate::rat::Rat;
use crate::tiling::{contact_graph, ContactMode, Cube, CubeTiling, GeometricBox};

fn cube(id: &str, corner: &[Rat], side: Rat) -> Cube {
    Cube {
        id: id.to_string(),
        corner: corner.to_vec(),
        side,
    }
}

fn r(v: i64) -> Rat {
    Rat::from_int(v)
}

fn rh(num: i64, den: i64) -> Rat {
    Rat::new(num, den)
}

/// Four unit squares tiling `[0,2]^2`. Vertex `a` sits at the origin, `c`
/// and `d` touch the far coordinate-1 face, `b` and `d` the far coordinate-2
/// face.
pub fn q4_geometry() -> CubeTiling {
    CubeTiling {
        bounds: GeometricBox {
            dims: vec![r(2), r(2)],
        },
        cubes: vec![
            cube("a", &[r(0), r(0)], r(1)),
            cube("b", &[r(0), r(1)], r(1)),
            cube("c", &[r(1), r(0)], r(1)),
            cube("d", &[r(1), r(1)], r(1)),
        ],
    }
}

/// Full-contact box of [`q4_geometry`]: K4 with `B1 = {c,d}`, `B1' = {a,b}`,
/// `B2 = {b,d}`, `B2' = {a,c}`. Built by hand so box tests do not depend on
/// the contact-graph extractor.
pub fn q4() -> DiscreteBox {
    DiscreteBox {
        n: 2,
        vertices: vec!["a".into(), "b".into(), "c".into(), "d".into()],
        edges: vec![
            ("a".into(), "b".into()),
            ("a".into(), "c".into()),
            ("a".into(), "d".into()),
            ("b".into(), "c".into()),
            ("b".into(), "d".into()),
            ("c".into(), "d".into()),
        ],
        face_pairs: vec![
            FacePair::new(&["c", "d"], &["a", "b"]),
            FacePair::new(&["b", "d"], &["a", "c"]),
        ],
        face_structure: None,
    }
}

/// Eight unit cubes tiling `[0,2]^3`. Vertex names encode the corner bits,
/// `v101` sits at corner (1,0,1).
pub fn k8_geometry() -> CubeTiling {
    let mut cubes = Vec::new();
    for b1 in 0..2i64 {
        for b2 in 0..2i64 {
            for b3 in 0..2i64 {
                cubes.push(cube(
                    &format!("v{b1}{b2}{b3}"),
                    &[r(b1), r(b2), r(b3)],
                    r(1),
                ));
            }
        }
    }
    CubeTiling {
        bounds: GeometricBox {
            dims: vec![r(2), r(2), r(2)],
        },
        cubes,
    }
}

/// Full-contact box of [`k8_geometry`]: the complete graph on eight cubes.
pub fn k8() -> DiscreteBox {
    let names: Vec<String> = (0..8)
        .map(|i| format!("v{}{}{}", (i >> 2) & 1, (i >> 1) & 1, i & 1))
        .collect();
    let mut edges = Vec::new();
    for i in 0..names.len() {
        for j in i + 1..names.len() {
            edges.push((names[i].clone(), names[j].clone()));
        }
    }
    let face = |bit: usize, val: usize| -> Vec<String> {
        (0..8)
            .filter(|i| (i >> (2 - bit)) & 1 == val)
            .map(|i: usize| names[i].clone())
            .collect()
    };
    DiscreteBox {
        n: 3,
        vertices: names.clone(),
        edges,
        face_pairs: (0..3)
            .map(|bit| FacePair {
                pos: face(bit, 1),
                neg: face(bit, 0),
            })
            .collect(),
        face_structure: None,
    }
}

/// Seven squares tiling `[0,2]^2`: three of side 1 and four of side 1/2
/// filling `[1,2] x [1,2]`.
pub fn q7_geometry() -> CubeTiling {
    CubeTiling {
        bounds: GeometricBox {
            dims: vec![r(2), r(2)],
        },
        cubes: vec![
            cube("s00", &[r(0), r(0)], r(1)),
            cube("s10", &[r(1), r(0)], r(1)),
            cube("s01", &[r(0), r(1)], r(1)),
            cube("t11", &[r(1), r(1)], rh(1, 2)),
            cube("t21", &[rh(3, 2), r(1)], rh(1, 2)),
            cube("t12", &[r(1), rh(3, 2)], rh(1, 2)),
            cube("t22", &[rh(3, 2), rh(3, 2)], rh(1, 2)),
        ],
    }
}

/// Full-contact box of [`q7_geometry`], including face structure.
pub fn q7_contact_box() -> DiscreteBox {
    let (bx, _) = contact_graph(&q7_geometry(), ContactMode::Full).expect("q7 extracts");
    bx
}

/// The exact tiling metric of [`q7_geometry`] (sides 1,1,1,1/2,1/2,1/2,1/2).
pub fn q7_tiling_metric() -> Metric {
    let (_, s) = contact_graph(&q7_geometry(), ContactMode::Full).expect("q7 extracts");
    s
}

/// Three unit cubes stacked in a 1x1x3 box: every cube spans the full
/// extent of axes 1 and 2, so the lateral face pairs coincide and the
/// contact box is invalid.
pub fn stack3_geometry() -> CubeTiling {
    CubeTiling {
        bounds: GeometricBox {
            dims: vec![r(1), r(1), r(3)],
        },
        cubes: vec![
            cube("c0", &[r(0), r(0), r(0)], r(1)),
            cube("c1", &[r(0), r(0), r(1)], r(1)),
            cube("c2", &[r(0), r(0), r(2)], r(1)),
        ],
    }
}

/// The (invalid) contact box of [`stack3_geometry`], built by hand.
pub fn stack3() -> DiscreteBox {
    let all = || vec!["c0".to_string(), "c1".to_string(), "c2".to_string()];
    DiscreteBox {
        n: 3,
        vertices: all(),
        edges: vec![("c0".into(), "c1".into()), ("c1".into(), "c2".into())],
        face_pairs: vec![
            FacePair {
                pos: all(),
                neg: all(),
            },
            FacePair {
                pos: all(),
                neg: all(),
            },
            FacePair::new(&["c2"], &["c0"]),
        ],
        face_structure: None,
    }
}

/// The smallest one-dimensional box: a single edge with top `b`, bottom `a`.
pub fn path2() -> DiscreteBox {
    DiscreteBox {
        n: 1,
        vertices: vec!["a".into(), "b".into()],
        edges: vec![("a".into(), "b".into())],
        face_pairs: vec![FacePair::new(&["b"], &["a"])],
        face_structure: None,
    }
}

/// Uniform metric over a box's vertices.
pub fn uniform(bx: &DiscreteBox, weight: f64) -> Metric {
    Metric::uniform(bx.vertices.iter().cloned(), weight)
}
