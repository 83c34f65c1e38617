//! Seeded random valid discrete boxes, used to cross-validate the two
//! solver routes on inputs nobody hand-picked.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boxes::{validate_box, DiscreteBox, FacePair};

/// A random connected graph on up to `max_vertices` vertices with `n` valid
/// face pairs. Deterministic per seed; the result always validates.
pub fn random_box(n: usize, max_vertices: usize, seed: u64) -> DiscreteBox {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min_v = (2 * n).max(4).min(max_vertices.max(2));
    let nv = rng.gen_range(min_v..=max_vertices.max(min_v));
    let vertices: Vec<String> = (0..nv).map(|i| format!("v{i}")).collect();

    // Random spanning tree plus extra edges.
    let mut edges: Vec<(usize, usize)> = (1..nv).map(|i| (rng.gen_range(0..i), i)).collect();
    let extra = rng.gen_range(0..=nv);
    for _ in 0..extra {
        let a = rng.gen_range(0..nv);
        let b = rng.gen_range(0..nv);
        if a != b {
            let e = (a.min(b), a.max(b));
            if !edges.contains(&e) {
                edges.push(e);
            }
        }
    }
    edges.sort();

    let mut face_pairs = Vec::with_capacity(n);
    for _ in 0..n {
        let mut order: Vec<usize> = (0..nv).collect();
        order.shuffle(&mut rng);
        let pos_count = rng.gen_range(1..=(nv / 2).max(1));
        let neg_count = rng.gen_range(1..=(nv - pos_count).min(nv / 2).max(1));
        let pos: Vec<String> = order[..pos_count]
            .iter()
            .map(|&i| vertices[i].clone())
            .collect();
        let neg: Vec<String> = order[pos_count..pos_count + neg_count]
            .iter()
            .map(|&i| vertices[i].clone())
            .collect();
        face_pairs.push(FacePair { pos, neg });
    }

    let bx = DiscreteBox {
        n,
        vertices: vertices.clone(),
        edges: edges
            .into_iter()
            .map(|(a, b)| (vertices[a].clone(), vertices[b].clone()))
            .collect(),
        face_pairs,
        face_structure: None,
    };
    debug_assert!(validate_box(&bx).is_valid());
    bx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_boxes_are_valid_and_reproducible() {
        for seed in 0..100 {
            let n = 2 + (seed as usize) % 2;
            let bx = random_box(n, 10, seed);
            assert!(validate_box(&bx).is_valid(), "seed {seed}");
            assert!(bx.vertices.len() <= 10);
            assert_eq!(bx, random_box(n, 10, seed));
        }
        assert_ne!(random_box(2, 10, 1), random_box(2, 10, 2));
    }
}
