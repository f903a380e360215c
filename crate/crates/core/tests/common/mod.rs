#![allow(dead_code)]

use rand::Rng;
use steincalc_core::exactmat::IntMatrix;
use steincalc_core::knots::SeifertMatrixK;
use steincalc_core::plumbing::{PlumbingGraph, Vertex};

/// `V = N + S`: `N` a direct sum of `[[0,1],[0,0]]` blocks and `S` random
/// symmetric, so `V - Vᵀ` is the standard symplectic form.
pub fn random_seifert<R: Rng>(rng: &mut R, max_genus: usize, name: &str) -> SeifertMatrixK {
    let g = rng.gen_range(1..=max_genus);
    let n = 2 * g;
    let mut rows = vec![vec![0i64; n]; n];
    #[allow(clippy::needless_range_loop)]
    for i in 0..n {
        for j in i..n {
            let v = rng.gen_range(-3..=3);
            rows[i][j] = v;
            rows[j][i] = v;
        }
    }
    for b in 0..g {
        rows[2 * b][2 * b + 1] += 1;
    }
    SeifertMatrixK::new(name, IntMatrix::from_rows(&rows).unwrap()).unwrap()
}

/// Random tree on `1..=max_vertices` vertices, attaching each new vertex to
/// an earlier one.
pub fn random_tree<R: Rng>(rng: &mut R, max_vertices: u32) -> PlumbingGraph {
    let n = rng.gen_range(1..=max_vertices);
    let vertices = (0..n)
        .map(|id| Vertex {
            id,
            weight: rng.gen_range(-4..=2),
            genus: if rng.gen_bool(0.15) { 1 } else { 0 },
        })
        .collect();
    let edges = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    PlumbingGraph::new(vertices, edges).unwrap()
}
