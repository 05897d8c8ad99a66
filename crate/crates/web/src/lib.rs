//! Browser bindings. Each exported function takes plain numbers and strings
//! and returns a JSON document; the `*_json` functions underneath are
//! ordinary Rust so they can be tested natively.

use facelab::generators::{generate, Family, GeneratorSpec};
use facelab::hypergraph::certify_strong_connectivity;
use facelab::ridge::{find_ridge_path, verify_ridge_path, BlockedSet};
use facelab::{FaceId, Polytope};
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

/// Largest polytope the page will build; keeps lattice computation interactive.
const MAX_VERTICES: usize = 24;

fn build(family: &str, dim: usize, n: usize, seed: u64) -> Result<Polytope, String> {
    let family: Family = family.parse().map_err(|e: facelab::Error| e.to_string())?;
    if !(2..=4).contains(&dim) {
        return Err(format!("dimension {dim} outside the demo range 2..=4"));
    }
    let mut spec = GeneratorSpec::new(family, dim);
    spec.n = n.max(dim + 1);
    spec.seed = seed;
    let p = generate(&spec).map_err(|e| e.to_string())?;
    if p.len() > MAX_VERTICES {
        return Err(format!(
            "{} vertices is more than the demo allows ({MAX_VERTICES})",
            p.len()
        ));
    }
    Polytope::new(p).map_err(|e| e.to_string())
}

fn float_vertices(q: &Polytope) -> Vec<Vec<f64>> {
    q.geometry
        .vertices()
        .iter()
        .map(|v| {
            v.coords()
                .iter()
                .map(|x| x.to_f64().unwrap_or(f64::NAN))
                .collect()
        })
        .collect()
}

fn edges(q: &Polytope) -> Vec<Vec<usize>> {
    let l = &q.lattice;
    l.faces_of_dim(1)
        .map(|r| r.map(|e| l.face(e).vertices.clone()).collect())
        .unwrap_or_default()
}

fn vertex_sets(q: &Polytope, ids: &[FaceId]) -> Vec<Value> {
    ids.iter()
        .map(|&f| json!({ "id": q.lattice.label(f), "vertices": q.lattice.face(f).vertices }))
        .collect()
}

/// Vertices (exact and as floats for drawing), edges and the f-vector.
pub fn polytope_json(family: &str, dim: usize, n: usize, seed: u64) -> Result<String, String> {
    let q = build(family, dim, n, seed)?;
    Ok(json!({
        "dim": q.dim(),
        "vertices": q.geometry.vertices(),
        "points": float_vertices(&q),
        "edges": edges(&q),
        "f_vector": q.lattice.f_vector(),
    })
    .to_string())
}

/// Exhaustive strong-connectivity certificate for every k.
pub fn certify_json(family: &str, dim: usize, n: usize, seed: u64) -> Result<String, String> {
    let q = build(family, dim, n, seed)?;
    let checks = (0..q.dim())
        .map(|k| certify_strong_connectivity(&q.lattice, k, None).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    let pass = checks.iter().all(|c| c.pass);
    Ok(json!({ "dim": q.dim(), "checks": checks, "pass": pass }).to_string())
}

/// Blocks `blocked` random k-faces, picks two other k-faces and solves for a
/// ridge path between them. All choices come from `choice_seed`.
pub fn ridge_json(
    family: &str,
    dim: usize,
    n: usize,
    seed: u64,
    k: isize,
    blocked: usize,
    choice_seed: u64,
) -> Result<String, String> {
    let q = build(family, dim, n, seed)?;
    let l = &q.lattice;
    if k < 1 || k >= q.dim() {
        return Err(format!("k = {k} outside 1..={}", q.dim() - 1));
    }
    if blocked > k as usize {
        return Err(format!("at most k = {k} faces may be blocked"));
    }
    let faces: Vec<FaceId> = l.faces_of_dim(k).map_err(|e| e.to_string())?.collect();
    if faces.len() < blocked + 2 {
        return Err(format!("only {} faces of dimension {k}", faces.len()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(choice_seed);
    let picked: Vec<FaceId> = faces
        .choose_multiple(&mut rng, blocked + 2)
        .copied()
        .collect();
    let (b, ends) = picked.split_at(blocked);
    let set = BlockedSet::new(l, k, b.iter().copied()).map_err(|e| e.to_string())?;
    let sol =
        find_ridge_path(&q, k, &set, ends[0], ends[1], rng.gen()).map_err(|e| e.to_string())?;
    let verified = verify_ridge_path(l, k, &set, &sol.path, ends[0], ends[1]);
    Ok(json!({
        "k": k,
        "points": float_vertices(&q),
        "edges": edges(&q),
        "blocked": vertex_sets(&q, b),
        "path": vertex_sets(&q, &sol.path.faces),
        "ridges": vertex_sets(&q, &sol.path.ridges),
        "depth": sol.depth,
        "verified": verified,
    })
    .to_string())
}

#[wasm_bindgen]
pub fn polytope(family: &str, dim: usize, n: usize, seed: u64) -> Result<String, JsValue> {
    polytope_json(family, dim, n, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn certify(family: &str, dim: usize, n: usize, seed: u64) -> Result<String, JsValue> {
    certify_json(family, dim, n, seed).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn ridge(
    family: &str,
    dim: usize,
    n: usize,
    seed: u64,
    k: isize,
    blocked: usize,
    choice_seed: u64,
) -> Result<String, JsValue> {
    ridge_json(family, dim, n, seed, k, blocked, choice_seed).map_err(|e| JsValue::from_str(&e))
}
