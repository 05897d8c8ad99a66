//! The face hypergraph `H_k(P)`: nodes are the `k`-faces, hyperedges the
//! `(k+1)`-faces, with incidence by containment.
//!
//! Removing a node also removes every hyperedge incident to it. Survivors
//! are adjacent when they share a surviving hyperedge.

use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polytope::{facet_incidence, polar_dual, FaceId, FaceLattice, Polytope, VPolytope};

#[derive(Clone, Debug)]
pub struct FaceHypergraph {
    k: isize,
    nodes: Vec<FaceId>,
    hyperedges: Vec<FaceId>,
    members: Vec<Vec<usize>>,
    incident: Vec<Vec<usize>>,
}

impl FaceHypergraph {
    /// Builds `H_k` from a face lattice, `0 <= k <= dim - 1`.
    pub fn from_lattice(l: &FaceLattice, k: isize) -> Result<Self> {
        if k < 0 || k > l.dim() - 1 {
            return Err(Error::DimensionOutOfRange {
                k,
                min: 0,
                max: l.dim() - 1,
            });
        }
        let nodes: Vec<FaceId> = l.faces_of_dim(k)?.collect();
        let hyperedges: Vec<FaceId> = l.faces_of_dim(k + 1)?.collect();
        let first = nodes[0];
        let members = hyperedges
            .iter()
            .map(|&e| l.children(e).iter().map(|&c| c - first).collect())
            .collect();
        Ok(Self::assemble(k, nodes, hyperedges, members))
    }

    /// A hypergraph given directly by its hyperedges over nodes
    /// `0..node_count`. Face ids are the node indices themselves.
    pub fn from_hyperedges(node_count: usize, hyperedges: Vec<Vec<usize>>) -> Result<Self> {
        if let Some(&bad) = hyperedges.iter().flatten().find(|&&n| n >= node_count) {
            return Err(Error::UnknownNode(bad));
        }
        let edge_ids = (0..hyperedges.len()).collect();
        Ok(Self::assemble(
            0,
            (0..node_count).collect(),
            edge_ids,
            hyperedges,
        ))
    }

    fn assemble(
        k: isize,
        nodes: Vec<FaceId>,
        hyperedges: Vec<FaceId>,
        members: Vec<Vec<usize>>,
    ) -> Self {
        let mut incident = vec![Vec::new(); nodes.len()];
        for (e, ms) in members.iter().enumerate() {
            for &n in ms {
                incident[n].push(e);
            }
        }
        Self {
            k,
            nodes,
            hyperedges,
            members,
            incident,
        }
    }

    pub fn k(&self) -> isize {
        self.k
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn hyperedge_count(&self) -> usize {
        self.hyperedges.len()
    }

    /// Lattice face id of node `n`.
    pub fn node_face(&self, n: usize) -> FaceId {
        self.nodes[n]
    }

    pub fn hyperedge_face(&self, e: usize) -> FaceId {
        self.hyperedges[e]
    }

    /// Node index of a lattice face, if it is a node.
    pub fn node_of_face(&self, face: FaceId) -> Option<usize> {
        self.nodes.binary_search(&face).ok()
    }

    pub fn members(&self, e: usize) -> &[usize] {
        &self.members[e]
    }

    /// Hyperedges containing node `n`.
    pub fn incident(&self, n: usize) -> &[usize] {
        &self.incident[n]
    }

    fn removal_mask(&self, removed: &[usize]) -> Result<Vec<bool>> {
        let mut mask = vec![false; self.nodes.len()];
        for &r in removed {
            *mask.get_mut(r).ok_or(Error::UnknownNode(r))? = true;
        }
        Ok(mask)
    }

    /// Connected components of the surviving nodes, each sorted, ordered by
    /// smallest member.
    pub fn components_after_removal(&self, removed: &[usize]) -> Result<Vec<Vec<usize>>> {
        let mask = self.removal_mask(removed)?;
        Ok(self.components(&mask))
    }

    fn components(&self, removed: &[bool]) -> Vec<Vec<usize>> {
        let n = self.nodes.len();
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if removed[start] || comp[start] != usize::MAX {
                continue;
            }
            let c = out.len();
            comp[start] = c;
            let mut members = vec![start];
            stack.push(start);
            while let Some(u) = stack.pop() {
                for &e in &self.incident[u] {
                    if self.members[e].iter().any(|&m| removed[m]) {
                        continue;
                    }
                    for &v in &self.members[e] {
                        if comp[v] == usize::MAX {
                            comp[v] = c;
                            members.push(v);
                            stack.push(v);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Whether the survivors form at most one component after deleting
    /// `removed` and every hyperedge touching it.
    pub fn is_connected_after_removal(&self, removed: &[usize]) -> Result<bool> {
        Ok(self.components_after_removal(removed)?.len() <= 1)
    }

    /// Exhaustive search for the smallest disconnecting node set of size
    /// below `cap`. Subsets are scanned in lexicographic order per size, so
    /// the reported witness is deterministic.
    pub fn strong_connectivity(&self, cap: usize) -> ConnectivityReport {
        let n = self.nodes.len();
        for size in 0..cap.min(n + 1) {
            if let Some(removed) = self.first_disconnecting_set(size) {
                let mask = self.removal_mask(&removed).expect("indices in range");
                let comps = self.components(&mask);
                return ConnectivityReport {
                    k: self.k,
                    alpha: size,
                    capped: false,
                    witness: Some(Witness {
                        removed,
                        component_a: comps[0].clone(),
                        component_b: comps[1].clone(),
                    }),
                };
            }
        }
        ConnectivityReport {
            k: self.k,
            alpha: cap,
            capped: true,
            witness: None,
        }
    }

    fn first_disconnecting_set(&self, size: usize) -> Option<Vec<usize>> {
        const CHUNK: usize = 4096;
        let n = self.nodes.len();
        let mut subsets = (0..n).combinations(size);
        loop {
            let chunk: Vec<Vec<usize>> = subsets.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                return None;
            }
            let hit = chunk.into_par_iter().find_first(|removed| {
                let mut mask = vec![false; n];
                removed.iter().for_each(|&r| mask[r] = true);
                self.components(&mask).len() > 1
            });
            if hit.is_some() {
                return hit;
            }
        }
    }

    /// Greedy isolation of `node`: for each incident hyperedge not yet
    /// killed, remove another of its members. Returns the removed set if
    /// `node` ends up cut off from at least one other survivor.
    pub fn find_isolating_set(&self, node: usize) -> Result<Option<Vec<usize>>> {
        if node >= self.nodes.len() {
            return Err(Error::UnknownNode(node));
        }
        let mut picked: Vec<usize> = Vec::new();
        for &e in &self.incident[node] {
            if self.members[e].iter().any(|m| picked.contains(m)) {
                continue;
            }
            match self.members[e].iter().find(|&&m| m != node) {
                Some(&m) => picked.push(m),
                None => return Ok(None),
            }
        }
        picked.sort_unstable();
        let comps = self.components_after_removal(&picked)?;
        let isolated = comps.iter().any(|c| c == &[node]);
        Ok((isolated && comps.len() > 1).then_some(picked))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub removed: Vec<usize>,
    pub component_a: Vec<usize>,
    pub component_b: Vec<usize>,
}

/// Result of [`FaceHypergraph::strong_connectivity`]. When `capped` is set
/// no disconnecting set smaller than `alpha` exists; the true connectivity
/// may be larger.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConnectivityReport {
    pub k: isize,
    pub alpha: usize,
    pub capped: bool,
    pub witness: Option<Witness>,
}

impl ConnectivityReport {
    /// Re-checks the witness against the hypergraph.
    pub fn witness_holds(&self, hg: &FaceHypergraph) -> bool {
        match &self.witness {
            None => true,
            Some(w) => {
                w.removed.len() == self.alpha
                    && hg.is_connected_after_removal(&w.removed) == Ok(false)
            }
        }
    }
}

/// One row of a theorem check: `H_k` must be strongly `(d - k)`-connected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremCheck {
    pub k: isize,
    pub required: usize,
    pub nodes: usize,
    pub hyperedges: usize,
    pub report: ConnectivityReport,
    pub pass: bool,
}

/// Exhaustively checks that removing fewer than `cap` nodes (default
/// `d - k`) from `H_k` never disconnects it. Passes when the certified
/// connectivity reaches `d - k`.
pub fn certify_strong_connectivity(
    l: &FaceLattice,
    k: isize,
    cap: Option<usize>,
) -> Result<TheoremCheck> {
    let hg = FaceHypergraph::from_lattice(l, k)?;
    let required = (l.dim() - k) as usize;
    let report = hg.strong_connectivity(cap.unwrap_or(required));
    Ok(TheoremCheck {
        k,
        required,
        nodes: hg.node_count(),
        hyperedges: hg.hyperedge_count(),
        pass: report.alpha >= required,
        report,
    })
}

/// Checks that `H_k(P)` is the ridge structure of the `(d-k-1)`-skeleton of
/// the polar dual: nodes go bijectively to dual `(d-k-1)`-faces, hyperedges
/// to dual `(d-k-2)`-faces, and membership becomes reverse containment.
pub fn check_duality_equivalence(p: &VPolytope, k: isize) -> Result<bool> {
    let primal = Polytope::new(p.clone())?;
    let dual = Polytope::new(polar_dual(p)?)?;
    duality_equivalence(&primal.lattice, &dual.lattice, k)
}

/// [`check_duality_equivalence`] on precomputed lattices; dual vertex `i`
/// must be the polar of primal facet `i`.
pub fn duality_equivalence(primal: &FaceLattice, dual: &FaceLattice, k: isize) -> Result<bool> {
    let d = primal.dim();
    let hg = FaceHypergraph::from_lattice(primal, k)?;
    let dual_max: Vec<FaceId> = dual.faces_of_dim(d - k - 1)?.collect();
    let dual_ridges: Vec<FaceId> = dual.faces_of_dim(d - k - 2)?.collect();

    let to_dual = |face: FaceId| dual.find(&facet_incidence(primal, face));
    let Some(node_image) = (0..hg.node_count())
        .map(|n| to_dual(hg.node_face(n)))
        .collect::<Option<Vec<_>>>()
    else {
        return Ok(false);
    };
    let Some(edge_image) = (0..hg.hyperedge_count())
        .map(|e| to_dual(hg.hyperedge_face(e)))
        .collect::<Option<Vec<_>>>()
    else {
        return Ok(false);
    };
    if !is_bijection(&node_image, &dual_max) || !is_bijection(&edge_image, &dual_ridges) {
        return Ok(false);
    }
    for e in 0..hg.hyperedge_count() {
        for n in 0..hg.node_count() {
            let member = hg.members(e).contains(&n);
            if member != dual.contains(edge_image[e], node_image[n]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn is_bijection(image: &[FaceId], target: &[FaceId]) -> bool {
    let mut sorted = image.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == image.len() && sorted == target
}
