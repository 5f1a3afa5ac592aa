use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graph::{SimpleGraph, SubdivisionSpec, Vertex};

/// An explicit copy of `F^s` inside a host graph.
///
/// `paths[e]` belongs to the `e`-th edge copy of the pattern (in
/// [`crate::MultiGraph::edge_copies`] order) and runs from the image of its
/// first endpoint to the image of its second.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingCertificate {
    #[serde(skip)]
    pub spec: Option<SubdivisionSpec>,
    pub branch_map: Vec<Vertex>,
    pub paths: Vec<Vec<Vertex>>,
}

impl EmbeddingCertificate {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn from_json(text: &str, spec: SubdivisionSpec) -> Result<Self> {
        let mut cert: EmbeddingCertificate = serde_json::from_str(text)?;
        cert.spec = Some(spec);
        Ok(cert)
    }

    /// Vertices used by the copy: branch images then path internals.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = self.branch_map.clone();
        for p in &self.paths {
            if p.len() > 2 {
                out.extend_from_slice(&p[1..p.len() - 1]);
            }
        }
        out
    }
}

/// Full check of the subdivision property against `g` and `spec`.
pub fn verify_certificate(g: &SimpleGraph, spec: &SubdivisionSpec, cert: &EmbeddingCertificate) -> bool {
    if spec.validate().is_err() {
        return false;
    }
    let n = g.n();
    let t = spec.pattern.n();
    if cert.branch_map.len() != t {
        return false;
    }
    let mut used = vec![false; n];
    for &b in &cert.branch_map {
        if b >= n || used[b] {
            return false;
        }
        used[b] = true;
    }
    let copies: Vec<(Vertex, Vertex)> = spec.pattern.edge_copies().collect();
    if cert.paths.len() != copies.len() {
        return false;
    }
    for (p, &(u, v)) in cert.paths.iter().zip(&copies) {
        if p.len() != spec.s + 2 {
            return false;
        }
        if p[0] != cert.branch_map[u] || p[p.len() - 1] != cert.branch_map[v] {
            return false;
        }
        if p.windows(2).any(|w| w[0] >= n || w[1] >= n || !g.has_edge(w[0], w[1])) {
            return false;
        }
        for &x in &p[1..p.len() - 1] {
            if used[x] {
                return false;
            }
            used[x] = true;
        }
    }
    true
}

/// Checks `cert` against the spec it carries.
pub fn verify_embedded(g: &SimpleGraph, cert: &EmbeddingCertificate) -> bool {
    cert.spec.as_ref().is_some_and(|spec| verify_certificate(g, spec, cert))
}
