use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{walk_counts_from, SimpleGraph, Vertex};
use crate::numeric::{le_half_power, ratio_from_f64};

#[derive(Clone, Debug, Serialize)]
pub struct DistantReport {
    pub distant: bool,
    /// Walk counts for lengths `1..=4k-2`, as decimal strings.
    #[serde(serialize_with = "ser_counts")]
    pub walk_counts: Vec<BigUint>,
}

fn ser_counts<S: serde::Serializer>(v: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

fn check_params(k: usize, delta: f64) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let d = ratio_from_f64(delta)?;
    if !d.is_positive() {
        return Err(Error::InvalidParameter(format!("delta = {delta} must be positive")));
    }
    Ok(d)
}

/// `u` and `v` are distant when for every `1 <= i <= 4k - 2` the number of
/// walks of length `i` between them is at most `delta^(i - 2k + 1/2)`.
pub fn is_distant(g: &SimpleGraph, u: Vertex, v: Vertex, k: usize, delta: f64) -> Result<DistantReport> {
    if u == v {
        return Err(Error::InvalidParameter("distance test needs distinct vertices".into()));
    }
    let d = check_params(k, delta)?;
    let max_len = 4 * k - 2;
    let layers = walk_counts_from(g, u, max_len);
    let walk_counts: Vec<BigUint> = (1..=max_len).map(|i| layers[i][v].clone()).collect();
    let distant = walk_counts
        .iter()
        .enumerate()
        .all(|(idx, c)| le_half_power(c, &d, 2 * (idx as i64 + 1) - 4 * k as i64 + 1));
    Ok(DistantReport { distant, walk_counts })
}

/// `out[v]`: whether `u` and `v` are distant (`out[u]` is `false`).
pub fn distant_from(g: &SimpleGraph, u: Vertex, k: usize, delta: f64) -> Result<Vec<bool>> {
    let d = check_params(k, delta)?;
    let max_len = 4 * k - 2;
    let layers = walk_counts_from(g, u, max_len);
    Ok((0..g.n())
        .map(|v| v != u && (1..=max_len).all(|i| le_half_power(&layers[i][v], &d, 2 * i as i64 - 4 * k as i64 + 1)))
        .collect())
}
