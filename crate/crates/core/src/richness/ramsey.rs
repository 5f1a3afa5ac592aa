use num_bigint::BigUint;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RamseyProvenance {
    ExactTable,
    UpperBound,
}

/// `R_k(t)`, the `k`-colour Ramsey number for monochromatic `K_t`, or an upper bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamseyBound {
    pub colours: usize,
    pub t: usize,
    #[serde(serialize_with = "ser_big")]
    pub value: BigUint,
    pub provenance: RamseyProvenance,
}

fn ser_big<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

impl RamseyBound {
    pub fn as_usize(&self) -> Option<usize> {
        usize::try_from(&self.value).ok()
    }
}

fn exact(colours: usize, t: usize) -> Option<u64> {
    match (colours, t) {
        (1, t) => Some(t as u64),
        (_, 2) => Some(2),
        (2, 3) => Some(6),
        (2, 4) => Some(18),
        (3, 3) => Some(17),
        _ => None,
    }
}

pub fn ramsey_bound(colours: usize, t: usize) -> Result<RamseyBound> {
    if colours == 0 || t < 2 {
        return Err(Error::InvalidParameter(format!(
            "Ramsey number needs at least one colour and t >= 2, got ({colours}, {t})"
        )));
    }
    let (value, provenance) = match exact(colours, t) {
        Some(v) => (BigUint::from(v), RamseyProvenance::ExactTable),
        // k^(kt) dominates the multicolour Erdos-Szekeres bound
        None => (
            num_traits::pow(BigUint::from(colours), colours * t),
            RamseyProvenance::UpperBound,
        ),
    };
    Ok(RamseyBound {
        colours,
        t,
        value,
        provenance,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        let r = ramsey_bound(1, 7).unwrap();
        assert_eq!((r.as_usize(), r.provenance), (Some(7), RamseyProvenance::ExactTable));
        assert_eq!(ramsey_bound(2, 3).unwrap().as_usize(), Some(6));
        assert_eq!(ramsey_bound(2, 4).unwrap().as_usize(), Some(18));
        assert_eq!(ramsey_bound(3, 3).unwrap().as_usize(), Some(17));
        assert_eq!(ramsey_bound(4, 2).unwrap().as_usize(), Some(2));
    }

    #[test]
    fn crude_bounds_dominate_known_values() {
        // R(5,5) <= 46 is known; the fallback must be at least that
        let r = ramsey_bound(2, 5).unwrap();
        assert_eq!(r.provenance, RamseyProvenance::UpperBound);
        assert_eq!(r.value, BigUint::from(1024u32));
        // R_4(3) <= 62 is known
        assert!(ramsey_bound(4, 3).unwrap().value >= BigUint::from(62u32));
        assert!(ramsey_bound(0, 3).is_err());
        assert!(ramsey_bound(2, 1).is_err());
    }

    #[test]
    fn two_colouring_of_k5_avoids_triangles() {
        // the pentagon / pentagram colouring witnesses R(3,3) > 5
        let colour = |a: usize, b: usize| ((a + 5 - b) % 5 == 1) || ((b + 5 - a) % 5 == 1);
        for a in 0..5 {
            for b in a + 1..5 {
                for c in b + 1..5 {
                    let cs = [colour(a, b), colour(b, c), colour(a, c)];
                    assert!(!(cs[0] == cs[1] && cs[1] == cs[2]));
                }
            }
        }
    }
}
