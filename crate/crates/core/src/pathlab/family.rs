use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numeric::{ceil_ratio, floor_pow, ratio_from_f64, ratio_from_u64, ratio_from_uint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// `f(l) = L^(5^l)`.
    Paper,
    /// Smallest integers with `f(1) = 1` and
    /// `f(l) >= (l-1)^2 L f(i) f(l-i)` for all `1 <= i < l`.
    PigeonholeMinimal,
    Custom,
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyKind::Paper => "paper",
            FamilyKind::PigeonholeMinimal => "pigeonhole",
            FamilyKind::Custom => "custom",
        })
    }
}

/// Per-length thresholds `f(1), ..., f(max_len)` on the number of admissible
/// paths an endpoint pair may carry before its paths stop being good.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdFamily {
    kind: FamilyKind,
    l: f64,
    values: Vec<BigUint>,
}

impl ThresholdFamily {
    pub fn paper(l: f64, max_len: usize) -> Result<Self> {
        check_l(l)?;
        let values = (1..=max_len)
            .map(|len| floor_pow(l, 5u64.pow(len as u32)))
            .collect::<Result<_>>()?;
        Ok(ThresholdFamily {
            kind: FamilyKind::Paper,
            l,
            values,
        })
    }

    pub fn pigeonhole(l: f64, max_len: usize) -> Result<Self> {
        check_l(l)?;
        let lr = ratio_from_f64(l)?;
        let mut values: Vec<BigUint> = Vec::with_capacity(max_len);
        for len in 1..=max_len {
            if len == 1 {
                values.push(BigUint::one());
                continue;
            }
            let sq = ratio_from_u64(((len - 1) * (len - 1)) as u64);
            let need = (1..len)
                .map(|i| ceil_ratio(&(&sq * &lr * ratio_from_uint(&(&values[i - 1] * &values[len - i - 1])))))
                .max()
                .expect("len >= 2");
            values.push(need);
        }
        Ok(ThresholdFamily {
            kind: FamilyKind::PigeonholeMinimal,
            l,
            values,
        })
    }

    /// Arbitrary thresholds; `values[0]` is `f(1)` and must be at least 1.
    pub fn custom(l: f64, values: Vec<BigUint>) -> Result<Self> {
        if !(l > 0.0 && l.is_finite()) {
            return Err(Error::InvalidParameter(format!("L = {l} must be positive")));
        }
        if values.is_empty() {
            return Err(Error::InvalidParameter("custom family needs f(1)".into()));
        }
        if values[0] < BigUint::one() {
            return Err(Error::InvalidParameter("f(1) must be at least 1".into()));
        }
        Ok(ThresholdFamily {
            kind: FamilyKind::Custom,
            l,
            values,
        })
    }

    /// `f(l) = value` for every length (custom family, `L` recorded as `value`).
    pub fn constant(value: u64, max_len: usize) -> Result<Self> {
        ThresholdFamily::custom(value as f64, vec![BigUint::from(value); max_len])
    }

    /// One decimal value per non-comment line, starting at `f(1)`.
    pub fn parse_custom(l: f64, text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            values.push(BigUint::from_str(line).map_err(|_| Error::Parse {
                line: idx + 1,
                message: format!("expected a nonnegative integer, found {line:?}"),
            })?);
        }
        ThresholdFamily::custom(l, values)
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn max_len(&self) -> usize {
        self.values.len()
    }

    /// `f(len)`, `1 <= len <= max_len`.
    pub fn f(&self, len: usize) -> &BigUint {
        &self.values[len - 1]
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// Whether a pair carrying `count` admissible paths of length `len` is
    /// within the threshold.
    pub fn admits(&self, len: usize, count: u64) -> bool {
        BigUint::from(count) <= *self.f(len)
    }

    /// Checks `f(1) >= 1` and `f(l) >= (l-1)^2 L f(i) f(l-i)` for all
    /// `2 <= l <= max_len`, `1 <= i < l`, exactly.
    pub fn satisfies_pigeonhole(&self) -> bool {
        let Ok(lr) = ratio_from_f64(self.l) else {
            return false;
        };
        if self.values[0] < BigUint::one() {
            return false;
        }
        (2..=self.max_len()).all(|len| {
            let sq = ratio_from_u64(((len - 1) * (len - 1)) as u64);
            let lhs = ratio_from_uint(self.f(len));
            (1..len).all(|i| {
                let rhs: BigRational = &sq * &lr * ratio_from_uint(&(self.f(i) * self.f(len - i)));
                lhs >= rhs
            })
        })
    }

    pub fn describe(&self) -> String {
        format!("{}(L={})", self.kind, self.l)
    }
}

fn check_l(l: f64) -> Result<()> {
    if l > 1.0 && l.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("L = {l} must be a real > 1")))
    }
}

impl Serialize for ThresholdFamily {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            kind: FamilyKind,
            #[serde(rename = "L")]
            l: f64,
            values: Vec<String>,
        }
        Repr {
            kind: self.kind,
            l: self.l,
            values: self.values.iter().map(|v| v.to_string()).collect(),
        }
        .serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn paper_values() {
        let f = ThresholdFamily::paper(2.0, 2).unwrap();
        assert_eq!(*f.f(1), BigUint::from(32u32));
        assert_eq!(*f.f(2), BigUint::from(1u64 << 25));
        assert!(f.satisfies_pigeonhole());
        // non-integer L is floored exactly: 1.5^5 = 7.59375
        assert_eq!(*ThresholdFamily::paper(1.5, 1).unwrap().f(1), BigUint::from(7u32));
        assert!(ThresholdFamily::paper(1.0, 2).is_err());
    }

    #[test]
    fn pigeonhole_values() {
        let f = ThresholdFamily::pigeonhole(3.0, 4).unwrap();
        // f2 = 1*3*1*1, f3 = 4*3*3, f4 = 9*3*max(f1 f3, f2 f2)
        let expect: Vec<BigUint> = [1u32, 3, 36, 972].iter().map(|&v| v.into()).collect();
        assert_eq!(f.values(), expect.as_slice());
        assert!(f.satisfies_pigeonhole());
        // L = 2.5: f2 = ceil(2.5) = 3, f3 = ceil(4 * 2.5 * 3) = 30
        let g = ThresholdFamily::pigeonhole(2.5, 3).unwrap();
        assert_eq!(*g.f(2), BigUint::from(3u32));
        assert_eq!(*g.f(3), BigUint::from(30u32));
        assert!(g.satisfies_pigeonhole());
    }

    #[test]
    fn constant_family_violates_pigeonhole() {
        let f = ThresholdFamily::constant(1, 3).unwrap();
        assert!(!f.satisfies_pigeonhole());
        assert!(f.admits(2, 1) && !f.admits(2, 2));
    }

    #[test]
    fn custom_parsing() {
        let f = ThresholdFamily::parse_custom(3.0, "# f\n1\n3\n\n36\n").unwrap();
        assert_eq!(f.max_len(), 3);
        assert_eq!(f.kind(), FamilyKind::Custom);
        assert!(ThresholdFamily::parse_custom(3.0, "0\n").is_err());
        assert!(ThresholdFamily::parse_custom(3.0, "1\nx\n").is_err());
    }
}
