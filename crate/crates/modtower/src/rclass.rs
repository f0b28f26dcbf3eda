//! The ring `R` of bit sequences modulo almost-zero sequences.
//!
//! Elements are classes of `Z/2`-valued sequences where two sequences are
//! identified when they differ in finitely many places. Every eventually
//! periodic sequence is equivalent to a purely periodic one whose pattern is
//! aligned to the absolute index grid, so the normal form stores an empty
//! preperiod and a primitive, phase-aligned period. Addition is componentwise.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RClassBit {
    /// Always empty after normalization; kept for the interchange format.
    pub preperiod: Vec<bool>,
    /// Primitive period, aligned so that index `k` carries `period[k % p]`.
    pub period: Vec<bool>,
}

fn primitive(period: &[bool]) -> Vec<bool> {
    let n = period.len();
    for d in 1..=n {
        if n % d == 0 && (0..n).all(|k| period[k] == period[k % d]) {
            return period[..d].to_vec();
        }
    }
    period.to_vec()
}

impl RClassBit {
    /// Class of the sequence equal to `pre` then `per` repeated.
    pub fn from_eventually_periodic(pre: &[bool], per: &[bool]) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::Unsupported("period must be nonempty".into()));
        }
        let p = primitive(per).len();
        // value at a large index k ≡ j (mod p): per[(k − |pre|) mod |per|]
        let offset = pre.len();
        let aligned: Vec<bool> = (0..p)
            .map(|j| {
                // choose k ≥ offset with k ≡ j (mod p)
                let k = j + p * offset.div_ceil(p).max(1);
                per[(k - offset) % per.len()]
            })
            .collect();
        Ok(RClassBit {
            preperiod: Vec::new(),
            period: primitive(&aligned),
        })
    }

    pub fn zero() -> Self {
        RClassBit {
            preperiod: Vec::new(),
            period: vec![false],
        }
    }

    /// The all-ones class `1_R`.
    pub fn one() -> Self {
        RClassBit {
            preperiod: Vec::new(),
            period: vec![true],
        }
    }

    /// The embedding `j: Z/2 → R` (0 to the zero class, 1 to the all-ones).
    pub fn from_bit(b: bool) -> Self {
        if b {
            RClassBit::one()
        } else {
            RClassBit::zero()
        }
    }

    /// Value of the canonical representative at index `k`.
    pub fn at(&self, k: usize) -> bool {
        self.period[k % self.period.len()]
    }

    pub fn add(&self, other: &RClassBit) -> RClassBit {
        let p = lcm(self.period.len(), other.period.len());
        let sum: Vec<bool> = (0..p).map(|k| self.at(k) ^ other.at(k)).collect();
        RClassBit {
            preperiod: Vec::new(),
            period: primitive(&sum),
        }
    }

    /// `Some(bit)` when the class is constant.
    pub fn constant_value(&self) -> Option<bool> {
        if self.period.len() == 1 {
            Some(self.period[0])
        } else {
            None
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Detects the eventually periodic structure of an explicitly generated
/// prefix, given bounds on the preperiod and period. The prefix must contain
/// at least two full periods past the preperiod bound.
pub fn detect_period(
    values: &[bool],
    max_preperiod: usize,
    max_period: usize,
) -> Result<(Vec<bool>, Vec<bool>)> {
    for p in 1..=max_period.min(values.len() / 2) {
        if values.len() < p {
            break;
        }
        // smallest preperiod a such that values is p-periodic from a on
        let mut a = values.len() - p;
        while a > 0 && values[a - 1] == values[a - 1 + p] {
            a -= 1;
        }
        if a <= max_preperiod && a + 2 * p <= values.len() {
            return Ok((values[..a].to_vec(), values[a..a + p].to_vec()));
        }
    }
    Err(Error::PeriodNotFound(values.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn tail_equivalence() {
        // (0,0,1,0,1,0,…) and (1,0,1,0,…) agree from index 2 on.
        let a = RClassBit::from_eventually_periodic(&bits("00"), &bits("10")).unwrap();
        let b = RClassBit::from_eventually_periodic(&[], &bits("10")).unwrap();
        assert_eq!(a, b);
        // …but (0,1,0,1,…) is the opposite phase.
        let c = RClassBit::from_eventually_periodic(&[], &bits("01")).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn ring_laws() {
        let one = RClassBit::one();
        assert_eq!(one.add(&one), RClassBit::zero());
        let x = RClassBit::from_eventually_periodic(&bits("1"), &bits("011")).unwrap();
        let y = RClassBit::from_eventually_periodic(&[], &bits("10")).unwrap();
        assert_eq!(x.add(&y), y.add(&x));
        let z = RClassBit::from_bit(true);
        assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
        assert_eq!(x.add(&RClassBit::zero()), x);
        assert_eq!(x.add(&x), RClassBit::zero());
    }

    #[test]
    fn j_is_injective_and_additive() {
        assert_ne!(RClassBit::from_bit(false), RClassBit::from_bit(true));
        assert_eq!(
            RClassBit::from_bit(true).add(&RClassBit::from_bit(true)),
            RClassBit::from_bit(false)
        );
    }

    #[test]
    fn detect_simple_patterns() {
        let (pre, per) = detect_period(&bits("0011011011"), 1, 4).unwrap();
        assert_eq!((pre, per), (bits("0"), bits("011")));
        let (pre, per) = detect_period(&bits("00000"), 1, 4).unwrap();
        assert_eq!((pre, per), (bits(""), bits("0")));
    }

    #[test]
    fn constant_detection() {
        assert_eq!(RClassBit::one().constant_value(), Some(true));
        let alt = RClassBit::from_eventually_periodic(&[], &bits("01")).unwrap();
        assert_eq!(alt.constant_value(), None);
    }
}
