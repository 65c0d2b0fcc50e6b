//! Polynomials and truncated power series in `q` with exact coefficients.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::charring::Truncation;
use crate::coeff::Int;

#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QPoly {
    #[serde(with = "pairs")]
    terms: BTreeMap<i64, Int>,
    truncation: Truncation,
}

mod pairs {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(m: &BTreeMap<i64, Int>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(i64, &Int)> = m.iter().map(|(e, c)| (*e, c)).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<i64, Int>, D::Error> {
        let v: Vec<(i64, Int)> = Vec::deserialize(d)?;
        Ok(v.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly { terms: BTreeMap::new(), truncation: Truncation::Exact }
    }

    pub fn one() -> QPoly {
        QPoly::monomial(0, Int::ONE)
    }

    pub fn monomial(e: i64, c: Int) -> QPoly {
        let mut p = QPoly::zero();
        p.add_term(e, &c);
        p
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> QPoly {
        let mut p = QPoly::zero();
        for &(e, c) in pairs {
            p.add_term(e, &Int::from(c));
        }
        p
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn truncated(mut self, n: i64) -> QPoly {
        self.terms.retain(|e, _| *e <= n);
        self.truncation = self.truncation.min(Truncation::At(n));
        self
    }

    pub fn add_term(&mut self, e: i64, c: &Int) {
        if c.is_zero() || !self.truncation.admits(e) {
            return;
        }
        let v = self.terms.entry(e).or_default();
        *v += c;
        if v.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> Int {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Int)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> Int {
        self.terms.values().fold(Int::ZERO, |a, c| &a + c)
    }

    pub fn add(&self, o: &QPoly) -> QPoly {
        let mut p = self.clone();
        p.truncation = self.truncation.min(o.truncation);
        if let Some(n) = p.truncation.bound() {
            p.terms.retain(|e, _| *e <= n);
        }
        for (e, c) in &o.terms {
            p.add_term(*e, c);
        }
        p
    }

    pub fn neg(&self) -> QPoly {
        QPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(), truncation: self.truncation }
    }

    pub fn sub(&self, o: &QPoly) -> QPoly {
        self.add(&o.neg())
    }

    pub fn shift(&self, m: i64) -> QPoly {
        QPoly {
            terms: self.terms.iter().map(|(e, c)| (e + m, c.clone())).collect(),
            truncation: match self.truncation {
                Truncation::Exact => Truncation::Exact,
                Truncation::At(n) => Truncation::At(n + m),
            },
        }
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        let mut p = QPoly::zero();
        // Sound because both factors have exponents ≥ their minimal degree.
        let lo_a = self.min_degree().unwrap_or(0);
        let lo_b = o.min_degree().unwrap_or(0);
        let bound = match (self.truncation.bound(), o.truncation.bound()) {
            (None, None) => None,
            (Some(a), None) => Some(a + lo_b),
            (None, Some(b)) => Some(b + lo_a),
            (Some(a), Some(b)) => Some((a + lo_b).min(b + lo_a)),
        };
        if let Some(n) = bound {
            p.truncation = Truncation::At(n);
        }
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                p.add_term(e1 + e2, &(c1 * c2));
            }
        }
        p
    }

    /// `self` with the truncation marker dropped (used for exact comparisons).
    pub fn exact(mut self) -> QPoly {
        self.truncation = Truncation::Exact;
        self
    }

    /// Coefficientwise equality up to and including degree `n`.
    pub fn agrees_to(&self, o: &QPoly, n: i64) -> bool {
        let a: Vec<_> = self.terms.range(..=n).collect();
        let b: Vec<_> = o.terms.range(..=n).collect();
        a == b
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let unit = abs == Int::ONE;
            match (*e, unit) {
                (0, _) => write!(f, "{abs}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{abs}q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{abs}q^{e}")?,
            }
        }
        if let Truncation::At(n) = self.truncation {
            write!(f, " + O(q^{})", n + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let a = QPoly::from_pairs(&[(0, 1), (1, 1)]);
        let sq = a.mul(&a);
        assert_eq!(sq, QPoly::from_pairs(&[(0, 1), (1, 2), (2, 1)]));
        assert!(sq.sub(&sq).is_zero());
        assert_eq!(sq.at_one(), Int::from(4i64));
        assert_eq!(a.shift(3).min_degree(), Some(3));
    }

    #[test]
    fn truncated_products() {
        let a = QPoly::from_pairs(&[(0, 1), (1, 1), (2, 1)]).truncated(2);
        let b = QPoly::from_pairs(&[(1, 1)]);
        let p = a.mul(&b);
        assert_eq!(p.truncation(), Truncation::At(3));
        assert_eq!(p.max_degree(), Some(3));
    }

    #[test]
    fn display() {
        assert_eq!(QPoly::from_pairs(&[(2, 1), (3, 1)]).to_string(), "q^2 + q^3");
        assert_eq!(QPoly::from_pairs(&[(0, -2), (1, 1)]).to_string(), "-2 + q");
        assert_eq!(QPoly::zero().to_string(), "0");
    }

    #[test]
    fn serde_pairs() {
        let p = QPoly::from_pairs(&[(0, 1), (4, 3)]);
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains("[[0,1],[4,3]]"));
        assert_eq!(serde_json::from_str::<QPoly>(&s).unwrap(), p);
    }
}
