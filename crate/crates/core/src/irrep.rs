//! Symmetric characters stored in the basis `{ch V_λ}` with `q`-coefficients.

use std::collections::BTreeMap;

use crate::cartan::{RootSystem, Weight};
use crate::charring::{Anchor, GradedCharacter, Truncation};
use crate::coeff::Int;
use crate::error::{precondition, Result};
use crate::qpoly::QPoly;

/// `Σ_λ a_λ(q) ch V_λ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrepSum {
    pub coeffs: BTreeMap<Weight, QPoly>,
    pub truncation: Truncation,
}

impl IrrepSum {
    pub fn zero() -> IrrepSum {
        IrrepSum { coeffs: BTreeMap::new(), truncation: Truncation::Exact }
    }

    pub fn irreducible(lambda: Weight) -> IrrepSum {
        let mut s = IrrepSum::zero();
        s.coeffs.insert(lambda, QPoly::one());
        s
    }

    pub fn add_term(&mut self, lambda: Weight, e: i64, c: &Int) {
        if c.is_zero() || !self.truncation.admits(e) {
            return;
        }
        let p = self.coeffs.entry(lambda).or_insert_with(QPoly::zero);
        p.add_term(e, c);
        if p.is_zero() {
            self.coeffs.remove(&lambda);
        }
    }

    pub fn get(&self, lambda: &Weight) -> QPoly {
        self.coeffs.get(lambda).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn truncated(&self, n: i64) -> IrrepSum {
        let mut s = IrrepSum { coeffs: BTreeMap::new(), truncation: self.truncation.min(Truncation::At(n)) };
        for (w, p) in &self.coeffs {
            let p = p.clone().exact().truncated(n).exact();
            if !p.is_zero() {
                s.coeffs.insert(*w, p);
            }
        }
        s
    }

    /// `self += p · o`, respecting the truncation of `self`.
    pub fn add_product(&mut self, p: &QPoly, o: &IrrepSum) {
        for (w, a) in &o.coeffs {
            for (e1, c1) in p.terms() {
                for (e2, c2) in a.terms() {
                    self.add_term(*w, e1 + e2, &(c1 * c2));
                }
            }
        }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.values().filter_map(|p| p.min_degree()).min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.values().filter_map(|p| p.max_degree()).max()
    }

    /// Irreducible multiplicities at degree `m`.
    pub fn at_degree(&self, m: i64) -> Vec<(Weight, Int)> {
        self.coeffs.iter().map(|(w, p)| (*w, p.coeff(m))).filter(|(_, c)| !c.is_zero()).collect()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|p| p.is_nonnegative())
    }

    /// Replace every `V_λ` by its dual.
    pub fn dual(&self, rs: &RootSystem) -> IrrepSum {
        IrrepSum {
            coeffs: self.coeffs.iter().map(|(w, p)| (rs.dual(w), p.clone())).collect(),
            truncation: self.truncation,
        }
    }

    /// Slice-by-slice decomposition of a W-invariant character.
    pub fn from_character(rs: &RootSystem, f: &GradedCharacter) -> Result<IrrepSum> {
        if !f.is_w_invariant(rs) {
            return precondition("character is not W-invariant");
        }
        let mut s = IrrepSum { coeffs: BTreeMap::new(), truncation: f.truncation() };
        for (m, slice) in f.slices() {
            for (w, c) in rs.decompose_unchecked(&slice) {
                s.add_term(w, m, &c);
            }
        }
        Ok(s)
    }

    /// Expand back into weights.
    pub fn to_character(&self, rs: &RootSystem, level: i64) -> Result<GradedCharacter> {
        let mut terms: Vec<(Weight, i64, Int)> = Vec::new();
        for (lam, p) in &self.coeffs {
            let ch = rs.finite_irrep_char(lam)?;
            for (e, c) in p.terms() {
                for (w, _, m) in ch.terms() {
                    terms.push((w, e, m * c));
                }
            }
        }
        Ok(GradedCharacter::from_terms(rs.rank, level, self.truncation, Anchor::Shifted(0), terms))
    }
}
