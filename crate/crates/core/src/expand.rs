//! Triangular expansions in the module families, branching polynomials,
//! reciprocity and level-restricted Kostka polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::afweight::orbit_equiv;
use crate::cartan::Weight;
use crate::charring::{Anchor, GradedCharacter, Truncation};
use crate::coeff::Int;
use crate::demazure::{projective_gch, thin_gch, weyl_gch, Engine};
use crate::error::{precondition, Error, Result};
use crate::irrep::IrrepSum;
use crate::qpoly::QPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Finite irreducibles `V_λ`.
    Irreducible,
    /// Thin Demazure modules `D^(k)_λ`.
    Thin,
    /// Weyl modules `W^(k)_λ`.
    Weyl,
    /// Thick Weyl modules `𝕎^(k)_λ`.
    ThickWeyl,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::Irreducible => "V",
            Family::Thin => "D",
            Family::Weyl => "W",
            Family::ThickWeyl => "WW",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Basis {
    pub family: Family,
    pub level: i64,
    pub truncation: Truncation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpansionEntry {
    pub weight: Weight,
    pub poly: QPoly,
}

/// Coefficients of a character in a basis family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub basis: Basis,
    pub coeffs: BTreeMap<Weight, QPoly>,
}

#[derive(Serialize, Deserialize)]
struct ExpansionRepr {
    basis: Basis,
    coeffs: Vec<ExpansionEntry>,
}

impl Serialize for Expansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ExpansionRepr {
            basis: self.basis,
            coeffs: self.coeffs.iter().map(|(w, p)| ExpansionEntry { weight: *w, poly: p.clone() }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Expansion {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Expansion, D::Error> {
        let r = ExpansionRepr::deserialize(d)?;
        Ok(Expansion { basis: r.basis, coeffs: r.coeffs.into_iter().map(|e| (e.weight, e.poly)).collect() })
    }
}

impl Expansion {
    pub fn get(&self, w: &Weight) -> QPoly {
        self.coeffs.get(w).cloned().unwrap_or_else(QPoly::zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.values().all(|p| p.is_nonnegative())
    }
}

/// One disagreement found by [`Engine::corollary_num_verify`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub lambda: Weight,
    pub mu: Weight,
    pub level: i64,
    pub expected: QPoly,
    pub found: QPoly,
}

const PEEL_CAP: usize = 1_000_000;

impl Engine<'_> {
    fn basis_irreps(&self, basis: Family, level: i64, nu: &Weight, depth: i64) -> Result<Arc<IrrepSum>> {
        match basis {
            Family::Irreducible => Ok(Arc::new(IrrepSum::irreducible(*nu))),
            Family::Weyl => self.weyl_irreps(nu, level),
            Family::ThickWeyl => self.thick_irreps(nu, level, depth),
            Family::Thin => precondition("symmetric expansion needs a symmetric basis"),
        }
    }

    /// Peel a symmetric character, degree by degree, in a symmetric basis.
    ///
    /// With `n = None` the input must be exact and the peeling runs until the
    /// residual vanishes.
    pub fn expand_irreps(&self, f: &IrrepSum, basis: Family, level: i64, n: Option<i64>) -> Result<Expansion> {
        let mut residual = match n {
            Some(n) => f.truncated(n),
            None => f.clone(),
        };
        if n.is_none() && residual.truncation != Truncation::Exact {
            return precondition("an untruncated expansion needs an exact character");
        }
        let mut coeffs: BTreeMap<Weight, QPoly> = BTreeMap::new();
        let mut guard = 0usize;
        while let Some(m) = residual.min_degree() {
            if n.is_some_and(|n| m > n) {
                break;
            }
            if m < 0 {
                return precondition("expansion needs exponents ≥ 0");
            }
            for (nu, a) in residual.at_degree(m) {
                guard += 1;
                if guard > PEEL_CAP {
                    return Err(Error::Internal("expansion did not terminate".into()));
                }
                let depth = n.map_or(0, |n| n - m);
                let b = self.basis_irreps(basis, level, &nu, depth)?;
                let p = QPoly::monomial(m, a);
                coeffs.entry(nu).or_insert_with(QPoly::zero).add_term(m, &p.coeff(m));
                residual.add_product(&p.neg(), &b);
            }
        }
        coeffs.retain(|_, p| !p.is_zero());
        let truncation = n.map_or(Truncation::Exact, Truncation::At);
        if let Some(n) = n {
            for p in coeffs.values_mut() {
                *p = p.clone().truncated(n);
            }
        }
        Ok(Expansion { basis: Basis { family: basis, level, truncation }, coeffs })
    }

    /// `(W^(k)_μ : W^(k+1)_λ)_q` for every λ.
    pub fn branching(&self, mu: &Weight, k: i64) -> Result<Arc<BTreeMap<Weight, QPoly>>> {
        if let Some(v) = self.branch.lock().unwrap().get(&(*mu, k)) {
            return Ok(v.clone());
        }
        let f = self.weyl_irreps(mu, k)?;
        let e = self.expand_irreps(&f, Family::Weyl, k + 1, None)?;
        let v = Arc::new(e.coeffs);
        self.branch.lock().unwrap().insert((*mu, k), v.clone());
        Ok(v)
    }

    /// Expansion of `gch W^(k)_μ` in the `W^(k+1)` basis.
    pub fn branching_weyl(&self, mu: &Weight, k: i64) -> Result<Expansion> {
        let coeffs = (*self.branching(mu, k)?).clone();
        Ok(Expansion { basis: Basis { family: Family::Weyl, level: k + 1, truncation: Truncation::Exact }, coeffs })
    }

    pub fn expand_symmetric(
        &self,
        f: &GradedCharacter,
        basis: Family,
        level: i64,
        n: Option<i64>,
    ) -> Result<Expansion> {
        if f.min_exponent().is_some_and(|m| m < 0) {
            return precondition("expansion needs exponents ≥ 0");
        }
        let s = IrrepSum::from_character(self.rs, f)?;
        self.expand_irreps(&s, basis, level, n)
    }

    /// Expansion in the thin basis `D^(k)`, peeling a ⪯-maximal weight of the
    /// lowest slice each time.
    pub fn expand_thin(&self, f: &GradedCharacter, k: i64, n: i64) -> Result<Expansion> {
        self.expand_thin_with(f, k, n, |c| c)
    }

    /// As [`Engine::expand_thin`], with a hook choosing the scan order of each
    /// slice; ties among maximal candidates go to the first one scanned.
    ///
    /// `μ ≺ ν` forces `(−ht μ_−, −ht μ) < (−ht ν_−, −ht ν)` lexicographically,
    /// so a maximizer of that key is ⪯-maximal.
    pub fn expand_thin_with(
        &self,
        f: &GradedCharacter,
        k: i64,
        n: i64,
        order: impl Fn(Vec<Weight>) -> Vec<Weight>,
    ) -> Result<Expansion> {
        let rs = self.rs;
        if f.min_exponent().is_some_and(|m| m < 0) {
            return precondition("expansion needs exponents ≥ 0");
        }
        let mut residual: BTreeMap<i64, FxHashMap<Weight, Int>> = BTreeMap::new();
        for (w, e, c) in f.terms() {
            if e <= n {
                residual.entry(e).or_default().insert(w, c.clone());
            }
        }
        let key = |w: &Weight| (-rs.scaled_height(&rs.antidominant(w)), -rs.scaled_height(w));
        let mut thin: FxHashMap<Weight, Vec<(Weight, i64, Int)>> = FxHashMap::default();
        let mut coeffs: BTreeMap<Weight, QPoly> = BTreeMap::new();
        let mut guard = 0usize;
        while let Some(entry) = residual.first_entry() {
            if entry.get().is_empty() {
                entry.remove();
                continue;
            }
            let m = *entry.key();
            guard += 1;
            if guard > PEEL_CAP {
                return Err(Error::Internal("thin expansion did not terminate".into()));
            }
            let mut slice: Vec<Weight> = entry.get().keys().copied().collect();
            slice.sort();
            let mut top = None;
            for x in order(slice) {
                let kx = key(&x);
                if top.as_ref().is_none_or(|(kt, _)| kx > *kt) {
                    top = Some((kx, x));
                }
            }
            let top = top.expect("slice is nonempty").1;
            let a = entry.get()[&top].clone();
            let neg = -&a;
            if let std::collections::hash_map::Entry::Vacant(e) = thin.entry(top) {
                let t =
                    thin_gch(rs, &top, k)?.terms().filter(|t| t.1 <= n).map(|(w, e, c)| (w, e, c.clone())).collect();
                e.insert(t);
            }
            for (w, e, c) in &thin[&top] {
                if e + m > n {
                    continue;
                }
                let s = residual.entry(e + m).or_default();
                let v = s.entry(*w).or_default();
                *v += &(c * &neg);
                if v.is_zero() {
                    s.remove(w);
                }
            }
            if residual.get(&m).is_some_and(|s| s.contains_key(&top)) {
                return Err(Error::Internal(format!("thin basis element {top} is not unitriangular")));
            }
            coeffs.entry(top).or_insert_with(QPoly::zero).add_term(m, &a);
        }
        coeffs.retain(|_, p| !p.is_zero());
        Ok(Expansion { basis: Basis { family: Family::Thin, level: k, truncation: Truncation::At(n) }, coeffs })
    }

    /// Σ coeffs · basis characters, to the expansion's truncation.
    pub fn reconstruct(&self, e: &Expansion) -> Result<GradedCharacter> {
        let rs = self.rs;
        let n = e.basis.truncation.bound();
        let mut out = GradedCharacter::zero(rs.rank, 0).with_anchor(Anchor::Shifted(0));
        for (w, p) in &e.coeffs {
            for (m, c) in p.terms() {
                let b = match e.basis.family {
                    Family::Thin => thin_gch(rs, w, e.basis.level)?,
                    Family::Weyl => weyl_gch(rs, w, e.basis.level)?,
                    Family::Irreducible => rs.finite_irrep_char(w)?.normalize_at(0)?,
                    Family::ThickWeyl => self.thick_weyl_gch(w, e.basis.level, n.map_or(0, |n| n - m))?,
                };
                let mut b = b.with_level(0).shift(m);
                if let Some(n) = n {
                    b = b.truncate(n);
                }
                out = out.add_scaled(&b, c)?;
            }
        }
        Ok(match n {
            Some(n) => out.truncate(n),
            None => out,
        })
    }

    /// Compare branching coefficients with orbit shifts; returns mismatches.
    pub fn corollary_num_verify(&self, k: i64, lambdas: &[Weight], mus: &[Weight]) -> Result<Vec<Mismatch>> {
        let rs = self.rs;
        if k < 1 {
            return precondition("level must be ≥ 1");
        }
        let mut out = Vec::new();
        for mu in mus {
            let b = self.branching(mu, k)?;
            for lambda in lambdas {
                if !lambda.is_dominant() || rs.pair_theta_vee(lambda) >= k {
                    continue;
                }
                let expected = match orbit_equiv(rs, lambda, mu, k)? {
                    Some(m) => QPoly::monomial(m, Int::ONE),
                    None => QPoly::zero(),
                };
                let found = b.get(lambda).cloned().unwrap_or_else(QPoly::zero);
                if found != expected {
                    out.push(Mismatch { lambda: *lambda, mu: *mu, level: k, expected, found });
                }
            }
        }
        Ok(out)
    }

    /// `(P_λ : 𝕎^(k)_μ)_q` for every μ, to degree `n`.
    pub fn projective_in_thick(&self, lambda: &Weight, k: i64, n: i64) -> Result<Expansion> {
        let p = projective_gch(self.rs, lambda, 0, n)?;
        self.expand_symmetric(&p, Family::ThickWeyl, k, Some(n))
    }

    /// `(P_λ : 𝕎^(k)_μ)_q = [W^(k)_μ : V_λ]_q` to degree `n`.
    pub fn reciprocity_check(&self, lambda: &Weight, mu: &Weight, k: i64, n: i64) -> Result<bool> {
        let lhs = self.projective_in_thick(lambda, k, n)?.get(mu);
        let rhs = self.weyl_irreps(mu, k)?.get(lambda);
        Ok(lhs.agrees_to(&rhs, n))
    }

    /// Coefficients of `Π gch W^(l_i)_{λ_i}` in the `W^(k+1)` basis.
    pub fn kostka(&self, factors: &[(i64, Weight)], k: i64, n: Option<i64>) -> Result<BTreeMap<Weight, QPoly>> {
        let rs = self.rs;
        let mut prod: Option<GradedCharacter> = None;
        for (l, lam) in factors {
            if *l > k || *l < 1 {
                return precondition(format!("factor level {l} must lie in 1..={k}"));
            }
            let w = weyl_gch(rs, lam, *l)?;
            prod = Some(match prod {
                None => w,
                Some(p) => p.mul(&w)?,
            });
        }
        let prod = prod.unwrap_or_else(|| GradedCharacter::monomial(rs.zero(), 0, 0).normalize_at(0).unwrap());
        Ok(self.expand_symmetric(&prod, Family::Weyl, k + 1, n)?.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::RootSystem;

    fn w(c: &[i32]) -> Weight {
        Weight::new(c)
    }

    fn q(pairs: &[(i64, i64)]) -> QPoly {
        QPoly::from_pairs(pairs)
    }

    #[test]
    fn branching_rank_one() {
        let rs = RootSystem::parse("A", 1).unwrap();
        let eng = Engine::new(&rs);
        let b = eng.branching_weyl(&w(&[2]), 1).unwrap();
        assert_eq!(b.get(&w(&[2])), q(&[(0, 1)]));
        assert_eq!(b.get(&w(&[0])), q(&[(1, 1)]));
        let b = eng.branching_weyl(&w(&[4]), 1).unwrap();
        assert_eq!(b.get(&w(&[2])), q(&[(2, 1), (3, 1)]));
        assert_eq!(b.get(&w(&[0])), q(&[(4, 1)]));
        let b = eng.branching_weyl(&w(&[3]), 2).unwrap();
        assert_eq!(b.get(&w(&[1])), q(&[(1, 1)]));
        let b = eng.branching_weyl(&w(&[1]), 1).unwrap();
        assert_eq!(b.coeffs.len(), 1);
    }

    #[test]
    fn basis_element_expands_to_itself() {
        let rs = RootSystem::parse("A", 2).unwrap();
        let eng = Engine::new(&rs);
        let f = weyl_gch(&rs, &w(&[2, 1]), 1).unwrap();
        let e = eng.expand_symmetric(&f, Family::Weyl, 1, None).unwrap();
        assert_eq!(e.coeffs.len(), 1);
        assert_eq!(e.get(&w(&[2, 1])), QPoly::one());
    }

    #[test]
    fn thin_expansion_rank_one() {
        let rs = RootSystem::parse("A", 1).unwrap();
        let eng = Engine::new(&rs);
        let f = thin_gch(&rs, &w(&[-2]), 1).unwrap();
        let e = eng.expand_thin(&f, 2, 5).unwrap();
        assert_eq!(e.get(&w(&[-2])), QPoly::one());
        assert_eq!(e.get(&w(&[0])), q(&[(1, 1)]));
        assert_eq!(e.coeffs.len(), 2);
        let same = eng.expand_thin(&f, 1, 5).unwrap();
        assert_eq!(same.coeffs.len(), 1);
    }

    #[test]
    fn thin_expansion_is_order_independent() {
        let rs = RootSystem::parse("A", 2).unwrap();
        let eng = Engine::new(&rs);
        let f = thin_gch(&rs, &w(&[-1, -1]), 1).unwrap();
        let fwd = eng.expand_thin_with(&f, 2, 6, |v| v).unwrap();
        let rev = eng
            .expand_thin_with(&f, 2, 6, |mut v| {
                v.reverse();
                v
            })
            .unwrap();
        assert_eq!(fwd, rev);
        assert!(fwd.is_nonnegative());
    }

    #[test]
    fn reciprocity_small() {
        let rs = RootSystem::parse("A", 1).unwrap();
        let eng = Engine::new(&rs);
        assert!(eng.reciprocity_check(&w(&[0]), &w(&[0]), 1, 3).unwrap());
        assert!(eng.reciprocity_check(&w(&[0]), &w(&[2]), 1, 3).unwrap());
        assert!(eng.reciprocity_check(&w(&[2]), &w(&[2]), 2, 3).unwrap());
    }

    #[test]
    fn kostka_single_factor() {
        let rs = RootSystem::parse("A", 1).unwrap();
        let eng = Engine::new(&rs);
        let k = eng.kostka(&[(1, w(&[2]))], 1, None).unwrap();
        assert_eq!(k.get(&w(&[2])), Some(&QPoly::one()));
        assert_eq!(k.get(&w(&[0])), Some(&q(&[(1, 1)])));
        assert!(eng.kostka(&[(2, w(&[2]))], 1, None).is_err());
    }
}
