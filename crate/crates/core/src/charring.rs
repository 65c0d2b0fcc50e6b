//! Sparse graded characters `Σ c · q^m e^λ` and the operators acting on them.

use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use crate::afweight::AffineWeight;
use crate::cartan::{RootSystem, Weight};
use crate::coeff::Int;
use crate::error::{precondition, Error, Result};

/// A finite (ungraded) character.
pub type FinChar = FxHashMap<Weight, Int>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Truncation {
    Exact,
    /// Coefficients at exponents above the bound are unspecified.
    At(i64),
}

impl Truncation {
    pub fn bound(&self) -> Option<i64> {
        match self {
            Truncation::Exact => None,
            Truncation::At(n) => Some(*n),
        }
    }

    pub fn min(self, o: Truncation) -> Truncation {
        match (self, o) {
            (Truncation::Exact, t) | (t, Truncation::Exact) => t,
            (Truncation::At(a), Truncation::At(b)) => Truncation::At(a.min(b)),
        }
    }

    pub fn admits(&self, e: i64) -> bool {
        self.bound().is_none_or(|n| e <= n)
    }
}

/// How stored exponents relate to δ-coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Anchor {
    /// exponent = δ-coordinate.
    Raw,
    /// exponent = δ-coordinate − base.
    Shifted(i64),
    /// exponent = top − δ-coordinate.
    Depth(i64),
}

impl Anchor {
    fn raw(&self, e: i64) -> i64 {
        match self {
            Anchor::Raw => e,
            Anchor::Shifted(b) => e + b,
            Anchor::Depth(t) => t - e,
        }
    }

    fn exponent(&self, d: i64) -> i64 {
        match self {
            Anchor::Raw => d,
            Anchor::Shifted(b) => d - b,
            Anchor::Depth(t) => t - d,
        }
    }

    /// Exponent change when the δ-coordinate rises by one.
    fn step(&self) -> i32 {
        match self {
            Anchor::Depth(_) => -1,
            _ => 1,
        }
    }

    fn is_normalized(&self) -> bool {
        !matches!(self, Anchor::Raw)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCharacter {
    terms: FxHashMap<(Weight, i32), Int>,
    rank: usize,
    level: i64,
    truncation: Truncation,
    anchor: Anchor,
}

impl GradedCharacter {
    pub fn zero(rank: usize, level: i64) -> GradedCharacter {
        GradedCharacter { terms: FxHashMap::default(), rank, level, truncation: Truncation::Exact, anchor: Anchor::Raw }
    }

    /// `q^m e^λ` at the given level with raw exponents.
    pub fn monomial(lambda: Weight, m: i64, level: i64) -> GradedCharacter {
        let mut f = GradedCharacter::zero(lambda.rank(), level);
        f.terms.insert((lambda, m as i32), Int::ONE);
        f
    }

    pub fn from_affine(mu: &AffineWeight) -> GradedCharacter {
        GradedCharacter::monomial(mu.finite, mu.delta, mu.level)
    }

    /// A finite character placed at exponent `m`.
    pub fn from_finite(rank: usize, level: i64, f: &FinChar, m: i64) -> GradedCharacter {
        let mut g = GradedCharacter::zero(rank, level);
        for (w, c) in f {
            if !c.is_zero() {
                g.terms.insert((*w, m as i32), c.clone());
            }
        }
        g
    }

    pub fn from_terms(
        rank: usize,
        level: i64,
        truncation: Truncation,
        anchor: Anchor,
        terms: impl IntoIterator<Item = (Weight, i64, Int)>,
    ) -> GradedCharacter {
        let mut g = GradedCharacter { terms: FxHashMap::default(), rank, level, truncation, anchor };
        for (w, e, c) in terms {
            if truncation.admits(e) {
                g.add_term(w, e, &c);
            }
        }
        g
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn truncation(&self) -> Truncation {
        self.truncation
    }

    pub fn anchor(&self) -> Anchor {
        self.anchor
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Weight, i64, &Int)> {
        self.terms.iter().map(|((w, e), c)| (*w, *e as i64, c))
    }

    pub fn coeff(&self, w: &Weight, e: i64) -> Int {
        self.terms.get(&(*w, e as i32)).cloned().unwrap_or_default()
    }

    pub fn with_level(mut self, level: i64) -> GradedCharacter {
        self.level = level;
        self
    }

    pub fn with_anchor(mut self, anchor: Anchor) -> GradedCharacter {
        self.anchor = anchor;
        self
    }

    pub(crate) fn add_term(&mut self, w: Weight, e: i64, c: &Int) {
        if c.is_zero() {
            return;
        }
        let k = (w, e as i32);
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.1 as i64).min()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().map(|k| k.1 as i64).max()
    }

    /// Finite character at exponent `m`.
    pub fn slice(&self, m: i64) -> FinChar {
        self.terms.iter().filter(|(k, _)| k.1 as i64 == m).map(|(k, c)| (k.0, c.clone())).collect()
    }

    /// All slices, keyed by exponent.
    pub fn slices(&self) -> BTreeMap<i64, FinChar> {
        let mut out: BTreeMap<i64, FinChar> = BTreeMap::new();
        for ((w, e), c) in &self.terms {
            out.entry(*e as i64).or_default().insert(*w, c.clone());
        }
        out
    }

    /// Drop everything above `n` and mark the result truncated.
    pub fn truncate(&self, n: i64) -> GradedCharacter {
        let mut g = self.clone();
        g.terms.retain(|k, _| k.1 as i64 <= n);
        g.truncation = g.truncation.min(Truncation::At(n));
        g
    }

    fn check_compatible(&self, o: &GradedCharacter) -> Result<()> {
        if self.level != o.level {
            return Err(Error::LevelMismatch(self.level, o.level));
        }
        if self.anchor != o.anchor && !(self.is_empty() || o.is_empty()) {
            return Err(Error::AnchorMismatch(format!("{:?} vs {:?}", self.anchor, o.anchor)));
        }
        Ok(())
    }

    pub fn add(&self, o: &GradedCharacter) -> Result<GradedCharacter> {
        self.add_scaled(o, &Int::ONE)
    }

    pub fn sub(&self, o: &GradedCharacter) -> Result<GradedCharacter> {
        self.add_scaled(o, &Int::from(-1i64))
    }

    /// `self + s · o`.
    pub fn add_scaled(&self, o: &GradedCharacter, s: &Int) -> Result<GradedCharacter> {
        self.check_compatible(o)?;
        let mut g = self.clone();
        if self.is_empty() {
            g.anchor = o.anchor;
        }
        g.truncation = self.truncation.min(o.truncation);
        for ((w, e), c) in &o.terms {
            g.add_term(*w, *e as i64, &(c * s));
        }
        if let Some(n) = g.truncation.bound() {
            g.terms.retain(|k, _| k.1 as i64 <= n);
        }
        Ok(g)
    }

    pub fn scale(&self, s: &Int) -> GradedCharacter {
        let mut g = self.clone();
        if s.is_zero() {
            g.terms.clear();
            return g;
        }
        for c in g.terms.values_mut() {
            *c = &*c * s;
        }
        g
    }

    /// Multiply by `q^m`.
    pub fn shift(&self, m: i64) -> GradedCharacter {
        let mut g = self.clone();
        g.terms = self.terms.iter().map(|((w, e), c)| ((*w, e + m as i32), c.clone())).collect();
        if let Some(n) = g.truncation.bound() {
            g.truncation = Truncation::At(n + m);
        }
        g
    }

    pub fn mul(&self, o: &GradedCharacter) -> Result<GradedCharacter> {
        let truncated = self.truncation != Truncation::Exact || o.truncation != Truncation::Exact;
        let anchor = match (self.anchor, o.anchor) {
            (Anchor::Raw, Anchor::Raw) if !truncated => Anchor::Raw,
            (Anchor::Shifted(a), Anchor::Shifted(b)) => Anchor::Shifted(a + b),
            (Anchor::Depth(a), Anchor::Depth(b)) => Anchor::Depth(a + b),
            (a, b) => {
                return Err(Error::AnchorMismatch(format!(
                    "product of {a:?} and {b:?} characters (truncated products need matching normalized anchors)"
                )))
            }
        };
        if truncated && (self.min_exponent().unwrap_or(0) < 0 || o.min_exponent().unwrap_or(0) < 0) {
            return Err(Error::Truncation("truncated product with negative exponents".into()));
        }
        let truncation = self.truncation.min(o.truncation);
        let mut g = GradedCharacter {
            terms: FxHashMap::default(),
            rank: self.rank,
            level: self.level + o.level,
            truncation,
            anchor,
        };
        for ((w1, e1), c1) in &self.terms {
            for ((w2, e2), c2) in &o.terms {
                let e = *e1 as i64 + *e2 as i64;
                if truncation.admits(e) {
                    g.add_term(w1.add(w2), e, &(c1 * c2));
                }
            }
        }
        Ok(g)
    }

    /// Negate finite weights, keep exponents.
    pub fn flip(&self) -> GradedCharacter {
        let mut g = self.clone();
        g.terms = self.terms.iter().map(|((w, e), c)| ((w.neg(), *e), c.clone())).collect();
        g
    }

    /// Re-express raw exponents relative to `base`.
    pub fn normalize_at(&self, base: i64) -> Result<GradedCharacter> {
        if self.anchor != Anchor::Raw {
            return precondition("normalize_at expects raw exponents");
        }
        let mut g = self.clone();
        if base != 0 {
            g.terms = self.terms.iter().map(|((w, e), c)| ((*w, e - base as i32), c.clone())).collect();
        }
        if let Some(n) = g.truncation.bound() {
            g.truncation = Truncation::At(n - base);
        }
        g.anchor = Anchor::Shifted(base);
        Ok(g)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    pub fn is_w_invariant(&self, rs: &RootSystem) -> bool {
        self.terms.iter().all(|((w, e), c)| (1..=rs.rank).all(|i| self.terms.get(&(rs.reflect(i, w), *e)) == Some(c)))
    }

    /// Terms sorted by (exponent, weight).
    pub fn sorted_terms(&self) -> Vec<(Weight, i64, Int)> {
        let mut v: Vec<(Weight, i64, Int)> = self.terms.iter().map(|((w, e), c)| (*w, *e as i64, c.clone())).collect();
        v.sort_by_key(|a| (a.1, a.0));
        v
    }

    /// Coefficientwise `self ≤ o`.
    pub fn dominated_by(&self, o: &GradedCharacter) -> bool {
        let keys = self.terms.keys().chain(o.terms.keys());
        keys.into_iter().all(|k| {
            let a = self.terms.get(k).cloned().unwrap_or_default();
            let b = o.terms.get(k).cloned().unwrap_or_default();
            a <= b
        })
    }
}

/// Demazure operator π_i (`i = 0` is the affine node).
///
/// Monomials are grouped into α_i-strings and each contribution is an
/// interval on its string, so the cost is linear in input plus output.
pub fn demazure_op(rs: &RootSystem, i: usize, f: &GradedCharacter) -> Result<GradedCharacter> {
    if i > rs.rank {
        return precondition(format!("node {i} out of range"));
    }
    if i == 0 && f.truncation != Truncation::Exact {
        return Err(Error::Truncation("the affine Demazure operator needs an exact (untruncated) character".into()));
    }
    let step = f.anchor.step();
    let (dir, exp_step) = if i == 0 { (rs.theta.neg(), step) } else { (rs.simple_root(i), 0) };

    // (base weight, base exponent, parity r, index t, coefficient)
    let mut entries: Vec<((Weight, i32), i32, i32, &Int)> = Vec::with_capacity(f.terms.len());
    for ((w, e), c) in &f.terms {
        let p = if i == 0 { f.level - rs.pair_theta_vee(w) } else { w.at(i) as i64 } as i32;
        let t = p.div_euclid(2);
        let r = p - 2 * t;
        let base = (w.scaled_add(-t, &dir), e - t * exp_step);
        entries.push((base, r, t, c));
    }
    entries.sort_unstable_by_key(|a| (a.0, a.2));

    let mut out: FxHashMap<(Weight, i32), Int> = FxHashMap::default();
    out.reserve(f.terms.len());
    let mut events: Vec<(i32, Int)> = Vec::new();
    let mut k = 0;
    while k < entries.len() {
        let key = entries[k].0;
        let r = entries[k].1;
        events.clear();
        while k < entries.len() && entries[k].0 == key {
            let (_, _, t, c) = entries[k];
            let p = r + 2 * t;
            if p >= 0 {
                events.push((-t - r, c.clone()));
                events.push((t + 1, -c));
            } else if p <= -2 {
                events.push((t + 1, -c));
                events.push((-t - r, c.clone()));
            }
            k += 1;
        }
        events.sort_unstable_by_key(|e| e.0);
        let mut acc = Int::ZERO;
        let mut j = 0;
        while j < events.len() {
            let pos = events[j].0;
            while j < events.len() && events[j].0 == pos {
                acc += &events[j].1;
                j += 1;
            }
            if acc.is_zero() || j == events.len() {
                continue;
            }
            for s in pos..events[j].0 {
                let w = key.0.scaled_add(s, &dir);
                out.insert((w, key.1 + s * exp_step), acc.clone());
            }
        }
    }
    Ok(GradedCharacter { terms: out, ..f.clone_header() })
}

impl GradedCharacter {
    fn clone_header(&self) -> GradedCharacter {
        GradedCharacter {
            terms: FxHashMap::default(),
            rank: self.rank,
            level: self.level,
            truncation: self.truncation,
            anchor: self.anchor,
        }
    }
}

/// `π_{i_1} ∘ ⋯ ∘ π_{i_l}` applied to `f` (the last letter acts first).
pub fn apply_word(rs: &RootSystem, word: &[usize], f: &GradedCharacter) -> Result<GradedCharacter> {
    let mut g = f.clone();
    for &i in word.iter().rev() {
        g = demazure_op(rs, i, &g)?;
    }
    Ok(g)
}

/// Apply finite π_i until nothing changes.
pub fn symmetrize(rs: &RootSystem, f: &GradedCharacter) -> Result<GradedCharacter> {
    let mut g = f.clone();
    loop {
        let mut changed = false;
        for i in 1..=rs.rank {
            let h = demazure_op(rs, i, &g)?;
            if h != g {
                changed = true;
                g = h;
            }
        }
        if !changed {
            return Ok(g);
        }
    }
}

const SATURATE_SWEEP_CAP: usize = 10_000;

/// Character of L(Λ) down to depth `n`, exponent = depth below Λ.
///
/// Exact sweeps π_0, π_1, …, π_ℓ are applied to `e^Λ` until the depth-≤n
/// window is unchanged by a whole sweep.
pub fn saturate(rs: &RootSystem, lambda: &AffineWeight, n: i64) -> Result<GradedCharacter> {
    if lambda.level < 1 {
        return precondition("saturation needs level ≥ 1");
    }
    if !lambda.is_dominant(rs) {
        return precondition(format!("{lambda} is not dominant"));
    }
    if n < 0 {
        return precondition("depth bound must be ≥ 0");
    }
    let top = lambda.delta;
    let window = |f: &GradedCharacter| -> GradedCharacter {
        let mut g = f.clone();
        g.terms.retain(|k, _| top - k.1 as i64 <= n);
        g
    };
    let mut f = GradedCharacter::from_affine(lambda);
    let mut prev = window(&f);
    for _ in 0..SATURATE_SWEEP_CAP {
        for i in 0..=rs.rank {
            f = demazure_op(rs, i, &f)?;
        }
        let cur = window(&f);
        if cur == prev {
            let mut out = cur;
            out.terms = out.terms.into_iter().map(|((w, e), c)| ((w, (top - e as i64) as i32), c)).collect();
            out.anchor = Anchor::Depth(top);
            out.truncation = Truncation::At(n);
            return Ok(out);
        }
        prev = cur;
    }
    Err(Error::Internal("saturation did not stabilize".into()))
}

/// δ-coordinate of a stored exponent.
pub fn raw_delta(f: &GradedCharacter, e: i64) -> i64 {
    f.anchor.raw(e)
}

/// Stored exponent for a δ-coordinate.
pub fn exponent_of(f: &GradedCharacter, d: i64) -> i64 {
    f.anchor.exponent(d)
}

pub fn is_normalized(f: &GradedCharacter) -> bool {
    f.anchor.is_normalized()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::RootSystem;

    fn w(c: &[i32]) -> Weight {
        Weight::new(c)
    }

    fn naive_demazure(rs: &RootSystem, i: usize, f: &GradedCharacter) -> GradedCharacter {
        let mut g = GradedCharacter::zero(f.rank(), f.level()).with_anchor(f.anchor());
        let step = f.anchor().step() as i64;
        for (wt, e, c) in f.terms() {
            let (p, dir, de) = if i == 0 {
                (f.level() - rs.pair_theta_vee(&wt), rs.theta.neg(), step)
            } else {
                (wt.at(i) as i64, rs.simple_root(i), 0)
            };
            if p >= 0 {
                for j in 0..=p {
                    g.add_term(wt.scaled_add(-(j as i32), &dir), e - j * de, c);
                }
            } else if p <= -2 {
                for j in 1..=(-p - 1) {
                    g.add_term(wt.scaled_add(j as i32, &dir), e + j * de, &-c);
                }
            }
        }
        g
    }

    #[test]
    fn affine_string_on_basic_weight() {
        let a1 = RootSystem::parse("A", 1).unwrap();
        let f = GradedCharacter::monomial(w(&[0]), 0, 1);
        let g = demazure_op(&a1, 0, &f).unwrap();
        assert_eq!(g.sorted_terms(), vec![(w(&[2]), -1, Int::ONE), (w(&[0]), 0, Int::ONE)]);
    }

    #[test]
    fn empty_string_and_finite_string() {
        let a1 = RootSystem::parse("A", 1).unwrap();
        let f = GradedCharacter::monomial(w(&[-1]), 0, 0);
        assert!(demazure_op(&a1, 1, &f).unwrap().is_empty());
        let g = demazure_op(&a1, 1, &GradedCharacter::monomial(w(&[2]), 0, 0)).unwrap();
        assert_eq!(g.len(), 3);
    }

    #[test]
    fn interval_sweep_matches_string_formula() {
        let a2 = RootSystem::parse("A", 2).unwrap();
        let mut f = GradedCharacter::zero(2, 2);
        let pts = [([3, -1], 0, 2i64), ([-4, 2], 1, -3), ([1, 1], -2, 5), ([-2, -2], 0, 1), ([0, 3], 0, 7)];
        for (c, e, k) in pts {
            f.add_term(w(&c), e, &Int::from(k));
        }
        for i in 0..=2 {
            assert_eq!(demazure_op(&a2, i, &f).unwrap(), naive_demazure(&a2, i, &f), "node {i}");
        }
    }

    #[test]
    fn symmetrize_generator() {
        let a1 = RootSystem::parse("A", 1).unwrap();
        let s = symmetrize(&a1, &GradedCharacter::monomial(w(&[2]), 0, 0)).unwrap();
        assert_eq!(s, a1.finite_irrep_char(&w(&[2])).unwrap());
        assert_eq!(symmetrize(&a1, &s).unwrap(), s);
        let s = symmetrize(&a1, &GradedCharacter::monomial(w(&[-2]), 0, 0)).unwrap();
        assert_eq!(s.sorted_terms(), vec![(w(&[0]), 0, Int::from(-1i64))]);
        assert!(symmetrize(&a1, &GradedCharacter::zero(1, 0)).unwrap().is_empty());
    }

    #[test]
    fn products() {
        let a1 = RootSystem::parse("A", 1).unwrap();
        let v2 = a1.finite_irrep_char(&w(&[2])).unwrap();
        assert_eq!(v2.mul(&v2).unwrap().coeff(&w(&[0]), 0), Int::from(3i64));
        let a = GradedCharacter::monomial(w(&[1]), 0, 0);
        let b = GradedCharacter::monomial(w(&[3]), 0, 0);
        assert_eq!(a.mul(&b).unwrap(), GradedCharacter::monomial(w(&[4]), 0, 0));
        let z = GradedCharacter::zero(1, 0);
        assert_eq!(v2.add(&z).unwrap(), v2);
    }

    #[test]
    fn mismatched_levels_rejected() {
        let a = GradedCharacter::monomial(w(&[1]), 0, 1);
        let b = GradedCharacter::monomial(w(&[1]), 0, 2);
        assert!(matches!(a.add(&b), Err(Error::LevelMismatch(1, 2))));
    }

    #[test]
    fn truncated_raw_product_rejected() {
        let a = GradedCharacter::monomial(w(&[1]), 0, 1).truncate(3);
        assert!(a.mul(&a).is_err());
        let n = a.clone().with_anchor(Anchor::Shifted(0));
        assert!(n.mul(&n).is_ok());
    }

    #[test]
    fn affine_op_rejects_truncated() {
        let a1 = RootSystem::parse("A", 1).unwrap();
        let f = GradedCharacter::monomial(w(&[0]), 0, 1).truncate(2);
        assert!(demazure_op(&a1, 0, &f).is_err());
        assert!(demazure_op(&a1, 1, &f).is_ok());
    }

    #[test]
    fn flip_and_normalize() {
        let f = GradedCharacter::monomial(w(&[3, -1]), 2, 1);
        assert_eq!(f.flip().sorted_terms(), vec![(w(&[-3, 1]), 2, Int::ONE)]);
        assert_eq!(f.flip().flip(), f);
        let n = f.normalize_at(0).unwrap();
        assert_eq!(n.anchor(), Anchor::Shifted(0));
        assert!(n.normalize_at(0).is_err());
        let m = GradedCharacter::monomial(w(&[1, 1]), 5, 1).normalize_at(5).unwrap();
        assert_eq!(m.sorted_terms(), vec![(w(&[1, 1]), 0, Int::ONE)]);
    }

    #[test]
    fn saturate_basic_representation() {
        let a1 = RootSystem::parse("A", 1).unwrap();
        let l0 = AffineWeight::new(w(&[0]), 1, 0);
        let top = saturate(&a1, &l0, 0).unwrap();
        assert_eq!(top.sorted_terms(), vec![(w(&[0]), 0, Int::ONE)]);
        let s = saturate(&a1, &l0, 1).unwrap();
        let d1 = s.slice(1);
        assert_eq!(d1.len(), 3);
        assert!(d1.values().all(|c| *c == Int::ONE));
        assert!(saturate(&a1, &AffineWeight::new(w(&[2]), 1, 0), 2).is_err());
    }
}
