//! Affine weights, the affine Weyl group action and the Cherednik order.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cartan::{RootSystem, Weight};
use crate::error::{precondition, Result};

/// `λ + kΛ_0 + nδ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineWeight {
    pub finite: Weight,
    pub level: i64,
    pub delta: i64,
}

impl AffineWeight {
    pub fn new(finite: Weight, level: i64, delta: i64) -> AffineWeight {
        AffineWeight { finite, level, delta }
    }

    pub fn is_dominant(&self, rs: &RootSystem) -> bool {
        (0..=rs.rank).all(|i| affine_pairing(rs, i, self) >= 0)
    }
}

impl fmt::Display for AffineWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}Λ0 + {}δ", self.finite, self.level, self.delta)
    }
}

/// Letters `i_1 … i_l` of `w = s_{i_1} ⋯ s_{i_l}`.
pub type ReducedWord = Vec<usize>;

/// `⟨α_i∨, μ⟩`.
pub fn affine_pairing(rs: &RootSystem, i: usize, mu: &AffineWeight) -> i64 {
    if i == 0 {
        mu.level - rs.pair_theta_vee(&mu.finite)
    } else {
        mu.finite.at(i) as i64
    }
}

pub fn affine_reflect(rs: &RootSystem, i: usize, mu: &AffineWeight) -> AffineWeight {
    if i == 0 {
        let c = affine_pairing(rs, 0, mu);
        AffineWeight { finite: mu.finite.scaled_add(c as i32, &rs.theta), level: mu.level, delta: mu.delta - c }
    } else {
        AffineWeight { finite: rs.reflect(i, &mu.finite), ..*mu }
    }
}

/// Dominant representative `Λ` and a reduced word with `μ = wΛ`.
///
/// The smallest index with a negative pairing is reflected first, so the
/// word lists reflections in the order they were applied to `μ`.
pub fn to_dominant_affine(rs: &RootSystem, mu: &AffineWeight) -> Result<(AffineWeight, ReducedWord)> {
    if mu.level < 1 {
        return precondition(format!("level {} < 1 has no dominant representative", mu.level));
    }
    let mut cur = *mu;
    let mut word = Vec::new();
    while let Some(i) = (0..=rs.rank).find(|&i| affine_pairing(rs, i, &cur) < 0) {
        cur = affine_reflect(rs, i, &cur);
        word.push(i);
    }
    Ok((cur, word))
}

/// `w · μ` for the word `i_1 … i_l` (the last letter acts first).
pub fn act(rs: &RootSystem, word: &[usize], mu: &AffineWeight) -> AffineWeight {
    word.iter().rev().fold(*mu, |m, &i| affine_reflect(rs, i, &m))
}

/// Cherednik order `λ ⪯ μ`.
pub fn cherednik_leq(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> bool {
    let lm = rs.antidominant(lambda);
    let mm = rs.antidominant(mu);
    if lm != mm {
        rs.in_positive_cone(&lm.sub(&mm))
    } else {
        rs.in_positive_cone(&lambda.sub(mu))
    }
}

/// `μ ∈ Σ(λ)`.
pub fn sigma_contains(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> bool {
    cherednik_leq(rs, mu, lambda)
}

/// Every element of Σ(λ).
pub fn sigma_set(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let top = rs.dominant(lambda);
    let mut out: Vec<Weight> = rs
        .dominant_weights_below(&top)
        .iter()
        .flat_map(|nu| rs.orbit(nu))
        .filter(|nu| sigma_contains(rs, lambda, nu))
        .collect();
    out.sort();
    out
}

/// Independent membership test through the convex hull of Σ(λ) intersected
/// with the coset `λ + Q`. Ranks 1 and 2 only.
pub fn sigma_contains_hull(rs: &RootSystem, lambda: &Weight, mu: &Weight) -> Result<bool> {
    if rs.rank > 2 {
        return precondition("hull membership is implemented for rank ≤ 2");
    }
    if !rs.in_root_lattice(&mu.sub(lambda)) {
        return Ok(false);
    }
    let pts = sigma_set(rs, lambda);
    // Work in simple-root coordinates scaled by det, which is an affine image.
    let to_xy = |w: &Weight| -> (i64, i64) {
        let scaled: Vec<i32> = w.coords().iter().map(|x| x * rs.det() as i32).collect();
        let v = rs.root_coords(&Weight::new(&scaled)).expect("det·P ⊂ Q");
        (v[0], if rs.rank == 2 { v[1] } else { 0 })
    };
    let p = to_xy(mu);
    let xy: Vec<(i64, i64)> = pts.iter().map(to_xy).collect();
    if rs.rank == 1 {
        let lo = xy.iter().map(|q| q.0).min().unwrap();
        let hi = xy.iter().map(|q| q.0).max().unwrap();
        return Ok(lo <= p.0 && p.0 <= hi);
    }
    let hull = convex_hull(xy);
    Ok(in_hull(&hull, p))
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn in_hull(hull: &[(i64, i64)], p: (i64, i64)) -> bool {
    match hull.len() {
        0 => false,
        1 => hull[0] == p,
        2 => {
            let (a, b) = (hull[0], hull[1]);
            cross(a, b, p) == 0
                && (a.0.min(b.0)..=a.0.max(b.0)).contains(&p.0)
                && (a.1.min(b.1)..=a.1.max(b.1)).contains(&p.1)
        }
        n => (0..n).all(|k| cross(hull[k], hull[(k + 1) % n], p) >= 0),
    }
}

/// The shift `m` with `μ + kΛ_0 − mδ ∈ W_af(λ + kΛ_0)`, if any.
pub fn orbit_equiv(rs: &RootSystem, lambda: &Weight, mu: &Weight, k: i64) -> Result<Option<i64>> {
    if k < 1 {
        return precondition("level must be ≥ 1");
    }
    if !lambda.is_dominant() || rs.pair_theta_vee(lambda) > k {
        return precondition(format!("{lambda} is not dominant of level ≤ {k}"));
    }
    let (dom, _) = to_dominant_affine(rs, &AffineWeight::new(*mu, k, 0))?;
    Ok((dom.finite == *lambda).then_some(dom.delta))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(c: &[i32]) -> Weight {
        Weight::new(c)
    }

    #[test]
    fn pairings() {
        let a1 = RootSystem::parse("A", 1).unwrap();
        assert_eq!(affine_pairing(&a1, 0, &AffineWeight::new(w(&[0]), 3, 0)), 3);
        assert_eq!(affine_pairing(&a1, 0, &AffineWeight::new(w(&[2]), 1, 0)), -1);
        assert_eq!(affine_pairing(&a1, 0, &AffineWeight::new(w(&[4]), 2, 0)), -2);
    }

    #[test]
    fn affine_reflections() {
        let a1 = RootSystem::parse("A", 1).unwrap();
        let r = affine_reflect(&a1, 0, &AffineWeight::new(w(&[0]), 1, 0));
        assert_eq!(r, AffineWeight::new(w(&[2]), 1, -1));
        let r = affine_reflect(&a1, 0, &AffineWeight::new(w(&[4]), 1, 0));
        assert_eq!(r, AffineWeight::new(w(&[-2]), 1, 3));
        let fixed = AffineWeight::new(w(&[2]), 2, 5);
        assert_eq!(affine_reflect(&a1, 0, &fixed), fixed);
    }

    #[test]
    fn dominance_in_rank_one() {
        let a1 = RootSystem::parse("A", 1).unwrap();
        let mu = AffineWeight::new(w(&[-2]), 1, 0);
        let (dom, word) = to_dominant_affine(&a1, &mu).unwrap();
        assert_eq!(dom, AffineWeight::new(w(&[0]), 1, 1));
        assert_eq!(word, vec![1, 0]);
        assert_eq!(act(&a1, &word, &dom), mu);

        let mu = AffineWeight::new(w(&[4]), 1, 0);
        let (dom, word) = to_dominant_affine(&a1, &mu).unwrap();
        assert_eq!(dom, AffineWeight::new(w(&[0]), 1, 4));
        assert_eq!(word, vec![0, 1, 0]);
        assert_eq!(act(&a1, &word, &dom), mu);

        let d = AffineWeight::new(w(&[1]), 2, 0);
        assert_eq!(to_dominant_affine(&a1, &d).unwrap(), (d, vec![]));
        assert!(to_dominant_affine(&a1, &AffineWeight::new(w(&[2]), 0, 0)).is_err());
    }

    #[test]
    fn cherednik_examples() {
        let a1 = RootSystem::parse("A", 1).unwrap();
        assert!(cherednik_leq(&a1, &w(&[3]), &w(&[3])));
        assert!(cherednik_leq(&a1, &w(&[0]), &w(&[2])));
        assert!(cherednik_leq(&a1, &w(&[2]), &w(&[-2])));
        assert!(!cherednik_leq(&a1, &w(&[-2]), &w(&[2])));
        assert!(!cherednik_leq(&a1, &w(&[1]), &w(&[2])));
    }

    #[test]
    fn sigma_sets() {
        let a1 = RootSystem::parse("A", 1).unwrap();
        assert_eq!(sigma_set(&a1, &w(&[2])), vec![w(&[0]), w(&[2])]);
        assert_eq!(sigma_set(&a1, &w(&[-2])), vec![w(&[-2]), w(&[0]), w(&[2])]);
        let a2 = RootSystem::parse("A", 2).unwrap();
        assert_eq!(sigma_set(&a2, &w(&[1, 0])), vec![w(&[1, 0])]);
        assert_eq!(sigma_set(&a2, &w(&[0, -1])), vec![w(&[-1, 1]), w(&[0, -1]), w(&[1, 0])]);
    }

    #[test]
    fn orbit_shifts() {
        let a1 = RootSystem::parse("A", 1).unwrap();
        assert_eq!(orbit_equiv(&a1, &w(&[0]), &w(&[4]), 1).unwrap(), Some(4));
        assert_eq!(orbit_equiv(&a1, &w(&[0]), &w(&[6]), 1).unwrap(), Some(9));
        assert_eq!(orbit_equiv(&a1, &w(&[1]), &w(&[1]), 2).unwrap(), Some(0));
        assert_eq!(orbit_equiv(&a1, &w(&[1]), &w(&[4]), 2).unwrap(), None);
        assert!(orbit_equiv(&a1, &w(&[3]), &w(&[3]), 2).is_err());
    }
}
