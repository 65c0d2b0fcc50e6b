//! Independent reference computations used only for verification.

use rustc_hash::FxHashMap;

use crate::afweight::{affine_pairing, affine_reflect, AffineWeight};
use crate::cartan::{RootSystem, Weight};
use crate::charring::{saturate, Anchor, FinChar, GradedCharacter, Truncation};
use crate::coeff::Int;
use crate::demazure::RootMultiplicityTable;
use crate::error::{precondition, Result};

/// Weight multiplicities of `V_λ` by Freudenthal's recursion.
pub fn freudenthal(rs: &RootSystem, lambda: &Weight) -> Result<FinChar> {
    if !lambda.is_dominant() {
        return precondition(format!("{lambda} is not dominant"));
    }
    let mut doms = rs.dominant_weights_below(lambda);
    doms.sort_by_key(|mu| rs.height(&lambda.sub(mu)).unwrap_or(0));
    let rho = rs.rho();
    let lr = lambda.add(&rho);
    let top = rs.scaled_dot(&lr, &lr);
    let mut mult: FxHashMap<Weight, Int> = FxHashMap::default();
    for mu in doms {
        if mu == *lambda {
            mult.insert(mu, Int::ONE);
            continue;
        }
        let mr = mu.add(&rho);
        let den = top - rs.scaled_dot(&mr, &mr);
        let mut num = Int::ZERO;
        for alpha in &rs.positive_roots {
            let mut j = 1;
            loop {
                let nu = mu.scaled_add(j, &alpha.weight);
                let m = match mult.get(&rs.dominant(&nu)) {
                    Some(m) => m.clone(),
                    None => break,
                };
                num += &m.mul_i64(2 * rs.scaled_dot(&nu, &alpha.weight));
                j += 1;
            }
        }
        let m = num.div_exact(den);
        if !m.is_zero() {
            mult.insert(mu, m);
        }
    }
    let mut out = FinChar::default();
    for (mu, m) in mult {
        for nu in rs.orbit(&mu) {
            out.insert(nu, m.clone());
        }
    }
    Ok(out)
}

/// `Π_{α ∈ Δ^+_af} (1 − e^{−α})^{mult α}` to depth `n`, exponent = depth.
pub fn denominator(rs: &RootSystem, n: i64) -> GradedCharacter {
    let table = RootMultiplicityTable::new(rs);
    let nu = n as usize;
    let mut slices: Vec<FinChar> = vec![FinChar::default(); nu + 1];
    slices[0].insert(rs.zero(), Int::ONE);
    let times = |slices: &mut Vec<FinChar>, d: usize, beta: &Weight| {
        for e in (d..=nu).rev() {
            let sub: Vec<(Weight, Int)> = slices[e - d].iter().map(|(w, c)| (w.add(beta), c.clone())).collect();
            for (w, c) in sub {
                let v = slices[e].entry(w).or_default();
                *v -= &c;
                if v.is_zero() {
                    slices[e].remove(&w);
                }
            }
        }
    };
    for alpha in &rs.positive_roots {
        times(&mut slices, 0, &alpha.weight.neg());
    }
    let zero = rs.zero();
    for d in 1..=n {
        for alpha in &rs.positive_roots {
            if table.real(alpha, d) {
                times(&mut slices, d as usize, &alpha.weight);
                times(&mut slices, d as usize, &alpha.weight.neg());
            }
        }
        for _ in 0..table.imaginary(d) {
            times(&mut slices, d as usize, &zero);
        }
    }
    let terms = slices.into_iter().enumerate().flat_map(|(e, s)| s.into_iter().map(move |(w, c)| (w, e as i64, c)));
    GradedCharacter::from_terms(rs.rank, 0, Truncation::At(n), Anchor::Depth(0), terms)
}

/// `Σ_{w ∈ W_af} (−1)^{ℓ(w)} e^{w(Λ+ρ)−ρ}` to depth `n` below Λ.
pub fn numerator(rs: &RootSystem, lambda: &AffineWeight, n: i64) -> Result<GradedCharacter> {
    if !lambda.is_dominant(rs) || lambda.level < 1 {
        return precondition(format!("{lambda} is not dominant of positive level"));
    }
    let rho = rs.rho();
    let coxeter = 1 + rs.pair_theta_vee(&rho);
    let start = AffineWeight::new(lambda.finite.add(&rho), lambda.level + coxeter, lambda.delta);
    let mut sign: FxHashMap<AffineWeight, i64> = FxHashMap::default();
    sign.insert(start, 1);
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for x in frontier {
            let s = sign[&x];
            for i in 0..=rs.rank {
                if affine_pairing(rs, i, &x) <= 0 {
                    continue;
                }
                let y = affine_reflect(rs, i, &x);
                if lambda.delta - y.delta > n {
                    continue;
                }
                if let std::collections::hash_map::Entry::Vacant(e) = sign.entry(y) {
                    e.insert(-s);
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    let terms = sign.into_iter().map(|(x, s)| (x.finite.sub(&rho), lambda.delta - x.delta, Int::from(s)));
    Ok(GradedCharacter::from_terms(rs.rank, lambda.level, Truncation::At(n), Anchor::Depth(lambda.delta), terms))
}

/// Whether `gch L(Λ) · denominator = numerator` to depth `n`.
pub fn weyl_kac_check(rs: &RootSystem, lambda: &AffineWeight, n: i64) -> Result<bool> {
    let l = saturate(rs, lambda, n)?;
    let lhs = l.mul(&denominator(rs, n))?;
    Ok(lhs == numerator(rs, lambda, n)?)
}
