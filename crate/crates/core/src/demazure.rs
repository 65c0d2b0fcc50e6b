//! Character families: thin Demazure, Weyl, integrable, projective and thick
//! Weyl modules.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use rustc_hash::FxHashMap;

use crate::afweight::{affine_pairing, affine_reflect, to_dominant_affine, AffineWeight};
use crate::cartan::{Root, RootSystem, Weight};
use crate::charring::{apply_word, saturate, Anchor, FinChar, GradedCharacter, Truncation};
use crate::coeff::Int;
use crate::error::{precondition, Result};
use crate::irrep::IrrepSum;
use crate::qpoly::QPoly;

/// Which real and imaginary roots occur at each δ-degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootMultiplicityTable {
    pub rank: usize,
    pub lacing: i64,
    pub short_simple_count: usize,
    pub short_norm: i64,
}

impl RootMultiplicityTable {
    pub fn new(rs: &RootSystem) -> RootMultiplicityTable {
        RootMultiplicityTable {
            rank: rs.rank,
            lacing: rs.lacing,
            short_simple_count: rs.short_simple_count,
            short_norm: *rs.norms.iter().min().unwrap(),
        }
    }

    /// Whether `±α + nδ` is a real root.
    pub fn real(&self, alpha: &Root, n: i64) -> bool {
        n % self.lacing == 0 || alpha.norm == self.short_norm
    }

    /// Multiplicity of `nδ`, `n ≠ 0`.
    pub fn imaginary(&self, n: i64) -> usize {
        if n % self.lacing == 0 {
            self.rank
        } else {
            self.short_simple_count
        }
    }
}

/// `gch D^(k)_λ`, exponent 0 at the generator.
pub fn thin_gch(rs: &RootSystem, lambda: &Weight, k: i64) -> Result<GradedCharacter> {
    if k < 1 {
        return precondition("level must be ≥ 1");
    }
    let mu = AffineWeight::new(*lambda, k, 0);
    let (dom, word) = to_dominant_affine(rs, &mu)?;
    apply_word(rs, &word, &GradedCharacter::from_affine(&dom))?.normalize_at(mu.delta)
}

/// `gch W^(k)_λ = gch D^(k)_{λ_−}`.
pub fn weyl_gch(rs: &RootSystem, lambda: &Weight, k: i64) -> Result<GradedCharacter> {
    if !lambda.is_dominant() {
        return precondition(format!("{lambda} is not dominant"));
    }
    thin_gch(rs, &rs.antidominant(lambda), k)
}

/// `gch L(Λ)` to depth `n`, exponent = depth below Λ.
pub fn integrable_gch(rs: &RootSystem, lambda: &AffineWeight, n: i64) -> Result<GradedCharacter> {
    saturate(rs, lambda, n)
}

/// `gch P_λ` to degree `n`.
pub fn projective_gch(rs: &RootSystem, lambda: &Weight, level: i64, n: i64) -> Result<GradedCharacter> {
    if !lambda.is_dominant() || n < 0 {
        return precondition("projective cover needs a dominant weight and n ≥ 0");
    }
    let table = RootMultiplicityTable::new(rs);
    let n_us = n as usize;
    let mut slices: Vec<FinChar> = vec![FinChar::default(); n_us + 1];
    for (w, _, c) in rs.finite_irrep_char(lambda)?.terms() {
        slices[0].insert(w, c.clone());
    }
    // Division by 1 − q^d e^β as the recurrence G_e = F_e + e^β G_{e−d}.
    let divide = |slices: &mut Vec<FinChar>, d: usize, beta: &Weight| {
        for e in d..=n_us {
            let add: Vec<(Weight, Int)> = slices[e - d].iter().map(|(w, c)| (w.add(beta), c.clone())).collect();
            for (w, c) in add {
                let v = slices[e].entry(w).or_default();
                *v += &c;
                if v.is_zero() {
                    slices[e].remove(&w);
                }
            }
        }
    };
    let zero = rs.zero();
    for d in 1..=n {
        for alpha in &rs.positive_roots {
            if table.real(alpha, d) {
                divide(&mut slices, d as usize, &alpha.weight);
                divide(&mut slices, d as usize, &alpha.weight.neg());
            }
        }
        for _ in 0..table.imaginary(d) {
            divide(&mut slices, d as usize, &zero);
        }
    }
    let terms = slices.into_iter().enumerate().flat_map(|(e, s)| s.into_iter().map(move |(w, c)| (w, e as i64, c)));
    Ok(GradedCharacter::from_terms(rs.rank, level, Truncation::At(n), Anchor::Shifted(0), terms))
}

/// Words `u` and the weight `Λ'` with `Λ − Λ_0 = s_0 w Λ'` from the
/// 0-connected part of the stabilizer diagram.
pub fn demext_witness(rs: &RootSystem, lambda: &AffineWeight) -> Result<(AffineWeight, Vec<usize>)> {
    let k = lambda.level;
    if k < 2 || !lambda.is_dominant(rs) || rs.pair_theta_vee(&lambda.finite) != k {
        return precondition(format!("{lambda} must be dominant of level ≥ 2 with ⟨ϑ∨, Λ̄⟩ = level"));
    }
    let adjacent = |i: usize, j: usize| affine_cartan(rs, i, j) != 0;
    let zero_nodes: Vec<usize> = (0..=rs.rank).filter(|&i| affine_pairing(rs, i, lambda) == 0).collect();
    let mut comp = vec![0usize];
    let mut k2 = 0;
    while k2 < comp.len() {
        let i = comp[k2];
        for &j in &zero_nodes {
            if !comp.contains(&j) && adjacent(i, j) {
                comp.push(j);
            }
        }
        k2 += 1;
    }
    comp.sort();
    let mut cur = AffineWeight::new(lambda.finite, k - 1, lambda.delta);
    let mut word = Vec::new();
    while let Some(&i) = comp.iter().find(|&&i| affine_pairing(rs, i, &cur) < 0) {
        cur = affine_reflect(rs, i, &cur);
        word.push(i);
    }
    Ok((cur, word))
}

/// `⟨α_i∨, α_j⟩` on the affine diagram.
pub fn affine_cartan(rs: &RootSystem, i: usize, j: usize) -> i64 {
    let alpha = |j: usize| -> AffineWeight {
        if j == 0 {
            AffineWeight::new(rs.theta.neg(), 0, 1)
        } else {
            AffineWeight::new(rs.simple_root(j), 0, 0)
        }
    };
    affine_pairing(rs, i, &alpha(j))
}

/// Whether `gch D_{s_0 w}(Λ') − gch D_w(Λ') = e^{Λ − Λ_0}` for the witness.
pub fn demext_check(rs: &RootSystem, lambda: &AffineWeight) -> Result<bool> {
    let (lp, word) = demext_witness(rs, lambda)?;
    if word.first() != Some(&0) || !lp.is_dominant(rs) {
        return Ok(false);
    }
    let base = GradedCharacter::from_affine(&lp);
    let big = apply_word(rs, &word, &base)?;
    let small = apply_word(rs, &word[1..], &base)?;
    let diff = big.sub(&small)?;
    let target = GradedCharacter::monomial(lambda.finite, lambda.delta, lambda.level - 1);
    Ok(diff == target)
}

type Memo<K, V> = Mutex<FxHashMap<K, V>>;

type Progress<'a> = Box<dyn Fn(&str) + Send + Sync + 'a>;

/// Memoizing front end for the expensive families.
pub struct Engine<'a> {
    pub rs: &'a RootSystem,
    weyl: Memo<(Weight, i64), Arc<IrrepSum>>,
    pub(crate) branch: Memo<(Weight, i64), Arc<BTreeMap<Weight, QPoly>>>,
    thick: Memo<(Weight, i64), (i64, Arc<IrrepSum>)>,
    progress: Option<Progress<'a>>,
}

impl<'a> Engine<'a> {
    pub fn new(rs: &'a RootSystem) -> Engine<'a> {
        Engine { rs, weyl: Mutex::default(), branch: Mutex::default(), thick: Mutex::default(), progress: None }
    }

    pub fn with_progress(mut self, f: impl Fn(&str) + Send + Sync + 'a) -> Engine<'a> {
        self.progress = Some(Box::new(f));
        self
    }

    pub(crate) fn report(&self, msg: &str) {
        if let Some(p) = &self.progress {
            p(msg);
        }
    }

    /// `gch W^(k)_λ` in the irreducible basis.
    ///
    /// Only the part of the word after its leading finite letters is applied;
    /// the Weyl character formula then turns each monomial into `±ch V`.
    pub fn weyl_irreps(&self, lambda: &Weight, k: i64) -> Result<Arc<IrrepSum>> {
        if let Some(v) = self.weyl.lock().unwrap().get(&(*lambda, k)) {
            return Ok(v.clone());
        }
        if !lambda.is_dominant() || k < 1 {
            return precondition(format!("W^({k})_{lambda} needs a dominant weight and k ≥ 1"));
        }
        let rs = self.rs;
        let mu = AffineWeight::new(rs.antidominant(lambda), k, 0);
        let (dom, word) = to_dominant_affine(rs, &mu)?;
        let cut = word.iter().position(|&i| i == 0).unwrap_or(word.len());
        let g = apply_word(rs, &word[cut..], &GradedCharacter::from_affine(&dom))?;
        let mut s = IrrepSum::zero();
        for (w, e, c) in g.terms() {
            if let Some((top, sign)) = rs.dot_dominant(&w) {
                s.add_term(top, e, &c.mul_i64(sign));
            }
        }
        let s = Arc::new(s);
        self.weyl.lock().unwrap().insert((*lambda, k), s.clone());
        Ok(s)
    }

    /// `gch 𝕎^(k)_λ` in the irreducible basis, to degree `n`.
    pub fn thick_irreps(&self, lambda: &Weight, k: i64, n: i64) -> Result<Arc<IrrepSum>> {
        if let Some((m, v)) = self.thick.lock().unwrap().get(&(*lambda, k)) {
            if *m >= n {
                return Ok(if *m == n { v.clone() } else { Arc::new(v.truncated(n)) });
            }
        }
        let rs = self.rs;
        if !lambda.is_dominant() || k < 1 || n < 0 {
            return precondition(format!("𝕎^({k})_{lambda} needs a dominant weight, k ≥ 1, n ≥ 0"));
        }
        let s = if rs.pair_theta_vee(lambda) < k {
            self.thick_base(lambda, k, n)?
        } else {
            self.thick_descent(lambda, k, n)?
        };
        let s = Arc::new(s);
        self.thick.lock().unwrap().insert((*lambda, k), (n, s.clone()));
        Ok(s)
    }

    /// `𝕎^(k)_λ ≅ θL(λ* + (k−1)Λ_0)` when `⟨ϑ∨, λ⟩ < k`.
    fn thick_base(&self, lambda: &Weight, k: i64, n: i64) -> Result<IrrepSum> {
        let rs = self.rs;
        if k == 1 {
            // Level 0: only λ = 0 is admissible and L is trivial.
            return Ok(IrrepSum::irreducible(*lambda).truncated(n));
        }
        let top = AffineWeight::new(rs.dual(lambda), k - 1, 0);
        let l = saturate(rs, &top, n)?;
        let s = IrrepSum::from_character(rs, &l)?;
        Ok(s.dual(rs).truncated(n))
    }

    /// `𝕎^(k)_λ = 𝕎^(k+1)_λ − Σ_{μ > λ} (W^(k)_μ : W^(k+1)_λ)_q 𝕎^(k)_μ`.
    ///
    /// A constituent `V_λ` of `W^(k)_μ` in degree d forces
    /// `ht(μ − λ) ≤ d · ht(θ)`, which bounds the weights that can matter.
    fn thick_descent(&self, lambda: &Weight, k: i64, n: i64) -> Result<IrrepSum> {
        let rs = self.rs;
        let mut s = self.thick_irreps(lambda, k + 1, n)?.truncated(n);
        let reach = n * rs.highest_root_height();
        let mut candidates: Vec<(i64, Weight)> = Vec::new();
        self.dominant_above(lambda, reach, &mut candidates);
        candidates.sort();
        for (ht, mu) in candidates {
            if ht == 0 || rs.pair_theta_vee(&mu) <= k {
                continue;
            }
            let b = self.branching(&mu, k)?;
            let Some(coef) = b.get(lambda) else { continue };
            let Some(lo) = coef.min_degree() else { continue };
            if lo > n {
                continue;
            }
            self.report(&format!("thick W^({k})_{lambda}: correcting by {mu} from degree {lo}"));
            let sub = self.thick_irreps(&mu, k, n - lo)?;
            s.add_product(&coef.neg(), &sub);
        }
        Ok(s)
    }

    /// Dominant `μ ≥ λ` with `ht(μ − λ) ≤ reach`, tagged with the height.
    fn dominant_above(&self, lambda: &Weight, reach: i64, out: &mut Vec<(i64, Weight)>) {
        let rs = self.rs;
        let mut seen: FxHashMap<Weight, i64> = FxHashMap::default();
        seen.insert(*lambda, 0);
        let mut frontier = vec![*lambda];
        for h in 1..=reach {
            let mut next = Vec::new();
            for w in &frontier {
                for i in 1..=rs.rank {
                    let u = w.add(&rs.simple_root(i));
                    if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(u) {
                        e.insert(h);
                        next.push(u);
                    }
                }
            }
            frontier = next;
        }
        out.extend(seen.into_iter().filter(|(w, _)| w.is_dominant()).map(|(w, h)| (h, w)));
    }

    /// `gch 𝕎^(k)_λ` as a truncated character.
    pub fn thick_weyl_gch(&self, lambda: &Weight, k: i64, n: i64) -> Result<GradedCharacter> {
        self.thick_irreps(lambda, k, n)?.to_character(self.rs, 0)
    }
}

/// Uncached convenience wrapper.
pub fn thick_weyl_gch(rs: &RootSystem, lambda: &Weight, k: i64, n: i64) -> Result<GradedCharacter> {
    Engine::new(rs).thick_weyl_gch(lambda, k, n)
}
