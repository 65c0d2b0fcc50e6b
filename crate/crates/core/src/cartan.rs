//! Finite root data in Bourbaki labeling and finite-dimensional characters.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::charring::{FinChar, GradedCharacter};
use crate::coeff::Int;
use crate::error::{precondition, Error, Result};

pub const MAX_RANK: usize = 8;

/// Integral weight in fundamental-weight coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    rank: u8,
    c: [i32; MAX_RANK],
}

impl Weight {
    pub fn zero(rank: usize) -> Weight {
        assert!(rank <= MAX_RANK);
        Weight { rank: rank as u8, c: [0; MAX_RANK] }
    }

    pub fn new(coords: &[i32]) -> Weight {
        let mut w = Weight::zero(coords.len());
        w.c[..coords.len()].copy_from_slice(coords);
        w
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn coords(&self) -> &[i32] {
        &self.c[..self.rank as usize]
    }

    /// Coordinate at node `i` (1-based).
    pub fn at(&self, i: usize) -> i32 {
        self.c[i - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn add(&self, o: &Weight) -> Weight {
        let mut r = *self;
        for k in 0..MAX_RANK {
            r.c[k] += o.c[k];
        }
        r
    }

    pub fn sub(&self, o: &Weight) -> Weight {
        let mut r = *self;
        for k in 0..MAX_RANK {
            r.c[k] -= o.c[k];
        }
        r
    }

    pub fn scaled_add(&self, t: i32, o: &Weight) -> Weight {
        let mut r = *self;
        for k in 0..MAX_RANK {
            r.c[k] += t * o.c[k];
        }
        r
    }

    pub fn neg(&self) -> Weight {
        let mut r = *self;
        for k in 0..MAX_RANK {
            r.c[k] = -r.c[k];
        }
        r
    }

    pub fn is_dominant(&self) -> bool {
        self.coords().iter().all(|&x| x >= 0)
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords().iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Weight {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Weight {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Weight, D::Error> {
        let v: Vec<i32> = Vec::deserialize(d)?;
        if v.is_empty() || v.len() > MAX_RANK {
            return Err(serde::de::Error::custom("weight length out of range"));
        }
        Ok(Weight::new(&v))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "E" => CartanType::E,
            "F" => CartanType::F,
            "G" => CartanType::G,
            _ => return Err(Error::InvalidType { label: s.to_string(), rank: 0 }),
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// A positive root with its coordinates in several bases.
#[derive(Clone, Debug)]
pub struct Root {
    /// Simple-root coordinates.
    pub coeffs: Vec<i64>,
    /// Fundamental-weight coordinates.
    pub weight: Weight,
    /// Simple-coroot coordinates of the coroot.
    pub coroot: Vec<i64>,
    /// Squared length, short roots normalized to 2.
    pub norm: i64,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn pair(&self, w: &Weight) -> i64 {
        self.coroot.iter().zip(w.coords()).map(|(a, &b)| a * b as i64).sum()
    }
}

#[derive(Debug)]
struct WeylTable {
    /// Pairs (ρ − wρ, sign(w)) over the whole finite Weyl group.
    shifts: Vec<(Weight, i64)>,
    /// max over w, i of ⟨α_i∨, wρ⟩.
    reach: i32,
}

/// Immutable finite Cartan datum together with the constants of its
/// twisted affinization.
#[derive(Debug)]
pub struct RootSystem {
    pub kind: CartanType,
    pub rank: usize,
    /// `cartan[i][j] = ⟨α_i∨, α_j⟩`, 0-based storage for nodes 1..=ℓ.
    pub cartan: Vec<Vec<i64>>,
    /// `(α_i, α_i)` with short roots of norm 2.
    pub norms: Vec<i64>,
    pub symmetrizer: Vec<i64>,
    pub lacing: i64,
    pub theta_root: Vec<i64>,
    pub theta: Weight,
    pub theta_covector: Vec<i64>,
    pub short_simple_count: usize,
    pub positive_roots: Vec<Root>,
    simple: Vec<Weight>,
    det: i64,
    adj: Vec<Vec<i64>>,
    w0_word: Vec<usize>,
    weyl: OnceLock<Option<WeylTable>>,
}

const WEYL_TABLE_CAP: usize = 200_000;

fn bareiss_det(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

impl RootSystem {
    pub fn new(kind: CartanType, rank: usize) -> Result<RootSystem> {
        use CartanType::*;
        let valid = match kind {
            A => rank >= 1,
            B | C => rank >= 2,
            D => rank >= 4,
            E => (6..=8).contains(&rank),
            F => rank == 4,
            G => rank == 2,
        } && rank <= MAX_RANK;
        if !valid {
            return Err(Error::InvalidType { label: kind.to_string(), rank });
        }
        let l = rank;
        // Norms and bonds (i, j, (α_i, α_j)) with 1-based nodes.
        let mut norms = vec![2i64; l];
        let mut bonds: Vec<(usize, usize, i64)> = Vec::new();
        match kind {
            A => bonds.extend((1..l).map(|i| (i, i + 1, -1))),
            B => {
                for n in norms.iter_mut().take(l - 1) {
                    *n = 4;
                }
                bonds.extend((1..l).map(|i| (i, i + 1, -2)));
            }
            C => {
                norms[l - 1] = 4;
                bonds.extend((1..l - 1).map(|i| (i, i + 1, -1)));
                bonds.push((l - 1, l, -2));
            }
            D => {
                bonds.extend((1..l - 1).map(|i| (i, i + 1, -1)));
                bonds.push((l - 2, l, -1));
            }
            E => {
                bonds.push((1, 3, -1));
                bonds.push((2, 4, -1));
                bonds.extend((3..l).map(|i| (i, i + 1, -1)));
            }
            F => {
                norms = vec![4, 4, 2, 2];
                bonds = vec![(1, 2, -2), (2, 3, -2), (3, 4, -1)];
            }
            G => {
                norms = vec![2, 6];
                bonds = vec![(1, 2, -3)];
            }
        }
        let mut form = vec![vec![0i64; l]; l];
        for i in 0..l {
            form[i][i] = norms[i];
        }
        for &(i, j, b) in &bonds {
            form[i - 1][j - 1] = b;
            form[j - 1][i - 1] = b;
        }
        let cartan: Vec<Vec<i64>> = (0..l).map(|i| (0..l).map(|j| 2 * form[i][j] / norms[i]).collect()).collect();
        let symmetrizer: Vec<i64> = norms.iter().map(|n| n / 2).collect();

        let det = bareiss_det(cartan.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect());
        if det <= 0 {
            return Err(Error::Internal("Cartan matrix is not positive definite".into()));
        }
        let mut adj = vec![vec![0i64; l]; l];
        #[allow(clippy::needless_range_loop)]
        for i in 0..l {
            for j in 0..l {
                let m: Vec<Vec<i128>> = (0..l)
                    .map(|r| (0..l).map(|c| if c == i { (r == j) as i128 } else { cartan[r][c] as i128 }).collect())
                    .collect();
                adj[i][j] = bareiss_det(m) as i64;
            }
        }

        let simple: Vec<Weight> =
            (0..l).map(|j| Weight::new(&(0..l).map(|i| cartan[i][j] as i32).collect::<Vec<_>>())).collect();

        // Root closure from the simple roots under simple reflections.
        let norm_of = |b: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..l {
                for j in 0..l {
                    s += b[i] * b[j] * form[i][j];
                }
            }
            s
        };
        let mut roots: FxHashSet<Vec<i64>> = FxHashSet::default();
        let mut stack: Vec<Vec<i64>> = Vec::new();
        for i in 0..l {
            let mut e = vec![0i64; l];
            e[i] = 1;
            roots.insert(e.clone());
            stack.push(e);
        }
        while let Some(b) = stack.pop() {
            for i in 0..l {
                let p: i64 = (0..l).map(|j| cartan[i][j] * b[j]).sum();
                let mut nb = b.clone();
                nb[i] -= p;
                if roots.insert(nb.clone()) {
                    stack.push(nb);
                }
            }
        }
        let mut positive_roots: Vec<Root> = roots
            .into_iter()
            .filter(|b| b.iter().all(|&x| x >= 0))
            .map(|b| {
                let norm = norm_of(&b);
                let weight = Weight::new(
                    &(0..l).map(|i| (0..l).map(|j| cartan[i][j] * b[j]).sum::<i64>() as i32).collect::<Vec<_>>(),
                );
                let coroot = (0..l).map(|i| b[i] * norms[i] / norm).collect();
                Root { coeffs: b, weight, coroot, norm }
            })
            .collect();
        positive_roots.sort_by(|a, b| a.height().cmp(&b.height()).then(a.coeffs.cmp(&b.coeffs)));

        let min_norm = positive_roots.iter().map(|r| r.norm).min().unwrap_or(2);
        let max_norm = positive_roots.iter().map(|r| r.norm).max().unwrap_or(2);
        let theta_r = positive_roots
            .iter()
            .find(|r| r.norm == min_norm && r.weight.is_dominant())
            .ok_or_else(|| Error::Internal("no dominant short root".into()))?
            .clone();
        let short_simple_count = norms.iter().filter(|&&n| n == min_norm).count();

        let mut rs = RootSystem {
            kind,
            rank,
            cartan,
            norms,
            symmetrizer,
            lacing: max_norm / min_norm,
            theta_root: theta_r.coeffs.clone(),
            theta: theta_r.weight,
            theta_covector: theta_r.coroot.clone(),
            short_simple_count,
            positive_roots,
            simple,
            det: det as i64,
            adj,
            w0_word: Vec::new(),
            weyl: OnceLock::new(),
        };
        let rho = rs.rho();
        rs.w0_word = rs.to_dominant_finite(&rho.neg()).1;
        rs.check_invariants()?;
        Ok(rs)
    }

    pub fn parse(label: &str, rank: usize) -> Result<RootSystem> {
        let kind: CartanType = label.parse().map_err(|_| Error::InvalidType { label: label.to_string(), rank })?;
        RootSystem::new(kind, rank)
    }

    fn check_invariants(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Internal(format!("{}{}: {m}", self.kind, self.rank)));
        if !self.theta.is_dominant() {
            return fail("theta not dominant");
        }
        if self.to_dominant_finite(&self.theta.neg()).0 != self.theta {
            return fail("-w0 theta != theta");
        }
        let simply_laced = matches!(self.kind, CartanType::A | CartanType::D | CartanType::E);
        if simply_laced != (self.lacing == 1) {
            return fail("lacing number");
        }
        if self.pair_theta_vee(&self.theta) != 2 {
            return fail("theta coroot pairing");
        }
        Ok(())
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.kind, self.rank)
    }

    pub fn rho(&self) -> Weight {
        Weight::new(&vec![1; self.rank])
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.rank)
    }

    pub fn weight(&self, coords: &[i32]) -> Result<Weight> {
        if coords.len() != self.rank {
            return precondition(format!("weight has {} coordinates, rank is {}", coords.len(), self.rank));
        }
        Ok(Weight::new(coords))
    }

    pub fn fundamental(&self, i: usize) -> Weight {
        let mut w = self.zero();
        w.c[i - 1] = 1;
        w
    }

    /// α_i in fundamental-weight coordinates (1-based node).
    pub fn simple_root(&self, i: usize) -> Weight {
        self.simple[i - 1]
    }

    pub fn highest_root_height(&self) -> i64 {
        self.positive_roots.iter().map(|r| r.height()).max().unwrap_or(1)
    }

    pub fn longest_word(&self) -> &[usize] {
        &self.w0_word
    }

    pub fn reflect(&self, i: usize, w: &Weight) -> Weight {
        let p = w.at(i);
        if p == 0 {
            return *w;
        }
        w.scaled_add(-p, &self.simple[i - 1])
    }

    /// ⟨ϑ∨, w⟩.
    pub fn pair_theta_vee(&self, w: &Weight) -> i64 {
        self.theta_covector.iter().zip(w.coords()).map(|(a, &b)| a * b as i64).sum()
    }

    /// Dominant representative and the word `i_1 … i_l` with
    /// `w = s_{i_1} ⋯ s_{i_l} · dominant`.
    pub fn to_dominant_finite(&self, w: &Weight) -> (Weight, Vec<usize>) {
        let mut cur = *w;
        let mut word = Vec::new();
        while let Some(i) = cur.coords().iter().position(|&x| x < 0) {
            cur = self.reflect(i + 1, &cur);
            word.push(i + 1);
        }
        (cur, word)
    }

    pub fn dominant(&self, w: &Weight) -> Weight {
        self.to_dominant_finite(w).0
    }

    pub fn antidominant(&self, w: &Weight) -> Weight {
        let mut cur = *w;
        while let Some(i) = cur.coords().iter().position(|&x| x > 0) {
            cur = self.reflect(i + 1, &cur);
        }
        cur
    }

    /// Dual highest weight `−w_0 λ`.
    pub fn dual(&self, w: &Weight) -> Weight {
        self.antidominant(w).neg()
    }

    /// Simple-root coordinates of `v`, or `None` if `v ∉ Q`.
    pub fn root_coords(&self, v: &Weight) -> Option<Vec<i64>> {
        let l = self.rank;
        let mut out = Vec::with_capacity(l);
        for i in 0..l {
            let s: i64 = (0..l).map(|j| self.adj[i][j] * v.c[j] as i64).sum();
            if s % self.det != 0 {
                return None;
            }
            out.push(s / self.det);
        }
        Some(out)
    }

    pub fn in_root_lattice(&self, v: &Weight) -> bool {
        self.root_coords(v).is_some()
    }

    /// `v ∈ Q_+`.
    pub fn in_positive_cone(&self, v: &Weight) -> bool {
        self.root_coords(v).is_some_and(|x| x.iter().all(|&c| c >= 0))
    }

    pub fn height(&self, v: &Weight) -> Option<i64> {
        self.root_coords(v).map(|x| x.iter().sum())
    }

    /// `det · ht(v)`, defined on all of `P`.
    pub fn scaled_height(&self, v: &Weight) -> i64 {
        let l = self.rank;
        (0..l).map(|i| (0..l).map(|j| self.adj[i][j] * v.c[j] as i64).sum::<i64>()).sum()
    }

    /// Determinant of the Cartan matrix.
    pub fn det(&self) -> i64 {
        self.det
    }

    /// `det · (ϖ_i, ϖ_j)`, an integer matrix.
    pub fn scaled_weight_form(&self) -> Vec<Vec<i64>> {
        let l = self.rank;
        (0..l).map(|i| (0..l).map(|j| self.adj[j][i] * self.symmetrizer[j]).collect()).collect()
    }

    /// `det · (a, b)` for weights `a, b`.
    pub fn scaled_dot(&self, a: &Weight, b: &Weight) -> i64 {
        let l = self.rank;
        let mut s = 0;
        for i in 0..l {
            if a.c[i] == 0 {
                continue;
            }
            for j in 0..l {
                s += a.c[i] as i64 * b.c[j] as i64 * self.adj[j][i] * self.symmetrizer[j];
            }
        }
        s
    }

    pub fn weyl_dimension(&self, lambda: &Weight) -> Result<BigInt> {
        if !lambda.is_dominant() {
            return precondition(format!("{lambda} is not dominant"));
        }
        let rho = self.rho();
        let lr = lambda.add(&rho);
        let mut num = BigInt::from(1);
        let mut den = BigInt::from(1);
        for r in &self.positive_roots {
            num *= r.pair(&lr);
            den *= r.pair(&rho);
        }
        Ok(num / den)
    }

    fn weyl_table(&self) -> Option<&WeylTable> {
        self.weyl
            .get_or_init(|| {
                let rho = self.rho();
                let mut seen: FxHashMap<Weight, i64> = FxHashMap::default();
                seen.insert(rho, 1);
                let mut frontier = vec![rho];
                while !frontier.is_empty() {
                    let mut next = Vec::new();
                    for w in frontier {
                        let s = seen[&w];
                        for i in 1..=self.rank {
                            let r = self.reflect(i, &w);
                            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(r) {
                                e.insert(-s);
                                next.push(r);
                            }
                        }
                    }
                    if seen.len() > WEYL_TABLE_CAP {
                        return None;
                    }
                    frontier = next;
                }
                let reach = seen.keys().flat_map(|w| w.coords().to_vec()).max().unwrap_or(1);
                let mut shifts: Vec<(Weight, i64)> = seen.into_iter().map(|(w, s)| (rho.sub(&w), s)).collect();
                shifts.sort();
                Some(WeylTable { shifts, reach })
            })
            .as_ref()
    }

    /// Order of the finite Weyl group when it is small enough to tabulate.
    pub fn weyl_order(&self) -> Option<usize> {
        self.weyl_table().map(|t| t.shifts.len())
    }

    pub fn is_w_invariant(&self, f: &FinChar) -> bool {
        f.iter().all(|(w, c)| (1..=self.rank).all(|i| f.get(&self.reflect(i, w)) == Some(c)))
    }

    /// Weyl character of an arbitrary weight: `±(λ, sign)` with λ dominant, or
    /// `None` when `ν + ρ` is singular.
    pub fn dot_dominant(&self, nu: &Weight) -> Option<(Weight, i64)> {
        let (d, word) = self.to_dominant_finite(&nu.add(&self.rho()));
        if d.coords().contains(&0) {
            return None;
        }
        let sign = if word.len() % 2 == 0 { 1 } else { -1 };
        Some((d.sub(&self.rho()), sign))
    }

    pub fn finite_irrep_char(&self, lambda: &Weight) -> Result<GradedCharacter> {
        if !lambda.is_dominant() {
            return precondition(format!("{lambda} is not dominant"));
        }
        let f = GradedCharacter::monomial(*lambda, 0, 0);
        crate::charring::apply_word(self, &self.w0_word, &f)
    }

    /// Multiplicities of irreducibles in a W-invariant finite character.
    pub fn decompose_slice(&self, s: &FinChar) -> Result<Vec<(Weight, Int)>> {
        if !self.is_w_invariant(s) {
            return precondition("slice is not W-invariant");
        }
        Ok(self.decompose_unchecked(s))
    }

    pub(crate) fn decompose_unchecked(&self, s: &FinChar) -> Vec<(Weight, Int)> {
        let mut out: FxHashMap<Weight, Int> = FxHashMap::default();
        match self.weyl_table() {
            Some(t) => {
                // m_λ = Σ_w sign(w) s(λ + ρ − wρ); only near-dominant support contributes.
                let floor = 1 - t.reach;
                for (nu, c) in s {
                    if nu.coords().iter().any(|&x| x < floor) {
                        continue;
                    }
                    for (shift, sign) in &t.shifts {
                        let lam = nu.sub(shift);
                        if lam.is_dominant() {
                            let e = out.entry(lam).or_default();
                            if *sign > 0 {
                                *e += c;
                            } else {
                                *e -= c;
                            }
                        }
                    }
                }
            }
            None => {
                let mut res: FxHashMap<Weight, Int> = s.clone();
                while let Some(lam) = res
                    .keys()
                    .filter(|w| w.is_dominant())
                    .max_by_key(|w| (self.scaled_dot(w, &self.rho()), **w))
                    .copied()
                {
                    let c = res[&lam].clone();
                    let ch = self.finite_irrep_char(&lam).expect("dominant");
                    for (w, m) in ch.slice(0) {
                        let e = res.entry(w).or_default();
                        *e -= &(&m * &c);
                        if e.is_zero() {
                            res.remove(&w);
                        }
                    }
                    out.insert(lam, c);
                }
            }
        }
        let mut v: Vec<(Weight, Int)> = out.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        v.sort();
        v
    }

    /// Dominant weights `ν ≤ λ` (dominance order), including λ.
    pub fn dominant_weights_below(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen: FxHashSet<Weight> = FxHashSet::default();
        seen.insert(*lambda);
        let mut stack = vec![*lambda];
        while let Some(w) = stack.pop() {
            for r in &self.positive_roots {
                let n = w.sub(&r.weight);
                if n.is_dominant() && seen.insert(n) {
                    stack.push(n);
                }
            }
        }
        let mut v: Vec<Weight> = seen.into_iter().collect();
        v.sort();
        v
    }

    pub fn orbit(&self, w: &Weight) -> Vec<Weight> {
        let mut seen: FxHashSet<Weight> = FxHashSet::default();
        seen.insert(*w);
        let mut stack = vec![*w];
        while let Some(x) = stack.pop() {
            for i in 1..=self.rank {
                let y = self.reflect(i, &x);
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
        let mut v: Vec<Weight> = seen.into_iter().collect();
        v.sort();
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(t: &str, l: usize) -> RootSystem {
        RootSystem::parse(t, l).unwrap()
    }

    #[test]
    fn rank_one() {
        let a1 = rs("A", 1);
        assert_eq!(a1.cartan, vec![vec![2]]);
        assert_eq!(a1.lacing, 1);
        assert_eq!(a1.theta, Weight::new(&[2]));
        assert_eq!(a1.theta_covector, vec![1]);
    }

    #[test]
    fn c2_short_theta() {
        let c2 = rs("C", 2);
        assert_eq!(c2.cartan, vec![vec![2, -2], vec![-1, 2]]);
        assert_eq!(c2.lacing, 2);
        assert_eq!(c2.short_simple_count, 1);
        assert_eq!(c2.theta_root, vec![1, 1]);
        assert_eq!(c2.theta, Weight::new(&[0, 1]));
        assert_eq!(c2.theta_covector, vec![1, 2]);
    }

    #[test]
    fn g2_data() {
        let g2 = rs("G", 2);
        assert_eq!(g2.lacing, 3);
        assert_eq!(g2.short_simple_count, 1);
        assert_eq!(g2.positive_roots.len(), 6);
        assert_eq!(g2.theta_root, vec![2, 1]);
        assert_eq!(g2.theta_covector, vec![2, 3]);
    }

    #[test]
    fn invalid_types_rejected() {
        for (t, l) in [("A", 0), ("B", 1), ("C", 1), ("D", 3), ("E", 5), ("E", 9), ("F", 3), ("G", 3)] {
            assert!(RootSystem::parse(t, l).is_err(), "{t}{l}");
        }
        assert!(RootSystem::parse("X", 2).is_err());
    }

    #[test]
    fn short_simple_counts() {
        for (t, l, want) in [("B", 3, 1), ("C", 4, 3), ("F", 4, 2), ("D", 5, 5), ("E", 6, 6), ("A", 3, 3)] {
            assert_eq!(rs(t, l).short_simple_count, want, "{t}{l}");
        }
    }

    #[test]
    fn positive_root_counts() {
        for (t, l, n) in [
            ("A", 3, 6),
            ("B", 3, 9),
            ("C", 3, 9),
            ("D", 4, 12),
            ("E", 6, 36),
            ("E", 7, 63),
            ("E", 8, 120),
            ("F", 4, 24),
        ] {
            assert_eq!(rs(t, l).positive_roots.len(), n, "{t}{l}");
        }
    }

    #[test]
    fn reflections() {
        let a1 = rs("A", 1);
        assert_eq!(a1.reflect(1, &Weight::new(&[2])), Weight::new(&[-2]));
        let a2 = rs("A", 2);
        assert_eq!(a2.reflect(1, &Weight::new(&[1, 0])), Weight::new(&[-1, 1]));
        assert_eq!(a2.reflect(2, &a2.zero()), a2.zero());
    }

    #[test]
    fn dominance_words() {
        let a1 = rs("A", 1);
        assert_eq!(a1.to_dominant_finite(&Weight::new(&[-2])), (Weight::new(&[2]), vec![1]));
        let a2 = rs("A", 2);
        let (d, w) = a2.to_dominant_finite(&Weight::new(&[-1, -1]));
        assert_eq!(d, Weight::new(&[1, 1]));
        assert_eq!(w.len(), 3);
        let mut back = d;
        for &i in w.iter().rev() {
            back = a2.reflect(i, &back);
        }
        assert_eq!(back, Weight::new(&[-1, -1]));
    }

    #[test]
    fn irrep_dimensions() {
        let c2 = rs("C", 2);
        let ch = c2.finite_irrep_char(&Weight::new(&[1, 0])).unwrap();
        assert_eq!(ch.len(), 4);
        assert!(ch.terms().all(|(_, _, c)| *c == Int::ONE));
        let g2 = rs("G", 2);
        assert_eq!(g2.weyl_dimension(&Weight::new(&[1, 0])).unwrap(), BigInt::from(7));
        assert_eq!(g2.weyl_dimension(&Weight::new(&[0, 1])).unwrap(), BigInt::from(14));
        let e8 = rs("E", 8);
        assert_eq!(e8.weyl_dimension(&e8.fundamental(8)).unwrap(), BigInt::from(248));
    }

    #[test]
    fn clebsch_gordan() {
        let a1 = rs("A", 1);
        let v2 = a1.finite_irrep_char(&Weight::new(&[2])).unwrap();
        let sq = v2.mul(&v2).unwrap();
        let d = a1.decompose_slice(&sq.slice(0)).unwrap();
        let want: Vec<(Weight, Int)> = [0, 2, 4].iter().map(|&x| (Weight::new(&[x]), Int::ONE)).collect();
        assert_eq!(d, want);
        assert!(a1.decompose_slice(&FinChar::default()).unwrap().is_empty());
    }

    #[test]
    fn decompose_handles_cancellation() {
        let a1 = rs("A", 1);
        let mut f = FinChar::default();
        f.insert(Weight::new(&[2]), Int::ONE);
        f.insert(Weight::new(&[-2]), Int::ONE);
        let d = a1.decompose_slice(&f).unwrap();
        assert_eq!(d, vec![(Weight::new(&[0]), Int::from(-1)), (Weight::new(&[2]), Int::ONE)]);
        f.insert(Weight::new(&[0]), Int::ONE);
        f.remove(&Weight::new(&[-2]));
        assert!(a1.decompose_slice(&f).is_err());
    }
}
