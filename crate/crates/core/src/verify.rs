//! Acceptance suites P1–P10.
//!
//! Each suite returns a [`Report`]; nothing here panics on a mathematical
//! mismatch, so a driver can run everything and print one line per suite.

use std::collections::BTreeMap;
use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::afweight::{
    act, affine_pairing, affine_reflect, cherednik_leq, sigma_contains, sigma_contains_hull, to_dominant_affine,
    AffineWeight,
};
use crate::cartan::{RootSystem, Weight};
use crate::charring::{apply_word, demazure_op, Anchor, GradedCharacter, Truncation};
use crate::coeff::Int;
use crate::demazure::{affine_cartan, demext_check, thin_gch, Engine};
use crate::error::Result;
use crate::expand::Family;
use crate::qpoly::QPoly;

const MAX_LISTED: usize = 20;

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub id: &'static str,
    pub title: &'static str,
    pub cases: usize,
    pub failures: usize,
    /// The first few failures, rendered.
    pub details: Vec<String>,
    #[serde(with = "secs")]
    pub elapsed: Duration,
    #[serde(with = "secs")]
    pub budget: Duration,
}

mod secs {
    use std::time::Duration;

    pub fn serialize<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(d.as_secs_f64())
    }
}

impl Report {
    fn new(id: &'static str, title: &'static str, budget_secs: u64) -> Report {
        Report {
            id,
            title,
            cases: 0,
            failures: 0,
            details: Vec::new(),
            elapsed: Duration::ZERO,
            budget: Duration::from_secs(budget_secs),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, msg: String) {
        self.failures += 1;
        if self.details.len() < MAX_LISTED {
            self.details.push(msg);
        }
    }

    /// Fold an error from the engine into a failure.
    fn guard<T>(&mut self, r: Result<T>, ctx: impl FnOnce() -> String) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.cases += 1;
                self.fail(format!("{}: {e}", ctx()));
                None
            }
        }
    }

    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.cases > 0 && self.within_budget()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}: {} cases, {} failures, {:.2}s (limit {}s{})",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.cases,
            self.failures,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            if self.within_budget() { "" } else { ", exceeded" }
        )?;
        for d in &self.details {
            write!(f, "\n    {d}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub seed: u64,
    /// Randomized cases per property in P10.
    pub samples: usize,
}

impl Default for Config {
    fn default() -> Config {
        Config { seed: 0x5eed_0001, samples: 500 }
    }
}

/// Named groups of suites, as exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Sl2Tables,
    CorollaryNum,
    Positivity,
    Support,
    Reciprocity,
    Oracle,
    Demext,
    Kostka,
    Properties,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 10] = [
        "sl2-tables",
        "corollary-num",
        "positivity",
        "support",
        "reciprocity",
        "oracle",
        "demext",
        "kostka",
        "properties",
        "all",
    ];

    pub fn parse(s: &str) -> Option<Suite> {
        Some(match s {
            "sl2-tables" | "sl2-paper" => Suite::Sl2Tables,
            "corollary-num" => Suite::CorollaryNum,
            "positivity" => Suite::Positivity,
            "support" => Suite::Support,
            "reciprocity" => Suite::Reciprocity,
            "oracle" => Suite::Oracle,
            "demext" => Suite::Demext,
            "kostka" => Suite::Kostka,
            "properties" => Suite::Properties,
            "all" => Suite::All,
            _ => return None,
        })
    }

    pub fn run(self, cfg: &Config) -> Vec<Report> {
        match self {
            Suite::Sl2Tables => vec![p1_sl2_thin(), p2_sl2_thick()],
            Suite::CorollaryNum => vec![p3_corollary_num()],
            Suite::Positivity => vec![p4_positivity()],
            Suite::Support => vec![p5_support()],
            Suite::Reciprocity => vec![p6_reciprocity()],
            Suite::Oracle => vec![p7_weyl_kac()],
            Suite::Demext => vec![p8_demext()],
            Suite::Kostka => vec![p9_kostka()],
            Suite::Properties => vec![p10_properties(cfg)],
            Suite::All => all(cfg),
        }
    }
}

pub fn all(cfg: &Config) -> Vec<Report> {
    vec![
        p1_sl2_thin(),
        p2_sl2_thick(),
        p3_corollary_num(),
        p4_positivity(),
        p5_support(),
        p6_reciprocity(),
        p7_weyl_kac(),
        p8_demext(),
        p9_kostka(),
        p10_properties(cfg),
    ]
}

fn timed(mut r: Report, body: impl FnOnce(&mut Report)) -> Report {
    let t = Instant::now();
    body(&mut r);
    r.elapsed = t.elapsed();
    r
}

fn rs(label: &str, rank: usize) -> RootSystem {
    RootSystem::parse(label, rank).expect("built-in type")
}

fn w(c: &[i32]) -> Weight {
    Weight::new(c)
}

fn q(pairs: &[(i64, i64)]) -> QPoly {
    QPoly::from_pairs(pairs)
}

/// Expected coefficients, keyed by weight.
type Table = Vec<(Weight, QPoly)>;

/// The four rank ≤ 2 types used by the sweeps.
pub fn sweep_types() -> Vec<RootSystem> {
    vec![rs("A", 1), rs("A", 2), rs("C", 2), rs("G", 2)]
}

/// Dominant weights with every coordinate in `0..=max`.
pub fn dominant_box(rs: &RootSystem, max: i32) -> Vec<Weight> {
    let mut out = vec![Vec::new()];
    for _ in 0..rs.rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<i32>| {
                (0..=max).map(move |a| {
                    let mut v = v.clone();
                    v.push(a);
                    v
                })
            })
            .collect();
    }
    let mut ws: Vec<Weight> = out.iter().map(|v| Weight::new(v)).collect();
    ws.sort_by_key(|x| (rs.pair_theta_vee(x), *x));
    ws
}

/// All weights in the W-orbits of [`dominant_box`].
pub fn orbit_box(rs: &RootSystem, max: i32) -> Vec<Weight> {
    let mut out: Vec<Weight> = dominant_box(rs, max).iter().flat_map(|x| rs.orbit(x)).collect();
    out.sort();
    out.dedup();
    out
}

fn expect_map(r: &mut Report, ctx: &str, got: &BTreeMap<Weight, QPoly>, want: &[(Weight, QPoly)]) {
    let want: BTreeMap<Weight, QPoly> = want.iter().cloned().collect();
    let got: BTreeMap<Weight, QPoly> = got.iter().map(|(w, p)| (*w, p.clone().exact())).collect();
    r.check(got == want, || format!("{ctx}: expected {}, found {}", render(&want), render(&got)));
}

fn render(m: &BTreeMap<Weight, QPoly>) -> String {
    let parts: Vec<String> = m.iter().map(|(w, p)| format!("{w}: {p}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// P1: the sl(2) branching identities of the Weyl-module side.
pub fn p1_sl2_thin() -> Report {
    timed(Report::new("P1", "sl(2) thin-side tables", 1), |r| {
        let a1 = rs("A", 1);
        let eng = Engine::new(&a1);
        let table: Vec<(i32, i64, Table)> = vec![
            (2, 1, vec![(w(&[2]), q(&[(0, 1)])), (w(&[0]), q(&[(1, 1)]))]),
            (3, 1, vec![(w(&[3]), q(&[(0, 1)])), (w(&[1]), q(&[(2, 1)]))]),
            (3, 2, vec![(w(&[3]), q(&[(0, 1)])), (w(&[1]), q(&[(1, 1)]))]),
            (4, 2, vec![(w(&[4]), q(&[(0, 1)])), (w(&[0]), q(&[(2, 1)]))]),
            (4, 3, vec![(w(&[4]), q(&[(0, 1)])), (w(&[2]), q(&[(1, 1)]))]),
            (4, 1, vec![(w(&[4]), q(&[(0, 1)])), (w(&[2]), q(&[(2, 1), (3, 1)])), (w(&[0]), q(&[(4, 1)]))]),
            (
                6,
                1,
                vec![
                    (w(&[6]), q(&[(0, 1)])),
                    (w(&[4]), q(&[(3, 1), (4, 1), (5, 1)])),
                    (w(&[2]), q(&[(6, 1), (7, 1), (8, 1)])),
                    (w(&[0]), q(&[(9, 1)])),
                ],
            ),
        ];
        for (mu, k, want) in table {
            let ctx = format!("W^({k})_{mu}ϖ in W^({})", k + 1);
            if let Some(e) = r.guard(eng.branching_weyl(&w(&[mu]), k), || ctx.clone()) {
                expect_map(r, &ctx, &e.coeffs, &want);
            }
        }
    })
}

/// P2: the sl(2) thick Weyl module expansions in the level-one thick basis.
pub fn p2_sl2_thick() -> Report {
    timed(Report::new("P2", "sl(2) thick-side tables", 30), |r| {
        let a1 = rs("A", 1);
        let eng = Engine::new(&a1);
        let table: Vec<(i32, i64, Table)> = vec![
            (
                0,
                10,
                vec![
                    (w(&[0]), q(&[(0, 1)])),
                    (w(&[2]), q(&[(1, 1)])),
                    (w(&[4]), q(&[(4, 1)])),
                    (w(&[6]), q(&[(9, 1)])),
                ],
            ),
            (
                2,
                9,
                vec![(w(&[2]), q(&[(0, 1)])), (w(&[4]), q(&[(2, 1), (3, 1)])), (w(&[6]), q(&[(6, 1), (7, 1), (8, 1)]))],
            ),
        ];
        for (lam, n, want) in table {
            let ctx = format!("𝕎^(2)_{lam}ϖ to q^{n} in 𝕎^(1)");
            let e =
                eng.thick_irreps(&w(&[lam]), 2, n).and_then(|s| eng.expand_irreps(&s, Family::ThickWeyl, 1, Some(n)));
            if let Some(e) = r.guard(e, || ctx.clone()) {
                expect_map(r, &ctx, &e.coeffs, &want);
            }
        }
    })
}

/// P3: branching coefficients against the orbit oracle.
pub fn p3_corollary_num() -> Report {
    timed(Report::new("P3", "corollary-num orbit oracle sweep", 600), |r| {
        for rs in sweep_types() {
            let eng = Engine::new(&rs);
            let mus = dominant_box(&rs, 6);
            for k in 1..=3 {
                let lambdas: Vec<Weight> = mus.iter().filter(|l| rs.pair_theta_vee(l) < k).copied().collect();
                let ctx = || format!("{} k={k}", rs.label());
                let Some(bad) = r.guard(eng.corollary_num_verify(k, &lambdas, &mus), ctx) else { continue };
                r.cases += lambdas.len() * mus.len();
                for m in bad {
                    r.fail(format!(
                        "{} k={k} λ={} μ={}: expected {}, found {}",
                        rs.label(),
                        m.lambda,
                        m.mu,
                        m.expected,
                        m.found
                    ));
                }
            }
        }
    })
}

/// Kostka factor lists used by P4: pairs and triples of small Weyl modules.
/// Single factors `W^(l)_μ` with `l ≤ k`, plus products whose levels sum to at most `k`.
fn kostka_factor_lists(rs: &RootSystem, k: i64) -> Vec<Vec<(i64, Weight)>> {
    let mut out = Vec::new();
    for l in 1..=k {
        for mu in dominant_box(rs, 6) {
            out.push(vec![(l, mu)]);
        }
    }
    let small: Vec<Weight> = dominant_box(rs, 1).into_iter().filter(|x| !x.is_zero()).collect();
    for l1 in 1..k {
        for l2 in l1..=k - l1 {
            for a in &small {
                for b in &small {
                    out.push(vec![(l1, *a), (l2, *b)]);
                }
            }
        }
    }
    if k >= 3 {
        for a in &small {
            out.push(vec![(1, *a); 3]);
        }
    }
    out
}

/// P4: nonnegativity of branching, thin expansions and Kostka polynomials.
pub fn p4_positivity() -> Report {
    timed(Report::new("P4", "positivity", 1800), |r| {
        for rs in sweep_types() {
            let eng = Engine::new(&rs);
            for k in 1..=3 {
                for mu in dominant_box(&rs, 6) {
                    let ctx = || format!("{} branching W^({k})_{mu}", rs.label());
                    if let Some(e) = r.guard(eng.branching_weyl(&mu, k), ctx) {
                        r.check(e.is_nonnegative(), || format!("{}: {}", ctx(), render(&e.coeffs)));
                    }
                }
                for lam in orbit_box(&rs, 6) {
                    let ctx = || format!("{} D^({k})_{lam} in D^({})", rs.label(), k + 1);
                    let e = thin_gch(&rs, &lam, k).and_then(|f| {
                        let n = f.max_exponent().unwrap_or(0);
                        eng.expand_thin(&f, k + 1, n)
                    });
                    if let Some(e) = r.guard(e, ctx) {
                        r.check(e.is_nonnegative(), || format!("{}: {}", ctx(), render(&e.coeffs)));
                    }
                }
                for factors in kostka_factor_lists(&rs, k) {
                    let ctx = || format!("{} kostka {factors:?} k={k}", rs.label());
                    if let Some(m) = r.guard(eng.kostka(&factors, k, None), ctx) {
                        r.check(m.values().all(|p| p.is_nonnegative()), || format!("{}: {}", ctx(), render(&m)));
                    }
                }
            }
        }
    })
}

/// P5: thin characters live in Σ(λ) and shrink as the level grows.
pub fn p5_support() -> Report {
    timed(Report::new("P5", "support and quotient bounds", 1800), |r| {
        for rs in sweep_types() {
            for lam in orbit_box(&rs, 6) {
                let mut prev: Option<GradedCharacter> = None;
                for k in 1..=3 {
                    let ctx = || format!("{} D^({k})_{lam}", rs.label());
                    let Some(f) = r.guard(thin_gch(&rs, &lam, k), ctx) else { break };
                    let mut support: Vec<Weight> = f.terms().map(|t| t.0).collect();
                    support.sort();
                    support.dedup();
                    let outside: Vec<Weight> =
                        support.into_iter().filter(|mu| !sigma_contains(&rs, &lam, mu)).collect();
                    r.check(outside.is_empty(), || format!("{}: weights outside Σ(λ): {outside:?}", ctx()));
                    if let Some(p) = &prev {
                        r.check(f.dominated_by(p), || format!("{} exceeds D^({})", ctx(), k - 1));
                    }
                    prev = Some(f);
                }
            }
        }
    })
}

/// P6: `(P_λ : 𝕎^(k)_μ)_q = [W^(k)_μ : V_λ]_q`.
pub fn p6_reciprocity() -> Report {
    timed(Report::new("P6", "BGG reciprocity", 300), |r| {
        let a1 = rs("A", 1);
        let eng = Engine::new(&a1);
        let ws: Vec<Weight> = (0..=3).map(|a| w(&[a])).collect();
        for k in 1..=2 {
            for lam in &ws {
                for mu in &ws {
                    let ctx = || format!("A1 k={k} λ={lam} μ={mu} N=6");
                    if let Some(ok) = r.guard(eng.reciprocity_check(lam, mu, k, 6), ctx) {
                        r.check(ok, ctx);
                    }
                }
            }
        }
        let a2 = rs("A", 2);
        let eng = Engine::new(&a2);
        let ws = dominant_box(&a2, 1);
        for lam in &ws {
            for mu in &ws {
                let ctx = || format!("A2 k=1 λ={lam} μ={mu} N=4");
                if let Some(ok) = r.guard(eng.reciprocity_check(lam, mu, 1, 4), ctx) {
                    r.check(ok, ctx);
                }
            }
        }
    })
}

/// P7: saturation against the Weyl–Kac formula.
#[cfg(feature = "oracle")]
pub fn p7_weyl_kac() -> Report {
    timed(Report::new("P7", "Weyl–Kac oracle", 300), |r| {
        for rs in sweep_types() {
            for level in 1..=2 {
                for lam in dominant_box(&rs, level as i32) {
                    if rs.pair_theta_vee(&lam) > level {
                        continue;
                    }
                    let big = AffineWeight::new(lam, level, 0);
                    let ctx = || format!("{} Λ={big} N=6", rs.label());
                    if let Some(ok) = r.guard(crate::oracle::weyl_kac_check(&rs, &big, 6), ctx) {
                        r.check(ok, ctx);
                    }
                }
            }
        }
    })
}

#[cfg(not(feature = "oracle"))]
pub fn p7_weyl_kac() -> Report {
    let mut r = Report::new("P7", "Weyl–Kac oracle", 300);
    r.fail("built without the `oracle` feature".into());
    r
}

/// P8: the special Demazure extension identity.
pub fn p8_demext() -> Report {
    timed(Report::new("P8", "Demazure extension identity", 120), |r| {
        for rs in [rs("A", 1), rs("A", 2), rs("C", 2)] {
            for k in 2..=3 {
                for lam in dominant_box(&rs, k as i32) {
                    if rs.pair_theta_vee(&lam) != k {
                        continue;
                    }
                    let big = AffineWeight::new(lam, k, 0);
                    let ctx = || format!("{} Λ={big}", rs.label());
                    if let Some(ok) = r.guard(demext_check(&rs, &big), ctx) {
                        r.check(ok, ctx);
                    }
                }
            }
        }
    })
}

/// P9: stabilization of Kostka polynomials for `[(1, 2ϖ)]^n` on sl(2).
///
/// Levels `K = n ..= 2n` are compared with `K + 1`; the q → 1 totals at the
/// top level are compared with the decomposition of the tensor power.
pub fn p9_kostka() -> Report {
    timed(Report::new("P9", "Kostka stabilization", 120), |r| {
        let a1 = rs("A", 1);
        let eng = Engine::new(&a1);
        for n in 1..=4usize {
            let factors = vec![(1i64, w(&[2])); n];
            let top = 2 * n as i64;
            let mut tables = BTreeMap::new();
            for kk in n as i64..=top + 1 {
                let ctx = || format!("n={n} K={kk}");
                let Some(t) = r.guard(eng.kostka(&factors, kk, None), ctx) else { continue };
                tables.insert(kk, t);
            }
            for kk in n as i64..=top {
                if let (Some(a), Some(b)) = (tables.get(&kk), tables.get(&(kk + 1))) {
                    r.check(a == b, || format!("n={n}: K={kk} gives {}, K={} gives {}", render(a), kk + 1, render(b)));
                }
            }
            let Some(stable) = tables.get(&top) else { continue };
            let ctx = || format!("n={n} tensor power");
            let one = a1.finite_irrep_char(&w(&[2])).map(|v| {
                let mut s = v.slice(0);
                *s.entry(w(&[0])).or_default() += &Int::ONE;
                s
            });
            let Some(one) = r.guard(one, ctx) else { continue };
            let mut power = crate::charring::FinChar::default();
            power.insert(w(&[0]), Int::ONE);
            for _ in 0..n {
                let mut next = crate::charring::FinChar::default();
                for (x, a) in &power {
                    for (y, b) in &one {
                        *next.entry(x.add(y)).or_default() += &(a * b);
                    }
                }
                next.retain(|_, c| !c.is_zero());
                power = next;
            }
            let Some(dec) = r.guard(a1.decompose_slice(&power), ctx) else { continue };
            let want: BTreeMap<Weight, Int> = dec.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            let got: BTreeMap<Weight, Int> =
                stable.iter().map(|(x, p)| (*x, p.at_one())).filter(|(_, c)| !c.is_zero()).collect();
            r.check(got == want, || format!("n={n}: q→1 totals {got:?}, tensor decomposition {want:?}"));
        }
    })
}

/// A random exact character with raw exponents.
pub fn random_character(rs: &RootSystem, rng: &mut impl Rng, level: i64, terms: usize) -> GradedCharacter {
    let ts: Vec<(Weight, i64, Int)> = (0..terms)
        .map(|_| {
            let c: Vec<i32> = (0..rs.rank).map(|_| rng.gen_range(-3..=3)).collect();
            let mut coef = 0;
            while coef == 0 {
                coef = rng.gen_range(-3..=3);
            }
            (Weight::new(&c), rng.gen_range(-2..=2), Int::from(coef as i64))
        })
        .collect();
    GradedCharacter::from_terms(rs.rank, level, Truncation::Exact, Anchor::Raw, ts)
}

/// Order of `s_i s_j`, or `None` when infinite.
pub fn braid_order(rs: &RootSystem, i: usize, j: usize) -> Option<usize> {
    match affine_cartan(rs, i, j) * affine_cartan(rs, j, i) {
        0 => Some(2),
        1 => Some(3),
        2 => Some(4),
        3 => Some(6),
        _ => None,
    }
}

/// `ρ̂`: finite part ρ at the smallest level making it affine-regular.
pub fn affine_rho(rs: &RootSystem) -> AffineWeight {
    let rho = rs.rho();
    AffineWeight::new(rho, rs.pair_theta_vee(&rho) + 1, 0)
}

/// A random reduced word of length `len`, together with `w ρ̂`.
///
/// `s_i w > w` exactly when `⟨α_i∨, wρ̂⟩ > 0`, so prepending such letters keeps
/// the word reduced.
pub fn random_reduced_word(rs: &RootSystem, rng: &mut impl Rng, len: usize) -> (Vec<usize>, AffineWeight) {
    let mut x = affine_rho(rs);
    let mut word: Vec<usize> = Vec::new();
    for _ in 0..len {
        let up: Vec<usize> = (0..=rs.rank).filter(|&i| affine_pairing(rs, i, &x) > 0).collect();
        let i = *up.choose(rng).expect("a regular weight has an ascent");
        x = affine_reflect(rs, i, &x);
        word.insert(0, i);
    }
    (word, x)
}

/// P10: randomized algebraic properties.
pub fn p10_properties(cfg: &Config) -> Report {
    timed(Report::new("P10", "algebraic property suite", 600), |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let small = sweep_types();
        let n = cfg.samples;
        let pick = |rng: &mut ChaCha8Rng, v: &[RootSystem]| rng.gen_range(0..v.len());

        let mut idem = 0;
        for _ in 0..n {
            let rs = &small[pick(&mut rng, &small)];
            let level = rng.gen_range(1..=3);
            let f = random_character(rs, &mut rng, level, 4);
            let i = rng.gen_range(0..=rs.rank);
            let once = demazure_op(rs, i, &f);
            let twice = once.as_ref().ok().map(|g| demazure_op(rs, i, g));
            idem += 1;
            r.check(matches!((&once, &twice), (Ok(a), Some(Ok(b))) if a == b), || {
                format!("π_{i}² ≠ π_{i} on {} level {level}", rs.label())
            });
        }

        let mut braids = 0;
        while braids < n {
            let rs = &small[pick(&mut rng, &small)];
            let i = rng.gen_range(0..=rs.rank);
            let j = rng.gen_range(0..=rs.rank);
            let Some(m) = braid_order(rs, i, j).filter(|_| i != j) else { continue };
            let left: Vec<usize> = (0..m).map(|t| if t % 2 == 0 { i } else { j }).collect();
            let right: Vec<usize> = (0..m).map(|t| if t % 2 == 0 { j } else { i }).collect();
            let level = rng.gen_range(1..=3);
            let f = random_character(rs, &mut rng, level, 3);
            let a = apply_word(rs, &left, &f);
            let b = apply_word(rs, &right, &f);
            braids += 1;
            r.check(matches!((&a, &b), (Ok(x), Ok(y)) if x == y), || {
                format!("braid ({i},{j})^{m} fails on {}", rs.label())
            });
        }

        let word_types = [rs("A", 2), rs("C", 2)];
        for _ in 0..n {
            let rs = &word_types[rng.gen_range(0..2)];
            let len = rng.gen_range(1..=6);
            let (word, x) = random_reduced_word(rs, &mut rng, len);
            let Some((_, other)) = r.guard(to_dominant_affine(rs, &x), || format!("dominance of {x}")) else {
                continue;
            };
            let level = rng.gen_range(1..=3);
            let f = random_character(rs, &mut rng, level, 3);
            let a = apply_word(rs, &word, &f);
            let b = apply_word(rs, &other, &f);
            r.check(other.len() == word.len() && matches!((&a, &b), (Ok(x), Ok(y)) if x == y), || {
                format!("{}: words {word:?} and {other:?} disagree", rs.label())
            });
        }

        let all_types: Vec<RootSystem> = [("A", 3), ("B", 3), ("C", 3), ("D", 4), ("F", 4), ("B", 4)]
            .iter()
            .map(|(t, l)| rs(t, *l))
            .chain(sweep_types())
            .collect();
        for _ in 0..n {
            let rs = &all_types[rng.gen_range(0..all_types.len())];
            let c: Vec<i32> = (0..rs.rank).map(|_| rng.gen_range(-6..=6)).collect();
            let x = Weight::new(&c);
            let i = rng.gen_range(1..=rs.rank);
            let mu = AffineWeight::new(x, rng.gen_range(-3..=3), rng.gen_range(-5..=5));
            let j = rng.gen_range(0..=rs.rank);
            let back = affine_reflect(rs, j, &affine_reflect(rs, j, &mu));
            r.check(rs.reflect(i, &rs.reflect(i, &x)) == x && back == mu, || {
                format!("{}: reflection {i}/{j} not involutive at {x}", rs.label())
            });
        }

        for _ in 0..n {
            let rs = &small[pick(&mut rng, &small)];
            let level = rng.gen_range(1..=3);
            let doms: Vec<Weight> =
                dominant_box(rs, level as i32).into_iter().filter(|x| rs.pair_theta_vee(x) <= level).collect();
            let big = AffineWeight::new(*doms.choose(&mut rng).expect("0 is dominant"), level, 0);
            let len = rng.gen_range(1..=8);
            let (v, _) = random_reduced_word(rs, &mut rng, len);
            let sub: Vec<usize> = v.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            let wl = act(rs, &sub, &big).finite;
            let vl = act(rs, &v, &big).finite;
            r.check(cherednik_leq(rs, &wl, &vl), || {
                format!("{}: Λ={big}, v={v:?}, w={sub:?} gives {wl} ⋠ {vl}", rs.label())
            });
        }

        for _ in 0..n {
            let rs = &small[pick(&mut rng, &small)];
            let mut draw = || Weight::new(&(0..rs.rank).map(|_| rng.gen_range(-4..=4)).collect::<Vec<i32>>());
            let (lam, mu) = (draw(), draw());
            let direct = sigma_contains(rs, &lam, &mu);
            let hull = sigma_contains_hull(rs, &lam, &mu);
            r.check(hull.as_ref().is_ok_and(|h| *h == direct), || {
                format!("{}: Σ({lam}) ∋ {mu}: order says {direct}, hull says {hull:?}", rs.label())
            });
        }
        debug_assert_eq!(idem, n);
    })
}
