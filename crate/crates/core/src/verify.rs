//! Identity suites run by `inv231 verify`.
//!
//! Each suite compares closed forms, generating-function coefficients and
//! brute-force counts over a range of lengths and reports the first
//! counterexample it meets. Suites run in parallel; the report order is the
//! registration order regardless of scheduling.

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use crate::bijection::{
    enumerate_redblue, involution_to_tiling, tiling_to_involution, RedPlacement,
};
use crate::enumeration::*;
use crate::error::{Error, Result};
use crate::fibonacci::{count_bounded_tilings, fib_k};
use crate::layered::{
    build_layered, count_pattern_in_layered, decompose_layered, enumerate_layered, Composition,
    LayeredPattern,
};
use crate::perm::{
    count_occurrences_capped, enumerate_involutions, oracle_count_many,
    oracle_count_symmetric_many, perm, Constraint, Permutation, DEFAULT_INVOLUTION_CAP,
    DEFAULT_SYMMETRIC_CAP,
};
use crate::series::{geom_denominator, UniSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyConfig {
    /// Largest length checked by brute force.
    pub n_max: usize,
    /// Truncation order for generating-function checks.
    pub trunc: usize,
}

impl VerifyConfig {
    pub fn new(n_max: usize, trunc: usize) -> Result<Self> {
        if n_max > DEFAULT_INVOLUTION_CAP {
            return Err(Error::CapExceeded {
                n: n_max,
                cap: DEFAULT_INVOLUTION_CAP,
            });
        }
        if trunc < n_max {
            return Err(Error::Precondition(format!(
                "truncation {trunc} is below the oracle range {n_max}"
            )));
        }
        Ok(VerifyConfig { n_max, trunc })
    }

    // S_n brute force stays one below its enumeration cap
    fn sym_max(&self) -> usize {
        self.n_max.min(DEFAULT_SYMMETRIC_CAP - 1)
    }
}

/// Outcome of one identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub suite: &'static str,
    pub identity: String,
    pub range: String,
    pub checks: u64,
    pub passed: bool,
    pub counterexample: Option<String>,
}

struct Tally {
    suite: &'static str,
    identity: String,
    range: String,
    checks: u64,
    failure: Option<String>,
}

impl Tally {
    fn new(suite: &'static str, identity: impl Into<String>, range: impl Into<String>) -> Self {
        Tally {
            suite,
            identity: identity.into(),
            range: range.into(),
            checks: 0,
            failure: None,
        }
    }

    fn eq<T: PartialEq + Debug>(&mut self, got: T, want: T, ctx: impl FnOnce() -> String) {
        self.checks += 1;
        if got != want && self.failure.is_none() {
            self.failure = Some(format!("{}: got {got:?}, expected {want:?}", ctx()));
        }
    }

    fn holds(&mut self, ok: bool, ctx: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(ctx());
        }
    }

    fn fail(&mut self, msg: String) {
        self.checks += 1;
        if self.failure.is_none() {
            self.failure = Some(msg);
        }
    }

    fn finish(self) -> IdentityReport {
        IdentityReport {
            suite: self.suite,
            identity: self.identity,
            range: self.range,
            checks: self.checks,
            passed: self.failure.is_none(),
            counterexample: self.failure,
        }
    }
}

pub struct Suite {
    pub id: &'static str,
    pub title: &'static str,
    run: fn(&VerifyConfig) -> Vec<IdentityReport>,
}

pub fn suites() -> &'static [Suite] {
    &[
        Suite {
            id: "fibonacci",
            title: "k-generalized Fibonacci GF and tiling counts",
            run: suite_fibonacci,
        },
        Suite {
            id: "beta",
            title: "S_n(132,213,beta_abc) formula",
            run: suite_beta,
        },
        Suite {
            id: "simion-schmidt",
            title: "S_n(132,213,123) is Fibonacci",
            run: suite_simion_schmidt,
        },
        Suite {
            id: "layered-avoiders",
            title: "231-avoiding involutions are the layered permutations",
            run: suite_layered_avoiders,
        },
        Suite {
            id: "layered",
            title: "composition-level occurrence counting",
            run: suite_layered,
        },
        Suite {
            id: "avoiders-by-decreasing",
            title: "bivariate GF of I_n(231) by k...21 occurrences",
            run: suite_avoiders_by_decreasing,
        },
        Suite {
            id: "avoiders-decreasing-closed",
            title: "I_n^r(231 | k...21) for r <= k",
            run: suite_avoiders_decreasing_closed,
        },
        Suite {
            id: "avoiders-one-layered",
            title: "I_n^1(231 | layered) and [1^k, l]",
            run: suite_avoiders_one_layered,
        },
        Suite {
            id: "one-231",
            title: "involutions with exactly one 231",
            run: suite_one_231,
        },
        Suite {
            id: "tiling-bijection",
            title: "red/blue tiling bijection",
            run: suite_tiling_bijection,
        },
        Suite {
            id: "one-231-no-decreasing",
            title: "C_n(k...21)",
            run: suite_one_231_no_decreasing,
        },
        Suite {
            id: "one-231-no-layered",
            title: "C_n(layered) recursion",
            run: suite_one_231_no_layered,
        },
        Suite {
            id: "one-231-by-decreasing",
            title: "bivariate GF of C_n^r(k...21)",
            run: suite_one_231_by_decreasing,
        },
        Suite {
            id: "one-231-decreasing-closed",
            title: "C_n^r(k...21) for r <= k",
            run: suite_one_231_decreasing_closed,
        },
        Suite {
            id: "one-231-one-layered",
            title: "C_n^1(layered) recursion",
            run: suite_one_231_one_layered,
        },
        Suite {
            id: "recurrence",
            title: "layered counts obey Fibonacci-type recurrences",
            run: suite_recurrence,
        },
    ]
}

/// Runs every suite whose id is in `only` (all suites when `only` is empty).
pub fn run(config: &VerifyConfig, only: &[String]) -> Result<Vec<IdentityReport>> {
    let known: Vec<&str> = suites().iter().map(|s| s.id).collect();
    if let Some(bad) = only.iter().find(|id| !known.contains(&id.as_str())) {
        return Err(Error::Precondition(format!(
            "unknown suite {bad:?}; known suites: {}",
            known.join(", ")
        )));
    }
    let chosen: Vec<&Suite> = suites()
        .iter()
        .filter(|s| only.is_empty() || only.iter().any(|o| o == s.id))
        .collect();
    let reports: Vec<Vec<IdentityReport>> = chosen.par_iter().map(|s| (s.run)(config)).collect();
    Ok(reports.into_iter().flatten().collect())
}

fn p231() -> Permutation {
    perm(&[2, 3, 1])
}

fn p312() -> Permutation {
    perm(&[3, 1, 2])
}

fn coeff_count(s: &UniSeries, n: usize) -> BigInt {
    s.coeff(n).cloned().unwrap_or_default()
}

fn to_int(v: BigUint) -> BigInt {
    BigInt::from(v)
}

fn suite_fibonacci(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut gf = Tally::new(
        "fibonacci",
        "[x^n] x/(1-x-...-x^k) = F_{k,n}",
        format!("k<=5, n<={}", cfg.trunc),
    );
    for k in 1..=5 {
        let s = geom_denominator(k, cfg.trunc)
            .reciprocal()
            .unwrap()
            .shift(1);
        for n in 0..=cfg.trunc {
            gf.eq(coeff_count(&s, n), to_int(fib_k(k, n as i64)), || {
                format!("k={k} n={n}")
            });
        }
    }
    let tmax = cfg.n_max.max(15);
    let mut tiles = Tally::new(
        "fibonacci",
        "tilings with parts <= k = F_{k,n+1}",
        format!("k<=5, n<={tmax}"),
    );
    for k in 1..=5 {
        for n in 0..=tmax {
            tiles.eq(count_bounded_tilings(n, k), fib_k(k, n as i64 + 1), || {
                format!("k={k} n={n}")
            });
        }
    }
    vec![gf.finish(), tiles.finish()]
}

fn suite_beta(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let nmax = cfg.sym_max().min(8);
    let mut t = Tally::new(
        "beta",
        "formula = |S_n(132,213,beta_abc)|",
        format!("a+b+c<=5, n<={nmax}"),
    );
    let mut triples = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            for c in 1..=3 {
                if a + b + c <= 5 {
                    triples.push((a, b, c));
                }
            }
        }
    }
    for n in 0..=nmax {
        let sets: Vec<Vec<Constraint>> = triples
            .iter()
            .map(|&(a, b, c)| {
                vec![
                    Constraint::avoids(perm(&[1, 3, 2])),
                    Constraint::avoids(perm(&[2, 1, 3])),
                    Constraint::avoids(build_beta(a, b, c).unwrap()),
                ]
            })
            .collect();
        let oracle = oracle_count_symmetric_many(n, &sets).unwrap();
        for (&(a, b, c), o) in triples.iter().zip(oracle) {
            t.eq(count_s_132_213_beta(n, a, b, c).unwrap(), o, || {
                format!("a={a} b={b} c={c} n={n}")
            });
        }
    }
    vec![t.finish()]
}

fn suite_simion_schmidt(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let nmax = cfg.sym_max();
    let mut t = Tally::new(
        "simion-schmidt",
        "|S_n(132,213,123)| = F_{n+1}",
        format!("n<={nmax}"),
    );
    let set = vec![vec![
        Constraint::avoids(perm(&[1, 3, 2])),
        Constraint::avoids(perm(&[2, 1, 3])),
        Constraint::avoids(perm(&[1, 2, 3])),
    ]];
    for n in 0..=nmax {
        let got = oracle_count_symmetric_many(n, &set).unwrap().remove(0);
        t.eq(got, fib_k(2, n as i64 + 1), || format!("n={n}"));
    }
    vec![t.finish()]
}

fn sorted_layered_images(n: usize) -> Vec<Permutation> {
    let mut v: Vec<_> = enumerate_layered(n).map(|c| build_layered(&c)).collect();
    v.sort();
    v
}

fn suite_layered_avoiders(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let nmax = cfg.n_max;
    let smax = cfg.sym_max();
    let mut equal = Tally::new(
        "layered-avoiders",
        "#231 = #312 in every involution",
        format!("n<={nmax}"),
    );
    let mut sets = Tally::new(
        "layered-avoiders",
        "I_n(231) = I_n(312) = layered",
        format!("n<={nmax}"),
    );
    let mut sym = Tally::new(
        "layered-avoiders",
        "S_n(231,312) = layered",
        format!("n<={smax}"),
    );
    let mut card = Tally::new(
        "layered-avoiders",
        "|I_n(231)| = 2^(n-1)",
        format!("1<=n<={nmax}"),
    );
    for n in 0..=nmax {
        let mut avoid231 = Vec::new();
        let mut avoid312 = Vec::new();
        for p in enumerate_involutions(n).unwrap() {
            let a = p.count_occurrences(&p231());
            let b = p.count_occurrences(&p312());
            equal.eq(&a, &b, || format!("{p}"));
            if a == BigUint::ZERO {
                avoid231.push(p.clone());
            }
            if b == BigUint::ZERO {
                avoid312.push(p);
            }
        }
        let layered = sorted_layered_images(n);
        sets.holds(avoid231 == layered && avoid312 == layered, || {
            format!("n={n}")
        });
        if n >= 1 {
            card.eq(avoid231.len(), 1 << (n - 1), || format!("n={n}"));
        }
        if n <= smax {
            let mut s: Vec<_> = crate::perm::enumerate_permutations(n)
                .unwrap()
                .filter(|p| p.avoids(&p231()) && p.avoids(&p312()))
                .collect();
            s.sort();
            sym.holds(s == layered, || format!("n={n}"));
        }
    }
    let mut rev = Tally::new(
        "layered-avoiders",
        "S_n(231,312,t) = reverse of S_n(132,213,t^r)",
        format!("|t|<=4, n<={}", smax.min(8)),
    );
    let mut pats: Vec<Permutation> = Vec::new();
    for k in 1..=4 {
        pats.extend(crate::perm::enumerate_permutations(k).unwrap());
    }
    for n in 0..=smax.min(8) {
        let left: Vec<Vec<Constraint>> = pats
            .iter()
            .map(|t| {
                vec![
                    Constraint::avoids(p231()),
                    Constraint::avoids(p312()),
                    Constraint::avoids(t.clone()),
                ]
            })
            .collect();
        let right: Vec<Vec<Constraint>> = pats
            .iter()
            .map(|t| {
                vec![
                    Constraint::avoids(perm(&[1, 3, 2])),
                    Constraint::avoids(perm(&[2, 1, 3])),
                    Constraint::avoids(t.reverse()),
                ]
            })
            .collect();
        let l = oracle_count_symmetric_many(n, &left).unwrap();
        let r = oracle_count_symmetric_many(n, &right).unwrap();
        // restricting to involutions first must not change the left side
        let li = oracle_count_many(n, &left).unwrap();
        for ((t, a), (b, c)) in pats.iter().zip(&l).zip(r.iter().zip(&li)) {
            rev.eq(a, b, || format!("t={t} n={n}"));
            rev.eq(a, c, || format!("involution restriction, t={t} n={n}"));
        }
    }
    vec![
        equal.finish(),
        sets.finish(),
        sym.finish(),
        card.finish(),
        rev.finish(),
    ]
}

fn suite_layered(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let rmax = cfg.n_max.max(12);
    let mut rt = Tally::new("layered", "decompose(build(c)) = c", format!("n<={rmax}"));
    for n in 0..=rmax {
        for c in enumerate_layered(n) {
            rt.eq(
                decompose_layered(&build_layered(&c)),
                Some(c.clone()),
                || format!("{c}"),
            );
        }
    }
    let hmax = cfg.n_max.min(9);
    let mut occ = Tally::new(
        "layered",
        "composition count = permutation count",
        format!("host n<={hmax}, pattern size<=6"),
    );
    let pats: Vec<Composition> = (1..=6).flat_map(enumerate_layered).collect();
    for n in 0..=hmax {
        for host in enumerate_layered(n) {
            let hp = build_layered(&host);
            for pat in &pats {
                let direct = hp.count_occurrences(&build_layered(pat));
                occ.eq(count_pattern_in_layered(&host, pat), direct, || {
                    format!("host={host} pat={pat}")
                });
            }
        }
    }
    vec![rt.finish(), occ.finish()]
}

fn suite_avoiders_by_decreasing(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut t = Tally::new(
        "avoiders-by-decreasing",
        "[x^n y^r] 1/(1 - sum x^j y^C(j,k)) = |I_n^r(231|k...21)|",
        format!("k in 2..=5, r<=min(k,3), n<={}", cfg.n_max),
    );
    let gfs: Vec<_> = (2..=5)
        .map(|k| (k, gf_a_xy_k21(k, cfg.trunc).unwrap()))
        .collect();
    for n in 0..=cfg.n_max {
        let mut keys = Vec::new();
        let mut sets = Vec::new();
        for k in 2..=5usize {
            for r in 0..=k.min(3) {
                keys.push((k, r));
                sets.push(vec![
                    Constraint::avoids(p231()),
                    Constraint::exactly(Permutation::decreasing(k), r as u64),
                ]);
            }
        }
        let oracle = oracle_count_many(n, &sets).unwrap();
        for ((k, r), o) in keys.into_iter().zip(oracle) {
            let g = &gfs[k - 2].1;
            t.eq(g.coeff(n, &BigUint::from(r)).unwrap(), to_int(o), || {
                format!("k={k} r={r} n={n}")
            });
        }
    }
    let mut y1 = Tally::new(
        "avoiders-by-decreasing",
        "y=1 specialization gives 2^(n-1)",
        format!("n<={}", cfg.trunc),
    );
    for (k, g) in &gfs {
        let s = g.at_y_one();
        for n in 1..=cfg.trunc {
            y1.eq(coeff_count(&s, n), BigInt::from(1u8) << (n - 1), || {
                format!("k={k} n={n}")
            });
        }
    }
    vec![t.finish(), y1.finish()]
}

fn suite_avoiders_decreasing_closed(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut oracle_t = Tally::new(
        "avoiders-decreasing-closed",
        "gap-sum formula = brute force",
        format!("k in 2..=5, r<=min(k,3), n<={}", cfg.n_max),
    );
    let mut dual = Tally::new(
        "avoiders-decreasing-closed",
        "formula = [x^n] x^{kr}/D_{k-1}^{r+1}",
        format!("k<=6, r<=k, n<={}", cfg.trunc),
    );
    for n in 0..=cfg.n_max {
        let mut keys = Vec::new();
        let mut sets = Vec::new();
        for k in 2..=5usize {
            for r in 0..=k.min(3) {
                keys.push((k, r));
                sets.push(vec![
                    Constraint::avoids(p231()),
                    Constraint::exactly(Permutation::decreasing(k), r as u64),
                ]);
            }
        }
        let oracle = oracle_count_many(n, &sets).unwrap();
        for ((k, r), o) in keys.into_iter().zip(oracle) {
            oracle_t.eq(count_a_r_k21(n, k, r).unwrap(), o, || {
                format!("k={k} r={r} n={n}")
            });
        }
    }
    for k in 1..=6 {
        for r in 0..=k {
            let g = gf_a_r_k21(k, r, cfg.trunc).unwrap();
            for n in 0..=cfg.trunc {
                dual.eq(
                    coeff_count(&g, n),
                    to_int(count_a_r_k21(n, k, r).unwrap()),
                    || format!("k={k} r={r} n={n}"),
                );
            }
        }
    }
    vec![oracle_t.finish(), dual.finish()]
}

pub(crate) fn avoiders_one_layered_patterns() -> Vec<Composition> {
    [&[2, 2][..], &[1, 4], &[3, 2], &[2, 1, 2], &[1, 1, 3]]
        .iter()
        .map(|p| Composition::new(p.to_vec()).unwrap())
        .collect()
}

fn suite_avoiders_one_layered(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut t = Tally::new(
        "avoiders-one-layered",
        "formula = GF coefficient = brute force for I_n^1(231|tau)",
        format!(
            "tau in {{[2,2],[1,4],[3,2],[2,1,2],[1,1,3]}}, n<={}",
            cfg.n_max
        ),
    );
    let mut c35 = Tally::new(
        "avoiders-one-layered",
        "one copy of [1^k,l] = F_{l-1,n-k-l+1}",
        format!("k<=2, l<=4, n<={}", cfg.n_max),
    );
    let pats = avoiders_one_layered_patterns();
    let gfs: Vec<_> = pats
        .iter()
        .map(|c| gf_a1_layered(&LayeredPattern::new(c.clone()).unwrap(), cfg.trunc))
        .collect();
    let mut cor = Vec::new();
    for k in 1..=2 {
        for l in 1..=4 {
            cor.push((k, l));
        }
    }
    for n in 0..=cfg.n_max {
        let mut sets: Vec<Vec<Constraint>> = pats
            .iter()
            .map(|c| {
                vec![
                    Constraint::avoids(p231()),
                    Constraint::exactly(build_layered(c), 1),
                ]
            })
            .collect();
        sets.extend(cor.iter().map(|&(k, l)| {
            let c = Composition::ones_then(k, l).unwrap();
            vec![
                Constraint::avoids(p231()),
                Constraint::exactly(build_layered(&c), 1),
            ]
        }));
        let oracle = oracle_count_many(n, &sets).unwrap();
        for (i, c) in pats.iter().enumerate() {
            let f = count_a1_layered(n, &LayeredPattern::new(c.clone()).unwrap());
            t.eq(&f, &oracle[i], || {
                format!("tau={c} n={n} (formula vs brute force)")
            });
            t.eq(coeff_count(&gfs[i], n), to_int(f), || {
                format!("tau={c} n={n} (GF vs formula)")
            });
        }
        for (j, &(k, l)) in cor.iter().enumerate() {
            c35.eq(
                count_one_occ_1k_l(n, k, l).unwrap(),
                oracle[pats.len() + j].clone(),
                || format!("k={k} l={l} n={n}"),
            );
        }
    }
    vec![t.finish(), c35.finish()]
}

fn suite_one_231(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut t = Tally::new(
        "one-231",
        "tilings = brute force = (n-1)2^(n-6) (n>=5), 1 at n=4, 0 below",
        format!("n<={}", cfg.n_max),
    );
    let mut split = Tally::new(
        "one-231",
        "left/right/interior split 2^(n-5), 2^(n-5), (n-5)2^(n-6)",
        format!("5<=n<={}", cfg.n_max),
    );
    for n in 0..=cfg.n_max {
        let tilings: Vec<_> = enumerate_redblue(n).collect();
        let oracle = oracle_count_many(n, &[vec![Constraint::exactly(p231(), 1)]])
            .unwrap()
            .remove(0);
        let formula = count_one231(n);
        t.eq(BigUint::from(tilings.len()), oracle.clone(), || {
            format!("n={n} tilings vs brute force")
        });
        t.eq(formula, oracle, || format!("n={n} formula vs brute force"));
        if n >= 5 {
            let count =
                |want: RedPlacement| tilings.iter().filter(|t| t.placement() == want).count();
            split.eq(count(RedPlacement::FarLeft), 1 << (n - 5), || {
                format!("n={n} left")
            });
            split.eq(count(RedPlacement::FarRight), 1 << (n - 5), || {
                format!("n={n} right")
            });
            split.eq(count(RedPlacement::Interior) << 6, (n - 5) << n, || {
                format!("n={n} interior")
            });
        }
    }
    vec![t.finish(), split.finish()]
}

fn suite_tiling_bijection(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut t = Tally::new(
        "tiling-bijection",
        "tiling -> involution is a bijection onto one-231 involutions",
        format!("n<={}", cfg.n_max),
    );
    let mut transport = Tally::new(
        "tiling-bijection",
        "k...21 occurrences read off the tiles",
        format!("k in 3..=5, n<={}", cfg.n_max.min(11)),
    );
    for n in 0..=cfg.n_max {
        let mut images = Vec::new();
        for tiling in enumerate_redblue(n) {
            let p = tiling_to_involution(&tiling);
            t.holds(p.is_involution(), || {
                format!("{tiling} -> {p} is not an involution")
            });
            t.eq(
                count_occurrences_capped(p.entries(), &[2, 3, 1], 1),
                1,
                || format!("{tiling} -> {p}"),
            );
            match involution_to_tiling(&p) {
                Ok(back) => t.eq(&back, &tiling, || format!("roundtrip of {tiling}")),
                Err(e) => t.fail(format!("inverse of {p}: {e}")),
            }
            if n <= 11 {
                for k in 3..=5 {
                    transport.eq(
                        tiling.decreasing_occurrences(k),
                        p.count_occurrences(&Permutation::decreasing(k)),
                        || format!("{tiling} k={k}"),
                    );
                }
            }
            images.push(p);
        }
        images.sort();
        let expected: Vec<_> = enumerate_involutions(n)
            .unwrap()
            .filter(|p| count_occurrences_capped(p.entries(), &[2, 3, 1], 1) == 1)
            .collect();
        t.holds(images == expected, || format!("image set differs at n={n}"));
    }
    vec![t.finish(), transport.finish()]
}

fn suite_one_231_no_decreasing(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut t = Tally::new(
        "one-231-no-decreasing",
        "formula = GF coefficient = brute force for C_n(k...21)",
        format!("k in 4..=6, n<={}", cfg.n_max),
    );
    let gfs: Vec<_> = (4..=6).map(|k| gf_c_k21(k, cfg.trunc).unwrap()).collect();
    for n in 0..=cfg.n_max {
        let sets: Vec<_> = (4..=6)
            .map(|k| {
                vec![
                    Constraint::exactly(p231(), 1),
                    Constraint::avoids(Permutation::decreasing(k)),
                ]
            })
            .collect();
        let oracle = oracle_count_many(n, &sets).unwrap();
        for (i, k) in (4..=6).enumerate() {
            let f = count_c_k21(n, k).unwrap();
            t.eq(&f, &oracle[i], || {
                format!("k={k} n={n} (formula vs brute force)")
            });
            t.eq(coeff_count(&gfs[i], n), to_int(f), || {
                format!("k={k} n={n} (GF vs formula)")
            });
        }
    }
    let mut dual = Tally::new(
        "one-231-no-decreasing",
        "formula = GF coefficient",
        format!("k in 4..=8, n<={}", cfg.trunc),
    );
    for k in 4..=8 {
        let g = gf_c_k21(k, cfg.trunc).unwrap();
        for n in 0..=cfg.trunc {
            dual.eq(
                coeff_count(&g, n),
                to_int(count_c_k21(n, k).unwrap()),
                || format!("k={k} n={n}"),
            );
        }
    }
    vec![t.finish(), dual.finish()]
}

pub(crate) fn one_231_no_layered_patterns() -> Vec<Composition> {
    [&[4][..], &[5], &[1, 4], &[4, 1], &[4, 2], &[2, 4]]
        .iter()
        .map(|p| Composition::new(p.to_vec()).unwrap())
        .collect()
}

fn suite_one_231_no_layered(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let pats = one_231_no_layered_patterns();
    let mut t = Tally::new(
        "one-231-no-layered",
        "recursion coefficient = |C_n(tau)| by brute force",
        format!(
            "tau in {{[4],[5],[1,4],[4,1],[4,2],[2,4]}}, n<={}",
            cfg.n_max
        ),
    );
    let gfs: Vec<_> = pats.iter().map(|c| gf_c_layered(c, cfg.trunc)).collect();
    for n in 0..=cfg.n_max {
        let sets: Vec<_> = pats
            .iter()
            .map(|c| {
                vec![
                    Constraint::exactly(p231(), 1),
                    Constraint::avoids(build_layered(c)),
                ]
            })
            .collect();
        let oracle = oracle_count_many(n, &sets).unwrap();
        for ((c, g), o) in pats.iter().zip(&gfs).zip(oracle) {
            t.eq(coeff_count(g, n), to_int(o), || format!("tau={c} n={n}"));
        }
    }
    let mut sym = Tally::new(
        "one-231-no-layered",
        "recursion for [l] = x^4/D_{l-1}^2",
        format!("4<=l<=8, N={}", cfg.trunc),
    );
    for l in 4..=8 {
        let c = Composition::new(vec![l]).unwrap();
        sym.eq(
            gf_c_layered(&c, cfg.trunc),
            gf_c_k21(l, cfg.trunc).unwrap(),
            || format!("l={l}"),
        );
    }
    let mut zero = Tally::new(
        "one-231-no-layered",
        "[1], [2], [3] give the zero series",
        format!("N={}", cfg.trunc),
    );
    for l in 1..=3 {
        zero.holds(
            gf_c_layered(&Composition::new(vec![l]).unwrap(), cfg.trunc).is_zero(),
            || format!("l={l}"),
        );
    }
    vec![t.finish(), sym.finish(), zero.finish()]
}

fn suite_one_231_by_decreasing(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut t = Tally::new(
        "one-231-by-decreasing",
        "[x^n y^r] x^4/(1 - sum x^j y^C(j,k))^2 = |C_n^r(k...21)|",
        format!("k in 4..=5, r<=2, n<={}", cfg.n_max),
    );
    let gfs: Vec<_> = (4..=5)
        .map(|k| gf_c_xy_k21(k, cfg.trunc).unwrap())
        .collect();
    for n in 0..=cfg.n_max {
        let mut keys = Vec::new();
        let mut sets = Vec::new();
        for k in 4..=5usize {
            for r in 0..=2usize {
                keys.push((k, r));
                sets.push(vec![
                    Constraint::exactly(p231(), 1),
                    Constraint::exactly(Permutation::decreasing(k), r as u64),
                ]);
            }
        }
        let oracle = oracle_count_many(n, &sets).unwrap();
        for ((k, r), o) in keys.into_iter().zip(oracle) {
            let c = gfs[k - 4].coeff(n, &BigUint::from(r)).unwrap();
            t.eq(c, to_int(o), || format!("k={k} r={r} n={n}"));
        }
    }
    let mut y1 = Tally::new(
        "one-231-by-decreasing",
        "y=1 specialization gives the one-231 count",
        format!("n<={}", cfg.trunc),
    );
    for (i, g) in gfs.iter().enumerate() {
        let s = g.at_y_one();
        for n in 0..=cfg.trunc {
            y1.eq(coeff_count(&s, n), to_int(count_one231(n)), || {
                format!("k={} n={n}", i + 4)
            });
        }
    }
    vec![t.finish(), y1.finish()]
}

fn suite_one_231_decreasing_closed(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut t = Tally::new(
        "one-231-decreasing-closed",
        "formula = brute force for C_n^r(k...21)",
        format!("k in 4..=5, r<=2, n<={}", cfg.n_max),
    );
    for n in 0..=cfg.n_max {
        let mut keys = Vec::new();
        let mut sets = Vec::new();
        for k in 4..=5usize {
            for r in 0..=2usize {
                keys.push((k, r));
                sets.push(vec![
                    Constraint::exactly(p231(), 1),
                    Constraint::exactly(Permutation::decreasing(k), r as u64),
                ]);
            }
        }
        let oracle = oracle_count_many(n, &sets).unwrap();
        for ((k, r), o) in keys.into_iter().zip(oracle) {
            t.eq(count_c_r_k21(n, k, r).unwrap(), o, || {
                format!("k={k} r={r} n={n}")
            });
        }
    }
    let mut dual = Tally::new(
        "one-231-decreasing-closed",
        "formula = [x^n] (r+1)x^{kr+4}/D_{k-1}^{r+2}",
        format!("k in 4..=6, r<=k, n<={}", cfg.trunc),
    );
    for k in 4..=6 {
        for r in 0..=k {
            let g = gf_c_r_k21(k, r, cfg.trunc).unwrap();
            for n in 0..=cfg.trunc {
                dual.eq(
                    coeff_count(&g, n),
                    to_int(count_c_r_k21(n, k, r).unwrap()),
                    || format!("k={k} r={r} n={n}"),
                );
            }
        }
    }
    vec![t.finish(), dual.finish()]
}

pub(crate) fn one_231_one_layered_patterns() -> Vec<Composition> {
    [&[4][..], &[5], &[1, 4], &[4, 1]]
        .iter()
        .map(|p| Composition::new(p.to_vec()).unwrap())
        .collect()
}

fn suite_one_231_one_layered(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    let mut reports = Vec::new();
    let pats = one_231_one_layered_patterns();
    let gfs: Vec<_> = pats
        .iter()
        .map(|c| gf_c1_layered(c, cfg.trunc).unwrap())
        .collect();
    let mut per_pattern: Vec<Tally> = pats
        .iter()
        .map(|c| {
            Tally::new(
                "one-231-one-layered",
                format!("recursion coefficient = |C_n^1({c})| by brute force"),
                format!("n<={}", cfg.n_max),
            )
        })
        .collect();
    for n in 0..=cfg.n_max {
        let sets: Vec<_> = pats
            .iter()
            .map(|c| {
                vec![
                    Constraint::exactly(p231(), 1),
                    Constraint::exactly(build_layered(c), 1),
                ]
            })
            .collect();
        let oracle = oracle_count_many(n, &sets).unwrap();
        for ((tally, g), o) in per_pattern.iter_mut().zip(&gfs).zip(oracle) {
            tally.eq(coeff_count(g, n), to_int(o), || format!("n={n}"));
        }
    }
    reports.extend(per_pattern.into_iter().map(Tally::finish));
    let mut seed = Tally::new(
        "one-231-one-layered",
        "single-layer seed = r=1 closed form",
        format!("4<=l<=8, N={}", cfg.trunc),
    );
    for l in 4..=8 {
        let c = Composition::new(vec![l]).unwrap();
        seed.eq(
            gf_c1_layered(&c, cfg.trunc).unwrap(),
            gf_c_r_k21(l, 1, cfg.trunc).unwrap(),
            || format!("l={l}"),
        );
    }
    reports.push(seed.finish());
    reports
}

fn suite_recurrence(cfg: &VerifyConfig) -> Vec<IdentityReport> {
    // a wider window than cfg.trunc so the numerator degree bound leaves room
    let trunc = cfg.trunc.max(60);
    let mut c = Tally::new(
        "recurrence",
        "C_tau(x) times its geometric denominators is a polynomial",
        format!("tau in one-231-no-layered set, N={trunc}"),
    );
    for pat in one_231_no_layered_patterns() {
        let s = gf_c_layered(&pat, trunc);
        let orders = c_layered_denominator_orders(&pat);
        let deg = orders.iter().sum::<usize>() + pat.total() + 4;
        c.holds(satisfies_geom_recurrence(&s, &orders, deg), || {
            format!("tau={pat}")
        });
    }
    let mut c1 = Tally::new(
        "recurrence",
        "C^1_tau(x) times its geometric denominators is a polynomial",
        format!("tau in one-231-one-layered set, N={trunc}"),
    );
    for pat in one_231_one_layered_patterns() {
        let s = gf_c1_layered(&pat, trunc).unwrap();
        let orders = c1_layered_denominator_orders(&pat);
        let deg = orders.iter().sum::<usize>() + pat.total() + 4;
        c1.holds(satisfies_geom_recurrence(&s, &orders, deg), || {
            format!("tau={pat}")
        });
    }
    vec![c.finish(), c1.finish()]
}
