//! Acceptance gate. Each criterion compares closed forms and generating
//! functions against exhaustive enumeration with exact equality, prints one
//! PASS/FAIL line, and the process exits nonzero if any criterion fails.

use std::fmt::Debug;
use std::process::ExitCode;
use std::time::Instant;

use inv231::enumeration::*;
use inv231::perm::{enumerate_permutations, oracle_count_symmetric_many};
use inv231::{
    build_layered, count_bounded_tilings, enumerate_involutions, enumerate_layered,
    enumerate_redblue, fib_k, geom_denominator, involution_to_tiling, oracle_count_many,
    tiling_to_involution, BigInt, BigUint, Composition, Constraint, LayeredPattern, Permutation,
    UniSeries,
};

type Criterion = (&'static str, fn(&mut Check));

#[derive(Default)]
struct Check {
    count: u64,
    failure: Option<String>,
}

impl Check {
    fn eq<T: PartialEq + Debug>(&mut self, got: T, want: T, ctx: impl FnOnce() -> String) {
        self.count += 1;
        if got != want && self.failure.is_none() {
            self.failure = Some(format!("{}: got {got:?}, expected {want:?}", ctx()));
        }
    }

    fn holds(&mut self, ok: bool, ctx: impl FnOnce() -> String) {
        self.count += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(ctx());
        }
    }
}

fn p(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

fn comp(v: &[usize]) -> Composition {
    Composition::new(v.to_vec()).unwrap()
}

fn coeff(s: &UniSeries, n: usize) -> BigInt {
    s.coeff(n).unwrap().clone()
}

fn int(v: BigUint) -> BigInt {
    BigInt::from(v)
}

fn avoid(t: Permutation) -> Constraint {
    Constraint::avoids(t)
}

fn one231() -> Constraint {
    Constraint::exactly(p(&[2, 3, 1]), 1)
}

// 1. Involutions: equal 231/312 counts, avoiders are the layered permutations.
fn criterion_1(c: &mut Check) {
    for n in 0..=9 {
        let mut a231 = Vec::new();
        let mut a312 = Vec::new();
        for q in enumerate_involutions(n).unwrap() {
            let x = q.count_occurrences(&p(&[2, 3, 1]));
            let y = q.count_occurrences(&p(&[3, 1, 2]));
            c.eq(&x, &y, || format!("231 vs 312 counts in {q}"));
            if x == BigUint::ZERO {
                a231.push(q.clone());
            }
            if y == BigUint::ZERO {
                a312.push(q);
            }
        }
        let mut sym: Vec<_> = enumerate_permutations(n)
            .unwrap()
            .filter(|q| q.avoids(&p(&[2, 3, 1])) && q.avoids(&p(&[3, 1, 2])))
            .collect();
        let mut layered: Vec<_> = enumerate_layered(n).map(|k| build_layered(&k)).collect();
        a231.sort();
        a312.sort();
        sym.sort();
        layered.sort();
        c.holds(a231 == layered, || {
            format!("I_{n}(231) differs from layered")
        });
        c.holds(a312 == layered, || {
            format!("I_{n}(312) differs from layered")
        });
        c.holds(sym == layered, || {
            format!("S_{n}(231,312) differs from layered")
        });
    }
    for n in 1..=12 {
        let got = oracle_count_many(n, &[vec![avoid(p(&[2, 3, 1]))]])
            .unwrap()
            .remove(0);
        c.eq(got, BigUint::from(1u8) << (n - 1), || {
            format!("|I_{n}(231)|")
        });
    }
}

// 2. One 231: tilings and brute force both give (n-1)2^(n-6).
fn criterion_2(c: &mut Check) {
    for n in 0..=12usize {
        let want = match n {
            0..=3 => BigUint::ZERO,
            4 => BigUint::from(1u8),
            // (n-1) 2^(n-6), exact for n >= 5
            _ => (BigUint::from(n - 1) << n) >> 6,
        };
        let tilings = BigUint::from(enumerate_redblue(n).count());
        let oracle = oracle_count_many(n, &[vec![one231()]]).unwrap().remove(0);
        c.eq(&tilings, &want, || format!("tilings at n={n}"));
        c.eq(&oracle, &want, || format!("brute force at n={n}"));
    }
}

// 3. The tiling map is a bijection onto one-231 involutions.
fn criterion_3(c: &mut Check) {
    for n in 0..=12 {
        let mut images = Vec::new();
        for t in enumerate_redblue(n) {
            let q = tiling_to_involution(&t);
            match involution_to_tiling(&q) {
                Ok(back) => c.eq(&back, &t, || format!("roundtrip of {t}")),
                Err(e) => c.holds(false, || format!("inverse of {q}: {e}")),
            }
            images.push(q);
        }
        images.sort();
        let before = images.len();
        images.dedup();
        c.eq(images.len(), before, || format!("injectivity at n={n}"));
        let expected: Vec<_> = enumerate_involutions(n)
            .unwrap()
            .filter(|q| q.count_occurrences(&p(&[2, 3, 1])) == BigUint::from(1u8))
            .collect();
        c.holds(images == expected, || format!("image set at n={n}"));
    }
}

// 4. 231-avoiders by number of k...21 copies.
fn criterion_4(c: &mut Check) {
    let mut keys = Vec::new();
    for k in 2..=5usize {
        for r in 0..=k.min(3) {
            keys.push((k, r));
        }
    }
    let bi: Vec<_> = (2..=5).map(|k| gf_a_xy_k21(k, 24).unwrap()).collect();
    for n in 0..=10 {
        let sets: Vec<_> = keys
            .iter()
            .map(|&(k, r)| {
                vec![
                    avoid(p(&[2, 3, 1])),
                    Constraint::exactly(Permutation::decreasing(k), r as u64),
                ]
            })
            .collect();
        let oracle = oracle_count_many(n, &sets).unwrap();
        for (&(k, r), o) in keys.iter().zip(oracle) {
            let ctx = || format!("k={k} r={r} n={n}");
            c.eq(
                bi[k - 2].coeff(n, &BigUint::from(r)).unwrap(),
                int(o.clone()),
                ctx,
            );
            c.eq(count_a_r_k21(n, k, r).unwrap(), o.clone(), ctx);
            c.eq(coeff(&gf_a_r_k21(k, r, 24).unwrap(), n), int(o), ctx);
        }
    }
    for &(k, r) in &keys {
        let g = gf_a_r_k21(k, r, 24).unwrap();
        for n in 0..=24 {
            let ctx = || format!("duality k={k} r={r} n={n}");
            c.eq(coeff(&g, n), int(count_a_r_k21(n, k, r).unwrap()), ctx);
            c.eq(
                bi[k - 2].coeff(n, &BigUint::from(r)).unwrap(),
                coeff(&g, n),
                ctx,
            );
        }
    }
}

// 5. One copy of a layered pattern among 231-avoiders.
fn criterion_5(c: &mut Check) {
    let pats: Vec<_> = [&[2, 2][..], &[1, 4], &[3, 2], &[2, 1, 2], &[1, 1, 3]]
        .iter()
        .map(|v| comp(v))
        .collect();
    let mut ones = Vec::new();
    for k in 1..=2 {
        for l in 1..=4 {
            ones.push((k, l));
        }
    }
    for n in 0..=10 {
        let mut sets: Vec<_> = pats
            .iter()
            .map(|t| {
                vec![
                    avoid(p(&[2, 3, 1])),
                    Constraint::exactly(build_layered(t), 1),
                ]
            })
            .collect();
        sets.extend(ones.iter().map(|&(k, l)| {
            let t = Composition::ones_then(k, l).unwrap();
            vec![
                avoid(p(&[2, 3, 1])),
                Constraint::exactly(build_layered(&t), 1),
            ]
        }));
        let oracle = oracle_count_many(n, &sets).unwrap();
        for (i, t) in pats.iter().enumerate() {
            let lp = LayeredPattern::new(t.clone()).unwrap();
            let ctx = || format!("tau={t} n={n}");
            c.eq(count_a1_layered(n, &lp), oracle[i].clone(), ctx);
            c.eq(
                coeff(&gf_a1_layered(&lp, 24), n),
                int(oracle[i].clone()),
                ctx,
            );
        }
        for (j, &(k, l)) in ones.iter().enumerate() {
            let o = oracle[pats.len() + j].clone();
            let lp = LayeredPattern::new(Composition::ones_then(k, l).unwrap()).unwrap();
            let ctx = || format!("[1^{k},{l}] n={n}");
            c.eq(count_one_occ_1k_l(n, k, l).unwrap(), o.clone(), ctx);
            c.eq(coeff(&gf_a1_layered(&lp, 24), n), int(o), ctx);
        }
    }
}

// 6. One 231 and no copy of k...21 or of a layered pattern.
fn criterion_6(c: &mut Check) {
    let pats: Vec<_> = [&[4][..], &[5], &[1, 4], &[4, 1], &[4, 2], &[2, 4]]
        .iter()
        .map(|v| comp(v))
        .collect();
    let kgf: Vec<_> = (4..=6).map(|k| gf_c_k21(k, 24).unwrap()).collect();
    let lgf: Vec<_> = pats.iter().map(|t| gf_c_layered(t, 24)).collect();
    for n in 0..=11 {
        let mut sets: Vec<_> = (4..=6)
            .map(|k| vec![one231(), avoid(Permutation::decreasing(k))])
            .collect();
        sets.extend(pats.iter().map(|t| vec![one231(), avoid(build_layered(t))]));
        let oracle = oracle_count_many(n, &sets).unwrap();
        for (i, k) in (4..=6).enumerate() {
            c.eq(coeff(&kgf[i], n), int(oracle[i].clone()), || {
                format!("k={k} n={n}")
            });
            c.eq(count_c_k21(n, k).unwrap(), oracle[i].clone(), || {
                format!("k={k} n={n}")
            });
        }
        for (j, t) in pats.iter().enumerate() {
            c.eq(coeff(&lgf[j], n), int(oracle[3 + j].clone()), || {
                format!("tau={t} n={n}")
            });
        }
    }
    for l in 4..=8 {
        c.eq(
            gf_c_layered(&comp(&[l]), 24),
            gf_c_k21(l, 24).unwrap(),
            || format!("[{l}] to N=24"),
        );
    }
}

// 7. One 231 and exactly r copies of k...21, or one copy of a layered pattern.
fn criterion_7(c: &mut Check) {
    let bi: Vec<_> = (4..=5).map(|k| gf_c_xy_k21(k, 24).unwrap()).collect();
    let pats = [comp(&[4, 1]), comp(&[1, 4])];
    let rec: Vec<_> = pats.iter().map(|t| gf_c1_layered(t, 24).unwrap()).collect();
    for n in 0..=11 {
        let mut keys = Vec::new();
        let mut sets = Vec::new();
        for k in 4..=5usize {
            for r in 0..=2usize {
                keys.push((k, r));
                sets.push(vec![
                    one231(),
                    Constraint::exactly(Permutation::decreasing(k), r as u64),
                ]);
            }
        }
        sets.extend(
            pats.iter()
                .map(|t| vec![one231(), Constraint::exactly(build_layered(t), 1)]),
        );
        let oracle = oracle_count_many(n, &sets).unwrap();
        for (i, &(k, r)) in keys.iter().enumerate() {
            let o = oracle[i].clone();
            let ctx = || format!("k={k} r={r} n={n}");
            c.eq(
                bi[k - 4].coeff(n, &BigUint::from(r)).unwrap(),
                int(o.clone()),
                ctx,
            );
            c.eq(count_c_r_k21(n, k, r).unwrap(), o.clone(), ctx);
            c.eq(coeff(&gf_c_r_k21(k, r, 24).unwrap(), n), int(o), ctx);
        }
        for (j, t) in pats.iter().enumerate() {
            let o = oracle[keys.len() + j].clone();
            c.eq(coeff(&rec[j], n), int(o), || {
                format!("recursion for {t} at n={n}")
            });
        }
    }
    for l in 4..=8 {
        c.eq(
            gf_c1_layered(&comp(&[l]), 24).unwrap(),
            gf_c_r_k21(l, 1, 24).unwrap(),
            || format!("single-layer seed [{l}]"),
        );
    }
}

// 8. Generalized Fibonacci numbers from their generating function and from tilings.
fn criterion_8(c: &mut Check) {
    for k in 1..=5 {
        let s = geom_denominator(k, 24).reciprocal().unwrap().shift(1);
        for n in 0..=24 {
            c.eq(coeff(&s, n), int(fib_k(k, n as i64)), || {
                format!("GF k={k} n={n}")
            });
        }
        for n in 0..=15 {
            c.eq(count_bounded_tilings(n, k), fib_k(k, n as i64 + 1), || {
                format!("tilings k={k} n={n}")
            });
        }
    }
}

// 9. The closed form for S_n(132, 213, beta_abc).
fn criterion_9(c: &mut Check) {
    let mut triples = Vec::new();
    for a in 1..=3 {
        for b in 1..=3 {
            for cc in 1..=3 {
                if a + b + cc <= 5 {
                    triples.push((a, b, cc));
                }
            }
        }
    }
    for n in 0..=8 {
        let sets: Vec<_> = triples
            .iter()
            .map(|&(a, b, cc)| {
                vec![
                    avoid(p(&[1, 3, 2])),
                    avoid(p(&[2, 1, 3])),
                    avoid(build_beta(a, b, cc).unwrap()),
                ]
            })
            .collect();
        let oracle = oracle_count_symmetric_many(n, &sets).unwrap();
        for (&(a, b, cc), o) in triples.iter().zip(oracle) {
            c.eq(count_s_132_213_beta(n, a, b, cc).unwrap(), o, || {
                format!("a={a} b={b} c={cc} n={n}")
            });
        }
    }
}

// 10. S_n(132, 213, 123) is counted by the Fibonacci numbers.
fn criterion_10(c: &mut Check) {
    let set = vec![vec![
        avoid(p(&[1, 3, 2])),
        avoid(p(&[2, 1, 3])),
        avoid(p(&[1, 2, 3])),
    ]];
    for n in 0..=9 {
        let got = oracle_count_symmetric_many(n, &set).unwrap().remove(0);
        c.eq(got, fib_k(2, n as i64 + 1), || format!("n={n}"));
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (
            "231/312 symmetry and layered avoiders, n<=9; 2^(n-1) for n<=12",
            criterion_1,
        ),
        (
            "one-231 count (n-1)2^(n-6) from tilings and brute force, n<=12",
            criterion_2,
        ),
        (
            "tiling bijection roundtrip and image set, n<=12",
            criterion_3,
        ),
        (
            "231-avoiders by k...21 copies: bivariate and closed forms, n<=10; duality N=24",
            criterion_4,
        ),
        (
            "one layered copy among 231-avoiders: formula = GF = brute force, n<=10",
            criterion_5,
        ),
        (
            "one 231 avoiding k...21 or a layered pattern, n<=11; [l] recursion to N=24",
            criterion_6,
        ),
        (
            "one 231 with r copies of k...21 or one layered copy, n<=11; seed to N=24",
            criterion_7,
        ),
        (
            "Fibonacci GF to n<=24 and bounded tilings to n<=15, k<=5",
            criterion_8,
        ),
        ("S_n(132,213,beta_abc) formula, a+b+c<=5, n<=8", criterion_9),
        ("S_n(132,213,123) = F_(n+1), n<=9", criterion_10),
    ];
    let mut failed = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut c = Check::default();
        run(&mut c);
        let secs = start.elapsed().as_secs_f64();
        match &c.failure {
            None => println!(
                "criterion {:>2}: PASS  {title} ({} checks, {secs:.1}s)",
                i + 1,
                c.count
            ),
            Some(f) => {
                failed += 1;
                println!(
                    "criterion {:>2}: FAIL  {title} ({} checks, {secs:.1}s)",
                    i + 1,
                    c.count
                );
                println!("              first counterexample: {f}");
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
