use inv231::enumeration::{count_a_r_k21, gf_a_xy_k21};
use inv231::layered::layered_avoids;
use inv231::{
    build_layered, count_pattern_in_layered, decompose_layered, fib_k, involution_to_tiling,
    tiling_to_involution, BigUint, Composition, Permutation, RedBlueTiling,
};
use proptest::prelude::*;

fn composition(max_parts: usize, max_part: usize) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1..=max_part, 0..=max_parts).prop_map(|v| Composition::new(v).unwrap())
}

fn tiling() -> impl Strategy<Value = RedBlueTiling> {
    (composition(8, 6), composition(8, 6)).prop_map(|(l, r)| RedBlueTiling::from_sides(&l, &r))
}

proptest! {
    #[test]
    fn layered_roundtrip(c in composition(12, 7)) {
        let p = build_layered(&c);
        prop_assert!(p.is_involution());
        prop_assert!(p.avoids(&Permutation::new(vec![2, 3, 1]).unwrap()));
        prop_assert_eq!(decompose_layered(&p), Some(c));
    }

    #[test]
    fn composition_text_roundtrip(c in composition(12, 30)) {
        prop_assert_eq!(c.to_string().parse::<Composition>().unwrap(), c);
    }

    #[test]
    fn tiling_bijection_beyond_oracle_range(t in tiling()) {
        let p = tiling_to_involution(&t);
        prop_assert_eq!(p.len(), t.total());
        prop_assert!(p.is_involution());
        prop_assert_eq!(p.count_occurrences(&Permutation::new(vec![2, 3, 1]).unwrap()), BigUint::from(1u8));
        prop_assert_eq!(involution_to_tiling(&p).unwrap(), t.clone());
        prop_assert_eq!(t.to_string().parse::<RedBlueTiling>().unwrap(), t);
    }

    #[test]
    fn decreasing_copies_read_off_tiles(t in tiling(), k in 3usize..=6) {
        let p = tiling_to_involution(&t);
        prop_assert_eq!(t.decreasing_occurrences(k), p.count_occurrences(&Permutation::decreasing(k)));
    }

    #[test]
    fn composition_level_counting(host in composition(6, 5), pat in composition(3, 3)) {
        let hp = build_layered(&host);
        let pp = build_layered(&pat);
        let direct = hp.count_occurrences(&pp);
        prop_assert_eq!(count_pattern_in_layered(&host, &pat), direct.clone());
        prop_assert_eq!(layered_avoids(host.parts(), pat.parts()), direct == BigUint::ZERO);
    }

    #[test]
    fn permutation_text_roundtrip(c in composition(6, 4)) {
        let p = build_layered(&c);
        prop_assert_eq!(p.to_string().parse::<Permutation>().unwrap(), p);
    }

    #[test]
    fn fibonacci_recurrence(k in 1usize..8, n in 2i64..200) {
        let sum: BigUint = (1..=k as i64).map(|j| fib_k(k, n - j)).sum();
        prop_assert_eq!(fib_k(k, n), sum);
    }
}

// The coefficient of y^r in the bivariate series sums, over r, to 2^(n-1).
#[test]
fn bivariate_rows_partition_the_avoiders() {
    for k in 2..=6 {
        let g = gf_a_xy_k21(k, 30).unwrap();
        for n in 1..=30usize {
            let total: BigUint = g
                .row(n)
                .unwrap()
                .values()
                .map(|c| c.to_biguint().unwrap())
                .sum();
            assert_eq!(total, BigUint::from(1u8) << (n - 1), "k={k} n={n}");
            for r in 0..=k {
                let c = g.coeff(n, &BigUint::from(r)).unwrap();
                assert_eq!(
                    c.to_biguint().unwrap(),
                    count_a_r_k21(n, k, r).unwrap(),
                    "k={k} r={r} n={n}"
                );
            }
        }
    }
}
