use ldpc_coset::cwgf::{
    ball_vs_q, check_monotonicity, closed_form_all_one, coset_weight_distribution, direct_sum_distribution,
    direct_sum_power,
};
use ldpc_coset::localfactor::{certify_theorem_main, extension_ratio, GrowthBound};
use ldpc_coset::random::{
    random_code, random_covering_generators, random_extension_instance, random_nested_pair, rng_for,
};
use ldpc_coset::{BitVector, LambdaGrid, LinearCode, Rational};
use proptest::prelude::*;

fn blocks(w: usize, m: usize) -> LinearCode {
    let n = w * m;
    let gens: Vec<BitVector> = (0..m)
        .map(|j| BitVector::from_bits(n, ((1u64 << w) - 1) << (j * w)).unwrap())
        .collect();
    LinearCode::span(n, &gens).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn counts_sum_to_number_of_cosets(seed in any::<u64>(), n in 1usize..=14) {
        let code = random_code(n, &mut rng_for(seed, 0));
        let d = coset_weight_distribution(&code).unwrap();
        prop_assert_eq!(d.total(), num_bigint::BigUint::from(1u64) << (n - code.dimension()));
        prop_assert_eq!(d.count(0), 1u32.into());
    }

    #[test]
    fn larger_codes_have_smaller_q(seed in any::<u64>(), n in 1usize..=14) {
        let (inner, outer) = random_nested_pair(n, &mut rng_for(seed, 1));
        let rep = check_monotonicity(&inner, &outer, &LambdaGrid::default()).unwrap();
        prop_assert!(rep.holds);
    }

    #[test]
    fn direct_sum_is_convolution(seed in any::<u64>(), n1 in 1usize..=7, n2 in 1usize..=7) {
        let mut rng = rng_for(seed, 2);
        let a = random_code(n1, &mut rng);
        let b = random_code(n2, &mut rng);
        let rows: Vec<u64> = a.rows().iter().copied().chain(b.rows().iter().map(|r| r << n1)).collect();
        let joint = LinearCode::span_bits(n1 + n2, &rows).unwrap();
        prop_assert_eq!(
            coset_weight_distribution(&joint).unwrap(),
            direct_sum_distribution(&coset_weight_distribution(&a).unwrap(), &coset_weight_distribution(&b).unwrap())
        );
    }

    #[test]
    fn ball_is_bounded_by_scaled_q(seed in any::<u64>(), n in 1usize..=12, num in 1i64..=20) {
        let code = random_code(n, &mut rng_for(seed, 3));
        let d = coset_weight_distribution(&code).unwrap();
        let lambda = Rational::new(num.into(), 20.into());
        for r in 0..=n {
            prop_assert!(ball_vs_q(&d, r, &lambda).unwrap().holds);
        }
    }

    #[test]
    fn extension_step_is_bounded(seed in any::<u64>(), w in 3usize..=5) {
        let inst = random_extension_instance(12, w, &mut rng_for(seed, 4));
        let cert = extension_ratio(&inst.base, &inst.u, &inst.b, inst.w, &LambdaGrid::default()).unwrap();
        prop_assert!(cert.holds);
    }

    #[test]
    fn covering_spans_obey_growth_bounds(seed in any::<u64>(), w in 3usize..=5, n in 3usize..=13) {
        let gens = random_covering_generators(n, w, &mut rng_for(seed, 5));
        let cert = certify_theorem_main(&gens, &LambdaGrid::default()).unwrap();
        prop_assert!(cert.holds);
        prop_assert!(cert.max_ratio <= 1.0 + 1e-12);
    }
}

#[test]
fn all_one_code_closed_form() {
    for n in 1..=16 {
        let code = LinearCode::span(n, &[BitVector::ones(n).unwrap()]).unwrap();
        assert_eq!(coset_weight_distribution(&code).unwrap(), closed_form_all_one(n), "n={n}");
    }
}

#[test]
fn disjoint_blocks_are_convolution_powers() {
    for w in 3..=5 {
        for m in 1..=20 / w {
            assert_eq!(
                coset_weight_distribution(&blocks(w, m)).unwrap(),
                direct_sum_power(&closed_form_all_one(w), m),
                "w={w} m={m}"
            );
        }
    }
}

#[test]
fn disjoint_triples_meet_the_cubic_bound() {
    let grid = LambdaGrid::default();
    for m in 1..=4 {
        let code = blocks(3, m);
        let gens = ldpc_coset::GeneratorSet::new(3 * m, 3, code.basis()).unwrap();
        let cert = certify_theorem_main(&gens, &grid).unwrap();
        assert!(cert.holds && cert.tight, "m={m}");
        let d = coset_weight_distribution(&code).unwrap();
        for l in grid.points() {
            assert!(GrowthBound::Cubic.equals(&d.evaluate(l).unwrap(), 3 * m, l));
        }
    }
}
