use derange::algebra::Algebra;
use derange::classifier::{algebra_at, enumerate_raw};
use derange::complexes::{
    check_dim_bound, cohomology, hr_dim_sandwich, is_indecomposable, minimize, shift_embed, validate, ProjComplex,
    SearchConfig,
};
use derange::fixtures;
use proptest::prelude::*;
use std::sync::OnceLock;

struct Pool {
    alg: Algebra,
    xs: Vec<ProjComplex>,
}

fn pools() -> &'static Vec<Pool> {
    static POOLS: OnceLock<Vec<Pool>> = OnceLock::new();
    POOLS.get_or_init(|| {
        let specs = [
            (fixtures::a2(), 1, vec![2, 2]),
            (fixtures::l2(), 1, vec![2, 2]),
            (fixtures::kronecker(), 1, vec![1, 2]),
            (fixtures::n2(), 2, vec![1, 1, 1]),
            (fixtures::a2_tilde(), 1, vec![1, 1]),
        ];
        specs
            .into_iter()
            .map(|(p, m, caps)| {
                let alg = algebra_at(&p, 3).unwrap();
                let xs = enumerate_raw(&alg, m, &caps, 1 << 22).unwrap().into_iter().flatten().collect();
                Pool { alg, xs }
            })
            .collect()
    })
}

fn pick(pool: usize, idx: usize) -> (&'static Algebra, &'static ProjComplex) {
    let p = &pools()[pool % pools().len()];
    (&p.alg, &p.xs[idx % p.xs.len()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn census_complexes_satisfy_bounds(pool in 0usize..5, idx in 0usize..10_000) {
        let (alg, x) = pick(pool, idx);
        prop_assert!(validate(alg, x).is_ok());
        prop_assert!(check_dim_bound(alg, x).is_ok());
        prop_assert!(hr_dim_sandwich(alg, x).is_ok());
    }

    #[test]
    fn shifting_keeps_cohomology(pool in 0usize..5, idx in 0usize..10_000, extra in 0usize..3) {
        let (alg, x) = pick(pool, idx);
        let new_m = x.m() + extra;
        let y = shift_embed(alg, x, extra, new_m).unwrap();
        let (a, b) = (cohomology(alg, x), cohomology(alg, &y));
        prop_assert_eq!((a.hl, a.hw, a.hr, a.dim), (b.hl, b.hw, b.hr, b.dim));
        prop_assert_eq!(&b.h[extra..], &a.h[..]);
    }

    #[test]
    fn sums_are_decomposable(pool in 0usize..5, i in 0usize..10_000, j in 0usize..10_000) {
        let (alg, x) = pick(pool, i);
        let (_, y) = pick(pool, j);
        let s = x.direct_sum(alg, y).unwrap();
        let r = is_indecomposable(alg, &s, &SearchConfig::default()).unwrap();
        prop_assert!(!r.indecomposable);
    }

    #[test]
    fn minimal_complexes_minimize_to_themselves(pool in 0usize..5, idx in 0usize..10_000) {
        let (alg, x) = pick(pool, idx);
        let y = minimize(alg, x).unwrap();
        prop_assert_eq!(y.summand_count(), x.summand_count());
        prop_assert_eq!(cohomology(alg, &y), cohomology(alg, x));
    }
}
