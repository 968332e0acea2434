use apolar_core::covariant::{catalog, evaluate_family};
use apolar_core::pipeline::{fingerprint, fingerprint_equal, reconstruct_binary_odd, Options};
use apolar_core::poly::Space;
use apolar_core::recon::transvectant_lift;
use apolar_core::sample::{random_form, random_unimodular, rng};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sextic_lift_is_invariant(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let f = random_form(&Space::binary(), &[6], 9, &mut r);
        let a = random_unimodular(2, 2, &mut r).to_rows();
        let family = catalog::binary_even(6);
        let lift = |g| -> apolar_core::Result<_> { transvectant_lift(g, &evaluate_family(&family, &[g.clone()])?) };
        match (lift(&f), lift(&f.transform(&a))) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (x, y) => prop_assert_eq!(x.is_err(), y.is_err()),
        }
    }

    #[test]
    fn equivalent_quintics_give_equivalent_reconstructions(seed in 0u64..10_000) {
        let mut r = rng(seed);
        let f = random_form(&Space::binary(), &[5], 9, &mut r);
        let g = f.transform(&random_unimodular(2, 2, &mut r).to_rows());
        let (Ok(a), Ok(b)) = (reconstruct_binary_odd(&f, &Options::default()), reconstruct_binary_odd(&g, &Options::default())) else {
            return Ok(());
        };
        let fa = fingerprint(&[a.outputs[0].1.as_rational().unwrap().clone()]).unwrap();
        let fb = fingerprint(&[b.outputs[0].1.as_rational().unwrap().clone()]).unwrap();
        prop_assert!(fingerprint_equal(&fa, &fb).unwrap());
    }
}
