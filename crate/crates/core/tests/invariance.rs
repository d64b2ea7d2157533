//! Projective invariants checked under random coordinate changes.

mod common;

use common::{field, naive_count, random_form};
use linefree::analysis::{self, KOrbit};
use linefree::projgeom::ProjectiveMap;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn counts_lines_and_singularities_are_invariant(
        q in prop::sample::select(vec![2u32, 3, 4]),
        d in 2u32..=4,
        seed in any::<u64>(),
    ) {
        let k = field(q);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = random_form(&k, 4, d, &mut rng);
        let h = g.apply_map(&ProjectiveMap::random(&k, 4, &mut rng)).unwrap();
        prop_assert_eq!(analysis::count_points(&g), analysis::count_points(&h));
        prop_assert_eq!(analysis::count_points(&h), naive_count(&h));
        prop_assert_eq!(analysis::lines_on(&g).unwrap().len(), analysis::lines_on(&h).unwrap().len());
        prop_assert_eq!(analysis::singular_points_fq(&g).len(), analysis::singular_points_fq(&h).len());
    }

    #[test]
    fn k_equivalence_is_invariant(seed in any::<u64>()) {
        let f4 = field(4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = ProjectiveMap::random(&f4, 3, &mut rng);
        let k = analysis::k_form(&f4).unwrap().apply_map(&m).unwrap();
        prop_assert!(analysis::is_equivalent_to_k(&k).unwrap());
        prop_assert!(KOrbit::shared().contains_vector(&k.coefficient_vector()));
        let g = random_form(&f4, 3, 4, &mut rng);
        let moved = g.apply_map(&m).unwrap();
        prop_assert_eq!(analysis::is_equivalent_to_k(&g).unwrap(), analysis::is_equivalent_to_k(&moved).unwrap());
        prop_assert_eq!(analysis::count_points(&g), analysis::count_points(&moved));
    }
}
