//! Root data, decompositions and the two oracles.

use num_bigint::BigUint;
use proptest::prelude::*;
use youngwall::liealg::{
    choose_level_one, decompose, freudenthal_multiplicities, weyl_dimension, AffineDatum,
    AffineKind, DominantWeight, Family, RootDatum, Spin,
};

fn dim(family: Family, rank: usize, lambda: &[i64]) -> BigUint {
    let datum = RootDatum::new(family, rank).unwrap();
    weyl_dimension(&datum, &DominantWeight::new(lambda).unwrap()).unwrap()
}

fn unit(rank: usize, i: usize) -> Vec<i64> {
    (1..=rank).map(|j| i64::from(j == i)).collect()
}

#[test]
fn dimension_families() {
    for n in 1..=7usize {
        let n64 = n as u64;
        assert_eq!(dim(Family::A, n, &unit(n, 1)), BigUint::from(n64 + 1));
        // Adjoint module of A_n.
        let mut adjoint = unit(n, 1);
        adjoint[n - 1] += 1;
        assert_eq!(dim(Family::A, n, &adjoint), BigUint::from(n64 * (n64 + 2)));
    }
    for n in 2..=7usize {
        let n64 = n as u64;
        assert_eq!(dim(Family::B, n, &unit(n, 1)), BigUint::from(2 * n64 + 1));
        assert_eq!(dim(Family::B, n, &unit(n, n)), BigUint::from(1u64 << n));
        if n >= 3 {
            assert_eq!(dim(Family::B, n, &unit(n, 2)), BigUint::from(n64 * (2 * n64 + 1)));
        }
        assert_eq!(dim(Family::C, n, &unit(n, 1)), BigUint::from(2 * n64));
        let mut sym = unit(n, 1);
        sym[0] = 2;
        assert_eq!(dim(Family::C, n, &sym), BigUint::from(n64 * (2 * n64 + 1)));
    }
    for n in 4..=7usize {
        let n64 = n as u64;
        assert_eq!(dim(Family::D, n, &unit(n, 1)), BigUint::from(2 * n64));
        assert_eq!(dim(Family::D, n, &unit(n, n)), BigUint::from(1u64 << (n - 1)));
        assert_eq!(dim(Family::D, n, &unit(n, n - 1)), BigUint::from(1u64 << (n - 1)));
        assert_eq!(dim(Family::D, n, &unit(n, 2)), BigUint::from(n64 * (2 * n64 - 1)));
    }
}

#[test]
fn large_dimensions_are_exact() {
    // 2^64 would overflow a machine word on its own.
    let d = dim(Family::A, 8, &[20, 20, 20, 20, 20, 20, 20, 20]);
    assert!(d > BigUint::from(u64::MAX));
    // (n+1)^(n(n+1)/2)-type growth: the Steinberg module has dimension
    // 2^(number of positive roots).
    assert_eq!(dim(Family::A, 8, &[1; 8]), BigUint::from(1u64) << 36);
    assert_eq!(dim(Family::D, 6, &[1; 6]), BigUint::from(1u64) << 30);
}

#[test]
fn affine_marks() {
    for n in 3..=7 {
        for kind in AffineKind::all() {
            if n < kind.classical().min_rank() {
                continue;
            }
            let datum = AffineDatum::new(kind, n).unwrap();
            for j in 0..=n {
                let pairing: i64 = (0..=n).map(|i| datum.marks[i] * datum.cartan[j][i]).sum();
                assert_eq!(pairing, 0, "{kind} n={n} column {j}");
            }
        }
    }
    let b = AffineDatum::new(AffineKind::B, 4).unwrap();
    assert_eq!(b.marks, [1, 1, 2, 2, 2]);
    let d = AffineDatum::new(AffineKind::D, 5).unwrap();
    assert_eq!(d.marks, [1, 1, 2, 2, 1, 1]);
    let t = AffineDatum::new(AffineKind::Twisted, 4).unwrap();
    assert_eq!(t.marks, [1, 1, 2, 2, 1]);
}

fn family_and_weight() -> impl Strategy<Value = (Family, usize, Vec<i64>)> {
    (0..4usize, 1..=5usize).prop_flat_map(|(f, r)| {
        let family = [Family::A, Family::B, Family::C, Family::D][f];
        let rank = r.max(family.min_rank().min(4)).max(match family {
            Family::D => 4,
            Family::B | Family::C => 2,
            Family::A => 1,
        });
        (Just(family), Just(rank), prop::collection::vec(0..=3i64, rank))
    })
}

fn small_weight() -> impl Strategy<Value = (Family, usize, Vec<i64>)> {
    family_and_weight().prop_filter("moderate dimension", |(family, rank, lambda)| {
        dim(*family, *rank, lambda) <= BigUint::from(20_000u32)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn multiplicities_sum_to_the_dimension((family, rank, lambda) in small_weight()) {
        let datum = RootDatum::new(family, rank).unwrap();
        let lambda = DominantWeight::new(&lambda).unwrap();
        let mult = freudenthal_multiplicities(&datum, &lambda).unwrap();
        let total: u64 = mult.values().sum();
        prop_assert_eq!(BigUint::from(total), weyl_dimension(&datum, &lambda).unwrap());
    }

    #[test]
    fn multiplicities_are_weyl_invariant((family, rank, lambda) in small_weight()) {
        let datum = RootDatum::new(family, rank).unwrap();
        let mult = freudenthal_multiplicities(&datum, &DominantWeight::new(&lambda).unwrap()).unwrap();
        for (mu, m) in &mult {
            for j in 0..rank {
                prop_assert_eq!(mult.get(&mu.reflect(&datum, j)), Some(m));
            }
        }
    }

    #[test]
    fn decomposition_reconstructs((family, rank, lambda) in family_and_weight()) {
        let weight = DominantWeight::new(&lambda).unwrap();
        let dec = decompose(family, rank, &weight).unwrap();
        prop_assert_eq!(dec.reconstruct(family, rank), weight);
        prop_assert!(dec.parts.windows(2).all(|p| p[0] <= p[1]));
        match family {
            Family::A | Family::C => prop_assert_eq!(dec.spin, Spin::None),
            Family::B => prop_assert!(matches!(dec.spin, Spin::None | Spin::Short)),
            Family::D => prop_assert!(dec.spin != Spin::Short),
        }
        // The canonical decomposition of the reconstruction is itself.
        prop_assert_eq!(decompose(family, rank, &dec.reconstruct(family, rank)).unwrap(), dec.clone());
        // The ground weight depends on the multiset only.
        let mut reversed = dec.clone();
        reversed.parts.reverse();
        prop_assert_eq!(choose_level_one(family, rank, &reversed), choose_level_one(family, rank, &dec));
    }
}
