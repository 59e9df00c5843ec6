//! Kashiwara operators on random reduced walls, including colour 0.

use proptest::prelude::*;
use youngwall::crystal::{e, epsilon, f, phi, signature};
use youngwall::liealg::{AffineDatum, AffineKind};
use youngwall::wall::{Wall, WallContext};

fn contexts() -> Vec<WallContext> {
    let mut out = Vec::new();
    for kind in AffineKind::all() {
        for rank in kind.classical().min_rank().max(2)..=5 {
            let Ok(datum) = AffineDatum::new(kind, rank) else { continue };
            for ground in datum.level_one_weights() {
                out.push(WallContext::new(kind, rank, ground).unwrap());
            }
        }
    }
    out
}

/// `<h_i, wt>` for the affine weight of `w`, `i` in `0..=n`.
fn affine_pairing(w: &Wall, datum: &AffineDatum, i: usize) -> i64 {
    let ground = i64::from(w.context().ground == i);
    let counts = w.color_counts();
    ground - (0..=datum.rank).map(|c| counts[c] * datum.cartan[i][c]).sum::<i64>()
}

/// Walls reached from the ground state by random `f`/`e` moves.
fn walk(ctx: WallContext, steps: &[(bool, usize)]) -> Vec<Wall> {
    let mut w = Wall::ground_state(ctx);
    let mut trail = vec![w.clone()];
    for &(lower, i) in steps {
        let i = i % (ctx.rank + 1);
        let next = if lower { f(&w, i) } else { e(&w, i) };
        if let Some(next) = next {
            w = next;
            trail.push(w.clone());
        }
    }
    trail
}

#[test]
fn ground_state_is_highest() {
    for ctx in contexts() {
        let g = Wall::ground_state(ctx);
        let datum = ctx.affine_datum();
        for i in 0..=ctx.rank {
            assert_eq!(epsilon(&g, i), 0);
            assert_eq!(phi(&g, i) as i64, affine_pairing(&g, &datum, i), "{ctx} i={i}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn crystal_axioms_on_random_walls(
        idx in 0..1000usize,
        steps in prop::collection::vec((prop::bool::weighted(0.75), 0..8usize), 1..120),
    ) {
        let all = contexts();
        let ctx = all[idx % all.len()];
        let datum = ctx.affine_datum();
        for w in walk(ctx, &steps) {
            prop_assert!(w.is_proper() && w.is_reduced());
            for i in 0..=ctx.rank {
                let (eps, ph) = (epsilon(&w, i), phi(&w, i));
                prop_assert_eq!(ph as i64 - eps as i64, affine_pairing(&w, &datum, i));
                let sig = signature(&w, i);
                prop_assert_eq!((sig.minus.len(), sig.plus.len()), (eps, ph));
                match f(&w, i) {
                    Some(v) => {
                        prop_assert!(ph > 0);
                        prop_assert!(v.is_proper() && v.is_reduced());
                        prop_assert_eq!(e(&v, i), Some(w.clone()));
                        prop_assert_eq!((epsilon(&v, i), phi(&v, i)), (eps + 1, ph - 1));
                        let mut expected = w.classical_weight();
                        expected.add_scaled(&datum.classical_root(i), -1);
                        prop_assert_eq!(v.classical_weight(), expected);
                    }
                    None => prop_assert_eq!(ph, 0),
                }
                match e(&w, i) {
                    Some(u) => {
                        prop_assert!(eps > 0);
                        prop_assert!(u.is_proper() && u.is_reduced());
                        prop_assert_eq!(f(&u, i), Some(w.clone()));
                    }
                    None => prop_assert_eq!(eps, 0),
                }
            }
        }
    }

    #[test]
    fn strings_have_length_phi(
        idx in 0..1000usize,
        steps in prop::collection::vec((prop::bool::weighted(0.75), 0..8usize), 1..60),
    ) {
        let all = contexts();
        let ctx = all[idx % all.len()];
        let w = walk(ctx, &steps).pop().unwrap();
        for i in 0..=ctx.rank {
            let mut v = w.clone();
            let mut steps = 0;
            while let Some(next) = f(&v, i) {
                v = next;
                steps += 1;
            }
            prop_assert_eq!(steps, phi(&w, i));
        }
    }
}
