//! Cross-module consistency: the infinitesimal character computed through
//! the enveloping-algebra projection is constant exactly on affine Weyl
//! orbits, and the Verma model certifies the projection.

use hcrep_core::hwmod::infinitesimal_character_equal;
use hcrep_core::rootsys::{Weight, DEFAULT_WEYL_ORDER_BOUND};
use hcrep_core::uea::{beta_projection, casimir, verma_action, StructureConstants};

#[test]
fn chi_constant_on_affine_orbits_sl2_and_sl3() {
    for n in [2usize, 3] {
        let sc = StructureConstants::sl(n).unwrap();
        let omega = casimir(&sc).unwrap().element;
        let beta = beta_projection(&sc, &omega).unwrap();
        let rs = sc.rs();
        let grid: Vec<Weight> = if n == 2 {
            (-4..5).map(|v| Weight::from_ints(&[v])).collect()
        } else {
            (-2..3)
                .flat_map(|a| (-2..3).map(move |b| Weight::from_ints(&[a, b])))
                .collect()
        };
        for lam in &grid {
            for mu in &grid {
                let same_orbit =
                    infinitesimal_character_equal(rs, lam, mu, DEFAULT_WEYL_ORDER_BOUND).unwrap();
                if same_orbit {
                    assert_eq!(
                        beta.eval_weight(lam),
                        beta.eval_weight(mu),
                        "sl{n}: χ must match on the orbit of {lam} and {mu}"
                    );
                }
            }
        }
        // The two directions coincide on the sl2 grid, where orbits are
        // {n, -2-n}: χ(n) = χ(m) implies orbit equality there.
        if n == 2 {
            for lam in &grid {
                for mu in &grid {
                    let same_chi = beta.eval_weight(lam) == beta.eval_weight(mu);
                    let same_orbit =
                        infinitesimal_character_equal(rs, lam, mu, DEFAULT_WEYL_ORDER_BOUND)
                            .unwrap();
                    assert_eq!(same_chi, same_orbit, "sl2 at {lam}, {mu}");
                }
            }
        }
    }
}

#[test]
fn beta_certified_by_verma_highest_weight_action() {
    let sc = StructureConstants::sl(3).unwrap();
    let omega = casimir(&sc).unwrap().element;
    let beta = beta_projection(&sc, &omega).unwrap();
    for (a, b) in [(0i64, 0i64), (1, 2), (-3, 1), (2, -2)] {
        let lambda = Weight::from_ints(&[a, b]);
        let action = verma_action(&sc, &omega, &lambda, 4);
        let column = action.highest_weight_column();
        assert_eq!(column[0], beta.eval_weight(&lambda));
        for v in &column[1..] {
            assert!(v == &hcrep_core::rational::rat_int(0));
        }
    }
}
