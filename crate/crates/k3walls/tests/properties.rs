//! Cross-cutting invariants of the public API: bilinear-form laws,
//! normalization, twist symmetries, parameter round-trips, and structural
//! facts about every produced wall list.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use proptest::prelude::*;
use rayon::prelude::*;

use k3walls::arith::ratio;
use k3walls::lattice::{self, DivisorClass};
use k3walls::mukai::{
    from_param, is_spherical, line_bundle_vector, mukai_pairing, to_param, twist_reflect,
    MukaiVector, ParamCoords,
};
use k3walls::walls::count_h;

fn ell(p: i64, q: i64) -> DivisorClass {
    DivisorClass::elliptic(p, q)
}

proptest! {
    #[test]
    fn intersection_is_symmetric_and_bilinear(
        a in -50i64..=50, b in -50i64..=50,
        c in -50i64..=50, d in -50i64..=50,
        e in -50i64..=50, f in -50i64..=50,
        x in -9i64..=9, y in -9i64..=9,
    ) {
        let u = ell(a, b);
        let v = ell(c, d);
        let w = ell(e, f);
        prop_assert_eq!(
            lattice::intersect(&u, &v).unwrap(),
            lattice::intersect(&v, &u).unwrap()
        );
        let combo = &(&v * &BigInt::from(x)) + &(&w * &BigInt::from(y));
        prop_assert_eq!(
            lattice::intersect(&u, &combo).unwrap(),
            x * lattice::intersect(&u, &v).unwrap() + y * lattice::intersect(&u, &w).unwrap()
        );
    }

    #[test]
    fn signature_has_one_positive_direction(a in -50i64..=50, b in -50i64..=50) {
        // On a hyperbolic rank-two lattice, two classes of positive square
        // can never be orthogonal.
        let u = ell(a, b);
        if lattice::self_intersection(&u) > BigInt::from(0) {
            let v = ell(a, 2 * a - b); // a nonzero class orthogonal to u
            prop_assert_eq!(lattice::intersect(&u, &v).unwrap(), BigInt::from(0));
            prop_assert!(lattice::self_intersection(&v) < BigInt::from(0));
        }
    }

    #[test]
    fn primitive_normalize_is_idempotent_and_scale_free(
        a in -60i64..=60, b in -60i64..=60, scale in 1i64..=12,
    ) {
        prop_assume!(a != 0 || b != 0);
        let d = ell(a, b);
        let norm = lattice::primitive_normalize(&d).unwrap();
        let again = lattice::primitive_normalize(&norm).unwrap();
        prop_assert_eq!(&again, &norm);
        let scaled = &d * &BigInt::from(scale);
        prop_assert_eq!(lattice::primitive_normalize(&scaled).unwrap(), norm.clone());
        let negated = -&d;
        prop_assert_eq!(lattice::primitive_normalize(&negated).unwrap(), norm);
    }

    #[test]
    fn twist_is_an_isometric_involution(
        mp in -8i64..=8, mq in -8i64..=8,
        r1 in 1i64..=6, p1 in -8i64..=8, q1 in -8i64..=8, s1 in -8i64..=8,
        r2 in 1i64..=6, p2 in -8i64..=8, q2 in -8i64..=8, s2 in -8i64..=8,
    ) {
        let mirror = line_bundle_vector(&ell(mp, mq)).unwrap();
        let v = MukaiVector::new(r1, ell(p1, q1), s1);
        let w = MukaiVector::new(r2, ell(p2, q2), s2);
        let tv = twist_reflect(&mirror, &v).unwrap();
        let tw = twist_reflect(&mirror, &w).unwrap();
        prop_assert_eq!(
            mukai_pairing(&tv, &tw).unwrap(),
            mukai_pairing(&v, &w).unwrap()
        );
        prop_assert_eq!(twist_reflect(&mirror, &tv).unwrap(), v);
    }

    #[test]
    fn parameters_round_trip(n in -120i64..=120, m in 1i64..=60, k in -5i64..=5) {
        prop_assume!(m == 1 || BigInt::from(n).gcd(&BigInt::from(m)) == BigInt::from(1));
        let coords = ParamCoords::new(n, m, k).unwrap();
        let v = from_param(&coords);
        prop_assert!(is_spherical(&v));
        prop_assert_eq!(to_param(&v).unwrap(), coords);
    }
}

#[test]
fn every_small_spherical_vector_round_trips() {
    // Sweep a box of genuinely spherical vectors (rk > 0, ⟨v,v⟩ = −2) and
    // confirm the parametrization inverts on all of them.
    let mut seen = 0u32;
    for rk in 1i64..=8 {
        for p in -12i64..=12 {
            for q in -12i64..=12 {
                let c1_sq = -2 * p * p + 2 * p * q;
                let num = c1_sq + 2;
                if num % (2 * rk) != 0 {
                    continue;
                }
                let v = MukaiVector::new(rk, ell(p, q), num / (2 * rk));
                if !is_spherical(&v) {
                    continue;
                }
                let coords = to_param(&v).expect("spherical vectors have parameters");
                assert_eq!(from_param(&coords), v, "round trip failed for {v}");
                seen += 1;
            }
        }
    }
    assert!(seen > 200, "box sweep found only {seen} spherical vectors");
}

#[test]
fn counts_are_mirror_symmetric() {
    // H(n/m) = H((m−n)/m), exhaustively for m ≤ 120.
    let pairs: Vec<(i64, i64)> = (2i64..=120)
        .flat_map(|m| (1..m).filter(move |n| n.gcd(&m) == 1).map(move |n| (n, m)))
        .collect();
    pairs.into_par_iter().for_each(|(n, m)| {
        let left = count_h(&ratio(n, m)).h_value;
        let right = count_h(&ratio(m - n, m)).h_value;
        assert_eq!(left, right, "mirror symmetry fails at {n}/{m}");
    });
}

#[test]
fn wall_lists_are_sorted_negative_and_primitive() {
    let targets = [
        (1, 3),
        (2, 5),
        (3, 8),
        (7, 19),
        (13, 34),
        (11, 60),
        (29, 93),
    ];
    for (n, m) in targets {
        let report = count_h(&ratio(n, m));
        assert_eq!(report.h_value as usize, report.walls.len() + 1);
        let mut last: Option<k3walls::arith::Rational> = None;
        for wall in &report.walls {
            // strictly past the large-volume edge
            assert!(
                wall.position_c() > &ratio(2, 1),
                "wall at c <= 2 for {n}/{m}"
            );
            if let Some(prev) = &last {
                assert!(prev < wall.position_c(), "walls out of order for {n}/{m}");
            }
            last = Some(wall.position_c().clone());
            // each wall class is primitive with negative square meeting the
            // positive cone boundary condition
            let delta = wall.delta();
            assert!(lattice::self_intersection(delta) < BigInt::from(0));
            assert!(lattice::perp_meets_ample(delta).unwrap());
            let g = delta.coeff(0).gcd(delta.coeff(1));
            assert_eq!(g, BigInt::from(1), "imprimitive wall for {n}/{m}");
            assert!(delta.coeff(0).is_positive());
        }
        // every destabilizer's wall appears in the distinct list
        for d in &report.destabilizers {
            assert!(
                report.walls.iter().any(|w| w.key() == d.wall().key()),
                "orphaned destabilizer wall for {n}/{m}"
            );
        }
    }
}

#[test]
fn integer_slopes_have_no_walls() {
    for n in -3i64..=3 {
        let report = count_h(&ratio(n, 1));
        assert_eq!(report.h_value, 1);
        assert!(report.walls.is_empty());
        assert!(report.destabilizers.is_empty());
    }
}
