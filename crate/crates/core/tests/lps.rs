use std::collections::HashSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use ihara_core::lps::{build_lps, legendre_symbol, quaternion_generators, LpsParams};
use ihara_core::nbt::ClosedWalkCounts;
use ihara_core::oracle::lattice_count;
use ihara_core::spectral::eigenvalue_spectrum;
use ihara_core::zeta::{cusp_coefficient, eisenstein_c, lps_walk_counts, theta_coefficient};
use ihara_core::{certify_regular, Error};

#[test]
fn shapes_follow_the_legendre_symbol() {
    for (p, q) in [(5u64, 13u64), (13, 5), (5, 17), (17, 5), (13, 17), (17, 13)] {
        let lps = build_lps(p, q).unwrap();
        let cert = certify_regular(&lps.graph).unwrap();
        let order = q * (q * q - 1);
        let bipartite = legendre_symbol(p as i64, q) == -1;
        let n = if bipartite { order } else { order / 2 };
        assert_eq!(lps.graph.n() as u64, n, "X^{{{p},{q}}}");
        assert_eq!(cert.degree, p + 1);
        assert_eq!(cert.bipartite, bipartite);
        assert_eq!(lps.params.bipartite_expected(), bipartite);
        assert_eq!(lps.generators.len() as u64, p + 1);
        assert!(lps.generators.iter().all(|g| g.norm() == p as i64));
        assert_eq!(lps.graph.adj(0, 0), 0, "no loops");
        let distinct: HashSet<_> = lps.elements.iter().collect();
        assert_eq!(distinct.len(), lps.elements.len());
    }
}

#[test]
fn generators_close_under_conjugation() {
    for p in [5u64, 13, 17, 29] {
        let gens = quaternion_generators(p).unwrap();
        assert_eq!(gens.len() as u64, p + 1);
        let set: HashSet<[i64; 4]> = gens.iter().map(|g| [g.a0, g.a1, g.a2, g.a3]).collect();
        for g in &gens {
            let [a, b, c, d] = [g.a0, g.a1, g.a2, g.a3];
            assert!(a > 0 && a % 2 == 1 && b % 2 == 0 && c % 2 == 0 && d % 2 == 0);
            assert!(set.contains(&[a, -b, -c, -d]));
        }
    }
}

#[test]
fn left_translations_are_automorphisms() {
    let lps = build_lps(13, 5).unwrap();
    let g = &lps.graph;
    for h in [1, 17, 59, 119] {
        let t = lps.left_translation(h);
        for v in 0..g.n() {
            for &(w, mult) in g.neighbors(v) {
                assert_eq!(g.adj(t[v], t[w]), mult);
            }
        }
    }
}

#[test]
fn small_lps_graphs_are_ramanujan() {
    for (p, q) in [(13u64, 5u64), (5, 13), (17, 5)] {
        let lps = build_lps(p, q).unwrap();
        let cert = certify_regular(&lps.graph).unwrap();
        let sd = eigenvalue_spectrum::<f64>(&lps.graph, &cert, None).unwrap();
        let k = (p + 1) as f64;
        let bound = 2.0 * (p as f64).sqrt();
        for &lambda in sd.eigenvalues() {
            assert!((lambda.abs() - k).abs() < 1e-6 || lambda.abs() < bound - 1e-6, "X^{{{p},{q}}}: {lambda}");
        }
    }
}

#[test]
fn rejects_bad_parameters() {
    assert!(matches!(LpsParams::new(3, 13), Err(Error::InvalidPrime(_))));
    assert!(matches!(LpsParams::new(5, 5), Err(Error::InvalidPrime(_))));
    assert!(matches!(LpsParams::new(5, 21), Err(Error::InvalidPrime(_))));
    assert!(matches!(build_lps(5, 101), Err(Error::TooLarge { .. })));
}

#[test]
fn theta_identity_on_x5_13() {
    let lps = build_lps(5, 13).unwrap();
    let counts = lps_walk_counts(&lps.graph, 4).unwrap();
    for m in 0..=4usize {
        let theta = theta_coefficient(&counts, m);
        let lattice = lattice_count(13, 5u128.pow(m as u32));
        assert_eq!(theta, BigInt::from(lattice), "m = {m}");
        let split = eisenstein_c(5, 13, m).unwrap() + cusp_coefficient(&lps.graph, &lps.params, m).unwrap();
        assert_eq!(split, BigRational::from_integer(theta));
    }
    assert_eq!(eisenstein_c(5, 13, 2).unwrap(), BigRational::new(31.into(), 546.into()));
    assert_eq!(lattice_count(13, 5), 0);
    assert_eq!(lattice_count(13, 25), 2);
}

#[test]
fn vertex_zero_counts_match_the_full_trace() {
    let lps = build_lps(13, 5).unwrap();
    let cert = certify_regular(&lps.graph).unwrap();
    let full = ClosedWalkCounts::compute(&lps.graph, &cert, 6);
    let at_zero = lps_walk_counts(&lps.graph, 6).unwrap();
    let n = BigInt::from(lps.graph.n());
    for m in 0..=6 {
        assert_eq!(full.trace_a(m), &(at_zero.f(m, 0) * &n));
    }
}
