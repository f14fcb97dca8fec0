mod common;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;

use ihara_core::limits::{
    angle_condition, angle_condition_intersection, average_nm, average_nm_from_counts, cesaro_a, cesaro_matrix,
    huang_sequence, limit_constant, MomentKind,
};
use ihara_core::nbt::ClosedWalkCounts;
use ihara_core::spectral::eigendecompose;
use ihara_core::{certify_regular, named_graph, Graph, Spectrum};

use common::cartesian;

fn spectrum(g: &Graph) -> Spectrum {
    eigendecompose(g, &certify_regular(g).unwrap(), None).unwrap()
}

/// 5-regular, q = 4, with eigenvalue +4 = 2√q of multiplicity 2.
fn c6_k4() -> Graph {
    cartesian(&named_graph("cycle(6)").unwrap(), &named_graph("k4").unwrap())
}

#[test]
fn limit_constants_are_central_binomials() {
    for k in 0..=12u32 {
        let expected = if k % 2 == 0 {
            BigRational::new(binomial(BigInt::from(k), BigInt::from(k / 2)), BigInt::from(2).pow(k))
        } else {
            BigRational::from_integer(0.into())
        };
        assert_eq!(limit_constant(k), expected, "k = {k}");
    }
}

#[test]
fn edge_eigenvalue_enters_with_plus_sign() {
    let g = c6_k4();
    let cert = certify_regular(&g).unwrap();
    assert_eq!(cert.q, 4);
    assert!(!cert.bipartite);
    let sd = spectrum(&g);
    assert_eq!(sd.multiplicity_at_two_sqrt_q(), 2);

    let horizons = [20, 40, 80, 160];
    let report = average_nm(&g, &cert, &sd, &horizons).unwrap();
    assert!(report.band.pass, "{:?}", report.band);
    assert!(report.residuals.last().unwrap().abs() < 0.05, "{:?}", report.residuals);

    // without the edge term the residual settles at −2·m_{2√q} instead of 0
    let counts = ClosedWalkCounts::compute(&g, &cert, 160).n_sequence();
    let dropped = average_nm_from_counts(cert.q, false, 0, &counts, &horizons).unwrap();
    let last = *dropped.residuals.last().unwrap();
    assert!((last.abs() - 4.0).abs() < 0.05, "{last}");
    assert!(!dropped.band.pass);
}

#[test]
fn angle_condition_is_a_union() {
    // K_{3,3}, k = 4: only the ±(q+1) and 0 eigenvalues, all angles on the grid
    let sd = spectrum(&named_graph("k33").unwrap());
    assert!(!angle_condition(&sd, 4));
    let m = cesaro_matrix(&sd, 4, 400, MomentKind::A).unwrap();
    // the average is P_0/2, not 3/8·P_0
    let p0 = sd.projector(sd.clusters().iter().position(|c| c.lambda.abs() < 1e-9).unwrap()).unwrap();
    assert!(m.max_abs_diff(&p0.scale(&0.5)) < 1e-2);
    assert!(m.max_abs_diff(&p0.scale(&0.375)) > 1e-2);

    // K3, k = 3: θ = 2π/3 breaks the cube condition although k is odd
    let k3 = spectrum(&named_graph("k3").unwrap());
    assert!(!angle_condition(&k3, 3));

    // the two readings are not interchangeable on the corpus
    let disagree = ["k3", "k4", "k33", "petersen", "cube"].iter().any(|name| {
        let sd = spectrum(&named_graph(name).unwrap());
        (1..=4).any(|k| angle_condition(&sd, k) != angle_condition_intersection(&sd, k))
    });
    assert!(disagree);
}

#[test]
fn cesaro_deviation_shrinks_like_one_over_n() {
    let sd = spectrum(&named_graph("petersen").unwrap());
    for k in 1..=4 {
        assert!(angle_condition(&sd, k));
        let r = cesaro_a(&sd, k, &[100, 200, 400, 800]).unwrap();
        assert!(r.band.pass, "k = {k}: {:?}", r.band);
        assert!(r.deviations[3] <= r.envelope[3] / 800.0 + 1e-15);
    }
}

fn k2() -> Graph {
    Graph::from_adjacency(2, vec![0, 1, 1, 0]).unwrap()
}

#[test]
fn huang_detects_non_ramanujan() {
    // Ramanujan graphs stay nonnegative at even m
    let g = c6_k4();
    let h = huang_sequence(&g, &certify_regular(&g).unwrap(), 30);
    assert!(h.iter().skip(1).step_by(2).all(|&x| x >= -1e-9));

    // C20 □ K2 is 3-regular with eigenvalue 1 + 2cos(π/10) ≈ 2.902 > 2√2
    let g = cartesian(&named_graph("cycle(20)").unwrap(), &k2());
    let cert = certify_regular(&g).unwrap();
    let h = huang_sequence(&g, &cert, 60);
    assert!(h.iter().skip(1).step_by(2).any(|&x| x < 0.0), "{h:?}");
}
