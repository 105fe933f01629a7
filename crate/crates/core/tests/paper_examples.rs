use fpdim::ar::{enumerate_indecomposables, is_representation_directed, tau_inverse, CatalogConfig, OrderOrCycle};
use fpdim::builtin::builtin;
use fpdim::canonical::{classify, recognize_family, standard_family, verify_gluing, witness_brick_set, FamilyTag, StandardIdeal};
use fpdim::fp::{adjacency_matrix_modules, fp_theory_table, AdjacencyAssignment, FpConfig, FpContext, ValueMethod};
use fpdim::repr::{find_isomorphism, injective, is_brick_set, projective, radical, simple};
use fpdim::spectral::SpectralValue;
use fpdim::{Algebra, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Rational;

fn alg(name: &str) -> Algebra<Q> {
    Algebra::from_spec(&builtin(name).unwrap()).unwrap()
}

fn family(tag: FamilyTag, ideal: StandardIdeal) -> Algebra<Q> {
    Algebra::from_spec(&standard_family(tag, ideal).unwrap()).unwrap()
}

/// True when `m` is the permutation matrix of one cycle through every index.
fn is_single_cycle(m: &[Vec<usize>]) -> bool {
    let n = m.len();
    let mut next = vec![usize::MAX; n];
    for (i, row) in m.iter().enumerate() {
        if row.iter().sum::<usize>() != 1 || m.iter().map(|r| r[i]).sum::<usize>() != 1 {
            return false;
        }
        next[i] = row.iter().position(|&x| x == 1).unwrap();
    }
    let (mut i, mut steps) = (next[0], 1);
    while i != 0 && steps <= n {
        i = next[i];
        steps += 1;
    }
    i == 0 && steps == n
}

fn report(a: &Algebra<Q>) -> fpdim::fp::FpReport {
    let op = a.opposite().unwrap();
    let catalog = enumerate_indecomposables(a, &op, CatalogConfig::default()).unwrap();
    assert!(catalog.is_complete());
    let ctx = FpContext::new(a, &op, &catalog, 4);
    fp_theory_table(&ctx, &FpConfig::default()).unwrap()
}

#[test]
fn example_spec_shape() {
    let spec = builtin("example-6.2-1").unwrap();
    assert_eq!(spec.quiver.num_vertices(), 4);
    assert_eq!(spec.quiver.num_arrows(), 4);
    assert_eq!(spec.relations.len(), 1);
}

#[test]
fn dynkin_table_is_zero_and_one() {
    let r = report(&alg("a4"));
    assert_eq!(r.fpd.value, SpectralValue::Zero);
    assert_eq!(r.fpd.method, ValueMethod::ExactEnumeration);
    assert_eq!(r.fpd_tau.value, SpectralValue::Zero);
    for e in &r.table {
        let expected = if e.m == 0 { SpectralValue::One } else { SpectralValue::Zero };
        assert_eq!(e.value, expected, "fpd^{}(E{})", e.n, e.m);
    }
}

#[test]
fn commutative_square_is_directed_with_fpd_zero() {
    let a = alg("example-6.2-1");
    let op = a.opposite().unwrap();
    let catalog = enumerate_indecomposables(&a, &op, CatalogConfig::default()).unwrap();
    assert!(matches!(is_representation_directed(&a, &catalog).unwrap(), OrderOrCycle::Order(_)));
    let r = report(&a);
    assert_eq!(r.fpd.value, SpectralValue::Zero);
    assert_eq!(r.fpd_row(2), Some(SpectralValue::Zero));
    assert_eq!(r.fpd_row(3), Some(SpectralValue::Zero));
}

#[test]
fn zero_relation_square_has_fpd_one() {
    let r = report(&alg("example-6.2-2"));
    assert_eq!(r.fpd.value, SpectralValue::One);
    let w = r.witness(AdjacencyAssignment::E(1)).unwrap();
    assert_eq!(w.bricks.len(), 2);
    assert_eq!(w.matrix, vec![vec![0, 1], vec![1, 0]]);
    // fpd(E1) <= fpd(TAU)
    assert!(r.fpd.value.certified_le(&r.fpd_tau.value));
}

#[test]
fn alpha_arm_witness_is_a_cycle() {
    for (n, m) in [(2, 1), (3, 1), (3, 2), (4, 1), (4, 2)] {
        let a = family(FamilyTag::A { n, m }, StandardIdeal::AlphaArm);
        let w = witness_brick_set(&a).unwrap();
        assert_eq!(w.modules.len(), n);
        assert!(is_single_cycle(&w.matrix), "A({n},{m}): {:?}", w.matrix);
        assert_eq!(w.rho, SpectralValue::One);
        assert!(is_brick_set(a.quiver(), &w.modules).unwrap());
        let labels: Vec<String> = (2..=n).map(|v| format!("S({v})")).chain(["M(0)".to_string()]).collect();
        assert_eq!(w.labels, labels);
    }
    let a = family(FamilyTag::A { n: 2, m: 1 }, StandardIdeal::AlphaArm);
    assert_eq!(witness_brick_set(&a).unwrap().m0.dims(), &[1, 0, 1, 1]);
}

#[test]
fn d_witness_lives_on_the_short_arms() {
    for n in [4, 5, 6] {
        let a = family(FamilyTag::D { n }, StandardIdeal::Canonical);
        let w = witness_brick_set(&a).unwrap();
        let dims = w.m0.dims();
        // sink 1, α interior 2..n-2, β and γ interiors n-1 and n, source n+1
        let expected: Vec<usize> = (1..=n + 1).map(|v| usize::from(v == 1 || v >= n - 1)).collect();
        assert_eq!(dims, expected.as_slice());
        assert!(is_single_cycle(&w.matrix));
        assert_eq!(w.rho, SpectralValue::One);
    }
}

#[test]
fn e_witness_has_radius_one() {
    for n in [6, 7, 8] {
        let a = family(FamilyTag::E { n }, StandardIdeal::Canonical);
        assert_eq!(classify(&a).unwrap().value, 1);
        let w = witness_brick_set(&a).unwrap();
        assert!(is_single_cycle(&w.matrix));
        assert_eq!(w.rho, SpectralValue::One);
    }
}

#[test]
fn e_zero_is_identity_on_witnesses() {
    let a = family(FamilyTag::D { n: 5 }, StandardIdeal::Canonical);
    let w = witness_brick_set(&a).unwrap();
    let m = adjacency_matrix_modules(&a, &w.modules, AdjacencyAssignment::E(0)).unwrap();
    for (i, row) in m.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            assert_eq!(x, usize::from(i == j));
        }
    }
}

#[test]
fn directed_ideal_gives_verdict_zero() {
    for (n, m) in [(2, 1), (2, 2), (3, 1), (4, 2)] {
        let a = family(FamilyTag::A { n, m }, StandardIdeal::Directed);
        assert_eq!(classify(&a).unwrap().value, 0);
    }
    for tag in [FamilyTag::D { n: 4 }, FamilyTag::E { n: 6 }] {
        assert_eq!(classify(&family(tag, StandardIdeal::Directed)).unwrap().value, 0);
    }
}

#[test]
fn projective_injective_gluing() {
    for (n, m) in [(2, 1), (3, 1), (2, 2)] {
        let a = family(FamilyTag::A { n, m }, StandardIdeal::Directed);
        let f = recognize_family(a.quiver()).unwrap();
        let p = projective(&a, f.source);
        let i = injective(&a, f.sink);
        assert!(p.dims().iter().all(|&d| d == 1));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(find_isomorphism(a.quiver(), &p, &i, &mut rng).is_isomorphic());
        for item in verify_gluing(&a, 7).unwrap() {
            assert!(item.passed(), "A({n},{m}) {}: {:?}", item.name, item.violations);
        }
    }
}

#[test]
fn gluing_radical_and_translate() {
    let a = family(FamilyTag::A { n: 2, m: 1 }, StandardIdeal::Directed);
    let op = a.opposite().unwrap();
    let f = recognize_family(a.quiver()).unwrap();
    let (rad, _) = radical(a.quiver(), &projective(&a, f.source));
    // rad P(source) misses only the source
    let expected: Vec<usize> = (0..a.num_vertices()).map(|v| usize::from(v != f.source)).collect();
    assert_eq!(rad.dims(), expected.as_slice());
    // τ⁻ of rad P(source) is the quotient of P(source) by its socle, so
    // it misses only the sink
    let t = tau_inverse(&op, &rad);
    let expected: Vec<usize> = (0..a.num_vertices()).map(|v| usize::from(v != f.sink)).collect();
    assert_eq!(t.dims(), expected.as_slice());
}

#[test]
fn simples_form_a_brick_set() {
    let a = alg("a4");
    let simples: Vec<_> = (0..4).map(|v| simple(&a, v)).collect();
    assert!(is_brick_set(a.quiver(), &simples).unwrap());
}
