use fpdim::ar::{enumerate_indecomposables, tau, tau_inverse, CatalogConfig, IndecomposableCatalog};
use fpdim::builtin::builtin;
use fpdim::canonical::{build_family, classify, recognize_family, FamilyTag};
use fpdim::fp::{AdjacencyAssignment, FpContext};
use fpdim::repr::{direct_sum, ext_dim, find_isomorphism, hom_dim, injective, min_proj_presentation, projective, syzygy};
use fpdim::spectral::{default_tolerance, spectral_radius_counts};
use fpdim::{Algebra, Field, Fp, Matrix, Rational, Representation};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Q = Rational;

fn alg(name: &str) -> Algebra<Q> {
    Algebra::from_spec(&builtin(name).unwrap()).unwrap()
}

fn full_catalog(a: &Algebra<Q>) -> (Algebra<Q>, IndecomposableCatalog<Q>) {
    let op = a.opposite().unwrap();
    let c = enumerate_indecomposables(a, &op, CatalogConfig::default()).unwrap();
    assert!(c.is_complete());
    (op, c)
}

/// A representation of the linear A4 quiver with the given dimensions and
/// entries drawn from `vals`.
fn a4_module(a: &Algebra<Q>, dims: &[usize], vals: &[i64]) -> Representation<Q> {
    let mut it = vals.iter().cycle();
    let maps = a
        .quiver()
        .arrows()
        .iter()
        .map(|ar| Matrix::from_fn(dims[ar.target], dims[ar.source], |_, _| Q::integer(*it.next().unwrap())))
        .collect();
    Representation::new(a, dims.to_vec(), maps).unwrap()
}

/// A direct sum of catalog entries, a module that satisfies the relations.
fn catalog_sum(a: &Algebra<Q>, cat: &IndecomposableCatalog<Q>, picks: &[usize]) -> Representation<Q> {
    let parts: Vec<&Representation<Q>> = picks.iter().map(|&i| cat.module(i % cat.len())).collect();
    direct_sum(a.quiver(), &parts).0
}

fn arm_relation(tag: FamilyTag, coeffs: &[(i64, usize)]) -> Vec<(Rational, Vec<String>)> {
    let arms = tag.arm_names();
    coeffs.iter().map(|&(c, k)| (Q::integer(c), arms[k].clone())).collect()
}

fn verdict<F: Field>(tag: FamilyTag, relations: &[Vec<(Rational, Vec<String>)>]) -> u8 {
    let (spec, _) = build_family(tag, relations).unwrap();
    let a: Algebra<F> = Algebra::from_spec(&spec).unwrap();
    classify(&a).unwrap().value
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn hom_from_projectives_and_into_injectives(
        dims in prop::collection::vec(0usize..3, 4),
        vals in prop::collection::vec(-2i64..=2, 1..12),
    ) {
        let a = alg("a4");
        let m = a4_module(&a, &dims, &vals);
        for v in 0..4 {
            prop_assert_eq!(hom_dim(a.quiver(), &projective(&a, v), &m), dims[v]);
            prop_assert_eq!(hom_dim(a.quiver(), &m, &injective(&a, v)), dims[v]);
        }
    }

    #[test]
    fn presentations_are_exact(picks in prop::collection::vec(0usize..64, 1..4), which in 0usize..2) {
        let a = alg(["example-6.2-1", "example-6.2-2"][which]);
        let (_, cat) = full_catalog(&a);
        let m = catalog_sum(&a, &cat, &picks);
        let pres = min_proj_presentation(&a, &m).unwrap();
        let omega = syzygy(&a, &m).module;
        let omega2 = syzygy(&a, &omega).module;
        for v in 0..a.num_vertices() {
            prop_assert_eq!(pres.p0.module().dim(v), m.dim(v) + omega.dim(v));
            prop_assert_eq!(pres.p1.module().dim(v), omega.dim(v) + omega2.dim(v));
        }
        prop_assert!(pres.cover.is_surjective());
        prop_assert!(pres.cover.compose(&pres.map).is_zero());
    }

    #[test]
    fn ext_is_stage_stable(x in 0usize..64, y in 0usize..64, k in 1usize..4) {
        let a = alg("example-6.2-2");
        let (_, cat) = full_catalog(&a);
        let (x, y) = (cat.module(x % cat.len()), cat.module(y % cat.len()));
        prop_assert_eq!(ext_dim(&a, k, x, y, k).unwrap(), ext_dim(&a, k, x, y, k + 3).unwrap());
    }

    #[test]
    fn translates_are_mutually_inverse(i in 0usize..64, which in 0usize..4) {
        let name = ["a4", "example-6.2-1", "example-6.2-2", "canonical-A:2,1/directed"][which];
        let a = alg(name);
        let (op, cat) = full_catalog(&a);
        let e = &cat.entries[i % cat.len()];
        let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
        if !e.projective {
            let back = tau_inverse(&op, &tau(&a, &e.module));
            prop_assert!(find_isomorphism(a.quiver(), &back, &e.module, &mut rng).is_isomorphic());
        }
        if !e.injective {
            let back = tau(&a, &tau_inverse(&op, &e.module));
            prop_assert!(find_isomorphism(a.quiver(), &back, &e.module, &mut rng).is_isomorphic());
        }
    }

    #[test]
    fn duality_reverses_hom(x in 0usize..64, y in 0usize..64) {
        let a = alg("example-6.2-2");
        let (op, cat) = full_catalog(&a);
        let (m, n) = (cat.module(x % cat.len()), cat.module(y % cat.len()));
        prop_assert_eq!(&m.dual().dual(), m);
        prop_assert_eq!(hom_dim(a.quiver(), m, n), hom_dim(op.quiver(), &n.dual(), &m.dual()));
    }

    #[test]
    fn brick_subsets_do_not_raise_the_radius(clique in 0usize..16, mask in 1u32..64, zeta in 0usize..3) {
        let a = alg("example-6.2-2");
        let (op, cat) = full_catalog(&a);
        let ctx = FpContext::new(&a, &op, &cat, 2);
        let cliques = ctx.brick_cliques();
        let full = &cliques[clique % cliques.len()];
        let sub: Vec<usize> = full.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &i)| i).collect();
        prop_assume!(!sub.is_empty());
        let zeta = [AdjacencyAssignment::E(1), AdjacencyAssignment::E(2), AdjacencyAssignment::Tau][zeta];
        let tol = default_tolerance();
        let big = spectral_radius_counts(&ctx.adjacency_matrix(full, zeta).unwrap(), &tol).unwrap().value;
        let small = spectral_radius_counts(&ctx.adjacency_matrix(&sub, zeta).unwrap(), &tol).unwrap().value;
        prop_assert!(small.certified_le(&big), "{} > {}", small, big);
        let id = ctx.adjacency_matrix(&sub, AdjacencyAssignment::E(0)).unwrap();
        for (r, row) in id.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                prop_assert_eq!(x, usize::from(r == c));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// `⟨a·α + b·γ⟩` on `A(n,m)` is in the zero class exactly when both
    /// coefficients are nonzero, whatever the rescaling.
    #[test]
    fn type_a_pencil(n in 2usize..5, m in 1usize..4, a in -3i64..=3, b in -3i64..=3, s in 1i64..=4) {
        prop_assume!(a != 0 || b != 0);
        let tag = FamilyTag::A { n, m };
        let rel = arm_relation(tag, &[(a, 0), (b, 1)]);
        let expected = u8::from(a == 0 || b == 0);
        prop_assert_eq!(verdict::<Q>(tag, &[rel]), expected);
        let scaled = arm_relation(tag, &[(a * s, 0), (b * s, 1)]);
        prop_assert_eq!(verdict::<Q>(tag, &[scaled]), expected);
    }

    #[test]
    fn type_a_pencil_mod_seven(a in 0i64..7, b in 0i64..7) {
        prop_assume!(a != 0 || b != 0);
        let tag = FamilyTag::A { n: 2, m: 2 };
        let rel = arm_relation(tag, &[(a, 0), (b, 1)]);
        prop_assert_eq!(verdict::<Fp<7>>(tag, &[rel]), u8::from(a == 0 || b == 0));
    }

    /// With `α + β + γ` and `β + t·γ` in the ideal, `α ≡ (t - 1)·γ` and
    /// `β ≡ -t·γ`, so both pencils have a nonzero solution iff `t ∉ {0, 1}`.
    #[test]
    fn three_arm_pencil(t in -4i64..=4, which in 0usize..4) {
        let tag = [FamilyTag::D { n: 4 }, FamilyTag::D { n: 5 }, FamilyTag::E { n: 6 }, FamilyTag::E { n: 7 }][which];
        let expected = u8::from(t == 0 || t == 1);
        let rel = arm_relation(tag, &[(1, 1), (t, 2)]);
        prop_assert_eq!(verdict::<Q>(tag, &[rel]), expected);
        if let FamilyTag::D { .. } = tag {
            // β and γ are both two arrows long
            let swapped = arm_relation(tag, &[(1, 2), (t, 1)]);
            prop_assert_eq!(verdict::<Q>(tag, &[swapped]), expected);
        }
    }

    /// Arm-sum plus arm monomials: zero class iff at least two arms lie in
    /// the ideal, and a verdict of one leaves at least two arms outside.
    #[test]
    fn membership_patterns(pattern in 0u8..8, which in 0usize..3) {
        let tag = [FamilyTag::D { n: 4 }, FamilyTag::D { n: 5 }, FamilyTag::E { n: 6 }][which];
        let rels: Vec<_> = (0..3).filter(|k| pattern & (1 << k) != 0).map(|k| arm_relation(tag, &[(1, k)])).collect();
        let (spec, _) = build_family(tag, &rels).unwrap();
        let a: Algebra<Q> = Algebra::from_spec(&spec).unwrap();
        let v = classify(&a).unwrap().value;
        prop_assert_eq!(v, u8::from(pattern.count_ones() < 2));
        let fam = recognize_family(a.quiver()).unwrap();
        let outside = (0..3)
            .filter(|&k| !a.contains(&[(Q::one(), fam.arm_path(a.quiver(), k))]).unwrap())
            .count();
        if v == 1 {
            prop_assert!(outside >= 2);
        } else {
            prop_assert_eq!(outside, 0);
        }
    }
}
