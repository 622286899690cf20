use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use unisingular::arith::{self, MalleParams};
use unisingular::audit::{self, SpechtGroup};
use unisingular::gf2::Meataxe;
use unisingular::perm::{class_reps_symmetric, BuiltinGroup, Permutation};
use unisingular::specht::{SpechtFamily, SpechtModule};
use unisingular::symplectic::SymplecticSpace;

fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
    let mut v: Vec<usize> = (0..n).collect();
    v.shuffle(rng);
    Permutation::from_images(v).unwrap()
}

#[test]
fn det_one_minus_is_a_class_function() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [6, 7] {
        for family in SpechtFamily::ALL {
            let module = SpechtModule::new(&family.base_shape(n).unwrap()).unwrap();
            for (_, rep) in class_reps_symmetric(n) {
                let d = audit::specht_class_matrix(&module, family, &rep).unwrap().det_one_minus().unwrap();
                for _ in 0..3 {
                    let g = random_perm(n, &mut rng);
                    let conj = rep.conjugate_by(&g);
                    let m = audit::specht_class_matrix(&module, family, &conj).unwrap();
                    assert_eq!(m.det_one_minus().unwrap(), d, "{family} at {rep} conjugated by {g}");
                }
            }
        }
    }
}

#[test]
fn gf2_verdict_matches_nullity() {
    for group in [BuiltinGroup::Agl2_3, BuiltinGroup::Pgl2 { q: 11 }, BuiltinGroup::Symmetric { n: 8 }] {
        let g = group.build().unwrap();
        let (report, _) = audit::audit_embedded(&g, &Meataxe::default()).unwrap();
        let space = SymplecticSpace::new(g.degree()).unwrap();
        for (rec, class) in report.classes.iter().zip(g.conjugacy_classes().unwrap()) {
            let nullity = space.embed(&class.representative).unwrap().plus_identity().unwrap().nullity();
            assert_eq!(rec.has_eigenvalue_one, nullity >= 1);
            assert_eq!(rec.eig1_geometric, nullity);
        }
        assert_eq!(report.unisingular, report.offenders.is_empty());
    }
}

#[test]
fn integer_audit_multiplicities() {
    let r = audit::audit_specht(7, SpechtFamily::Hook, SpechtGroup::Symmetric, false).unwrap();
    for c in &r.classes {
        assert!(c.eig1_algebraic >= c.eig1_geometric);
        assert_eq!(c.has_eigenvalue_one, c.det_one_minus == "0");
        // finite-order integer matrices are diagonalizable over C
        assert_eq!(c.eig1_algebraic, c.eig1_geometric);
    }
    let id = r.class("(1,1,1,1,1,1,1)").unwrap();
    assert_eq!(id.eig1_geometric, r.dimension);
}

#[test]
fn census_restriction_consistency() {
    // A_9 is too large; AGammaL_1(9) is unisingular, so every subgroup must be
    let g = BuiltinGroup::AGammaL1_9.build().unwrap();
    let space = SymplecticSpace::new(9).unwrap();
    let m = space.embed_group(&g).unwrap();
    let elements = unisingular::gf2::matrix_group_closure(m.generators(), 1000).unwrap();
    let c = audit::subgroup_census(&elements, &Meataxe::default()).unwrap();
    assert!(c.group_unisingular && c.restriction_consistent);
    assert!(c.irreducible_orders.contains(&144));
    assert!(c.summary.iter().all(|r| r.unisingular));
}

#[test]
fn census_bound() {
    let g = BuiltinGroup::Symmetric { n: 7 }.build().unwrap();
    let space = SymplecticSpace::new(7).unwrap();
    let m = space.embed_group(&g).unwrap();
    let elements = unisingular::gf2::matrix_group_closure(m.generators(), 10_000).unwrap();
    assert!(audit::subgroup_census(&elements, &Meataxe::default()).is_err());
}

#[test]
fn discriminant_negative_control() {
    let params = MalleParams { a: 3, t: -7 };
    let mut c = arith::malle_g(&params).coeffs().to_vec();
    c[3] += 1;
    let corrupted = unisingular::exact::IntPoly::new(c);
    let d = arith::disc_resultant(&corrupted).unwrap();
    assert_ne!(d, arith::malle_disc_formula(&params));
    assert!(!d.is_zero());
    assert!(arith::disc_check(&params).unwrap().equal);
}
