use cwtop::abelian::{
    direct_sum, ext, hom, in_class, snf, torsion_primes, FgAbGroup, IntMatrix, PrimeSet,
};
use cwtop::ahomology::a_homology_range;
use cwtop::chains::{wedge, ChainComplex};
use cwtop::corpus::{random_complex, random_group, random_table, rng, ComplexShape};
use cwtop::federer::{federer_e2, hopf_whitney, torsion_class_check, Structure, Variant};
use cwtop::spaces::sphere;
use num_bigint::BigInt;
use proptest::prelude::*;

fn matrix() -> impl Strategy<Value = IntMatrix> {
    (0usize..=6, 0usize..=6).prop_flat_map(|(r, c)| {
        prop::collection::vec(-10i64..=10, r * c).prop_map(move |v| {
            IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

fn group() -> impl Strategy<Value = FgAbGroup> {
    (0usize..=2, prop::collection::vec(1u32..=30, 0..=3)).prop_map(|(free, orders)| {
        FgAbGroup::from_cyclic_orders(free, orders.into_iter().map(BigInt::from))
    })
}

fn finite_group() -> impl Strategy<Value = FgAbGroup> {
    prop::collection::vec(1u32..=30, 0..=3)
        .prop_map(|orders| FgAbGroup::from_cyclic_orders(0, orders.into_iter().map(BigInt::from)))
}

fn complex(connected: bool) -> impl Strategy<Value = ChainComplex> {
    any::<u64>().prop_map(move |seed| {
        let shape = ComplexShape {
            max_rank: 4,
            max_top_degree: 4,
            connected,
            ..Default::default()
        };
        random_complex(&mut rng(seed), shape, "c")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_certificate(m in matrix()) {
        let d = snf(&m);
        prop_assert!(d.verify().is_ok(), "{:?}", d.verify());
    }

    #[test]
    fn group_string_round_trip(g in group()) {
        let back: FgAbGroup = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
    }

    #[test]
    fn hom_ext_additive(g in group(), h in group(), k in group()) {
        let gh = direct_sum([&g, &h]);
        prop_assert_eq!(hom(&gh, &k), direct_sum([&hom(&g, &k), &hom(&h, &k)]));
        prop_assert_eq!(ext(&gh, &k), direct_sum([&ext(&g, &k), &ext(&h, &k)]));
        prop_assert_eq!(hom(&k, &gh), direct_sum([&hom(&k, &g), &hom(&k, &h)]));
        prop_assert_eq!(ext(&k, &gh), direct_sum([&ext(&k, &g), &ext(&k, &h)]));
    }

    #[test]
    fn finite_hom_and_ext_have_equal_order(g in finite_group(), h in finite_group()) {
        prop_assert_eq!(hom(&g, &h).order(), ext(&g, &h).order());
    }

    #[test]
    fn uct_matches_direct(c in complex(false), g in group()) {
        for n in 0..=c.top_degree() + 1 {
            prop_assert_eq!(c.cohomology_uct(n, &g), c.cohomology_direct(n, &g), "n={}", n);
        }
    }

    #[test]
    fn suspension_shifts_homology(c in complex(false)) {
        let s = c.suspension();
        prop_assert!(s.homology(0).is_trivial());
        for n in 0..=c.dim() {
            prop_assert_eq!(s.homology(n + 1), c.homology(n));
        }
    }

    #[test]
    fn wedge_adds_homology(a in complex(true), b in complex(true)) {
        let w = wedge(&[a.clone(), b.clone()]);
        for n in 0..=w.dim() {
            prop_assert_eq!(w.homology(n), direct_sum([&a.homology(n), &b.homology(n)]));
        }
    }

    #[test]
    fn euler_characteristic_from_homology(c in complex(false)) {
        let from_homology: i64 = (0..=c.dim())
            .map(|n| {
                let r = c.homology(n).free_rank() as i64;
                if n % 2 == 0 { r } else { -r }
            })
            .sum();
        prop_assert_eq!(c.euler_characteristic(), from_homology);
    }

    #[test]
    fn file_round_trip(c in complex(false)) {
        let back = ChainComplex::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(&back, &c);
        prop_assert_eq!(back.homology_all(), c.homology_all());
    }

    #[test]
    fn ahomology_respects_vanishing_window(a in complex(true), x in complex(true)) {
        let report = a_homology_range(&a, &x);
        prop_assert!(report.violations.is_empty(), "{:?}", report.violations);
    }

    #[test]
    fn hopf_whitney_on_spheres(n in 2usize..=8, g in group()) {
        let h = hopf_whitney(&sphere(n), &g, false).unwrap();
        prop_assert_eq!(h.group, g);
        prop_assert_eq!(h.structure, Structure::Group);
    }

    #[test]
    fn torsion_class_soundness(a in complex(true), seed in any::<u64>(), primes in prop::sample::subsequence(vec![2u64, 3, 5], 1..=3)) {
        let p = PrimeSet::new(primes).unwrap();
        let t = random_table(&mut rng(seed), Variant::Absolute, 6, 40);
        let report = torsion_class_check(&a, &t, &p).unwrap();
        if report.hypothesis_holds {
            prop_assert!(report.all_entries_in_class, "{:?}", report.failing_entries);
        }
        let page = federer_e2(&a, &t).unwrap();
        for (_, e) in page.entries() {
            if report.hypothesis_holds {
                prop_assert!(in_class(&e.group, &p));
            }
        }
    }

    #[test]
    fn torsion_primes_are_minimal_class(g in group()) {
        let p = torsion_primes(&g);
        prop_assert_eq!(in_class(&g, &p), g.free_rank() == 0);
    }
}

#[test]
fn random_groups_have_varied_torsion() {
    let mut r = rng(99);
    let groups: Vec<FgAbGroup> = (0..100).map(|_| random_group(&mut r, 50)).collect();
    assert!(groups.iter().any(|g| g.invariant_factors().len() == 2));
    assert!(groups.iter().any(FgAbGroup::is_trivial));
}

#[test]
fn random_complexes_have_torsion() {
    let mut r = rng(7);
    let torsion = (0..50)
        .map(|_| random_complex(&mut r, ComplexShape::default(), "c"))
        .filter(|c| (0..=c.dim()).any(|n| !c.homology(n).invariant_factors().is_empty()))
        .count();
    assert!(torsion >= 10, "only {torsion} of 50 complexes have torsion");
}
