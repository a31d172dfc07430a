//! Seeded random generators and the built-in verification suite.
//!
//! Every check uses its own fixed seed, so runs are reproducible.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{cokernel, kernel_basis, snf, FgAbGroup, IntMatrix, PrimeSet};
use crate::ahomology::{
    a_homology, check_suspension_axiom, check_wedge_axiom, moore_a_homology_ses,
};
use crate::chains::{wedge, ChainComplex};
use crate::federer::{
    collapse_report, e2_consistency_with_ahomology, federer_e2, hopf_whitney, moore_homotopy_ses,
    relative_federer_e2, torsion_class_check, EntryStatus, HomotopyTable, Structure, Variant,
    Verdict,
};
use crate::spaces::{moore, projective, sphere};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct ComplexShape {
    pub max_rank: usize,
    pub max_top_degree: usize,
    pub max_entry: i64,
    /// Force `rank(0) = 0`, which makes the complex connected.
    pub connected: bool,
}

impl Default for ComplexShape {
    fn default() -> Self {
        ComplexShape {
            max_rank: 5,
            max_top_degree: 5,
            max_entry: 6,
            connected: false,
        }
    }
}

/// A random valid complex. Each column of `∂_k` is a small combination of a
/// kernel basis of `∂_{k-1}`, so `∂∂ = 0` holds by construction; columns
/// whose entries exceed the bound are redrawn and finally zeroed.
pub fn random_complex(rng: &mut impl Rng, shape: ComplexShape, name: &str) -> ChainComplex {
    let top = rng.gen_range(0..=shape.max_top_degree);
    let lowest = usize::from(shape.connected);
    let mut ranks = BTreeMap::new();
    for k in lowest..=top.max(lowest) {
        ranks.insert(k, rng.gen_range(0..=shape.max_rank));
    }
    let rank = |k: usize| ranks.get(&k).copied().unwrap_or(0);
    let mut boundaries: BTreeMap<usize, IntMatrix> = BTreeMap::new();
    for k in 1..=top {
        let (rows, cols) = (rank(k - 1), rank(k));
        if rows == 0 || cols == 0 {
            continue;
        }
        let kernel = match boundaries.get(&(k - 1)) {
            Some(prev) => kernel_basis(prev),
            None => IntMatrix::identity(rows),
        };
        let mut columns = Vec::with_capacity(cols);
        for _ in 0..cols {
            columns.push(random_column(rng, &kernel, shape.max_entry));
        }
        boundaries.insert(k, IntMatrix::from_columns(rows, &columns));
    }
    ChainComplex::new(name, ranks, boundaries).expect("generated complexes satisfy dd = 0")
}

fn random_column(rng: &mut impl Rng, kernel: &IntMatrix, bound: i64) -> Vec<BigInt> {
    let bound = BigInt::from(bound);
    for _ in 0..20 {
        let coeffs: Vec<BigInt> = (0..kernel.cols())
            .map(|_| BigInt::from(rng.gen_range(-2i64..=2)))
            .collect();
        let column = kernel.mul_vec(&coeffs);
        if column.iter().all(|x| x.abs() <= bound) {
            return column;
        }
    }
    vec![BigInt::zero(); kernel.rows()]
}

/// Random group with at most two free summands and an invariant factor
/// chain of length at most two, every factor in `2..=max_factor`.
pub fn random_group(rng: &mut impl Rng, max_factor: u64) -> FgAbGroup {
    let free = rng.gen_range(0..=2);
    let mut factors = Vec::new();
    if max_factor >= 2 {
        for _ in 0..rng.gen_range(0..=2) {
            let lo = factors.last().copied().unwrap_or(1);
            let multiples: Vec<u64> = (2..=max_factor).filter(|d| d % lo == 0 && *d > 1).collect();
            if multiples.is_empty() {
                break;
            }
            factors.push(multiples[rng.gen_range(0..multiples.len())]);
        }
    }
    FgAbGroup::new(free, factors.into_iter().map(BigInt::from).collect())
        .expect("chain by construction")
}

pub fn random_finite_group(rng: &mut impl Rng, max_factor: u64) -> FgAbGroup {
    let g = random_group(rng, max_factor);
    FgAbGroup::new(0, g.invariant_factors().to_vec()).expect("same chain")
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::from_vec(rows, cols, data).expect("sized")
}

pub fn random_table(
    rng: &mut impl Rng,
    variant: Variant,
    q_max: usize,
    max_factor: u64,
) -> HomotopyTable {
    HomotopyTable::from_fn(variant, q_max, true, |_| random_group(rng, max_factor))
        .expect("contiguous")
}

/// Spheres, projective spaces, Moore spaces, suspensions and wedges.
pub fn standard_complexes() -> Vec<ChainComplex> {
    let g = |s: &str| s.parse::<FgAbGroup>().expect("literal");
    vec![
        sphere(1),
        sphere(2),
        sphere(5),
        projective(2),
        projective(3),
        projective(6),
        moore(&g("Z/2"), 1),
        moore(&g("Z/6"), 2),
        moore(&g("Z + Z/4"), 3),
        moore(&g("Z/2 + Z/12"), 1),
        projective(2).suspension(),
        wedge(&[sphere(2), sphere(3)]),
        wedge(&[projective(3), moore(&g("Z/3"), 2)]),
    ]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn from_failures(name: &'static str, cases: usize, failures: Vec<String>) -> Self {
        let passed = failures.is_empty();
        let detail = if passed {
            format!("{cases} cases")
        } else {
            let shown: Vec<&str> = failures.iter().take(3).map(String::as_str).collect();
            format!(
                "{} of {cases} cases failed; first: {}",
                failures.len(),
                shown.join("; ")
            )
        };
        CheckOutcome {
            name,
            passed,
            detail,
        }
    }

    pub fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

pub fn sphere_formula() -> CheckOutcome {
    let g = |s: &str| s.parse::<FgAbGroup>().expect("literal");
    let spaces = [
        projective(2),
        projective(3),
        moore(&g("Z/2"), 1),
        moore(&g("Z/6"), 2),
        projective(2).suspension(),
        wedge(&[sphere(2), sphere(3)]),
    ];
    let z = FgAbGroup::free(1);
    let mut cases = 0;
    let mut failures = Vec::new();
    for a in &spaces {
        for n in 1..=8 {
            let x = sphere(n);
            for r in 0..=n + 1 {
                cases += 1;
                let lhs = a_homology(a, &x, r);
                let rhs = if r <= n {
                    a.cohomology_direct(n - r, &z)
                } else {
                    FgAbGroup::trivial()
                };
                if lhs != rhs {
                    failures.push(format!("A={} n={n} r={r}: {lhs} vs {rhs}", a.name()));
                }
            }
        }
    }
    CheckOutcome::from_failures("sphere-formula", cases, failures)
}

pub fn s0_degeneration() -> CheckOutcome {
    let s0 = sphere(0);
    let mut r = rng(2);
    let mut corpus = standard_complexes();
    let shape = ComplexShape {
        connected: true,
        ..Default::default()
    };
    corpus.extend((0..10).map(|i| random_complex(&mut r, shape, &format!("rand{i}"))));
    let mut cases = 0;
    let mut failures = Vec::new();
    for x in &corpus {
        for n in 0..=x.dim() + 1 {
            cases += 1;
            let (lhs, rhs) = (a_homology(&s0, x, n), x.homology(n));
            if lhs != rhs {
                failures.push(format!("X={} n={n}: {lhs} vs {rhs}", x.name()));
            }
        }
    }
    CheckOutcome::from_failures("s0-degeneration", cases, failures)
}

pub fn uct_vs_direct() -> CheckOutcome {
    let mut r = rng(3);
    let mut cases = 0;
    let mut failures = Vec::new();
    for i in 0..200 {
        let c = random_complex(&mut r, ComplexShape::default(), &format!("rand{i}"));
        let g = random_group(&mut r, 50);
        for n in 0..=c.top_degree() + 1 {
            cases += 1;
            let (uct, direct) = (c.cohomology_uct(n, &g), c.cohomology_direct(n, &g));
            if uct != direct {
                failures.push(format!("complex {i} n={n} G={g}: {uct} vs {direct}"));
            }
        }
    }
    CheckOutcome::from_failures("uct-vs-direct", cases, failures)
}

pub fn snf_certificates() -> CheckOutcome {
    let mut r = rng(4);
    let mut failures = Vec::new();
    for i in 0..500 {
        let (rows, cols) = (r.gen_range(0..=8), r.gen_range(0..=8));
        let m = random_matrix(&mut r, rows, cols, 10);
        if let Err(e) = snf(&m).verify() {
            failures.push(format!("matrix {i} ({rows}x{cols}): {e}"));
        }
    }
    let mut square = 0;
    while square < 200 {
        let n = r.gen_range(1..=8);
        let m = random_matrix(&mut r, n, n, 10);
        let det = m.determinant();
        if det.is_zero() {
            continue;
        }
        square += 1;
        let order = cokernel(&m).order();
        if order != Some(det.abs()) {
            failures.push(format!(
                "square {n}x{n}: |coker| = {order:?}, |det| = {}",
                det.abs()
            ));
        }
    }
    CheckOutcome::from_failures("snf-certificates", 500 + square, failures)
}

pub fn axioms() -> CheckOutcome {
    let mut r = rng(5);
    let shape = ComplexShape {
        max_rank: 3,
        max_top_degree: 4,
        connected: true,
        ..Default::default()
    };
    let mut failures = Vec::new();
    let trials = 60;
    for i in 0..trials {
        let a = random_complex(&mut r, shape, "A");
        let xs: Vec<ChainComplex> = (0..r.gen_range(1..=3))
            .map(|j| random_complex(&mut r, shape, &format!("X{j}")))
            .collect();
        let n = r.gen_range(0..=5);
        let s = check_suspension_axiom(&a, &xs[0], n);
        if !s.holds() {
            failures.push(format!(
                "suspension trial {i} n={n}: {} vs {}",
                s.lhs, s.rhs
            ));
        }
        let w = check_wedge_axiom(&a, &xs, n);
        if !w.holds() {
            failures.push(format!("wedge trial {i} n={n}: {} vs {}", w.lhs, w.rhs));
        }
    }
    CheckOutcome::from_failures("axioms", 2 * trials, failures)
}

pub fn moore_ses() -> CheckOutcome {
    let mut r = rng(6);
    let mut cases = 0;
    let mut failures = Vec::new();
    let shape = ComplexShape {
        max_rank: 3,
        connected: true,
        ..Default::default()
    };
    let mut xs = standard_complexes();
    xs.extend((0..20).map(|i| random_complex(&mut r, shape, &format!("rand{i}"))));
    for (i, x) in xs.iter().enumerate() {
        for _ in 0..3 {
            let g = random_group(&mut r, 12);
            let m = r.gen_range(1..=3);
            let n = r.gen_range(0..=x.dim());
            let s = moore_a_homology_ses(&g, m, x, n).expect("m >= 1");
            cases += 1;
            if s.order_identity() == Some(false) {
                failures.push(format!(
                    "X={} #{i} G={g} m={m} n={n}: |{}| != |{}|*|{}|",
                    x.name(),
                    s.middle,
                    s.ext_part,
                    s.hom_part
                ));
            }
            if !s.exponent_within_bound() {
                failures.push(format!(
                    "X={} G={g} m={m} n={n}: exponent of {} exceeds bound",
                    x.name(),
                    s.middle
                ));
            }
        }
    }

    let z2: FgAbGroup = "Z/2".parse().expect("literal");
    let four = BigInt::from(4);
    for x in &xs {
        for n in 0..=x.dim() {
            let s = moore_a_homology_ses(&z2, 1, x, n).expect("m = 1");
            cases += 1;
            if s.exponent_bound().value().is_some_and(|b| b > four) {
                failures.push(format!(
                    "RP^2 into {} n={n}: bound {}",
                    x.name(),
                    s.exponent_bound()
                ));
            }
        }
    }
    for _ in 0..20 {
        let t = random_table(&mut r, Variant::Absolute, 10, 50);
        for n in 1..=7 {
            let s = moore_homotopy_ses(&z2, 1, &t, n).expect("table covers n + 2");
            cases += 1;
            let bound = s.exponent_bound();
            if bound.value().is_none_or(|b| b > four) {
                failures.push(format!("pi_{n}^(RP^2): bound {bound}"));
            }
        }
    }
    CheckOutcome::from_failures("moore-ses", cases, failures)
}

pub fn federer_page_shape() -> CheckOutcome {
    let mut r = rng(7);
    let mut cases = 0;
    let mut failures = Vec::new();
    let shape = ComplexShape {
        max_rank: 3,
        ..Default::default()
    };
    for i in 0..40 {
        let a = random_complex(&mut r, shape, "A");
        let variant = if i % 2 == 0 {
            Variant::Absolute
        } else {
            Variant::Relative
        };
        let t = random_table(&mut r, variant, 8, 30);
        let page = match variant {
            Variant::Absolute => federer_e2(&a, &t),
            Variant::Relative => relative_federer_e2(&a, &t),
        }
        .expect("abelian asserted");
        let edge = variant.edge_degree();
        let dim = a.dim() as i64;
        for ((p, q), e) in page.entries() {
            cases += 1;
            let total = p + q;
            let expected = if total < edge {
                EntryStatus::Zero
            } else if total == edge {
                EntryStatus::SubgroupUpperBound
            } else {
                EntryStatus::Exact
            };
            if e.status != expected {
                failures.push(format!("page {i} ({p},{q}): status {:?}", e.status));
            }
            let oracle = if total < edge {
                FgAbGroup::trivial()
            } else {
                a.cohomology_direct((-p) as usize, t.get(q as usize).expect("in table"))
            };
            if e.group != oracle {
                failures.push(format!("page {i} ({p},{q}): {} vs {oracle}", e.group));
            }
            if page.must_die(p, q) != (variant == Variant::Relative && total == 1) {
                failures.push(format!("page {i} ({p},{q}): must-die annotation"));
            }
        }
        for q in 1..=8 {
            for p in [0, 1, 2, -dim - 1, -dim - 2] {
                cases += 1;
                if page.entry(p, q).is_none_or(|e| e.is_nonzero()) {
                    failures.push(format!(
                        "page {i} ({p},{q}) outside the columns is not zero"
                    ));
                }
            }
        }
        if variant == Variant::Relative && !page.render_text().contains("must-die") {
            failures.push(format!(
                "page {i}: relative rendering lacks the must-die note"
            ));
        }
    }
    CheckOutcome::from_failures("federer-page-shape", cases, failures)
}

pub fn hopf_whitney_check() -> CheckOutcome {
    let mut r = rng(8);
    let mut cases = 0;
    let mut failures = Vec::new();
    for _ in 0..20 {
        let g = random_group(&mut r, 50);
        let n = r.gen_range(2..=7);
        cases += 1;
        match hopf_whitney(&sphere(n), &g, false) {
            Ok(h) if h.group == g && h.structure == Structure::Group => {}
            other => failures.push(format!("S^{n}, G={g}: {other:?}")),
        }
    }
    let z = FgAbGroup::free(1);
    cases += 1;
    match hopf_whitney(&projective(2), &z, false) {
        Ok(h)
            if h.group == FgAbGroup::cyclic(2)
                && h.structure == Structure::SetWithGroupCardinality => {}
        other => failures.push(format!("RP^2: {other:?}")),
    }
    let shape = ComplexShape {
        max_rank: 3,
        max_top_degree: 3,
        connected: true,
        ..Default::default()
    };
    let mut suspensions = vec![projective(2).suspension(), wedge(&[sphere(2), sphere(4)])];
    suspensions
        .extend((0..8).map(|_| random_complex(&mut r, shape, "K").suspension().suspension()));
    for k in suspensions.iter().filter(|k| k.dim() >= 2) {
        let g = random_group(&mut r, 20);
        cases += 1;
        match hopf_whitney(k, &g, false) {
            Ok(h) if h.structure == Structure::Group => {}
            other => failures.push(format!("K={}: {other:?}", k.name())),
        }
    }
    CheckOutcome::from_failures("hopf-whitney", cases, failures)
}

pub fn cross_path_consistency() -> CheckOutcome {
    let g = |s: &str| s.parse::<FgAbGroup>().expect("literal");
    let mut triples = vec![
        (projective(2), sphere(4), 2),
        (sphere(3), projective(5), 1),
        (moore(&g("Z/4"), 1), moore(&g("Z/2"), 3), 2),
    ];
    let mut r = rng(9);
    let shape = ComplexShape {
        max_rank: 3,
        max_top_degree: 4,
        connected: true,
        ..Default::default()
    };
    while triples.len() < 40 {
        let a = random_complex(&mut r, shape, "A");
        let x = random_complex(&mut r, shape, "X");
        let n = r.gen_range(1..=4);
        triples.push((a, x, n));
    }
    let mut failures = Vec::new();
    for (i, (a, x, n)) in triples.iter().enumerate() {
        match e2_consistency_with_ahomology(a, x, *n) {
            Ok(c) if c.holds() => {}
            other => failures.push(format!("triple {i} n={n}: {other:?}")),
        }
    }
    CheckOutcome::from_failures("cross-path-consistency", triples.len(), failures)
}

pub fn torsion_propagation() -> CheckOutcome {
    let p2 = PrimeSet::new([2]).expect("prime");
    let z8: FgAbGroup = "Z/8".parse().expect("literal");
    let z6: FgAbGroup = "Z/6".parse().expect("literal");
    let mut r = rng(10);
    let mut cases = 0;
    let mut failures = Vec::new();
    for a in [projective(2), moore(&z8, 1)] {
        for _ in 0..20 {
            let t = random_table(&mut r, Variant::Absolute, 8, 50);
            let report = torsion_class_check(&a, &t, &p2).expect("abelian asserted");
            cases += 1;
            if !(report.hypothesis_holds && report.all_entries_in_class) {
                failures.push(format!("A={}: {:?}", a.name(), report.failing_entries));
            }
            if !report.conclusions.values().all(|&c| c) {
                failures.push(format!("A={}: conclusion unset", a.name()));
            }
        }
    }
    for a in [sphere(3), projective(3), moore(&z6, 2)] {
        let t = random_table(&mut r, Variant::Absolute, 8, 50);
        let report = torsion_class_check(&a, &t, &p2).expect("abelian asserted");
        cases += 1;
        if report.hypothesis_holds || report.conclusions.values().any(|&c| c) {
            failures.push(format!("A={}: hypothesis should fail", a.name()));
        }
    }
    CheckOutcome::from_failures("torsion-propagation", cases, failures)
}

pub fn single_column_determinacy() -> CheckOutcome {
    let mut r = rng(11);
    let mut cases = 0;
    let mut failures = Vec::new();
    for m in 1..=4 {
        let shapes = [sphere(m), wedge(&[sphere(m), sphere(m)])];
        for a in &shapes {
            for _ in 0..5 {
                let t = random_table(&mut r, Variant::Absolute, 10, 50);
                let page = federer_e2(a, &t).expect("abelian asserted");
                for n in 1..=(10 - m) as i64 {
                    cases += 1;
                    let pi = t.get(n as usize + m).expect("in table");
                    let expected = a.cohomology_uct(m, pi);
                    match collapse_report(&page, n) {
                        Ok(v) if v.verdict == Verdict::Determined(expected.clone()) => {}
                        other => failures.push(format!(
                            "A={} n={n}: expected {expected}, got {other:?}",
                            a.name()
                        )),
                    }
                }
            }
        }
    }
    CheckOutcome::from_failures("single-column-determinacy", cases, failures)
}

pub fn run_all() -> Vec<CheckOutcome> {
    vec![
        sphere_formula(),
        s0_degeneration(),
        uct_vs_direct(),
        snf_certificates(),
        axioms(),
        moore_ses(),
        federer_page_shape(),
        hopf_whitney_check(),
        cross_path_consistency(),
        torsion_propagation(),
        single_column_determinacy(),
    ]
}
