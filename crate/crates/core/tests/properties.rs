use pg_incidence::bounds::secant_spectrum;
use pg_incidence::codes::{combine, Codeword};
use pg_incidence::ff::{Field, MatrixModP, PrimeField};
use pg_incidence::geometry::{Hyperplane, ProjectiveSpace};
use pg_incidence::minimality::{
    build_adjacency, decompose, edge_is_valid, oracle_minimal, refine_to_fixpoint, verdict, HyperplanePartition,
    Verdict, VerdictOptions,
};
use proptest::prelude::*;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn plane(p: u32, h: u32) -> ProjectiveSpace {
    ProjectiveSpace::new(2, Field::new(p, h, None).unwrap()).unwrap()
}

fn random_codeword(rng: &mut ChaCha8Rng, s: &ProjectiveSpace, j: usize) -> (Vec<(Hyperplane, u32)>, Codeword) {
    let mut terms: Vec<_> = sample(rng, s.num_hyperplanes(), j)
        .into_iter()
        .map(|h| (Hyperplane(h as u32), rng.random_range(1..s.p())))
        .collect();
    terms.sort_unstable();
    let c = combine(s, &terms).unwrap().codeword;
    (terms, c)
}

#[test]
fn field_axioms_exhaustive_for_small_fields() {
    for (p, h) in [(2, 3), (3, 2), (5, 2), (2, 6), (7, 2), (5, 3)] {
        let f = Field::new(p, h, None).unwrap();
        let q = f.q();
        for a in 0..q {
            if a != 0 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
            }
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
        // associativity and distributivity on a deterministic sample of triples
        let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
        for _ in 0..2000 {
            let (a, b, c) = (rng.random_range(0..q), rng.random_range(0..q), rng.random_range(0..q));
            assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
            assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
            let pp = p as u64;
            assert_eq!(f.pow(f.add(a, b), pp), f.add(f.pow(a, pp), f.pow(b, pp)));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sampled_axioms_gf_3_7(a in 0u32..2187, b in 0u32..2187, c in 0u32..2187) {
        let f = Field::new(3, 7, None).unwrap();
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.pow(f.add(a, b), 3), f.add(f.pow(a, 3), f.pow(b, 3)));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a)), 1);
        }
    }

    #[test]
    fn nullspace_size_matches_enumeration(
        rows in 0usize..4,
        cols in 1usize..5,
        seed in any::<u64>(),
    ) {
        let p = 5u32;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let entries: Vec<u32> = (0..rows * cols).map(|_| rng.random_range(0..p)).collect();
        let m = MatrixModP::new(PrimeField::new(p).unwrap(), rows, cols, entries).unwrap();
        let basis = m.nullspace();
        for v in &basis {
            prop_assert!(m.mul_vec(v).iter().all(|&x| x == 0));
        }
        let mut kernel = 0u64;
        let mut x = vec![0u32; cols];
        for k in 0..(p as u64).pow(cols as u32) {
            let mut t = k;
            for xi in x.iter_mut() {
                *xi = (t % p as u64) as u32;
                t /= p as u64;
            }
            if m.mul_vec(&x).iter().all(|&y| y == 0) {
                kernel += 1;
            }
        }
        prop_assert_eq!(kernel, (p as u64).pow(basis.len() as u32));
    }
}

#[test]
fn refinement_is_monotone_and_edges_reverify() {
    let s = plane(5, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..15 {
        let j = rng.random_range(2..=10);
        let (_, c) = random_codeword(&mut rng, &s, j);
        let d = decompose(&s, &c).unwrap().decomposition;
        let r = refine_to_fixpoint(&s, &d).unwrap();
        assert!(r.history.len() <= d.m());
        for w in r.history.windows(2) {
            assert!(w[0].refines(&w[1]));
            assert!(w[1].len() < w[0].len());
        }
        for (part, graph) in r.history.iter().zip(&r.graphs) {
            assert_eq!(graph, &build_adjacency(&s, &d, part).unwrap());
            for e in &graph.edges {
                assert!(edge_is_valid(&s, &d, part, e));
            }
        }
        assert!(r.graphs.last().unwrap().edges.is_empty());
    }
}

#[test]
fn malformed_partitions_are_rejected() {
    let s = plane(5, 3);
    let (terms, c) = random_codeword(&mut ChaCha8Rng::seed_from_u64(2), &s, 3);
    let d = decompose(&s, &c).unwrap().decomposition;
    let wrong = HyperplanePartition {
        blocks: vec![vec![terms[0].0]],
        generation: 0,
    };
    assert!(build_adjacency(&s, &d, &wrong).is_err());
}

#[test]
fn two_block_fixpoints_have_no_exceptional_holes() {
    let mut seen = 0;
    for (p, h, seed) in [(5u32, 3u32, 21u64), (2, 5, 22), (2, 6, 23)] {
        let s = plane(p, h);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let max = if p == 2 { 4 } else { 8 };
        for _ in 0..30 {
            let j = rng.random_range(2..=max);
            let (_, c) = random_codeword(&mut rng, &s, j);
            let rep = verdict(&s, &c, &VerdictOptions::default()).unwrap();
            if rep.fixpoint.len() == 2 {
                seen += 1;
                assert!(rep.exceptional_holes.is_empty());
                assert_eq!(rep.verdict, Verdict::NotMinimal);
            }
        }
    }
    assert!(seen > 0, "no two-block fixture was generated");
}

#[test]
fn verdicts_agree_with_oracle_on_random_fixtures() {
    let s = plane(2, 6);
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..25 {
        let j = rng.random_range(1..=7);
        let (terms, c) = random_codeword(&mut rng, &s, j);
        let rep = verdict(&s, &c, &VerdictOptions { oracle: true, ..Default::default() }).unwrap();
        assert_eq!(rep.decomposition.m(), terms.len());
        let o = rep.oracle.as_ref().unwrap();
        match rep.verdict {
            Verdict::Minimal => assert!(o.minimal),
            Verdict::NotMinimal => assert!(!o.minimal),
            Verdict::Undetermined => {}
        }
        if let Some(ce) = &o.counterexample {
            let w = combine(&s, ce).unwrap().codeword;
            assert!(w.support_subset_of(&c) && !w.is_multiple_of(&c));
        }
    }
}

#[test]
fn decomposition_uniqueness_under_coefficient_scaling() {
    let s = plane(5, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for _ in 0..10 {
        let (terms, c) = random_codeword(&mut rng, &s, 5);
        for a in 1..5 {
            let d = decompose(&s, &c.scaled(a)).unwrap().decomposition;
            let want: Vec<_> = terms.iter().map(|&(h, b)| (h, b * a % 5)).collect();
            assert_eq!(d.terms().iter().map(|(&h, &b)| (h, b)).collect::<Vec<_>>(), want);
        }
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let s = plane(5, 3);
    let (_, c) = random_codeword(&mut ChaCha8Rng::seed_from_u64(51), &s, 7);
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| {
            let spec = secant_spectrum(&s, &c, u64::MAX).unwrap();
            let d = decompose(&s, &c).unwrap();
            let o = oracle_minimal(&s, &d.decomposition, u64::MAX).unwrap();
            (spec, d.decomposition, d.peels, o)
        })
    };
    assert_eq!(run(1), run(3));
}

#[test]
fn secant_gap_in_pg3_32() {
    use pg_incidence::bounds::{BoundContext, SpaceClass};
    let s = ProjectiveSpace::new(3, Field::new(2, 5, None).unwrap()).unwrap();
    let ctx = BoundContext::of(&s);
    let delta = ctx.delta(3).unwrap() as u32;
    assert_eq!(delta, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    // Delta - 1 = 1: only single planes are in the regime
    let (_, c) = random_codeword(&mut rng, &s, 1);
    let spec = secant_spectrum(&s, &c, u64::MAX).unwrap();
    assert_eq!(spec.total(), s.num_lines());
    assert_eq!(spec.mass_in(delta + 1, 32 - delta + 1), 0);
    for &sz in spec.histogram().keys() {
        assert_ne!(ctx.classify_weight(sz as usize, 1).unwrap().class, SpaceClass::Neither);
    }
}
