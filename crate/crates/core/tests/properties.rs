mod common;

use num_traits::Zero;
use proptest::prelude::*;

use common::*;
use qred::classical::{
    flag_stabilizer_sp, generic_alternating_form, gl_algebra, heisenberg, sample_generic_alternating_form,
    so_algebra, Flag,
};
use qred::exactlin::{generic_rank, generic_rank_exact, rat};
use qred::formulas::{index_r_formula, FlagProfile, RootSubset, Series};
use qred::jordan::{analyze, jordan_chevalley, nilpotent_subspace, nilpotent_subspace_jordan};
use qred::{Error, LieAlgebra, LinearForm, RatMatrix, SampleConfig};

fn cfg(seed: u64) -> SampleConfig {
    SampleConfig {
        seed,
        ..Default::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_plus_nullity(seed in any::<u64>(), rows in 1usize..7, cols in 1usize..7, rank_cap in 0usize..7) {
        let mut r = rng(seed);
        // product of random factors has rank at most rank_cap
        let k = rank_cap.min(rows).min(cols).max(1);
        let m = &random_matrix(&mut r, rows, k, 3) * &random_matrix(&mut r, k, cols, 3);
        let ker = m.kernel();
        prop_assert_eq!(m.rank() + ker.len(), cols);
        for v in &ker {
            prop_assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn pfaffian_squared_is_det(seed in any::<u64>(), half in 0usize..5) {
        let m = random_alternating(&mut rng(seed), 2 * half, 4);
        let pf = m.pfaffian().unwrap();
        prop_assert_eq!(&pf * &pf, m.det().unwrap());
    }

    #[test]
    fn pfaffian_congruence(seed in any::<u64>(), half in 1usize..4) {
        let mut r = rng(seed);
        let n = 2 * half;
        let a = random_alternating(&mut r, n, 3);
        let p = random_matrix(&mut r, n, n, 2);
        let b = &(&p.transpose() * &a) * &p;
        prop_assert_eq!(b.pfaffian().unwrap(), p.det().unwrap() * a.pfaffian().unwrap());
    }

    #[test]
    fn odd_alternating_has_zero_pfaffian_and_det(seed in any::<u64>(), half in 0usize..4) {
        let m = random_alternating(&mut rng(seed), 2 * half + 1, 4);
        prop_assert!(m.det().unwrap().is_zero());
    }

    #[test]
    fn jordan_chevalley_invariants(seed in any::<u64>(), n in 1usize..7) {
        let m = random_jordan_test_matrix(&mut rng(seed), n);
        let jc = jordan_chevalley(&m).unwrap();
        prop_assert!(jc.check(&m));
        prop_assert_eq!(jc.poly.eval_matrix(&m), jc.semisimple);
    }

    #[test]
    fn trace_radical_matches_jordan_kernel(seed in any::<u64>(), n in 2usize..6, k in 1usize..4) {
        // polynomials in one matrix commute
        let mut r = rng(seed);
        let m = random_jordan_test_matrix(&mut r, n);
        let family: Vec<RatMatrix> = (1..=k as u32)
            .map(|e| {
                let c = small_rat(&mut r, 2);
                &m.pow(e) + &RatMatrix::identity(n).scale(&c)
            })
            .collect();
        let fast = nilpotent_subspace(&family).unwrap();
        let slow = nilpotent_subspace_jordan(&family).unwrap();
        prop_assert_eq!(fast.dim, slow.dim);
        for b in &fast.basis {
            prop_assert!(b.pow(n as u32).is_zero());
        }
    }

    #[test]
    fn flag_stabilizer_conjugation_invariance(seed in any::<u64>(), mask in 1u32..64) {
        // index and defect do not depend on which generic form is chosen
        let top = 7;
        let dims: Vec<usize> = (1..top).filter(|d| mask & (1 << (d - 1)) != 0).chain([top]).collect();
        let flag = Flag::standard(top, &dims).unwrap();
        let (xi0, _) = generic_alternating_form(&flag);
        let xi1 = sample_generic_alternating_form(&flag, &mut rng(seed), 20);
        let a = analyze(&flag_stabilizer_sp(&flag, &xi0).unwrap(), &cfg(seed)).unwrap();
        let b = analyze(&flag_stabilizer_sp(&flag, &xi1).unwrap(), &cfg(seed)).unwrap();
        prop_assert_eq!((a.index, a.defect), (b.index, b.defect));
        prop_assert_eq!(a.index, index_r_formula(&FlagProfile::new(dims).unwrap()).unwrap());
    }
}

#[test]
fn exact_and_sampled_generic_rank_agree() {
    let algs: Vec<(&str, LieAlgebra)> = vec![
        ("so5", so_algebra(5).unwrap()),
        ("gl3", gl_algebra(3).unwrap()),
        ("heis2", heisenberg(2).unwrap()),
        ("borel_sl3", qred::classical::borel_sl3().unwrap()),
        ("bh5", qred::classical::bh5().unwrap()),
        ("ghat", qred::classical::ghat().unwrap()),
        ("f", qred::classical::f_algebra().unwrap()),
    ];
    for (name, alg) in algs {
        let k = alg.kirillov_symbolic();
        let exact = generic_rank_exact(&k);
        for seed in 0..5 {
            let sampled = generic_rank(&k, &cfg(seed)).unwrap();
            assert_eq!(sampled.rank, exact, "{name} seed {seed}");
            assert!(sampled.failure_bound < rat(1));
        }
        assert_eq!(alg.index_exact(), alg.dim() - exact, "{name}");
    }
}

#[test]
fn regular_stabilizers_are_abelian() {
    for (name, alg) in constructed_algebras().into_iter().filter(|(_, a)| a.dim() <= 30) {
        let (_, forms) = alg.regular_forms(&cfg(1)).unwrap();
        for g in &forms {
            let s = alg.stabilizer(g);
            assert!(s.is_abelian(), "{name}");
        }
    }
}

#[test]
fn index_is_additive_on_products() {
    let pieces = [
        so_algebra(3).unwrap(),
        heisenberg(1).unwrap(),
        qred::classical::borel_sl2().unwrap(),
        qred::classical::bh5().unwrap(),
        gl_algebra(2).unwrap(),
    ];
    for a in &pieces {
        for b in &pieces {
            let p = a.direct_product(b);
            let ia = a.index(&cfg(0)).unwrap().index;
            let ib = b.index(&cfg(0)).unwrap().index;
            assert_eq!(p.index(&cfg(0)).unwrap().index, ia + ib);
            let (ra, rb, rp) = (
                analyze(a, &cfg(0)).unwrap(),
                analyze(b, &cfg(0)).unwrap(),
                analyze(&p, &cfg(0)).unwrap(),
            );
            assert_eq!(rp.defect, ra.defect + rb.defect);
            assert_eq!(rp.quasi_reductive, ra.quasi_reductive && rb.quasi_reductive);
        }
    }
}

#[test]
fn psi_polynomial_matches_numeric_pfaffian() {
    let algs = [
        qred::classical::borel_sl2().unwrap(),
        qred::classical::f_algebra().unwrap(),
        qred::classical::bh5().unwrap(),
        heisenberg(2).unwrap(),
    ];
    let mut r = rng(11);
    for alg in &algs {
        let psi = alg.psi_polynomial().unwrap();
        for _ in 0..20 {
            let point: Vec<_> = (0..alg.dim()).map(|_| small_rat(&mut r, 5)).collect();
            let g = LinearForm::new(point.clone());
            assert_eq!(psi.eval(&point), alg.psi_at(&g).unwrap());
        }
    }
}

#[test]
fn mutated_tables_are_rejected() {
    let bases = [so_algebra(4).unwrap(), gl_algebra(2).unwrap(), qred::classical::borel_sl3().unwrap()];
    let mut r = rng(5);
    let mut rejected = 0;
    while rejected < 100 {
        let base = &bases[rejected % bases.len()];
        let Some(c) = mutate_table(&mut r, base) else { continue };
        let res = LieAlgebra::from_structure_constants(labels(c.len()), upper_table(&c));
        assert!(matches!(res, Err(Error::Jacobi(..))), "mutation accepted: {:?}", upper_table(&c));
        rejected += 1;
    }
}

#[test]
fn d_series_swap_symmetry() {
    // exchanging the two branch roots is an outer automorphism
    for n in 4..=5 {
        for roots in RootSubset::all(Series::D, n) {
            let (_, a) = qred::classical::parabolic_from_roots(&roots).unwrap();
            let (_, b) = qred::classical::parabolic_from_roots(&roots.swapped()).unwrap();
            let (ra, rb) = (analyze(&a, &cfg(2)).unwrap(), analyze(&b, &cfg(2)).unwrap());
            assert_eq!(a.dim(), b.dim(), "{roots}");
            assert_eq!((ra.index, ra.defect, ra.rank_cd), (rb.index, rb.defect, rb.rank_cd), "{roots}");
        }
    }
}

#[test]
fn sampled_rank_is_deterministic_in_seed() {
    let alg = so_algebra(6).unwrap();
    let k = alg.kirillov_symbolic();
    let a = generic_rank(&k, &cfg(9)).unwrap();
    let b = generic_rank(&k, &cfg(9)).unwrap();
    assert_eq!(a.witness, b.witness);
    assert_eq!(a.samples, b.samples);
}
