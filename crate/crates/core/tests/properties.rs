mod common;

use common::*;
use proptest::prelude::*;
use qsep_core::criteria::{
    boson_pipeline, det_test, fermion_pipeline, partial_transpose_matrix, ppt_test, product_factorization,
    realign_matrix, realignment_test, DensityMatrix, Subsystem, Verdict,
};
use qsep_core::decomp::{schmidt_decompose, slater_decompose, takagi_decompose};
use qsep_core::fock::{
    assemble_matrix, exchange_col_modes, partial_transpose_terms, phc_terms, symmetrizer_projection, FormalDensity,
    OpTerm, Statistics,
};
use qsep_core::linalg::{det, hermitian_eigenvalues, kron, svd, unitarity_defect};
use qsep_core::CMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_formal<R: Rng>(rng: &mut R, statistics: Statistics, modes: usize) -> FormalDensity {
    let count = rng.gen_range(1..=8);
    let terms = (0..count)
        .map(|_| {
            let mut m = || rng.gen_range(0..modes);
            let ket = (m(), m());
            let col = (m(), m());
            OpTerm::new(random_complex(rng), ket, col)
        })
        .collect();
    FormalDensity::new(statistics, modes, terms).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn partial_transpose_is_trace_preserving_involution(seed: u64, da in 1usize..4, db in 1usize..4) {
        let mut r = rng(seed);
        let rho = random_density(&mut r, da * db);
        let pt = partial_transpose_matrix(&rho, da, db, Subsystem::B).unwrap();
        prop_assert_eq!(&pt, &brute_pt_b(&rho, da, db));
        prop_assert_eq!(&partial_transpose_matrix(&pt, da, db, Subsystem::B).unwrap(), &rho);
        prop_assert!((pt.trace() - rho.trace()).norm() < 1e-12);
        prop_assert!(pt.hermitian_deviation() < 1e-12);
        let pa = partial_transpose_matrix(&rho, da, db, Subsystem::A).unwrap();
        prop_assert_eq!(&pa, &brute_pt_a(&rho, da, db));
        let ea = hermitian_eigenvalues(&pa).unwrap();
        let eb = hermitian_eigenvalues(&pt).unwrap();
        for (x, y) in ea.iter().zip(&eb) {
            prop_assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn realignment_permutes_entries(seed: u64, da in 1usize..4, db in 1usize..4) {
        let mut r = rng(seed);
        let rho = random_density(&mut r, da * db);
        let re = realign_matrix(&rho, da, db).unwrap();
        prop_assert_eq!(&re, &brute_realign(&rho, da, db));
        let mut a: Vec<f64> = rho.as_slice().iter().map(|z| z.norm_sqr()).collect();
        let mut b: Vec<f64> = re.as_slice().iter().map(|z| z.norm_sqr()).collect();
        a.sort_by(f64::total_cmp);
        b.sort_by(f64::total_cmp);
        prop_assert_eq!(a, b);
    }

    #[test]
    fn lu_determinant_matches_cofactor_oracle(seed: u64, n in 1usize..7) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, n, n);
        let want = cofactor_det(&m);
        prop_assert!((det(&m).unwrap() - want).norm() <= 1e-10 * want.norm().max(1.0));
    }

    #[test]
    fn svd_reconstructs_with_unitary_factors(seed: u64, rows in 1usize..7, cols in 1usize..7) {
        let mut r = rng(seed);
        let m = random_matrix(&mut r, rows, cols);
        let f = svd(&m);
        prop_assert!(f.reconstruct().max_abs_diff(&m) < 1e-10);
        prop_assert!(unitarity_defect(&f.u) < 1e-10);
        prop_assert!(unitarity_defect(&f.vdag) < 1e-10);
        prop_assert!(f.s.windows(2).all(|w| w[0] >= w[1]));
    }

    #[test]
    fn term_and_matrix_partial_transpose_agree(seed: u64, modes in 1usize..5, fermion: bool) {
        let mut r = rng(seed);
        let stats = if fermion { Statistics::Fermion } else { Statistics::Boson };
        let fd = random_formal(&mut r, stats, modes);
        let lhs = assemble_matrix(&partial_transpose_terms(&fd)).unwrap();
        let rhs = partial_transpose_matrix(&assemble_matrix(&fd).unwrap(), modes, modes, Subsystem::B).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        let phc = assemble_matrix(&phc_terms(&phc_terms(&fd))).unwrap();
        prop_assert!(phc.max_abs_diff(&assemble_matrix(&fd).unwrap()) < 1e-12);
    }

    #[test]
    fn projected_matrices_are_exchange_invariant(seed: u64, modes in 1usize..5, fermion: bool) {
        let mut r = rng(seed);
        let stats = if fermion { Statistics::Fermion } else { Statistics::Boson };
        let m = random_matrix(&mut r, modes * modes, modes * modes);
        let p = symmetrizer_projection(&m, modes, stats).unwrap();
        let fd = FormalDensity::from_matrix(stats, modes, &p).unwrap();
        let swapped = assemble_matrix(&exchange_col_modes(&fd).unwrap()).unwrap();
        prop_assert!(swapped.max_abs_diff(&p) < 1e-12);
    }

    #[test]
    fn product_states_pass_every_test(seed: u64) {
        let mut r = rng(seed);
        let a = random_density(&mut r, 2);
        let b = random_density(&mut r, 2);
        let rho = DensityMatrix::new_normalized(kron(&a, &b), 2, 2).unwrap();
        prop_assert_eq!(ppt_test(&rho, 1e-10).unwrap().verdict, Verdict::Separable);
        prop_assert!(det_test(&rho, 1e-12).unwrap().witness >= -1e-12);
        prop_assert!(realignment_test(&rho, 1e-10).unwrap().witness <= 1.0 + 1e-10);
        let f = product_factorization(rho.matrix(), 2, 2).unwrap().factors.unwrap();
        prop_assert!(f.residual < 1e-10);
        prop_assert!(kron(&f.first, &f.second).max_abs_diff(rho.matrix()) < 1e-10);
    }

    #[test]
    fn boson_determinant_law(d in prop::collection::vec(0.05f64..2.0, 1..=4)) {
        let n = d.len() as i32;
        let r = boson_pipeline(&d).unwrap();
        let want = d.iter().product::<f64>().powi(2 * n);
        prop_assert!(rel_err(r.determinant("rho_pt_symmetrized").unwrap().re, want) < 1e-9);
        prop_assert!(r.check("pt_symmetrize_equals_realign").unwrap().passed);
    }

    #[test]
    fn fermion_determinant_is_positive(z in prop::collection::vec((0.1f64..1.0, 0.0..std::f64::consts::TAU), 1..=4)) {
        let z: Vec<_> = z.iter().map(|&(r, t)| qsep_core::Complex::from_polar(r, t)).collect();
        let n = z.len() as i32;
        let rep = fermion_pipeline(&z).unwrap();
        let d = rep.determinant("rho_pt_antisymmetrized").unwrap();
        let want = z.iter().map(|x| x.norm()).product::<f64>().powi(2 * n);
        prop_assert!(d.re > 0.0);
        prop_assert!(rel_err(d.re, want) < 1e-9);
        prop_assert!(d.im.abs() <= 1e-9 * want);
    }

    #[test]
    fn decompositions_reconstruct(seed: u64, n in 1usize..=8) {
        let mut r = rng(seed);
        let s = random_symmetric(&mut r, n);
        let t = takagi_decompose(&s).unwrap();
        prop_assert!(t.reconstruct().max_abs_diff(&s) < 1e-9 * s.max_abs());
        prop_assert!(unitarity_defect(&t.unitary) < 1e-9);

        let a = random_antisymmetric(&mut r, n);
        let f = slater_decompose(&a).unwrap();
        if n > 1 {
            prop_assert!(f.reconstruct().max_abs_diff(&a) < 1e-9 * a.max_abs());
        }
        prop_assert!(unitarity_defect(&f.unitary) < 1e-9);

        let m = random_matrix(&mut r, n, n.max(2) - 1);
        let sf = schmidt_decompose(&m);
        prop_assert!(sf.reconstruct().max_abs_diff(&m) < 1e-9 * m.max_abs());
    }
}

#[test]
fn degenerate_takagi_and_slater_spectra() {
    let mut r = rng(7);
    for n in 2..=8 {
        let u = random_unitary(&mut r, n);
        // equal pairs of coefficients and a zero tail
        let d: Vec<f64> = (0..n).map(|k| if k + 1 < n { 1.0 + (k / 2) as f64 } else { 0.0 }).collect();
        let s = &(&u * &CMatrix::diag_real(&d)) * &u.transpose();
        let t = takagi_decompose(&s).unwrap();
        assert!(t.reconstruct().max_abs_diff(&s) < 1e-9 * s.max_abs(), "takagi n={n}");
        let mut sorted = d.clone();
        sorted.sort_by(|a, b| b.total_cmp(a));
        for (got, want) in t.coefficients.iter().zip(&sorted) {
            assert!((got - want).abs() < 1e-9);
        }

        let mut z = CMatrix::zeros(n, n);
        for l in 0..n / 2 {
            z[(2 * l, 2 * l + 1)] = c(0.75, 0.0);
            z[(2 * l + 1, 2 * l)] = c(-0.75, 0.0);
        }
        let omega = &(&u * &z) * &u.transpose();
        let f = slater_decompose(&omega).unwrap();
        assert!(f.reconstruct().max_abs_diff(&omega) < 1e-9 * omega.max_abs(), "slater n={n}");
        assert_eq!(f.rank, n / 2);
        for zl in &f.coefficients[..n / 2] {
            assert!((zl.norm() - 0.75).abs() < 1e-9);
        }
    }
}

#[test]
fn cofactor_oracle_confirms_worked_determinants() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let r = boson_pipeline(&[0.6, 0.8]).unwrap();
    for name in ["rho", "rho_pt", "rho_pt_symmetrized"] {
        let want = cofactor_det(r.matrix(name).unwrap());
        assert!((r.determinant(name).unwrap() - want).norm() < 1e-15, "{name}");
    }
    let f = fermion_pipeline(&[c(h, 0.0), c(0.0, h)]).unwrap();
    let want = cofactor_det(f.matrix("rho_pt_antisymmetrized").unwrap());
    assert!((want - c(0.0625, 0.0)).norm() < 1e-15);
}
