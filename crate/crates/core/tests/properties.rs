mod common;

use beilinson::complexes::ChainComplex;
use beilinson::cyclic::{compare_circle_heart, totalize, Variant};
use beilinson::exactlin::{kernel_basis, Field, Matrix, Quotient, SparseVec, Subspace};
use proptest::prelude::*;

use common::dense::Dense;
use common::random::{RandomFiltered, RandomMixed};

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn to_lib(rows: &[Vec<i64>], field: Field) -> Matrix {
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    Matrix::from_rows_i64(field, &refs)
}

fn columns(m: &Matrix) -> Vec<SparseVec> {
    m.columns().to_vec()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rank_matches_fraction_free_elimination(rows in small_matrix()) {
        let m = to_lib(&rows, Field::Rationals);
        let d = Dense::from_i64(rows.len(), rows[0].len(), &rows);
        prop_assert_eq!(m.rank(), d.rank());
        prop_assert_eq!(m.transpose().rank(), d.rank());
        let k = kernel_basis(&m);
        prop_assert_eq!(k.dim() + m.rank(), m.cols());
        for v in k.vectors() {
            prop_assert!(m.mul_vec(v).is_zero());
        }
    }

    #[test]
    fn reduction_mod_p_never_raises_rank(rows in small_matrix(), p in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let q = to_lib(&rows, Field::Rationals).rank();
        let fp = to_lib(&rows, Field::prime(p).unwrap()).rank();
        prop_assert!(fp <= q);
    }

    #[test]
    fn subspace_dimension_formula(a in small_matrix(), b in small_matrix()) {
        let n = a.len().min(b.len());
        let cut = |m: &Vec<Vec<i64>>| m[..n].to_vec();
        let (ma, mb) = (to_lib(&cut(&a), Field::Rationals), to_lib(&cut(&b), Field::Rationals));
        let (sa, sb) = (Subspace::from_columns(&ma), Subspace::from_columns(&mb));
        let sum = sa.sum(&sb);
        let cap = sa.intersection(&sb);
        prop_assert_eq!(sum.dim() + cap.dim(), sa.dim() + sb.dim());
        prop_assert!(cap.is_subspace_of(&sa) && cap.is_subspace_of(&sb));
        prop_assert!(sa.is_subspace_of(&sum));
        let q = Quotient::new(&sum, &sa).unwrap();
        prop_assert_eq!(q.dim(), sum.dim() - sa.dim());
        // the dense oracle agrees on the sum
        let both: Vec<_> = Dense::from_matrix(&ma).columns().into_iter().chain(Dense::from_matrix(&mb).columns()).collect();
        prop_assert_eq!(common::dense::span_dim(n, &both), sum.dim());
    }

    #[test]
    fn coordinates_recombine(rows in small_matrix()) {
        let m = to_lib(&rows, Field::Rationals);
        let s = Subspace::from_columns(&m);
        for v in columns(&m) {
            let c = s.coordinates(&v).expect("columns lie in their span");
            prop_assert_eq!(s.combine(&c), v);
        }
    }

    #[test]
    fn random_towers_match_their_cells(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let rf = RandomFiltered::generate(&mut rng, 4);
        let f = rf.filtered();
        let c = f.ambient();
        for i in 0..rf.top {
            for m in c.degrees() {
                prop_assert_eq!(f.step_homology(i as i64, m, 0).unwrap().dim(), rf.step_homology(i, m));
            }
        }
        // the homology of the whole complex against dense elimination
        for m in c.degrees() {
            let out = Dense::from_matrix(&c.d(m, 0));
            let inc = Dense::from_matrix(&c.d(m + 1, 0));
            prop_assert_eq!(c.betti(m, 0).unwrap(), common::dense::homology_dim(c.dim(m, 0), &inc, &out));
        }
        prop_assert!(f.completeness().is_complete());
    }

    #[test]
    fn truncation_is_a_subtower_and_idempotent(seed in any::<u64>(), n in -4i64..=4) {
        let mut rng = common::rng(seed);
        let f = RandomFiltered::generate(&mut rng, 3).filtered();
        let t = f.beilinson_truncate(n);
        prop_assert!(t.is_subtower_of(&f));
        let tt = t.beilinson_truncate(n);
        prop_assert!(tt.is_subtower_of(&t) && t.is_subtower_of(&tt));
        prop_assert!(f.beilinson_truncate(n + 1).is_subtower_of(&t));
    }

    #[test]
    fn circle_heart_on_random_mixed_complexes(seed in any::<u64>(), n in 0i64..=2) {
        let mut rng = common::rng(seed);
        let m = RandomMixed::generate(&mut rng).mixed();
        let cmp = compare_circle_heart(&m, n).unwrap();
        prop_assert!(cmp.passed(), "{:?}", cmp);
    }

    #[test]
    fn trusted_degrees_survive_widening(seed in any::<u64>(), lo in -6i64..2, len in 0i64..6) {
        let mut rng = common::rng(seed);
        let m = RandomMixed::generate(&mut rng).mixed();
        let hi = lo + len;
        for v in [Variant::Negative, Variant::Periodic, Variant::Cyclic] {
            let narrow = totalize(&m, v, (lo, hi)).unwrap();
            let wide = totalize(&m, v, (lo - 4, hi + 4)).unwrap();
            let (tlo, thi) = narrow.trusted_degrees();
            for k in lo.max(tlo)..=hi.min(thi) {
                prop_assert_eq!(narrow.complex().betti(k, 0).unwrap(), wide.complex().betti(k, 0).unwrap(), "{} in degree {}", v, k);
            }
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let c = RandomFiltered::generate(&mut rng, 2).complex();
        let text = serde_json::to_string(&c.to_json()).unwrap();
        let back = ChainComplex::from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, c);
    }
}
