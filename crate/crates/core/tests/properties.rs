//! Property tests for the invariants each module promises.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use torsion_core::homology::{growth_report, GrowthRecord, GROWTH_TARGET};
use torsion_core::linalg::dense::{QMat, QVec};
use torsion_core::linalg::{project_orthogonal, rank_mod_l, saturated_kernel, snf, SparseZMatrix};
use torsion_core::quadfield::ideal::brute_force_unit_count;
use torsion_core::quadfield::ideal::primes_above;
use torsion_core::quadfield::projline::{brute_force_size, proj_line_size};
use torsion_core::quadfield::{
    euler_phi, ideals_up_to, matrix, Field, QfIdeal, QuadElem, SUPPORTED,
};
use torsion_core::subgroups::{bianchi_presentation, cusp_count, gamma0_action, GroupKind};
use torsion_core::symbols::tree::Direction;
use torsion_core::symbols::{
    boundary_sum, conductor, manin_decompose, refined_valuation, tree_valuation, ModularSymbol,
    P1Point, DEFAULT_MARGIN,
};

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-9i64..=9, c), r))
}

/// `(i, j, k)`: add `k` times line `j` to line `i`.
fn ops() -> impl Strategy<Value = Vec<(usize, usize, i64)>> {
    prop::collection::vec((0usize..6, 0usize..6, -3i64..=3), 0..12)
}

fn apply_row_ops(m: &mut [Vec<i64>], ops: &[(usize, usize, i64)]) {
    let r = m.len();
    for &(i, j, k) in ops {
        let (i, j) = (i % r, j % r);
        if i != j {
            for c in 0..m[0].len() {
                m[i][c] += k * m[j][c];
            }
        } else if k < 0 {
            m[i].iter_mut().for_each(|x| *x = -*x);
        }
    }
}

fn transpose(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..m[0].len())
        .map(|c| m.iter().map(|r| r[c]).collect())
        .collect()
}

fn elem() -> impl Strategy<Value = (i64, i64)> {
    (-40i64..=40, -40i64..=40)
}

fn field() -> impl Strategy<Value = Field> {
    prop::sample::select(SUPPORTED.to_vec()).prop_map(|d| Field::new(d).unwrap())
}

fn point(f: Field, (a, b): (i64, i64), (c, e): (i64, i64)) -> Option<P1Point> {
    P1Point::new(f, QuadElem::new(a, b), QuadElem::new(c, e)).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn snf_is_invariant_under_unimodular_operations(
        m in small_matrix(), rops in ops(), cops in ops()
    ) {
        let base = snf(&SparseZMatrix::from_dense_i64(&m)).unwrap();
        let mut x = m.clone();
        apply_row_ops(&mut x, &rops);
        let mut t = transpose(&x);
        apply_row_ops(&mut t, &cops);
        let moved = snf(&SparseZMatrix::from_dense_i64(&transpose(&t))).unwrap();
        prop_assert_eq!(&base, &moved);
        for w in base.divisors.windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero());
        }
    }

    #[test]
    fn repeated_rows_do_not_change_snf(m in small_matrix(), picks in prop::collection::vec((0usize..6, any::<bool>()), 1..8)) {
        let mut x = m.clone();
        for (i, neg) in picks {
            let row = &m[i % m.len()];
            x.push(row.iter().map(|v| if neg { -v } else { *v }).collect());
        }
        prop_assert_eq!(
            snf(&SparseZMatrix::from_dense_i64(&m)).unwrap(),
            snf(&SparseZMatrix::from_dense_i64(&x)).unwrap()
        );
    }

    #[test]
    fn rank_mod_l_is_bounded_by_rational_rank(m in small_matrix()) {
        let a = SparseZMatrix::from_dense_i64(&m);
        let s = snf(&a).unwrap();
        for ell in [2u64, 3, 5, 7, 53] {
            let r = rank_mod_l(&a, ell).unwrap();
            prop_assert!(r <= s.rank);
            let l = BigInt::from(ell);
            if s.divisors.iter().all(|d| !(d % &l).is_zero()) {
                prop_assert_eq!(r, s.rank);
            }
        }
    }

    #[test]
    fn saturated_kernel_is_primitive(m in small_matrix()) {
        let a = SparseZMatrix::from_dense_i64(&m);
        let ker = saturated_kernel(&a);
        prop_assert_eq!(ker.len(), a.cols() - snf(&a).unwrap().rank);
        for v in &ker {
            for row in &m {
                let dot: BigInt = row.iter().zip(v).map(|(x, y)| BigInt::from(*x) * y).sum();
                prop_assert!(dot.is_zero());
            }
        }
        if !ker.is_empty() {
            let rows: Vec<Vec<BigRational>> = ker
                .iter()
                .map(|v| v.iter().map(|x| BigRational::from_integer(x.clone())).collect())
                .collect();
            let k = SparseZMatrix::from_dense_rational(&rows, a.cols());
            prop_assert!(snf(&k).unwrap().divisors.iter().all(|d| d.is_one()));
        }
    }

    #[test]
    fn projection_is_idempotent_and_self_adjoint(
        v in prop::collection::vec(-9i64..=9, 4),
        w in prop::collection::vec(-9i64..=9, 4),
        s in prop::collection::vec(prop::collection::vec(-5i64..=5, 4), 1..3),
        weights in prop::collection::vec(1i64..=6, 4),
    ) {
        let q = |x: &i64| BigRational::from_integer(BigInt::from(*x));
        let g: QMat = (0..4)
            .map(|i| (0..4).map(|j| if i == j { BigRational::new(weights[i].into(), 2.into()) } else { BigRational::zero() }).collect())
            .collect();
        let s: Vec<QVec> = s.iter().map(|u| u.iter().map(q).collect()).collect();
        let v: QVec = v.iter().map(q).collect();
        let w: QVec = w.iter().map(q).collect();
        let Ok(pv) = project_orthogonal(&v, &s, &g) else {
            // Dependent spanning vectors are rejected.
            return Ok(());
        };
        let ppv = project_orthogonal(&pv, &s, &g).unwrap();
        prop_assert_eq!(&ppv, &pv);
        let pw = project_orthogonal(&w, &s, &g).unwrap();
        let inner = |a: &QVec, b: &QVec| -> BigRational {
            (0..4).map(|i| &a[i] * &g[i][i] * &b[i]).sum()
        };
        prop_assert_eq!(inner(&pv, &w), inner(&v, &pw));
    }

    #[test]
    fn norm_is_multiplicative_and_division_is_euclidean(
        f in field(), x in elem(), y in elem()
    ) {
        let x = QuadElem::new(x.0, x.1);
        let y = QuadElem::new(y.0, y.1);
        prop_assert_eq!(f.norm(&f.mul(&x, &y)), f.norm(&x) * f.norm(&y));
        if !y.is_zero() {
            let (k, r) = f.div_rem(&x, &y);
            prop_assert_eq!(&(&f.mul(&k, &y) + &r), &x);
            prop_assert!(f.norm(&r) < f.norm(&y));
        }
    }

    #[test]
    fn points_round_trip_through_text(f in field(), x in elem(), y in elem()) {
        if let Some(p) = point(f, x, y) {
            prop_assert_eq!(P1Point::parse(f, &p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn manin_chain_telescopes(f in field(), a in elem(), b in elem(), c in elem(), e in elem()) {
        let (Some(alpha), Some(beta)) = (point(f, a, b), point(f, c, e)) else {
            return Ok(());
        };
        let gs = manin_decompose(f, &alpha, &beta).unwrap();
        for g in &gs {
            prop_assert_eq!(matrix::det(f, g), QuadElem::one());
        }
        let sum = boundary_sum(f, &gs).unwrap();
        if alpha == beta {
            prop_assert!(sum.is_empty());
        } else {
            prop_assert_eq!(sum.len(), 2);
            prop_assert_eq!(sum[&beta], 1);
            prop_assert_eq!(sum[&alpha], -1);
        }
    }

    #[test]
    fn valuations_are_symmetric_and_refinement_dominates(
        d in prop::sample::select(vec![1u32, 3]),
        p in prop::sample::select(vec![2u64, 3, 5, 7]),
        a in elem(), b in elem(), c in elem(), e in elem(),
        g in prop::collection::vec(elem(), 4),
        scale in elem(),
    ) {
        let f = Field::new(d).unwrap();
        let (Some(alpha), Some(beta)) = (point(f, a, b), point(f, c, e)) else {
            return Ok(());
        };
        let g = [
            [QuadElem::new(g[0].0, g[0].1), QuadElem::new(g[1].0, g[1].1)],
            [QuadElem::new(g[2].0, g[2].1), QuadElem::new(g[3].0, g[3].1)],
        ];
        let Ok(s) = ModularSymbol::new(f, alpha, beta, g.clone()) else {
            return Ok(());
        };
        let k = QuadElem::new(scale.0, scale.1);
        for v in primes_above(f, p) {
            let n = tree_valuation(&s, &v).unwrap();
            prop_assert_eq!(tree_valuation(&s.reversed(), &v).unwrap(), n);
            if !k.is_zero() {
                let scaled = ModularSymbol::new(f, s.alpha.clone(), s.beta.clone(), matrix::scale(f, &k, &g)).unwrap();
                prop_assert_eq!(tree_valuation(&scaled, &v).unwrap(), n);
            }
            for dir in Direction::all(&v).into_iter().take(4) {
                prop_assert!(refined_valuation(&s, &v, &dir).unwrap() >= n);
            }
        }
    }

    #[test]
    fn conductor_denominator_is_phi(d in prop::sample::select(vec![1u32, 3]), c in elem(), e in elem()) {
        let f = Field::new(d).unwrap();
        let Some(beta) = point(f, c, e) else { return Ok(()) };
        let Ok(s) = ModularSymbol::new(f, P1Point::zero(), beta, matrix::identity()) else {
            return Ok(());
        };
        let cd = conductor(&s, DEFAULT_MARGIN).unwrap();
        prop_assert_eq!(&cd.denominator, &euler_phi(&cd.ideal));
        if cd.ideal.norm_u64() <= 200 {
            prop_assert_eq!(cd.denominator, BigInt::from(brute_force_unit_count(&cd.ideal)));
        }
    }

    #[test]
    fn growth_deviation_is_distance_to_target(
        vols in prop::collection::vec(1.0f64..1e4, 1..6),
        ratios in prop::collection::vec(0.0f64..0.2, 6),
    ) {
        let records: Vec<GrowthRecord> = vols
            .iter()
            .zip(&ratios)
            .map(|(&v, &r)| GrowthRecord { volume: v, log_torsion: r * v, betti: 0 })
            .collect();
        let rep = growth_report(&records).unwrap();
        for (row, rec) in rep.rows.iter().zip(&records) {
            prop_assert_eq!(row.deviation, (rec.log_torsion / rec.volume - GROWTH_TARGET).abs());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cusp_count_is_invariant_under_relabelling(
        d in prop::sample::select(vec![1u32, 2, 3]),
        which in 0usize..40,
        shuffle in prop::collection::vec(any::<u32>(), 64),
    ) {
        let f = Field::new(d).unwrap();
        let levels: Vec<QfIdeal> = ideals_up_to(f, 40).into_iter().filter(|l| !l.is_unit()).collect();
        let level = &levels[which % levels.len()];
        let pres = bianchi_presentation(d, GroupKind::Psl2).unwrap();
        let act = gamma0_action(&pres, level).unwrap();
        let n = act.degree();
        let mut sigma: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            sigma.swap(i, shuffle[i % shuffle.len()] as usize % (i + 1));
        }
        let moved = act.relabel(&sigma);
        prop_assert_eq!(cusp_count(&moved, &pres.parabolic), cusp_count(&act, &pres.parabolic));
    }
}

#[test]
fn phi_and_projective_line_sizes_match_brute_force() {
    for d in SUPPORTED {
        let f = Field::new(d).unwrap();
        for level in ideals_up_to(f, 200) {
            assert_eq!(
                euler_phi(&level),
                BigInt::from(brute_force_unit_count(&level)),
                "d={d} {}",
                level.label()
            );
            if level.norm_u64() <= 60 {
                assert_eq!(
                    proj_line_size(&level),
                    BigInt::from(brute_force_size(&level)),
                    "d={d} {}",
                    level.label()
                );
            }
        }
    }
}

#[test]
fn ideal_counts_match_the_scan_totals() {
    let proper = |d| {
        ideals_up_to(Field::new(d).unwrap(), 10_000)
            .iter()
            .filter(|l| !l.is_unit())
            .count()
    };
    assert_eq!(proper(1), 7853);
    assert_eq!(proper(3), 6048);
}
