mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use proptest::prelude::*;

use gkh_core::diagram::{continued_fraction, evaluate_partial_quotients};
use gkh_core::linalg::{nullspace_mod, smith_normal_form};
use gkh_core::IntegerMatrix;

fn matrix(max_dim: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1..=max_dim, 1..=max_dim)
        .prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-bound..=bound, c), r))
}

fn to_i128(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn is_unimodular(m: &IntegerMatrix) -> bool {
    m.determinant().unwrap().abs().is_one()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1200))]

    #[test]
    fn smith_form_is_a_unimodular_diagonalization(rows in matrix(8, 20)) {
        let a = IntegerMatrix::from_rows(&rows);
        let s = smith_normal_form(&a);
        prop_assert!(is_unimodular(&s.left));
        prop_assert!(is_unimodular(&s.right));
        let d = IntegerMatrix::diagonal(a.rows(), a.cols(), &s.diagonal);
        prop_assert_eq!(&(&s.left * &a) * &s.right, d);

        let rank = s.rank();
        prop_assert!(s.diagonal[..rank].iter().all(|x| x.is_positive()));
        prop_assert!(s.diagonal[rank..].iter().all(Zero::is_zero));
        for w in s.diagonal[..rank].windows(2) {
            prop_assert!((&w[1] % &w[0]).is_zero(), "{} does not divide {}", w[0], w[1]);
        }
        if a.is_square() {
            let product: BigInt = s.diagonal.iter().product();
            prop_assert_eq!(a.determinant().unwrap().abs(), product);
        }
    }

    #[test]
    fn smith_form_ignores_row_and_column_order(
        rows in matrix(8, 20),
        seed in any::<u64>(),
    ) {
        let a = IntegerMatrix::from_rows(&rows);
        let perm = |n: usize, salt: u64| {
            let mut p: Vec<usize> = (0..n).collect();
            let mut x = seed ^ salt;
            for i in (1..n).rev() {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                p.swap(i, (x >> 33) as usize % (i + 1));
            }
            p
        };
        let b = a.permuted(&perm(a.rows(), 1), &perm(a.cols(), 2));
        prop_assert_eq!(smith_normal_form(&a).diagonal, smith_normal_form(&b).diagonal);
        prop_assert_eq!(smith_normal_form(&a).diagonal, smith_normal_form(&a.transpose()).diagonal);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    /// The product of the first `r` invariant factors is the gcd of the
    /// `r x r` minors.
    #[test]
    fn invariant_factors_match_determinantal_divisors(rows in matrix(4, 20)) {
        let a = IntegerMatrix::from_rows(&rows);
        let diag = smith_normal_form(&a).diagonal;
        let divisors = common::determinantal_divisors(&to_i128(&rows));
        let mut running = BigInt::one();
        for (d, expected) in diag.iter().zip(&divisors) {
            running *= d;
            prop_assert_eq!(running.to_i128().unwrap(), *expected);
        }
    }

    #[test]
    fn determinant_matches_cofactor_expansion(n in 1usize..=6, entries in prop::collection::vec(-20i64..=20, 36)) {
        let rows: Vec<Vec<i64>> = (0..n).map(|i| entries[i * n..(i + 1) * n].to_vec()).collect();
        let det = IntegerMatrix::from_rows(&rows).determinant().unwrap();
        prop_assert_eq!(det.to_i128().unwrap(), common::laplace_det(&to_i128(&rows)));
    }

    #[test]
    fn nullspace_mod_matches_brute_force(rows in matrix(3, 9), k in 2u64..=6) {
        let a = IntegerMatrix::from_rows(&rows);
        let cols = a.cols();
        let kernel = nullspace_mod(&a, k).unwrap();

        let in_kernel = |x: &[u64]| {
            rows.iter().all(|r| r.iter().zip(x).map(|(&c, &v)| c as i128 * v as i128).sum::<i128>().rem_euclid(k as i128) == 0)
        };
        let mut brute = std::collections::BTreeSet::new();
        let mut x = vec![0u64; cols];
        loop {
            if in_kernel(&x) {
                brute.insert(x.clone());
            }
            let Some(pos) = (0..cols).find(|&i| x[i] + 1 < k) else { break };
            x[..pos].iter_mut().for_each(|v| *v = 0);
            x[pos] += 1;
        }
        prop_assert_eq!(kernel.count.to_usize().unwrap(), brute.len());

        let mut span = std::collections::BTreeSet::new();
        span.insert(vec![0u64; cols]);
        for (g, &order) in kernel.generators.iter().zip(&kernel.orders) {
            prop_assert!(in_kernel(g));
            let mut next = std::collections::BTreeSet::new();
            for base in &span {
                let mut v = base.clone();
                for _ in 0..order {
                    next.insert(v.clone());
                    v.iter_mut().zip(g).for_each(|(x, y)| *x = (*x + y) % k);
                }
            }
            span = next;
        }
        prop_assert_eq!(span, brute);
    }
}

#[test]
fn continued_fractions_round_trip() {
    for n in 1..=200u64 {
        for m in 1..=200u64 {
            if num_integer::gcd(m, n) != 1 {
                continue;
            }
            let a = continued_fraction(m, n).unwrap();
            assert_eq!(evaluate_partial_quotients(&a), Some((m, n)), "{m}/{n}: {a:?}");
            assert!(a[..a.len() - 1].iter().skip(1).all(|&x| x > 0), "{m}/{n}: {a:?}");
        }
    }
}
