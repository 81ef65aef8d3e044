use proptest::prelude::*;
use qldpc::{Gf2Vector, SparseGf2Matrix};

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = SparseGf2Matrix> {
    (1..=max_rows, 1..=max_cols)
        .prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(any::<bool>(), c), r))
        .prop_map(|rows| {
            let dense: Vec<Vec<u8>> = rows.iter().map(|r| r.iter().map(|&b| u8::from(b)).collect()).collect();
            SparseGf2Matrix::from_dense(&dense).unwrap()
        })
}

fn bits(len: usize) -> impl Strategy<Value = Gf2Vector> {
    prop::collection::vec(any::<bool>(), len).prop_map(|b| Gf2Vector::from_bools(&b))
}

fn xor(a: &Gf2Vector, b: &Gf2Vector) -> Gf2Vector {
    let bools: Vec<bool> = a.iter().zip(b.iter()).map(|(x, y)| x ^ y).collect();
    Gf2Vector::from_bools(&bools)
}

/// Rank by elimination on rows of `u128` masks; independent of the crate.
fn rank_u128(h: &SparseGf2Matrix) -> usize {
    let mut rows: Vec<u128> = h.row_supports().map(|s| s.iter().fold(0u128, |m, &c| m | 1 << c)).collect();
    let mut rank = 0;
    for bit in 0..h.cols() {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> bit & 1 == 1) else { continue };
        rows.swap(rank, p);
        for i in 0..rows.len() {
            if i != rank && rows[i] >> bit & 1 == 1 {
                rows[i] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

/// Every GF(2) combination of the rows, as `u128` masks.
fn span(h: &SparseGf2Matrix) -> std::collections::HashSet<u128> {
    let rows: Vec<u128> = h.row_supports().map(|s| s.iter().fold(0u128, |m, &c| m | 1 << c)).collect();
    (0u32..1 << rows.len())
        .map(|pick| rows.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).fold(0, |m, (_, r)| m ^ r))
        .collect()
}

fn mask(v: &Gf2Vector) -> u128 {
    v.iter_ones().fold(0, |m, c| m | 1 << c)
}

proptest! {
    #[test]
    fn syndrome_is_linear((h, a, b) in matrix(12, 40).prop_flat_map(|h| { let n = h.cols(); (Just(h), bits(n), bits(n)) })) {
        let sa = h.mul_vec(&a).unwrap();
        let sb = h.mul_vec(&b).unwrap();
        prop_assert_eq!(h.mul_vec(&xor(&a, &b)).unwrap(), xor(&sa, &sb));
    }

    #[test]
    fn syndrome_matches_dot_products((h, e) in matrix(12, 40).prop_flat_map(|h| { let n = h.cols(); (Just(h), bits(n)) })) {
        let s = h.mul_vec(&e).unwrap();
        for r in 0..h.rows() {
            prop_assert_eq!(s.get(r), h.row_vector(r).dot(&e));
        }
    }

    #[test]
    fn rank_matches_oracle(h in matrix(16, 100)) {
        let r = rank_u128(&h);
        prop_assert_eq!(h.rank(), r);
        prop_assert_eq!(h.transpose().rank(), r);
        prop_assert_eq!(h.row_space().rank(), r);
    }

    #[test]
    fn row_space_membership_matches_span((h, v) in matrix(10, 24).prop_flat_map(|h| { let n = h.cols(); (Just(h), bits(n)) })) {
        let members = span(&h);
        prop_assert_eq!(h.in_row_space(&v).unwrap(), members.contains(&mask(&v)));
        // sums of rows are always members
        let sum = (0..h.rows()).step_by(2).fold(Gf2Vector::zeros(h.cols()), |acc, r| xor(&acc, &h.row_vector(r)));
        prop_assert!(h.in_row_space(&sum).unwrap());
    }

    #[test]
    fn transpose_is_an_involution(h in matrix(20, 50)) {
        let t = h.transpose();
        prop_assert_eq!(t.rows(), h.cols());
        prop_assert_eq!(t.transpose(), h.clone());
        for r in 0..h.rows() {
            for &c in h.row(r) {
                prop_assert!(t.get(c, r));
            }
        }
    }

    #[test]
    fn vector_text_round_trips(v in (0usize..300).prop_flat_map(bits)) {
        prop_assert_eq!(v.to_bit_string().parse::<Gf2Vector>().unwrap(), v.clone());
        prop_assert_eq!(Gf2Vector::from_hex(v.len(), &v.to_hex()).unwrap(), v.clone());
        prop_assert_eq!(v.weight(), v.iter().filter(|&b| b).count());
    }
}
