//! Per-node update rules of the scaled min-sum decoder.
//!
//! Variable-to-check messages `q` live in variable-major order and are
//! reached from a check through its slot list; check-to-variable messages
//! `r` live in check-major (edge) order and are reached from a variable
//! through its edge list. Each rule reads only the other side's buffer and
//! writes only its own node's outputs.

use super::arith::{FloatArith, MessageArith};

/// Maps a syndrome bit to the sign it contributes: 0 → +1, 1 → −1.
pub fn syndrome_sign(bit: bool) -> i8 {
    if bit {
        -1
    } else {
        1
    }
}

/// Parity of the negative signs seen by a check, including the syndrome:
/// `true` means the full sign product is −1.
#[inline(always)]
fn sign_parity<A: MessageArith>(inputs: impl Iterator<Item = A::Msg>, syndrome_bit: bool) -> bool {
    inputs.fold(syndrome_bit, |parity, q| parity ^ A::is_negative(q))
}

/// Smallest and second smallest magnitude, and the position of the first
/// occurrence of the smallest.
#[inline(always)]
fn two_minima<A: MessageArith>(inputs: impl Iterator<Item = A::Msg>) -> (A::Msg, A::Msg, usize) {
    let mut min1 = A::max_magnitude();
    let mut min2 = A::max_magnitude();
    let mut argmin = 0;
    for (i, q) in inputs.enumerate() {
        let mag = A::magnitude(q);
        if mag < min1 {
            min2 = min1;
            min1 = mag;
            argmin = i;
        } else if mag < min2 {
            min2 = mag;
        }
    }
    (min1, min2, argmin)
}

/// Writes the outgoing messages of one check. The sign is the product of
/// all other incoming signs and the syndrome sign; the excluding-self
/// minimum is the smallest input magnitude, except on the edge that holds
/// it, which gets the second smallest.
#[inline]
pub(crate) fn check_node<A: MessageArith>(
    arith: &A,
    q_var: &[A::Msg],
    slots: &[usize],
    syndrome_bit: bool,
    r_out: &mut [A::Msg],
) {
    debug_assert_eq!(slots.len(), r_out.len());
    match slots.len() {
        0 => {}
        1 => r_out[0] = arith.check_output(arith.degree_one_magnitude(), syndrome_bit),
        4 => check_fixed::<A, 4>(arith, q_var, slots, syndrome_bit, r_out),
        5 => check_fixed::<A, 5>(arith, q_var, slots, syndrome_bit, r_out),
        6 => check_fixed::<A, 6>(arith, q_var, slots, syndrome_bit, r_out),
        7 => check_fixed::<A, 7>(arith, q_var, slots, syndrome_bit, r_out),
        8 => check_fixed::<A, 8>(arith, q_var, slots, syndrome_bit, r_out),
        _ => {
            let parity = sign_parity::<A>(slots.iter().map(|&s| q_var[s]), syndrome_bit);
            let (min1, min2, argmin) = two_minima::<A>(slots.iter().map(|&s| q_var[s]));
            for (i, (&s, out)) in slots.iter().zip(r_out.iter_mut()).enumerate() {
                let mag = if i == argmin { min2 } else { min1 };
                *out = arith.check_output(mag, parity ^ A::is_negative(q_var[s]));
            }
        }
    }
}

#[inline(always)]
fn check_fixed<A: MessageArith, const D: usize>(
    arith: &A,
    q_var: &[A::Msg],
    slots: &[usize],
    syndrome_bit: bool,
    r_out: &mut [A::Msg],
) {
    let slots: &[usize; D] = slots.try_into().expect("degree");
    let r_out: &mut [A::Msg; D] = r_out.try_into().expect("degree");
    let inputs: [A::Msg; D] = std::array::from_fn(|j| q_var[slots[j]]);
    let parity = sign_parity::<A>(inputs.iter().copied(), syndrome_bit);
    let (min1, min2, argmin) = two_minima::<A>(inputs.iter().copied());
    for (i, (&q, out)) in inputs.iter().zip(r_out.iter_mut()).enumerate() {
        let mag = if i == argmin { min2 } else { min1 };
        *out = arith.check_output(mag, parity ^ A::is_negative(q));
    }
}

/// Writes `q_out[i] = γ + Σ_{j≠i} r[edges[j]]` for one variable and returns
/// the posterior `Q = γ + Σ r` with the decision `Q < 0`. Sums are always
/// taken in edge order, so every degree gives the same rounding.
#[inline]
pub(crate) fn variable_node<A: MessageArith>(
    gamma: A::Msg,
    r: &[A::Msg],
    edges: &[usize],
    q_out: &mut [A::Msg],
) -> (A::Msg, bool) {
    debug_assert_eq!(edges.len(), q_out.len());
    match edges.len() {
        2 => variable_fixed::<A, 2>(gamma, r, edges, q_out),
        3 => variable_fixed::<A, 3>(gamma, r, edges, q_out),
        4 => variable_fixed::<A, 4>(gamma, r, edges, q_out),
        5 => variable_fixed::<A, 5>(gamma, r, edges, q_out),
        6 => variable_fixed::<A, 6>(gamma, r, edges, q_out),
        _ => {
            for (i, out) in q_out.iter_mut().enumerate() {
                let mut acc = A::widen(gamma);
                for (j, &e) in edges.iter().enumerate() {
                    if j != i {
                        acc = A::add(acc, r[e]);
                    }
                }
                *out = A::store(acc);
            }
            posterior::<A>(gamma, edges.iter().map(|&e| r[e]))
        }
    }
}

#[inline(always)]
fn variable_fixed<A: MessageArith, const D: usize>(
    gamma: A::Msg,
    r: &[A::Msg],
    edges: &[usize],
    q_out: &mut [A::Msg],
) -> (A::Msg, bool) {
    let edges: &[usize; D] = edges.try_into().expect("degree");
    let q_out: &mut [A::Msg; D] = q_out.try_into().expect("degree");
    let inputs: [A::Msg; D] = std::array::from_fn(|j| r[edges[j]]);
    for (i, out) in q_out.iter_mut().enumerate() {
        let mut acc = A::widen(gamma);
        for (j, &m) in inputs.iter().enumerate() {
            if j != i {
                acc = A::add(acc, m);
            }
        }
        *out = A::store(acc);
    }
    posterior::<A>(gamma, inputs.iter().copied())
}

#[inline(always)]
fn posterior<A: MessageArith>(gamma: A::Msg, inputs: impl Iterator<Item = A::Msg>) -> (A::Msg, bool) {
    let acc = inputs.fold(A::widen(gamma), A::add);
    (A::store(acc), A::acc_is_negative(acc))
}

/// Check-node rule on one check in float arithmetic:
/// `r[e] = α · σ(s) · Π_{j≠e} sign(q[j]) · min_{j≠e} |q[j]|`.
pub fn check_node_update(q_in: &[f32], syndrome_bit: bool, alpha: f32) -> Vec<f32> {
    let arith = FloatArith::new(f64::from(alpha));
    let slots: Vec<usize> = (0..q_in.len()).collect();
    let mut out = vec![0.0; q_in.len()];
    check_node(&arith, q_in, &slots, syndrome_bit, &mut out);
    out
}

/// Variable-node rule on one variable in float arithmetic:
/// `q[e] = γ + Σ_{i≠e} r[i]`.
pub fn variable_node_update(gamma: f32, r_in: &[f32]) -> Vec<f32> {
    let edges: Vec<usize> = (0..r_in.len()).collect();
    let mut out = vec![0.0; r_in.len()];
    variable_node::<FloatArith>(gamma, r_in, &edges, &mut out);
    out
}

/// A-posteriori value and tentative decision for one variable, float
/// arithmetic. The decision is 1 only for a strictly negative posterior.
pub fn posterior_and_decision(gamma: f32, r_in: &[f32]) -> (f32, bool) {
    posterior::<FloatArith>(gamma, r_in.iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::arith::{IntArith, FLOAT_DEGREE_ONE_MAGNITUDE};
    use proptest::prelude::*;

    /// Excluding-self rule evaluated literally, as an oracle.
    fn cn_definition(q: &[f64], s: bool, alpha: f64) -> Vec<f64> {
        (0..q.len())
            .map(|e| {
                let mut sign = if s { -1.0 } else { 1.0 };
                let mut min = f64::INFINITY;
                for (j, &v) in q.iter().enumerate() {
                    if j != e {
                        if v < 0.0 {
                            sign = -sign;
                        }
                        min = min.min(v.abs());
                    }
                }
                alpha * sign * min
            })
            .collect()
    }

    #[test]
    fn syndrome_sign_mapping() {
        assert_eq!(syndrome_sign(false), 1);
        assert_eq!(syndrome_sign(true), -1);
        let v: Vec<i8> = [true, true, false].into_iter().map(syndrome_sign).collect();
        assert_eq!(v, vec![-1, -1, 1]);
    }

    #[test]
    fn check_update_examples() {
        assert_eq!(check_node_update(&[2.0, -3.0, 1.5], false, 1.0), vec![-1.5, 1.5, -2.0]);
        assert_eq!(check_node_update(&[2.0, -3.0, 1.5], true, 1.0), vec![1.5, -1.5, 2.0]);
        for d in 2..8 {
            assert_eq!(check_node_update(&vec![1.0; d], false, 1.0), vec![1.0; d]);
        }
    }

    #[test]
    fn check_update_degree_one() {
        assert_eq!(check_node_update(&[-0.5], false, 0.5), vec![0.5 * FLOAT_DEGREE_ONE_MAGNITUDE]);
        assert_eq!(check_node_update(&[0.5], true, 1.0), vec![-FLOAT_DEGREE_ONE_MAGNITUDE]);
    }

    #[test]
    fn zero_magnitude_counts_positive() {
        // sign(0) = +1: the other edges keep a positive sign product
        let r = check_node_update(&[0.0, 2.0, 3.0], false, 1.0);
        assert_eq!(r, vec![2.0, 0.0, 0.0]);
    }

    #[test]
    fn variable_update_examples() {
        assert_eq!(variable_node_update(1.0, &[-1.5, 2.0]), vec![3.0, -0.5]);
        assert_eq!(variable_node_update(1.0, &[0.0]), vec![1.0]);
        assert_eq!(variable_node_update(0.0, &[5.0, -5.0]), vec![-5.0, 5.0]);
    }

    #[test]
    fn posterior_examples() {
        assert_eq!(posterior_and_decision(1.0, &[-1.5, 2.0]), (1.5, false));
        assert_eq!(posterior_and_decision(1.0, &[-3.0]), (-2.0, true));
        assert_eq!(posterior_and_decision(1.0, &[-1.0]), (0.0, false));
        assert_eq!(posterior_and_decision(0.0, &[]), (0.0, false));
    }

    #[test]
    fn int_check_update_matches_scaled_float() {
        let arith = IntArith::<i16>::new(1.0, 256.0);
        let q: Vec<i16> = vec![512, -768, 384];
        let slots = [0, 1, 2];
        let mut out = vec![0i16; 3];
        check_node(&arith, &q, &slots, false, &mut out);
        assert_eq!(out, vec![-384, 384, -512]);
    }

    proptest! {
        #[test]
        fn two_minima_matches_definition(
            q in prop::collection::vec(-50i32..50, 2..12),
            s in any::<bool>(),
            alpha_pct in 1u32..=100,
        ) {
            // quarter steps are exact in f32 and f64
            let q: Vec<f32> = q.iter().map(|&v| v as f32 / 4.0).collect();
            let alpha = alpha_pct as f32 / 100.0;
            let got = check_node_update(&q, s, alpha);
            let q64: Vec<f64> = q.iter().map(|&v| f64::from(v)).collect();
            let want = cn_definition(&q64, s, f64::from(alpha));
            for (g, w) in got.iter().zip(&want) {
                prop_assert!((f64::from(*g) - w).abs() <= 1e-5 * w.abs().max(1.0), "{got:?} vs {want:?}");
                // signs agree except when the magnitude is zero
                if *w != 0.0 {
                    prop_assert_eq!(g.is_sign_negative(), *w < 0.0);
                }
            }
            // |r|/α takes at most two distinct values
            let mut mags: Vec<f32> = got.iter().map(|v| v.abs()).collect();
            mags.sort_by(f32::total_cmp);
            mags.dedup();
            prop_assert!(mags.len() <= 2);
        }

        #[test]
        fn variable_update_matches_definition(gamma in -8i32..8, r in prop::collection::vec(-40i32..40, 1..12)) {
            let gamma = gamma as f32 / 2.0;
            let r: Vec<f32> = r.iter().map(|&v| v as f32 / 2.0).collect();
            let q = variable_node_update(gamma, &r);
            for (e, &qe) in q.iter().enumerate() {
                let want: f32 = gamma + r.iter().enumerate().filter(|&(i, _)| i != e).map(|(_, v)| v).sum::<f32>();
                prop_assert_eq!(qe, want);
            }
            let (post, neg) = posterior_and_decision(gamma, &r);
            prop_assert_eq!(post, gamma + r.iter().sum::<f32>());
            prop_assert_eq!(neg, post < 0.0);
        }

        #[test]
        fn int_check_update_matches_definition(
            q in prop::collection::vec(-127i32..=127, 1..12),
            s in any::<bool>(),
        ) {
            let arith = IntArith::<i8>::new(0.75, 8.0);
            let q: Vec<i8> = q.iter().map(|&v| v as i8).collect();
            let slots: Vec<usize> = (0..q.len()).collect();
            let mut got = vec![0i8; q.len()];
            check_node(&arith, &q, &slots, s, &mut got);
            for (e, &r) in got.iter().enumerate() {
                let others = || q.iter().enumerate().filter(move |&(i, _)| i != e).map(|(_, &v)| i32::from(v));
                let negative = others().filter(|&v| v < 0).count() % 2 == 1;
                let mag = others().map(i32::abs).min().unwrap_or(127);
                // 0.75 is exact in Q15; round half up
                let scaled = (4 * mag * 3 + 8) / 16;
                let want = if negative ^ s { -scaled } else { scaled };
                prop_assert_eq!(i32::from(r), want, "q {:?} edge {}", q, e);
            }
        }
    }
}
