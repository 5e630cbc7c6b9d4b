//! Volume-scaling exponents of tangent planes under the dilations `s_t`.
//!
//! For an `n`-plane spanned by vectors `v_1, …, v_n`, the Gram matrix
//! `G(t)_{ij} = <s_t v_i, s_t v_j>` (graded basis orthonormal) has a
//! determinant that is a polynomial in `t` with nonnegative rational
//! coefficients. Writing its lowest and highest degrees as `2a` and `2b`,
//! the plane is `(a, b)`-horizontal with tight exponents: volume shrinks
//! like `t^a` for `t < 1` and grows like `t^b` for `t ≥ 1`.
//!
//! Two independent algorithms are provided and cross-checked in tests:
//! the Gram determinant (computed exactly by interpolation) and a greedy
//! echelon selection over the weight filtration.

use num_traits::Zero;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{int, ring_pow, Rational};

/// Tight volume-scaling exponents of a plane: shrink exponent `a` (t < 1)
/// and growth exponent `b` (t ≥ 1), as exact rationals with `a <= b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingExponentPair {
    pub a: Rational,
    pub b: Rational,
}

impl ScalingExponentPair {
    pub fn new(a: Rational, b: Rational) -> Result<Self> {
        if a > b {
            return Err(Error::BadAlgebra(format!(
                "scaling exponents must satisfy a <= b, got a={a}, b={b}"
            )));
        }
        Ok(ScalingExponentPair { a, b })
    }
}

fn check_independent(vectors: &[AlgebraElement]) -> Result<()> {
    if vectors.is_empty() {
        return Err(Error::DependentVectors { rank: 0, count: 0 });
    }
    for v in vectors {
        if !v.same_algebra(&vectors[0]) {
            return Err(Error::AlgebraMismatch);
        }
    }
    let rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coeffs().to_vec()).collect();
    let rk = linalg::rank(&rows);
    if rk < vectors.len() {
        return Err(Error::DependentVectors { rank: rk, count: vectors.len() });
    }
    Ok(())
}

/// Coefficients (constant term first) of `det G(t)` for the plane spanned by
/// `vectors`, where the declared graded basis is orthonormal.
///
/// The entries of `G(t)` are polynomials in `t`, so the determinant is
/// recovered exactly from evaluations at `deg + 1` integer points.
pub fn gram_determinant_poly(vectors: &[AlgebraElement]) -> Result<Vec<Rational>> {
    check_independent(vectors)?;
    let alg = vectors[0].algebra().clone();
    let n = vectors.len();
    let max_w = vectors
        .iter()
        .flat_map(|v| {
            v.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, _)| alg.weight_of(i))
        })
        .max()
        .unwrap_or(1);
    let degree_bound = 2 * (n as u64) * (max_w as u64);
    let mut points = Vec::with_capacity(degree_bound as usize + 1);
    for t in 1..=(degree_bound + 1) {
        let t = int(t as i64);
        let mut gram = vec![vec![Rational::zero(); n]; n];
        // <s_t v_i, s_t v_j> = sum_b t^{2 w_b} v_i[b] v_j[b]
        let powers: Vec<Rational> =
            (0..alg.dim()).map(|b| ring_pow(&t, 2 * alg.weight_of(b))).collect();
        for i in 0..n {
            for j in i..n {
                let mut s = Rational::zero();
                for b in 0..alg.dim() {
                    let x = &vectors[i].coeffs()[b];
                    let y = &vectors[j].coeffs()[b];
                    if !x.is_zero() && !y.is_zero() {
                        s += x * y * &powers[b];
                    }
                }
                gram[i][j] = s.clone();
                gram[j][i] = s;
            }
        }
        points.push((t, linalg::det(gram)));
    }
    Ok(linalg::interpolate(&points))
}

/// Tight `(a, b)` pair from the Gram determinant degrees.
pub fn plane_scaling_exponents(vectors: &[AlgebraElement]) -> Result<ScalingExponentPair> {
    let poly = gram_determinant_poly(vectors)?;
    let lo = poly.iter().position(|c| !c.is_zero());
    let hi = poly.iter().rposition(|c| !c.is_zero());
    let (lo, hi) = match (lo, hi) {
        (Some(l), Some(h)) => (l, h),
        // det G(t) vanishes identically only for dependent vectors, which
        // were rejected above.
        _ => unreachable!("Gram determinant of independent vectors is nonzero"),
    };
    ScalingExponentPair::new(
        Rational::new(lo.into(), 2.into()),
        Rational::new(hi.into(), 2.into()),
    )
}

/// Independent oracle for the same exponents via the weight filtration:
/// greedily echelonize the span, pivoting on highest-weight basis directions
/// first for the growth exponent and lowest-weight first for the shrink
/// exponent (ties broken by lowest basis index); each exponent is the sum of
/// the pivot weights.
pub fn filtration_exponents(vectors: &[AlgebraElement]) -> Result<ScalingExponentPair> {
    check_independent(vectors)?;
    let alg = vectors[0].algebra().clone();
    let dim = alg.dim();
    let n = vectors.len();

    let greedy = |descending: bool| -> u64 {
        let mut order: Vec<usize> = (0..dim).collect();
        order.sort_by_key(|&i| {
            let w = alg.weight_of(i) as i64;
            (if descending { -w } else { w }, i)
        });
        // Rows of the dim x n matrix are basis directions; greedily take a
        // row when it enlarges the span of the selected rows.
        let mut reduced: Vec<(usize, Vec<Rational>)> = Vec::new(); // (lead col, row)
        let mut total: u64 = 0;
        for &b in &order {
            let mut row: Vec<Rational> = vectors.iter().map(|v| v.coeffs()[b].clone()).collect();
            for (lead, r) in &reduced {
                if !row[*lead].is_zero() {
                    let f = row[*lead].clone();
                    for (x, y) in row.iter_mut().zip(r.iter()) {
                        let sub = y * &f;
                        *x -= sub;
                    }
                }
            }
            if let Some(lead) = row.iter().position(|c| !c.is_zero()) {
                let inv = row[lead].recip();
                for x in row.iter_mut() {
                    *x *= &inv;
                }
                reduced.push((lead, row));
                total += alg.weight_of(b) as u64;
                if reduced.len() == n {
                    break;
                }
            }
        }
        debug_assert_eq!(reduced.len(), n);
        total
    };

    let b = greedy(true);
    let a = greedy(false);
    ScalingExponentPair::new(int(a as i64), int(b as i64))
}

/// Sanity bound used by property tests: for `t0 >= 1` the exact value of
/// `det G(t0)` lies between `C^{-1} t0^{2a} det G(1)` and `C t0^{2b} det G(1)`
/// with `C` computed from the polynomial, and collapses to exact equality
/// `t0^{2a} det G(1)` when `a = b`.
pub fn gram_specialization_bounds(poly: &[Rational], t0: &Rational) -> (Rational, Rational, Rational) {
    let total: Rational = poly.iter().cloned().sum();
    let lo_deg = poly.iter().position(|c| !c.is_zero()).expect("nonzero poly");
    let hi_deg = poly.iter().rposition(|c| !c.is_zero()).expect("nonzero poly");
    let c_lo = &total / &poly[lo_deg];
    let value: Rational = poly
        .iter()
        .enumerate()
        .map(|(d, c)| c * ring_pow(t0, d as u32))
        .sum();
    let lower = ring_pow(t0, lo_deg as u32) * &total / c_lo;
    let upper = ring_pow(t0, hi_deg as u32) * &total;
    (lower, value, upper)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::random_element;
    use crate::jet::make_jet_algebra;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn horizontal_plane_has_exponents_n_n() {
        let j = make_jet_algebra(2, 2).unwrap();
        let vs = [j.basis_element(0), j.basis_element(1)];
        let pair = plane_scaling_exponents(&vs).unwrap();
        assert_eq!(pair, ScalingExponentPair { a: int(2), b: int(2) });
    }

    #[test]
    fn mixed_v1_v2_plane_is_three_three() {
        // e_1 and the weight-2 direction y(0) in the Heisenberg algebra.
        let h = make_jet_algebra(1, 1).unwrap();
        let e1 = h.basis_element(0);
        let y0 = h.element_from_names(&[("y(0)", int(1))]).unwrap();
        let pair = plane_scaling_exponents(&[e1, y0]).unwrap();
        assert_eq!(pair, ScalingExponentPair { a: int(3), b: int(3) });
    }

    #[test]
    fn single_weight_two_vector() {
        let h = make_jet_algebra(1, 1).unwrap();
        let y0 = h.element_from_names(&[("y(0)", int(1))]).unwrap();
        let pair = plane_scaling_exponents(&[y0]).unwrap();
        assert_eq!(pair, ScalingExponentPair { a: int(2), b: int(2) });
    }

    #[test]
    fn mixed_weight_vector_spreads_exponents() {
        // A single vector with components in weights 1 and 2 shrinks like t
        // and grows like t^2.
        let h = make_jet_algebra(1, 1).unwrap();
        let v = h.element_from_names(&[("e1", int(1)), ("y(0)", int(1))]).unwrap();
        let pair = plane_scaling_exponents(&[v]).unwrap();
        assert_eq!(pair, ScalingExponentPair { a: int(1), b: int(2) });
    }

    #[test]
    fn dependent_vectors_are_rejected() {
        let h = make_jet_algebra(1, 1).unwrap();
        let z = h.zero_element();
        assert!(matches!(
            plane_scaling_exponents(&[z]),
            Err(Error::DependentVectors { .. })
        ));
        let e = h.basis_element(0);
        assert!(matches!(
            plane_scaling_exponents(&[e.clone(), e.scaled(&int(-2))]),
            Err(Error::DependentVectors { rank: 1, count: 2 })
        ));
    }

    #[test]
    fn gram_and_filtration_agree_on_random_planes() {
        for (m, k) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
            let j = make_jet_algebra(m, k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + (m * 10 + k) as u64);
            let mut done = 0;
            while done < 40 {
                let n = rng.gen_range(1..=j.dim().min(4));
                let vs: Vec<_> = (0..n).map(|_| random_element(&j, &mut rng)).collect();
                let rows: Vec<Vec<Rational>> = vs.iter().map(|v| v.coeffs().to_vec()).collect();
                if linalg::rank(&rows) < n {
                    continue;
                }
                done += 1;
                let gram = plane_scaling_exponents(&vs).unwrap();
                let filt = filtration_exponents(&vs).unwrap();
                assert_eq!(gram, filt, "oracle mismatch in j_{{{m},{k}}}, plane {vs:?}");
                // n * (min weight present) <= a <= b <= n * (max weight present).
                let weights: Vec<u32> = vs
                    .iter()
                    .flat_map(|v| {
                        v.coeffs()
                            .iter()
                            .enumerate()
                            .filter(|(_, c)| !c.is_zero())
                            .map(|(i, _)| j.weight_of(i))
                    })
                    .collect();
                let lo = *weights.iter().min().unwrap() as i64;
                let hi = *weights.iter().max().unwrap() as i64;
                assert!(gram.a >= int(n as i64 * lo) && gram.b <= int(n as i64 * hi));
            }
        }
    }

    #[test]
    fn specialization_bounds_hold() {
        let h = make_jet_algebra(1, 1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..20 {
            let n = rng.gen_range(1..=2);
            let vs: Vec<_> = (0..n).map(|_| random_element(&h, &mut rng)).collect();
            let rows: Vec<Vec<Rational>> = vs.iter().map(|v| v.coeffs().to_vec()).collect();
            if linalg::rank(&rows) < n {
                continue;
            }
            let poly = gram_determinant_poly(&vs).unwrap();
            let pair = plane_scaling_exponents(&vs).unwrap();
            for t in [2i64, 3, 5] {
                let (lower, value, upper) = gram_specialization_bounds(&poly, &int(t));
                assert!(lower <= value && value <= upper);
                if pair.a == pair.b {
                    // Degenerate case: exact equality t^{2a} det G(1).
                    let det_one: Rational = poly.iter().cloned().sum();
                    let two_a = &pair.a * int(2);
                    assert!(two_a.is_integer());
                    let e: u32 = two_a.to_integer().try_into().unwrap();
                    assert_eq!(value, ring_pow(&int(t), e) * det_one);
                }
            }
        }
    }
}
