//! Baker–Campbell–Hausdorff multiplication, exact and truncated at the
//! nilpotency class.
//!
//! The series is precomputed once per class as a free Lie series on two
//! generators, in the Dynkin form: a rational combination of right-nested
//! bracket words. For a class-`c` algebra the truncation at commutator
//! length `c` is exact, so `bch` defines the group law in exponential
//! coordinates.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, LazyLock, Mutex};

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::scalar::{factorial_big, Rational, Ring};

/// A bracket word over two letters: `false` = first argument, `true` = second.
/// The word `w_1 … w_d` denotes `[w_1, [w_2, …, [w_{d-1}, w_d]…]]`.
type Word = Vec<bool>;

/// The degree-≤ `class` part of log(exp x · exp y) as a combination of
/// right-nested bracket words, via Dynkin's formula.
fn compute_series(class: usize) -> Vec<(Word, Rational)> {
    let mut acc: BTreeMap<Word, Rational> = BTreeMap::new();
    // Enumerate block sequences ((r_1,s_1),…,(r_n,s_n)), each block nonzero,
    // total degree ≤ class.
    let mut blocks: Vec<(usize, usize)> = Vec::new();
    enumerate(class, 0, &mut blocks, &mut acc);
    acc.into_iter()
        .filter(|(w, c)| !c.is_zero() && !nested_bracket_trivially_zero(w))
        .collect()
}

fn enumerate(
    class: usize,
    degree: usize,
    blocks: &mut Vec<(usize, usize)>,
    acc: &mut BTreeMap<Word, Rational>,
) {
    if !blocks.is_empty() {
        contribute(blocks, degree, acc);
    }
    for r in 0..=(class - degree) {
        for s in 0..=(class - degree - r) {
            if r + s == 0 {
                continue;
            }
            blocks.push((r, s));
            enumerate(class, degree + r + s, blocks, acc);
            blocks.pop();
        }
    }
}

fn contribute(blocks: &[(usize, usize)], degree: usize, acc: &mut BTreeMap<Word, Rational>) {
    let n = blocks.len();
    let mut word: Word = Vec::with_capacity(degree);
    let mut denom = num_bigint::BigInt::from((n * degree) as i64);
    for &(r, s) in blocks {
        word.extend(std::iter::repeat_n(false, r));
        word.extend(std::iter::repeat_n(true, s));
        denom *= factorial_big(r as u64) * factorial_big(s as u64);
    }
    let sign = if n % 2 == 0 { -1 } else { 1 };
    let coeff = Rational::new(num_bigint::BigInt::from(sign), denom);
    *acc.entry(word).or_insert_with(Rational::zero) += coeff;
}

/// `[w_1, [… [w_{d-1}, w_d]…]]` vanishes identically when the two innermost
/// letters agree.
fn nested_bracket_trivially_zero(w: &Word) -> bool {
    let d = w.len();
    d >= 2 && w[d - 1] == w[d - 2]
}

static SERIES_CACHE: LazyLock<Mutex<BTreeMap<usize, Arc<Vec<(Word, Rational)>>>>> =
    LazyLock::new(|| Mutex::new(BTreeMap::new()));

fn series(class: usize) -> Arc<Vec<(Word, Rational)>> {
    let mut cache = SERIES_CACHE.lock().expect("series cache poisoned");
    cache.entry(class).or_insert_with(|| Arc::new(compute_series(class))).clone()
}

/// log(exp u · exp v), evaluated exactly through commutator length equal to
/// the algebra's nilpotency class. Errors if the inputs live in different
/// algebras or the algebra is not nilpotent.
pub fn bch<R: Ring>(u: &AlgebraElement<R>, v: &AlgebraElement<R>) -> Result<AlgebraElement<R>> {
    if !u.same_algebra(v) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = u.algebra();
    let class = alg.nilpotency_class()?;
    let terms = series(class);
    let dim = alg.dim();

    // Nested-bracket evaluations share suffixes across words.
    let mut memo: HashMap<Word, Vec<R>> = HashMap::new();
    memo.insert(vec![false], u.coeffs().to_vec());
    memo.insert(vec![true], v.coeffs().to_vec());
    fn eval<R: Ring>(
        word: &[bool],
        memo: &mut HashMap<Word, Vec<R>>,
        table: &crate::algebra::BracketTable,
        u: &[R],
        v: &[R],
    ) -> Vec<R> {
        if let Some(hit) = memo.get(word) {
            return hit.clone();
        }
        let inner = eval(&word[1..], memo, table, u, v);
        let letter = if word[0] { v } else { u };
        let out = table.bracket_coeffs(letter, &inner);
        memo.insert(word.to_vec(), out.clone());
        out
    }

    let mut acc = vec![R::zero(); dim];
    for (word, coeff) in terms.iter() {
        let val = eval(word, &mut memo, alg.table(), u.coeffs(), v.coeffs());
        for (a, x) in acc.iter_mut().zip(val.iter()) {
            if !x.is_zero() {
                *a = R::add(a, &R::scale(x, coeff));
            }
        }
    }
    alg.element(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{random_element, GradedLieAlgebra};
    use crate::jet::make_jet_algebra;
    use crate::scalar::{int, rat};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degree_two_combines_to_one_half_bracket() {
        // Words are not canonicalized, so [x,y]'s coefficient is
        // coeff(xy) - coeff(yx).
        let s = series(2);
        let coeff = |w: &[bool]| {
            s.iter()
                .find(|(word, _)| word == w)
                .map(|(_, c)| c.clone())
                .unwrap_or_else(Rational::zero)
        };
        assert_eq!(coeff(&[false, true]) - coeff(&[true, false]), rat(1, 2));
        // Single letters carry coefficient 1.
        assert_eq!(coeff(&[false]), int(1));
        assert_eq!(coeff(&[true]), int(1));
    }

    #[test]
    fn degree_three_matches_classical_formula() {
        // In class 3 the words xxy and xyx must combine to 1/12 [x,[x,y]]
        // (and symmetrically 1/12 [y,[y,x]]): coeff(xxy) - coeff(xyx) = 1/12.
        let s = series(3);
        let coeff = |w: &[bool]| {
            s.iter().find(|(word, _)| word == w).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
        };
        let xxy = coeff(&[false, false, true]);
        let xyx = coeff(&[false, true, false]);
        assert_eq!(xxy - xyx, rat(1, 12));
        let yyx = coeff(&[true, true, false]);
        let yxy = coeff(&[true, false, true]);
        assert_eq!(yyx - yxy, rat(1, 12));
    }

    #[test]
    fn abelian_bch_is_addition() {
        let a = GradedLieAlgebra::abelian(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..10 {
            let u = random_element(&a, &mut rng);
            let v = random_element(&a, &mut rng);
            assert_eq!(bch(&u, &v).unwrap(), u.add(&v).unwrap());
        }
    }

    #[test]
    fn heisenberg_bch_example() {
        // bch(e_1, y_(1)) = e_1 + y_(1) + 1/2 y_(0)
        let h = make_jet_algebra(1, 1).unwrap();
        let e1 = h.basis_element(0);
        let y1 = h.element_from_names(&[("y(1)", int(1))]).unwrap();
        let out = bch(&e1, &y1).unwrap();
        let expect = h
            .element_from_names(&[("e1", int(1)), ("y(1)", int(1)), ("y(0)", rat(1, 2))])
            .unwrap();
        assert_eq!(out, expect);
    }

    #[test]
    fn bch_identity_and_inverse() {
        let j = make_jet_algebra(2, 1).unwrap();
        let zero = j.zero_element();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..25 {
            let u = random_element(&j, &mut rng);
            assert_eq!(bch(&u, &zero).unwrap(), u);
            assert_eq!(bch(&zero, &u).unwrap(), u);
            assert!(bch(&u, &u.neg()).unwrap().is_zero());
        }
    }

    #[test]
    fn bch_associates_on_random_triples() {
        for (m, k) in [(1usize, 1usize), (2, 1), (3, 1)] {
            let j = make_jet_algebra(m, k).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(42 + m as u64);
            for _ in 0..50 {
                let u = random_element(&j, &mut rng);
                let v = random_element(&j, &mut rng);
                let w = random_element(&j, &mut rng);
                let lhs = bch(&bch(&u, &v).unwrap(), &w).unwrap();
                let rhs = bch(&u, &bch(&v, &w).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "associativity failed for j_{{{m},{k}}}");
            }
        }
    }

    #[test]
    fn weight_one_projection_is_additive() {
        let j = make_jet_algebra(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let u = random_element(&j, &mut rng);
            let v = random_element(&j, &mut rng);
            let z = bch(&u, &v).unwrap();
            let sum = u.add(&v).unwrap();
            assert_eq!(z.weight_component(1), sum.weight_component(1));
        }
    }

    #[test]
    fn series_cache_is_safe_under_concurrent_first_access() {
        let j = make_jet_algebra(2, 1).unwrap();
        let handles: Vec<_> = (0..4)
            .map(|seed| {
                let j = std::sync::Arc::clone(&j);
                std::thread::spawn(move || {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let u = random_element(&j, &mut rng);
                    let v = random_element(&j, &mut rng);
                    bch(&u, &v).unwrap().into_coeffs()
                })
            })
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        // Same seeds give the same products regardless of racing on the
        // series cache.
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let u = random_element(&j, &mut rng);
        let v = random_element(&j, &mut rng);
        assert_eq!(results[0], bch(&u, &v).unwrap().into_coeffs());
    }

    #[test]
    fn bch_rejects_nonnilpotent() {
        use crate::algebra::BracketTable;
        let g = GradedLieAlgebra::new(
            vec!["a".into(), "b".into()],
            vec![1, 1],
            BracketTable::new(2, [((0usize, 1usize), vec![(1usize, int(1))])]).unwrap(),
        )
        .unwrap();
        let u = g.basis_element(0);
        let v = g.basis_element(1);
        assert!(matches!(bch(&u, &v), Err(Error::NotNilpotent { .. })));
    }
}
