//! Jet groups: the graded Lie algebra of the m-jet bundle over R^k, the
//! explicit polynomial group law in jet coordinates, prolongations, scaling
//! automorphisms, and horizontality of prolongation images.
//!
//! Jet coordinates follow the Taylor convention: the fiber entry at a
//! multi-index `a` is the Taylor coefficient `∂^a f(base) / a!`, so the
//! polynomial attached to a point is literally `P(x) = Σ_a jet[a] (x-base)^a`
//! and the group law
//! `(p1, p2)(q1, q2) = (p1 + q1, D^m_{p1+q1}(P(p)) + q2)`
//! stays polynomial with rational coefficients.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{BracketTable, GradedLieAlgebra};
use crate::error::{Error, Result};
use crate::poly::{Poly, QPoly};
use crate::scalar::{binomial_big, factorial_big, ring_pow, Rational, Ring};

/// Multi-index over `k` variables; fiber indices satisfy `|a| <= m`.
pub type MultiIndex = Vec<u32>;

pub fn multi_index_order(a: &[u32]) -> u32 {
    a.iter().sum()
}

/// All multi-indices over `k` variables with `|a| = order`, ascending lex.
pub fn multi_indices_of_order(k: usize, order: u32) -> Vec<MultiIndex> {
    fn rec(k: usize, order: u32, prefix: &mut Vec<u32>, out: &mut Vec<MultiIndex>) {
        if k == 1 {
            let mut full = prefix.clone();
            full.push(order);
            out.push(full);
            return;
        }
        for first in 0..=order {
            prefix.push(first);
            rec(k - 1, order - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, order, &mut Vec::new(), &mut out);
    out
}

/// Fiber indices of J^m(R^k) in basis order: |a| = m first (weight 1), then
/// descending |a| down to 0 (weight m+1), lex within each level.
pub fn fiber_indices(m: usize, k: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for order in (0..=m as u32).rev() {
        out.extend(multi_indices_of_order(k, order));
    }
    out
}

pub fn multi_index_name(a: &[u32]) -> String {
    let inner: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("y({})", inner.join(","))
}

/// `prod_i binomial(b_i, a_i)` as a rational (zero unless `a <= b`).
fn multi_binomial(b: &[u32], a: &[u32]) -> Rational {
    let mut acc = num_bigint::BigInt::from(1);
    for (bi, ai) in b.iter().zip(a.iter()) {
        if ai > bi {
            return Rational::zero();
        }
        acc *= binomial_big(*bi as u64, *ai as u64);
    }
    Rational::from_integer(acc)
}

/// `a!` over a multi-index.
fn multi_factorial(a: &[u32]) -> num_bigint::BigInt {
    let mut acc = num_bigint::BigInt::from(1);
    for &x in a {
        acc *= factorial_big(x as u64);
    }
    acc
}

/// The graded Lie algebra j_{m,k} of J^m(R^k): basis `e_1..e_k` in weight 1
/// together with `y_a` (|a| <= m) in weight `m - |a| + 1`; the only nonzero
/// brackets are `[e_i, y_a] = y_{a - δ_i}` when `a_i > 0`.
pub fn make_jet_algebra(m: usize, k: usize) -> Result<Arc<GradedLieAlgebra>> {
    if m == 0 || k == 0 {
        return Err(Error::BadJetParameters { m, k });
    }
    let fibers = fiber_indices(m, k);
    let dim = k + fibers.len();
    let mut names: Vec<String> = (1..=k).map(|i| format!("e{i}")).collect();
    let mut weights: Vec<u32> = vec![1; k];
    let mut fiber_pos: BTreeMap<MultiIndex, usize> = BTreeMap::new();
    for (idx, a) in fibers.iter().enumerate() {
        names.push(multi_index_name(a));
        weights.push(m as u32 - multi_index_order(a) + 1);
        fiber_pos.insert(a.clone(), k + idx);
    }
    // [e_i, y_a] = y_{a - δ_i}; e_i always precedes fiber coordinates in
    // basis order, so every pair is already ordered.
    let mut entries: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    for (a, &pos) in &fiber_pos {
        for i in 0..k {
            if a[i] == 0 {
                continue;
            }
            let mut lower = a.clone();
            lower[i] -= 1;
            let target = fiber_pos[&lower];
            entries.insert((i, pos), vec![(target, Rational::from_integer(1.into()))]);
        }
    }
    GradedLieAlgebra::new(names, weights, BracketTable::new(dim, entries)?)
}

/// A point of J^m(R^k) in jet coordinates, generic over the scalar ring so
/// coordinates can be formal indeterminates.
#[derive(Debug, Clone, PartialEq)]
pub struct JetPoint<R: Ring = Rational> {
    m: usize,
    k: usize,
    base: Vec<R>,
    jet: BTreeMap<MultiIndex, R>,
}

impl<R: Ring> JetPoint<R> {
    pub fn new(m: usize, k: usize, base: Vec<R>, jet: BTreeMap<MultiIndex, R>) -> Result<Self> {
        if m == 0 || k == 0 {
            return Err(Error::BadJetParameters { m, k });
        }
        if base.len() != k {
            return Err(Error::BadJetPoint(format!(
                "base has {} coordinates, expected {}",
                base.len(),
                k
            )));
        }
        let mut clean = BTreeMap::new();
        for (a, c) in jet {
            if a.len() != k {
                return Err(Error::BadJetPoint(format!(
                    "multi-index {a:?} has length {}, expected {}",
                    a.len(),
                    k
                )));
            }
            if multi_index_order(&a) > m as u32 {
                return Err(Error::BadJetPoint(format!(
                    "multi-index {a:?} has order above {m}"
                )));
            }
            if !c.is_zero() {
                clean.insert(a, c);
            }
        }
        Ok(JetPoint { m, k, base, jet: clean })
    }

    pub fn identity(m: usize, k: usize) -> Result<Self> {
        JetPoint::new(m, k, vec![R::zero(); k], BTreeMap::new())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &[R] {
        &self.base
    }

    pub fn jet(&self) -> &BTreeMap<MultiIndex, R> {
        &self.jet
    }

    pub fn jet_coeff(&self, a: &[u32]) -> R {
        self.jet.get(a).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_identity(&self) -> bool {
        self.base.iter().all(|c| c.is_zero()) && self.jet.is_empty()
    }

    fn same_shape(&self, other: &Self) -> Result<()> {
        if self.m != other.m || self.k != other.k {
            return Err(Error::JetMismatch { m1: self.m, k1: self.k, m2: other.m, k2: other.k });
        }
        Ok(())
    }
}

/// Taylor data of `f` at `p` through order `m`: the map `a -> ∂^a f(p) / a!`.
pub fn taylor_coefficients<R: Ring>(
    f: &Poly<R>,
    p: &[R],
    m: usize,
) -> BTreeMap<MultiIndex, R> {
    let k = p.len();
    let mut out: BTreeMap<MultiIndex, R> = BTreeMap::new();
    for (exps, c) in f.terms() {
        let mut b = vec![0u32; k];
        for (i, &e) in exps.iter().enumerate() {
            assert!(i < k, "polynomial uses variable outside the base space");
            b[i] = e;
        }
        // c * x^b contributes C(b, a) * c * p^{b-a} to the coefficient at a.
        for a in sub_indices(&b) {
            if multi_index_order(&a) > m as u32 {
                continue;
            }
            let mut term = R::scale(c, &multi_binomial(&b, &a));
            for i in 0..k {
                let e = b[i] - a[i];
                if e > 0 {
                    term = R::mul(&term, &ring_pow(&p[i], e));
                }
            }
            if term.is_zero() {
                continue;
            }
            out.entry(a)
                .and_modify(|acc| *acc = R::add(acc, &term))
                .or_insert(term);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn sub_indices(b: &[u32]) -> Vec<MultiIndex> {
    let mut out: Vec<MultiIndex> = vec![Vec::new()];
    for &bi in b {
        let mut next = Vec::with_capacity(out.len() * (bi as usize + 1));
        for prefix in &out {
            for ai in 0..=bi {
                let mut p = prefix.clone();
                p.push(ai);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// The m-jet of a polynomial at a point.
pub fn jet_of_polynomial<R: Ring>(f: &Poly<R>, p: &[R], m: usize) -> Result<JetPoint<R>> {
    let k = p.len();
    if m == 0 || k == 0 {
        return Err(Error::BadJetParameters { m, k });
    }
    JetPoint::new(m, k, p.to_vec(), taylor_coefficients(f, p, m))
}

/// The unique polynomial of degree <= m whose Taylor data at `p.base` is
/// `p.jet`: `P(x) = Σ_a jet[a] (x - base)^a`.
pub fn poly_of_jet<R: Ring>(p: &JetPoint<R>) -> Poly<R> {
    let mut out = Poly::zero();
    for (a, c) in &p.jet {
        let mut term = Poly::constant(c.clone());
        for (i, &ai) in a.iter().enumerate() {
            if ai > 0 {
                let factor = Poly::var(i).sub(&Poly::constant(p.base[i].clone()));
                term = term.mul(&factor.pow(ai));
            }
        }
        out = out.add(&term);
    }
    out
}

/// The group law `(p1, p2)(q1, q2) = (p1 + q1, D^m_{p1+q1}(P(p)) + q2)`.
pub fn jet_multiply<R: Ring>(p: &JetPoint<R>, q: &JetPoint<R>) -> Result<JetPoint<R>> {
    p.same_shape(q)?;
    let new_base: Vec<R> = p.base.iter().zip(&q.base).map(|(a, b)| R::add(a, b)).collect();
    let poly = poly_of_jet(p);
    let mut fiber = taylor_coefficients(&poly, &new_base, p.m);
    for (a, c) in &q.jet {
        fiber
            .entry(a.clone())
            .and_modify(|acc| *acc = R::add(acc, c))
            .or_insert_with(|| c.clone());
    }
    JetPoint::new(p.m, p.k, new_base, fiber)
}

/// Two-sided inverse for the jet group law.
pub fn jet_inverse<R: Ring>(p: &JetPoint<R>) -> JetPoint<R> {
    let poly = poly_of_jet(p);
    let origin = vec![R::zero(); p.k];
    let at_zero = taylor_coefficients(&poly, &origin, p.m);
    let jet = at_zero.into_iter().map(|(a, c)| (a, R::neg(&c))).collect();
    let base = p.base.iter().map(R::neg).collect();
    JetPoint::new(p.m, p.k, base, jet).expect("inverse preserves shape")
}

/// The scaling automorphism in jet coordinates: base scales by `t`, the
/// fiber entry at `a` by `t^{m - |a| + 1}`.
pub fn jet_scaling<R: Ring>(t: &Rational, p: &JetPoint<R>) -> Result<JetPoint<R>> {
    if t.is_zero() {
        return Err(Error::ZeroScale);
    }
    let base = p.base.iter().map(|c| R::scale(c, t)).collect();
    let jet = p
        .jet
        .iter()
        .map(|(a, c)| {
            let w = p.m as u32 - multi_index_order(a) + 1;
            (a.clone(), R::scale(c, &ring_pow(t, w)))
        })
        .collect();
    JetPoint::new(p.m, p.k, base, jet)
}

/// Generators of the lattice Γ_{m,k}: the exponentials of the basis vectors
/// in jet coordinates, under the correspondence `exp(e_i) = (e_i, 0)` and
/// `exp(y_a) = (0, unit jet at a)`.
pub fn lattice_generators(m: usize, k: usize) -> Result<Vec<JetPoint<Rational>>> {
    if m == 0 || k == 0 {
        return Err(Error::BadJetParameters { m, k });
    }
    let one = Rational::from_integer(1.into());
    let mut out = Vec::new();
    for i in 0..k {
        let mut base = vec![Rational::zero(); k];
        base[i] = one.clone();
        out.push(JetPoint::new(m, k, base, BTreeMap::new())?);
    }
    for a in fiber_indices(m, k) {
        let mut jet = BTreeMap::new();
        jet.insert(a, one.clone());
        out.push(JetPoint::new(m, k, vec![Rational::zero(); k], jet)?);
    }
    Ok(out)
}

/// Extracts the Lie algebra from the group law: expand the product of two
/// symbolic points around the identity, take the antisymmetrized bilinear
/// term, and express it in the `y_a` basis via the declared identification
/// `y_a ↔ (-1)^{m-|a|} / a! ×` (unit Taylor coordinate at `a`).
///
/// The result is structure-constant identical to [`make_jet_algebra`].
pub fn algebra_from_group_law(m: usize, k: usize) -> Result<Arc<GradedLieAlgebra>> {
    if m == 0 || k == 0 {
        return Err(Error::BadJetParameters { m, k });
    }
    let fibers = fiber_indices(m, k);
    let dim = k + fibers.len();

    // Coordinates of the two factors as indeterminates: u = vars 0..dim,
    // v = vars dim..2dim; coordinate order matches the algebra basis order.
    let point = |offset: usize| -> Result<JetPoint<QPoly>> {
        let base: Vec<QPoly> = (0..k).map(|i| Poly::var(offset + i)).collect();
        let mut jet = BTreeMap::new();
        for (idx, a) in fibers.iter().enumerate() {
            jet.insert(a.clone(), Poly::var(offset + k + idx));
        }
        JetPoint::new(m, k, base, jet)
    };
    let p = point(0)?;
    let q = point(dim)?;
    let z = jet_multiply(&p, &q)?;

    // Bilinear part: coefficient of u_i v_j in each product coordinate.
    let coords: Vec<QPoly> = {
        let mut v: Vec<QPoly> = z.base.clone();
        for a in &fibers {
            v.push(z.jet_coeff(a));
        }
        v
    };
    let bilinear = |out: usize, i: usize, j: usize| -> Rational {
        let mut exps = vec![0u32; dim + j + 1];
        exps[i] = 1;
        exps[dim + j] += 1;
        coords[out].coeff(&exps)
    };

    // Declared diagonal identification between Taylor coordinates and the
    // y-basis; base directions map identically.
    let mu = |idx: usize| -> Rational {
        if idx < k {
            Rational::from_integer(1.into())
        } else {
            let a = &fibers[idx - k];
            let sign = if (m as u32 - multi_index_order(a)) % 2 == 0 { 1 } else { -1 };
            Rational::new(sign.into(), multi_factorial(a))
        }
    };

    let mut entries: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    for i in 0..dim {
        for j in (i + 1)..dim {
            let mut sparse = Vec::new();
            for out in 0..dim {
                // [b_i, b_j] = B(b_i, b_j) - B(b_j, b_i) in raw coordinates,
                // conjugated by the diagonal identification.
                let raw = bilinear(out, i, j) - bilinear(out, j, i);
                if raw.is_zero() {
                    continue;
                }
                let c = raw * mu(i) * mu(j) / mu(out);
                if !c.is_zero() {
                    sparse.push((out, c));
                }
            }
            if !sparse.is_empty() {
                entries.insert((i, j), sparse);
            }
        }
    }
    let reference = make_jet_algebra(m, k)?;
    GradedLieAlgebra::new(
        reference.names().to_vec(),
        reference.weights().to_vec(),
        BracketTable::new(dim, entries)?,
    )
}

/// Outcome of a horizontality check on a jet-space section.
#[derive(Debug, Clone)]
pub enum Horizontality {
    Horizontal,
    /// An offending fiber component of weight >= 2, with the direction of
    /// differentiation and the nonvanishing derivative.
    Violated { index: MultiIndex, direction: usize, derivative: String },
}

impl Horizontality {
    pub fn is_horizontal(&self) -> bool {
        matches!(self, Horizontality::Horizontal)
    }
}

/// A section of the jet bundle given coordinate-wise by polynomials in the
/// base variables `x_0 … x_{k-1}` (plus, optionally, extra parameter
/// variables from index `k` on).
pub type JetSection = JetPoint<QPoly>;

/// The prolongation section `x ↦ j^m_x(f)` with symbolic base point.
pub fn prolongation_section(f: &QPoly, m: usize, k: usize) -> Result<JetSection> {
    if m == 0 || k == 0 {
        return Err(Error::BadJetParameters { m, k });
    }
    let base: Vec<QPoly> = (0..k).map(Poly::var).collect();
    let mut jet = BTreeMap::new();
    for order in 0..=m as u32 {
        for a in multi_indices_of_order(k, order) {
            let mut d = f.clone();
            for (i, &ai) in a.iter().enumerate() {
                for _ in 0..ai {
                    d = d.derivative(i);
                }
            }
            let coeff = d.scale(&Rational::new(1.into(), multi_factorial(&a)));
            if !coeff.is_zero() {
                jet.insert(a, coeff);
            }
        }
    }
    JetPoint::new(m, k, base, jet)
}

/// Checks that the left-translated derivative of a section lands in the
/// horizontal layer: all fiber components of weight >= 2 (i.e. `|a| < m`)
/// of `d/dx_i [ S(p)^{-1} · S(x) ]` vanish at `x = p`.
///
/// `at` gives the base point as polynomials (constants for a concrete
/// rational point, fresh variables for a fully symbolic check).
pub fn section_horizontality(section: &JetSection, at: &[QPoly]) -> Result<Horizontality> {
    let m = section.m;
    let k = section.k;
    if at.len() != k {
        return Err(Error::BadJetPoint(format!(
            "base point has {} coordinates, expected {k}",
            at.len()
        )));
    }
    let assign: BTreeMap<usize, QPoly> =
        (0..k).map(|i| (i, at[i].clone())).collect();
    let point_at: JetSection = {
        let base = section.base.iter().map(|c| c.substitute(&assign)).collect();
        let jet = section
            .jet
            .iter()
            .map(|(a, c)| (a.clone(), c.substitute(&assign)))
            .collect();
        JetPoint::new(m, k, base, jet)?
    };
    let translated = jet_multiply(&jet_inverse(&point_at), section)?;
    for (a, c) in &translated.jet {
        if multi_index_order(a) >= m as u32 {
            continue; // weight-1 fiber directions are allowed
        }
        for i in 0..k {
            let d = c.derivative(i).substitute(&assign);
            if !d.is_zero() {
                return Ok(Horizontality::Violated {
                    index: a.clone(),
                    direction: i,
                    derivative: d.display_with(&|v| format!("x{v}")),
                });
            }
        }
    }
    Ok(Horizontality::Horizontal)
}

/// Horizontality of the prolongation image of a polynomial at a rational
/// point, per the jet-space tangency statement: true for every smooth `f`.
pub fn prolongation_horizontality_check(
    f: &QPoly,
    p: &[Rational],
    m: usize,
) -> Result<Horizontality> {
    let k = p.len();
    let section = prolongation_section(f, m, k)?;
    let at: Vec<QPoly> = p.iter().map(|c| Poly::constant(c.clone())).collect();
    section_horizontality(&section, &at)
}

/// Fully symbolic variant: the base point itself is a tuple of fresh
/// indeterminates, so the conclusion holds identically.
pub fn prolongation_horizontality_check_symbolic(
    f: &QPoly,
    m: usize,
    k: usize,
) -> Result<Horizontality> {
    let section = prolongation_section(f, m, k)?;
    let at: Vec<QPoly> = (0..k).map(|i| Poly::var(k + i)).collect();
    section_horizontality(&section, &at)
}
