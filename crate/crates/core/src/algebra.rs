//! Graded nilpotent Lie algebras with exact rational structure constants.
//!
//! A [`GradedLieAlgebra`] is a basis with positive integer weights and a
//! sparse bracket table storing only pairs `(i, j)` with `i < j`; the other
//! half is derived by antisymmetry. Mathematical soundness (Jacobi, grading
//! compatibility, nilpotency) is not enforced at construction: [`validate`]
//! reports it, so deliberately broken tables can be built and diagnosed.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{rat, ring_pow, Rational, Ring};

/// Sparse bracket table on a basis: `entries[(i, j)]` with `i < j` holds the
/// coordinates of `[b_i, b_j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketTable {
    dim: usize,
    entries: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
}

impl BracketTable {
    pub fn new(
        dim: usize,
        raw: impl IntoIterator<Item = ((usize, usize), Vec<(usize, Rational)>)>,
    ) -> Result<Self> {
        let mut entries = BTreeMap::new();
        for ((i, j), val) in raw {
            if i >= j || j >= dim {
                return Err(Error::BadAlgebra(format!(
                    "bracket pair ({i}, {j}) is not an ordered pair below dimension {dim}"
                )));
            }
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (t, c) in val {
                if t >= dim {
                    return Err(Error::BadAlgebra(format!(
                        "bracket [{i}, {j}] targets out-of-range index {t}"
                    )));
                }
                *acc.entry(t).or_insert_with(Rational::zero) += c;
            }
            let cleaned: Vec<(usize, Rational)> =
                acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if entries.insert((i, j), cleaned).is_some() {
                return Err(Error::BadAlgebra(format!("duplicate bracket pair ({i}, {j})")));
            }
        }
        entries.retain(|_, v: &mut Vec<(usize, Rational)>| !v.is_empty());
        Ok(BracketTable { dim, entries })
    }

    pub fn empty(dim: usize) -> Self {
        BracketTable { dim, entries: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<(usize, Rational)>)> {
        self.entries.iter()
    }

    /// `[b_i, b_j]` as a sparse vector, antisymmetry included.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Rational)> {
        if i == j {
            return Vec::new();
        }
        if i < j {
            self.entries.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.entries
                .get(&(j, i))
                .map(|v| v.iter().map(|(t, c)| (*t, -c)).collect())
                .unwrap_or_default()
        }
    }

    /// Bilinear antisymmetric extension to coefficient vectors over any ring.
    pub fn bracket_coeffs<R: Ring>(&self, x: &[R], y: &[R]) -> Vec<R> {
        let mut out = vec![R::zero(); self.dim];
        for ((i, j), targets) in &self.entries {
            // contribution of x_i y_j - x_j y_i on [b_i, b_j]
            let a = R::mul(&x[*i], &y[*j]);
            let b = R::mul(&x[*j], &y[*i]);
            let coeff = R::sub(&a, &b);
            if coeff.is_zero() {
                continue;
            }
            for (t, c) in targets {
                out[*t] = R::add(&out[*t], &R::scale(&coeff, c));
            }
        }
        out
    }

    /// Reverse lookup: for each target index `t`, the pairs `(i, j)` with
    /// `i < j` such that `[b_i, b_j]` has a component on `b_t`.
    pub fn producers(&self) -> BTreeMap<usize, Vec<(usize, usize, Rational)>> {
        let mut map: BTreeMap<usize, Vec<(usize, usize, Rational)>> = BTreeMap::new();
        for ((i, j), targets) in &self.entries {
            for (t, c) in targets {
                map.entry(*t).or_default().push((*i, *j, c.clone()));
            }
        }
        map
    }
}

/// Graded nilpotent Lie algebra over exact rationals.
#[derive(Debug, PartialEq, Eq)]
pub struct GradedLieAlgebra {
    names: Vec<String>,
    weights: Vec<u32>,
    table: BracketTable,
}

impl GradedLieAlgebra {
    pub fn new(
        names: Vec<String>,
        weights: Vec<u32>,
        table: BracketTable,
    ) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::BadAlgebra("basis must be nonempty".into()));
        }
        if names.len() != weights.len() || names.len() != table.dim() {
            return Err(Error::BadAlgebra("basis, weights and table sizes differ".into()));
        }
        let mut seen = std::collections::BTreeSet::new();
        for n in &names {
            if !seen.insert(n.clone()) {
                return Err(Error::BadAlgebra(format!("duplicate basis name {n:?}")));
            }
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::BadAlgebra("weights must be positive".into()));
        }
        Ok(Arc::new(GradedLieAlgebra { names, weights, table }))
    }

    /// Abelian algebra of dimension `n`, all weights 1.
    pub fn abelian(n: usize) -> Arc<Self> {
        GradedLieAlgebra::new(
            (1..=n).map(|i| format!("e{i}")).collect(),
            vec![1; n],
            BracketTable::empty(n),
        )
        .expect("abelian algebra is well-formed")
    }

    pub fn dim(&self) -> usize {
        self.table.dim()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn weight_of(&self, i: usize) -> u32 {
        self.weights[i]
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Dimensions of the grading layers, keyed by weight.
    pub fn graded_dims(&self) -> BTreeMap<u32, usize> {
        let mut map = BTreeMap::new();
        for &w in &self.weights {
            *map.entry(w).or_insert(0) += 1;
        }
        map
    }

    /// Homogeneous dimension: the sum of the basis weights.
    pub fn homogeneous_dimension(&self) -> u64 {
        self.weights.iter().map(|&w| w as u64).sum()
    }

    pub fn zero_element(self: &Arc<Self>) -> AlgebraElement<Rational> {
        self.element(vec![Rational::zero(); self.dim()]).expect("length matches")
    }

    pub fn basis_element(self: &Arc<Self>, i: usize) -> AlgebraElement<Rational> {
        let mut coeffs = vec![Rational::zero(); self.dim()];
        coeffs[i] = Rational::from_integer(1.into());
        AlgebraElement { algebra: Arc::clone(self), coeffs }
    }

    pub fn element<R: Ring>(self: &Arc<Self>, coeffs: Vec<R>) -> Result<AlgebraElement<R>> {
        if coeffs.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: coeffs.len() });
        }
        Ok(AlgebraElement { algebra: Arc::clone(self), coeffs })
    }

    pub fn element_from_names<R: Ring>(
        self: &Arc<Self>,
        entries: &[(&str, R)],
    ) -> Result<AlgebraElement<R>> {
        let mut coeffs = vec![R::zero(); self.dim()];
        for (name, c) in entries {
            let i = self
                .index_of(name)
                .ok_or_else(|| Error::BadAlgebra(format!("unknown basis name {name:?}")))?;
            coeffs[i] = R::add(&coeffs[i], c);
        }
        self.element(coeffs)
    }

    /// Dimensions of the nonzero terms of the lower central series
    /// `g = g_1 ⊇ g_2 ⊇ …`, plus whether the series reaches zero.
    pub fn lower_central_series_full(&self) -> (Vec<usize>, bool) {
        let dim = self.dim();
        let mut dims = vec![dim];
        // g_1 spanned by the basis.
        let mut current: Vec<Vec<Rational>> = (0..dim)
            .map(|i| {
                let mut row = vec![Rational::zero(); dim];
                row[i] = Rational::from_integer(1.into());
                row
            })
            .collect();
        loop {
            let mut gens: Vec<Vec<Rational>> = Vec::new();
            for i in 0..dim {
                let mut e = vec![Rational::zero(); dim];
                e[i] = Rational::from_integer(1.into());
                for v in &current {
                    let b = self.table.bracket_coeffs(&e, v);
                    if b.iter().any(|c| !c.is_zero()) {
                        gens.push(b);
                    }
                }
            }
            let next = linalg::row_space_basis(&gens);
            let ndim = next.len();
            if ndim == 0 {
                return (dims, true);
            }
            if ndim == *dims.last().expect("nonempty") {
                // Stabilized above zero: not nilpotent.
                dims.push(ndim);
                return (dims, false);
            }
            dims.push(ndim);
            current = next;
        }
    }

    /// Dimensions of the lower central series terms down to the last nonzero
    /// one. The nilpotency class is the length of this list.
    pub fn lower_central_series(&self) -> Vec<usize> {
        self.lower_central_series_full().0
    }

    /// Nilpotency class, or `Err` if the series stabilizes above zero.
    pub fn nilpotency_class(&self) -> Result<usize> {
        let (dims, nilpotent) = self.lower_central_series_full();
        if nilpotent {
            Ok(dims.len())
        } else {
            Err(Error::NotNilpotent { stable_dim: *dims.last().expect("nonempty") })
        }
    }

    /// Runs the four structural checks and reports each outcome.
    pub fn validate(&self) -> ValidationReport {
        let dim = self.dim();

        // Antisymmetry of the derived extension: [b_i, b_j] = -[b_j, b_i]
        // and [b_i, b_i] = 0. Guaranteed by the storage scheme, but checked
        // against the actual lookup path.
        let mut antisymmetry = Check::pass();
        'anti: for i in 0..dim {
            for j in 0..dim {
                let ij = self.table.bracket_basis(i, j);
                let ji = self.table.bracket_basis(j, i);
                let neg: Vec<(usize, Rational)> = ji.iter().map(|(t, c)| (*t, -c)).collect();
                if ij != neg {
                    antisymmetry = Check::fail(vec![i, j], "[b_i,b_j] != -[b_j,b_i]");
                    break 'anti;
                }
            }
        }

        // Jacobi on every basis triple i < j < k.
        let mut jacobi = Check::pass();
        'jac: for i in 0..dim {
            for j in (i + 1)..dim {
                for k in (j + 1)..dim {
                    if !self.jacobi_holds(i, j, k) {
                        jacobi = Check::fail(vec![i, j, k], "Jacobi sum is nonzero");
                        break 'jac;
                    }
                }
            }
        }

        // Grading: [V_a, V_b] ⊆ V_{a+b}.
        let mut grading = Check::pass();
        'grad: for ((i, j), targets) in self.table.entries() {
            let expect = self.weights[*i] + self.weights[*j];
            for (t, _) in targets {
                if self.weights[*t] != expect {
                    grading = Check::fail(
                        vec![*i, *j, *t],
                        "bracket lands outside the expected weight layer",
                    );
                    break 'grad;
                }
            }
        }

        // Nilpotency via the lower central series.
        let (dims, nilpotent) = self.lower_central_series_full();
        let nilpotency = if nilpotent {
            Check::pass()
        } else {
            Check::fail(
                vec![*dims.last().expect("nonempty")],
                "lower central series stabilizes above zero",
            )
        };

        ValidationReport { antisymmetry, jacobi, grading, nilpotency, lcs_dims: dims }
    }

    fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let dim = self.dim();
        let mut acc = vec![Rational::zero(); dim];
        let mut add_nested = |a: usize, b: usize, c: usize| {
            // [[b_a, b_b], b_c]
            for (t, coef) in self.table.bracket_basis(a, b) {
                for (u, coef2) in self.table.bracket_basis(t, c) {
                    acc[u] += &coef * &coef2;
                }
            }
        };
        add_nested(i, j, k);
        add_nested(j, k, i);
        add_nested(k, i, j);
        acc.iter().all(|c| c.is_zero())
    }
}

/// Outcome of one validation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub passed: bool,
    /// Basis indices witnessing a failure.
    pub witness: Vec<usize>,
    pub detail: String,
}

impl Check {
    fn pass() -> Self {
        Check { passed: true, witness: Vec::new(), detail: String::new() }
    }
    fn fail(witness: Vec<usize>, detail: &str) -> Self {
        Check { passed: false, witness, detail: detail.to_owned() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub antisymmetry: Check,
    pub jacobi: Check,
    pub grading: Check,
    pub nilpotency: Check,
    /// Dimensions of the (nonzero) lower central series terms.
    pub lcs_dims: Vec<usize>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry.passed && self.jacobi.passed && self.grading.passed && self.nilpotency.passed
    }
}

/// Element of a [`GradedLieAlgebra`] with coefficients in a ring `R`
/// (rationals in ordinary use, polynomials in symbolic checks).
#[derive(Debug, Clone)]
pub struct AlgebraElement<R: Ring = Rational> {
    algebra: Arc<GradedLieAlgebra>,
    coeffs: Vec<R>,
}

impl<R: Ring> AlgebraElement<R> {
    pub fn algebra(&self) -> &Arc<GradedLieAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| R::add(a, b))
            .collect();
        Ok(AlgebraElement { algebra: Arc::clone(&self.algebra), coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().map(R::neg).collect(),
        }
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        AlgebraElement {
            algebra: Arc::clone(&self.algebra),
            coeffs: self.coeffs.iter().map(|x| R::scale(x, c)).collect(),
        }
    }

    /// Projection onto the weight-`w` layer.
    pub fn weight_component(&self, w: u32) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if self.algebra.weight_of(i) == w { c.clone() } else { R::zero() })
            .collect();
        AlgebraElement { algebra: Arc::clone(&self.algebra), coeffs }
    }

    /// Lie bracket; the bilinear antisymmetric extension of the table.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        let coeffs = self.algebra.table().bracket_coeffs(&self.coeffs, &other.coeffs);
        Ok(AlgebraElement { algebra: Arc::clone(&self.algebra), coeffs })
    }
}

impl<R: Ring> PartialEq for AlgebraElement<R> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other) && self.coeffs == other.coeffs
    }
}

/// Lie bracket of two elements of the same algebra.
pub fn bracket<R: Ring>(x: &AlgebraElement<R>, y: &AlgebraElement<R>) -> Result<AlgebraElement<R>> {
    x.bracket(y)
}

/// Scaling automorphism `s_t`: multiplies the weight-`i` layer by `t^i`.
/// Rejects `t = 0`, which is not an automorphism.
pub fn scale_element<R: Ring>(x: &AlgebraElement<R>, t: &Rational) -> Result<AlgebraElement<R>> {
    if t.is_zero() {
        return Err(Error::ZeroScale);
    }
    let alg = x.algebra();
    let coeffs = x
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| R::scale(c, &ring_pow(t, alg.weight_of(i))))
        .collect();
    alg.element(coeffs)
}

/// `s_t` with the scale factor drawn from the coefficient ring itself
/// (e.g. an indeterminate), for symbolic identities.
pub fn scale_element_in<R: Ring>(x: &AlgebraElement<R>, t: &R) -> Result<AlgebraElement<R>> {
    if t.is_zero() {
        return Err(Error::ZeroScale);
    }
    let alg = x.algebra();
    let coeffs = x
        .coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| R::mul(c, &ring_pow(t, alg.weight_of(i))))
        .collect();
    alg.element(coeffs)
}

/// Checks that `s_t` is an automorphism: `s_t [x, y] = [s_t x, s_t y]` on
/// every basis pair, plus `trials` pseudo-random rational pairs.
pub fn scale_is_automorphism_check(
    alg: &Arc<GradedLieAlgebra>,
    t: &Rational,
    trials: usize,
) -> Result<bool> {
    if t.is_zero() {
        return Err(Error::ZeroScale);
    }
    let dim = alg.dim();
    let check = |x: &AlgebraElement<Rational>, y: &AlgebraElement<Rational>| -> Result<bool> {
        let lhs = scale_element(&x.bracket(y)?, t)?;
        let rhs = scale_element(x, t)?.bracket(&scale_element(y, t)?)?;
        Ok(lhs == rhs)
    };
    for i in 0..dim {
        for j in (i + 1)..dim {
            if !check(&alg.basis_element(i), &alg.basis_element(j))? {
                return Ok(false);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xCA_8107);
    for _ in 0..trials {
        let x = random_element(alg, &mut rng);
        let y = random_element(alg, &mut rng);
        if !check(&x, &y)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Small random rational element, for property checks.
pub fn random_element(alg: &Arc<GradedLieAlgebra>, rng: &mut impl Rng) -> AlgebraElement<Rational> {
    let coeffs = (0..alg.dim())
        .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)))
        .collect();
    alg.element(coeffs).expect("length matches")
}

/// Lie subalgebra presented by a spanning set of parent elements, together
/// with the induced bracket table on that span basis. A subalgebra of a
/// graded algebra need not be graded, so no weights are carried.
#[derive(Debug, Clone)]
pub struct Subalgebra {
    parent: Arc<GradedLieAlgebra>,
    span: Vec<AlgebraElement<Rational>>,
    table: BracketTable,
}

impl Subalgebra {
    pub fn parent(&self) -> &Arc<GradedLieAlgebra> {
        &self.parent
    }

    pub fn span(&self) -> &[AlgebraElement<Rational>] {
        &self.span
    }

    pub fn dim(&self) -> usize {
        self.span.len()
    }

    pub fn table(&self) -> &BracketTable {
        &self.table
    }
}

/// Builds the subalgebra spanned by `vectors`, verifying linear independence
/// and closure under the bracket. On closure failure the error names the
/// witnessing pair.
pub fn subalgebra_from_span(
    alg: &Arc<GradedLieAlgebra>,
    vectors: &[AlgebraElement<Rational>],
) -> Result<Subalgebra> {
    let n = vectors.len();
    if n == 0 {
        return Err(Error::BadAlgebra("a subalgebra needs at least one vector".into()));
    }
    for v in vectors {
        if !Arc::ptr_eq(v.algebra(), alg) && **v.algebra() != **alg {
            return Err(Error::AlgebraMismatch);
        }
    }
    let rows: Vec<Vec<Rational>> = vectors.iter().map(|v| v.coeffs().to_vec()).collect();
    let rk = linalg::rank(&rows);
    if rk < n {
        return Err(Error::DependentVectors { rank: rk, count: n });
    }
    let cols: Vec<Vec<Rational>> = rows.clone();
    let mut entries: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let w = vectors[i].bracket(&vectors[j])?;
            if w.is_zero() {
                continue;
            }
            match linalg::solve_columns(&cols, w.coeffs()) {
                linalg::SolveOutcome::Solution(x) => {
                    let sparse: Vec<(usize, Rational)> =
                        x.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                    if !sparse.is_empty() {
                        entries.insert((i, j), sparse);
                    }
                }
                linalg::SolveOutcome::Separating(_) => {
                    return Err(Error::NotClosed {
                        left: i,
                        right: j,
                        bracket: element_to_string(&w),
                    });
                }
            }
        }
    }
    let table = BracketTable::new(n, entries)?;
    // The induced table inherits Jacobi from the parent; assert it anyway so
    // a bad solve can never produce an inconsistent subalgebra.
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut acc = vec![Rational::zero(); n];
                let mut add_nested = |a: usize, b: usize, c: usize| {
                    for (t, coef) in table.bracket_basis(a, b) {
                        for (u, coef2) in table.bracket_basis(t, c) {
                            acc[u] += &coef * &coef2;
                        }
                    }
                };
                add_nested(i, j, k);
                add_nested(j, k, i);
                add_nested(k, i, j);
                if acc.iter().any(|c| !c.is_zero()) {
                    return Err(Error::BadAlgebra(format!(
                        "induced structure violates Jacobi on ({i}, {j}, {k})"
                    )));
                }
            }
        }
    }
    Ok(Subalgebra { parent: Arc::clone(alg), span: vectors.to_vec(), table })
}

/// Renders an element as a combination of named basis vectors.
pub fn element_to_string(x: &AlgebraElement<Rational>) -> String {
    let names = x.algebra().names();
    let parts: Vec<String> = x
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| format!("{}*{}", crate::scalar::format_rational(c), names[i]))
        .collect();
    if parts.is_empty() {
        "0".to_owned()
    } else {
        parts.join(" + ")
    }
}
