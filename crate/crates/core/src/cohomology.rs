//! Chevalley–Eilenberg cochain complex over the rationals, with the weight
//! grading induced by the Lie algebra grading.
//!
//! Sign conventions: on basis covectors `dθ(X, Y) = -θ([X, Y])`, extended as
//! an antiderivation with the Koszul sign. The `d∘d = 0` and Jacobi tests
//! pin the convention. A cochain is a sparse combination of exterior
//! monomials indexed by strictly increasing basis-index tuples.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::algebra::{AlgebraElement, BracketTable, GradedLieAlgebra, Subalgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, SolveOutcome};
use crate::scalar::{binomial_count, Rational, Ring};

/// Default cap on exterior-basis enumeration, in basis cells.
pub const DEFAULT_BUDGET_CELLS: u128 = 1_000_000;

fn check_budget(dim: usize, degree: usize, budget: u128) -> Result<()> {
    let needed = binomial_count(dim as u64, degree as u64);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, cap: budget });
    }
    Ok(())
}

/// Sorts an index tuple, tracking the permutation sign. `None` on repeats.
fn canonicalize(mut indices: Vec<usize>) -> Option<(Vec<usize>, i32)> {
    let mut sign = 1;
    // Insertion sort; inversions flip the sign.
    for i in 1..indices.len() {
        let mut j = i;
        while j > 0 && indices[j - 1] > indices[j] {
            indices.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if indices.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some((indices, sign))
}

/// Homogeneous-degree element of Λ^n 𝔤*.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    dim: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, Rational>,
}

impl Cochain {
    pub fn zero(dim: usize, degree: usize) -> Self {
        Cochain { dim, degree, terms: BTreeMap::new() }
    }

    /// The dual basis covector `θ^i`.
    pub fn covector(dim: usize, i: usize) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![i], Rational::from_integer(1.into()));
        Cochain { dim, degree: 1, terms }
    }

    /// Builds a cochain from (possibly unsorted) index tuples.
    pub fn from_terms(
        dim: usize,
        degree: usize,
        raw: impl IntoIterator<Item = (Vec<usize>, Rational)>,
    ) -> Result<Self> {
        let mut out = Cochain::zero(dim, degree);
        for (indices, coeff) in raw {
            if indices.len() != degree {
                return Err(Error::BadAlgebra(format!(
                    "term {indices:?} has arity {} in a degree-{degree} cochain",
                    indices.len()
                )));
            }
            if indices.iter().any(|&i| i >= dim) {
                return Err(Error::BadAlgebra(format!(
                    "term {indices:?} references an index outside dimension {dim}"
                )));
            }
            out.add_term(indices, coeff);
        }
        Ok(out)
    }

    /// Wedge monomial `θ^{i_1} ∧ … ∧ θ^{i_n}` over named basis vectors.
    pub fn monomial_from_names(alg: &GradedLieAlgebra, names: &[&str]) -> Result<Self> {
        let mut indices = Vec::with_capacity(names.len());
        for n in names {
            indices.push(
                alg.index_of(n)
                    .ok_or_else(|| Error::BadAlgebra(format!("unknown basis name {n:?}")))?,
            );
        }
        Cochain::from_terms(
            alg.dim(),
            indices.len(),
            [(indices, Rational::from_integer(1.into()))],
        )
    }

    fn add_term(&mut self, indices: Vec<usize>, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let Some((sorted, sign)) = canonicalize(indices) else {
            return; // repeated factor
        };
        let signed = if sign < 0 { -coeff } else { coeff };
        match self.terms.entry(sorted) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(signed);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += signed;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, indices: &[usize]) -> Rational {
        match canonicalize(indices.to_vec()) {
            Some((sorted, sign)) => {
                let c = self.terms.get(&sorted).cloned().unwrap_or_else(Rational::zero);
                if sign < 0 {
                    -c
                } else {
                    c
                }
            }
            None => Rational::zero(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(Error::CochainMismatch(self.dim, other.dim));
        }
        if self.degree != other.degree {
            return Err(Error::BadAlgebra(format!(
                "cannot add cochains of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (i, c) in &other.terms {
            out.add_term(i.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Cochain::zero(self.dim, self.degree);
        }
        Cochain {
            dim: self.dim,
            degree: self.degree,
            terms: self.terms.iter().map(|(i, x)| (i.clone(), x * c)).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scaled(&Rational::from_integer((-1).into()))
    }

    /// Renders the cochain over the algebra's basis names.
    pub fn display_with(&self, alg: &GradedLieAlgebra) -> String {
        if self.is_zero() {
            return "0".to_owned();
        }
        self.terms
            .iter()
            .map(|(indices, c)| {
                let mono: Vec<String> =
                    indices.iter().map(|&i| format!("{}*", alg.names()[i])).collect();
                if mono.is_empty() {
                    crate::scalar::format_rational(c)
                } else {
                    format!("{} {}", crate::scalar::format_rational(c), mono.join("∧"))
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Graded-commutative exterior product.
pub fn wedge(z1: &Cochain, z2: &Cochain) -> Result<Cochain> {
    if z1.dim != z2.dim {
        return Err(Error::CochainMismatch(z1.dim, z2.dim));
    }
    let mut out = Cochain::zero(z1.dim, z1.degree + z2.degree);
    for (i1, c1) in &z1.terms {
        for (i2, c2) in &z2.terms {
            let mut indices = i1.clone();
            indices.extend_from_slice(i2);
            out.add_term(indices, c1 * c2);
        }
    }
    Ok(out)
}

/// Chevalley–Eilenberg differential: `dθ^t = -Σ_{i<j} c_{ij}^t θ^i ∧ θ^j`
/// on covectors, antiderivation extension in general.
pub fn differential(table: &BracketTable, z: &Cochain) -> Result<Cochain> {
    if z.dim != table.dim() {
        return Err(Error::CochainMismatch(z.dim, table.dim()));
    }
    let producers = table.producers();
    let mut out = Cochain::zero(z.dim, z.degree + 1);
    for (indices, c) in &z.terms {
        for (p, &target) in indices.iter().enumerate() {
            let Some(sources) = producers.get(&target) else {
                continue;
            };
            // d hits slot p with Koszul sign (-1)^p.
            let slot_sign = if p % 2 == 0 { 1 } else { -1 };
            for (i, j, coef) in sources {
                let mut new_indices = Vec::with_capacity(indices.len() + 1);
                new_indices.extend_from_slice(&indices[..p]);
                new_indices.push(*i);
                new_indices.push(*j);
                new_indices.extend_from_slice(&indices[p + 1..]);
                // minus from the covector differential, times the slot sign.
                let signed = c * coef * Rational::from_integer((-slot_sign).into());
                out.add_term(new_indices, signed);
            }
        }
    }
    Ok(out)
}

/// Weight of an exterior monomial: the sum of its factors' weights.
pub fn monomial_weight(alg: &GradedLieAlgebra, indices: &[usize]) -> u32 {
    indices.iter().map(|&i| alg.weight_of(i)).sum()
}

/// Splits a cochain into its weight-homogeneous components.
pub fn weight_decompose(alg: &GradedLieAlgebra, z: &Cochain) -> Result<BTreeMap<u32, Cochain>> {
    if z.dim != alg.dim() {
        return Err(Error::CochainMismatch(z.dim, alg.dim()));
    }
    let mut out: BTreeMap<u32, Cochain> = BTreeMap::new();
    for (indices, c) in &z.terms {
        let w = monomial_weight(alg, indices);
        out.entry(w)
            .or_insert_with(|| Cochain::zero(z.dim, z.degree))
            .add_term(indices.clone(), c.clone());
    }
    Ok(out)
}

/// The weight of a homogeneous cochain; errors when mixed.
pub fn cochain_weight(alg: &GradedLieAlgebra, z: &Cochain) -> Result<u32> {
    let parts = weight_decompose(alg, z)?;
    let weights: Vec<u32> = parts.keys().copied().collect();
    match weights.as_slice() {
        [w] => Ok(*w),
        _ => Err(Error::NotHomogeneous { weights }),
    }
}

/// Division-free determinant (Laplace expansion); fine for the small
/// matrices that cochain evaluation produces.
fn det_ring<R: Ring>(m: &[Vec<R>]) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = R::zero();
    for r in 0..n {
        if m[r][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<R>> = m
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != r)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let term = R::mul(&m[r][0], &det_ring(&minor));
        acc = if r % 2 == 0 { R::add(&acc, &term) } else { R::sub(&acc, &term) };
    }
    acc
}

/// Evaluates a degree-`n` cochain on `n` algebra elements (any scalar ring).
pub fn evaluate<R: Ring>(z: &Cochain, args: &[AlgebraElement<R>]) -> Result<R> {
    if args.len() != z.degree {
        return Err(Error::BadAlgebra(format!(
            "degree-{} cochain applied to {} arguments",
            z.degree,
            args.len()
        )));
    }
    for a in args {
        if a.algebra().dim() != z.dim {
            return Err(Error::CochainMismatch(z.dim, a.algebra().dim()));
        }
    }
    let mut acc = R::zero();
    for (indices, c) in &z.terms {
        let matrix: Vec<Vec<R>> = indices
            .iter()
            .map(|&row| args.iter().map(|a| a.coeffs()[row].clone()).collect())
            .collect();
        let d = det_ring(&matrix);
        acc = R::add(&acc, &R::scale(&d, c));
    }
    Ok(acc)
}

/// All strictly increasing index tuples of the given length, lex order.
pub fn exterior_basis(dim: usize, degree: usize, budget: u128) -> Result<Vec<Vec<usize>>> {
    check_budget(dim, degree, budget)?;
    if degree == 0 {
        return Ok(vec![Vec::new()]);
    }
    Ok((0..dim).combinations(degree).collect())
}

/// Betti numbers `dim H^0 … dim H^max_degree` by exact rank computation.
pub fn betti_numbers(
    alg: &GradedLieAlgebra,
    max_degree: usize,
    budget: u128,
) -> Result<Vec<usize>> {
    let dim = alg.dim();
    if max_degree > dim {
        return Err(Error::DegreeOutOfRange { degree: max_degree, dim });
    }
    let table = alg.table();
    // rank of d_n for each degree up to max_degree.
    let mut ranks = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        if n == dim {
            ranks.push(0);
            continue;
        }
        let basis_n = exterior_basis(dim, n, budget)?;
        let basis_n1 = exterior_basis(dim, n + 1, budget)?;
        let pos: BTreeMap<&Vec<usize>, usize> =
            basis_n1.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(basis_n.len());
        for b in &basis_n {
            let mono =
                Cochain::from_terms(dim, n, [(b.clone(), Rational::from_integer(1.into()))])?;
            let image = differential(table, &mono)?;
            let mut row = vec![Rational::zero(); basis_n1.len()];
            for (idx, c) in image.terms() {
                row[pos[idx]] = c.clone();
            }
            rows.push(row);
        }
        ranks.push(linalg::rank(&rows));
    }
    let mut betti = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let cells = binomial_count(dim as u64, n as u64) as usize;
        let rank_dn = ranks[n];
        let rank_prev = if n == 0 { 0 } else { ranks[n - 1] };
        betti.push(cells - rank_dn - rank_prev);
    }
    Ok(betti)
}

/// Weight-homogeneous representatives of a basis of `H^degree`, as
/// (weight, cocycle) pairs. The differential preserves weight, so the
/// computation runs block by block.
pub fn cohomology_representatives(
    alg: &GradedLieAlgebra,
    degree: usize,
    budget: u128,
) -> Result<Vec<(u32, Cochain)>> {
    let dim = alg.dim();
    if degree > dim {
        return Err(Error::DegreeOutOfRange { degree, dim });
    }
    let table = alg.table();
    let basis_n = exterior_basis(dim, degree, budget)?;
    let basis_up =
        if degree < dim { exterior_basis(dim, degree + 1, budget)? } else { Vec::new() };
    let basis_down =
        if degree > 0 { exterior_basis(dim, degree - 1, budget)? } else { Vec::new() };

    // Group the degree-n basis by weight.
    let mut blocks: BTreeMap<u32, Vec<Vec<usize>>> = BTreeMap::new();
    for b in &basis_n {
        blocks.entry(monomial_weight(alg, b)).or_default().push(b.clone());
    }
    let up_pos: BTreeMap<&Vec<usize>, usize> =
        basis_up.iter().enumerate().map(|(i, b)| (b, i)).collect();

    let mut out = Vec::new();
    for (w, block) in blocks {
        let block_pos: BTreeMap<&Vec<usize>, usize> =
            block.iter().enumerate().map(|(i, b)| (b, i)).collect();
        // Kernel of d_n on this block.
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(block.len());
        for b in &block {
            let mono =
                Cochain::from_terms(dim, degree, [(b.clone(), Rational::from_integer(1.into()))])?;
            let image = differential(table, &mono)?;
            let mut col = vec![Rational::zero(); basis_up.len()];
            for (idx, c) in image.terms() {
                col[up_pos[idx]] = c.clone();
            }
            cols.push(col);
        }
        let kernel = linalg::kernel_of_columns(&cols);
        if kernel.is_empty() {
            continue;
        }
        // Image of d_{n-1} landing in this block (weight is preserved).
        let mut image_rows: Vec<Vec<Rational>> = Vec::new();
        for b in &basis_down {
            if monomial_weight(alg, b) != w {
                continue;
            }
            let mono = Cochain::from_terms(
                dim,
                degree - 1,
                [(b.clone(), Rational::from_integer(1.into()))],
            )?;
            let image = differential(table, &mono)?;
            if image.is_zero() {
                continue;
            }
            let mut row = vec![Rational::zero(); block.len()];
            for (idx, c) in image.terms() {
                row[block_pos[idx]] = c.clone();
            }
            image_rows.push(row);
        }
        // Representatives: kernel vectors extending the image row space.
        let mut span = linalg::row_space_basis(&image_rows);
        let mut current_rank = span.len();
        for kv in kernel {
            let mut candidate = span.clone();
            candidate.push(kv.clone());
            let r = linalg::rank(&candidate);
            if r > current_rank {
                current_rank = r;
                candidate = linalg::row_space_basis(&candidate);
                span = candidate;
                let z = Cochain::from_terms(
                    dim,
                    degree,
                    block.iter().cloned().zip(kv).filter(|(_, c)| !c.is_zero()),
                )?;
                out.push((w, z));
            }
        }
    }
    Ok(out)
}

/// Pullback of a cochain along the inclusion of a subalgebra, expressed in
/// the span basis.
pub fn restrict(z: &Cochain, sub: &Subalgebra, budget: u128) -> Result<Cochain> {
    if z.dim != sub.parent().dim() {
        return Err(Error::CochainMismatch(z.dim, sub.parent().dim()));
    }
    let n = z.degree;
    if n > sub.dim() {
        return Err(Error::DegreeOutOfRange { degree: n, dim: sub.dim() });
    }
    let tuples = exterior_basis(sub.dim(), n, budget)?;
    let mut out = Cochain::zero(sub.dim(), n);
    for t in tuples {
        let args: Vec<AlgebraElement<Rational>> =
            t.iter().map(|&j| sub.span()[j].clone()).collect();
        let v = evaluate(z, &args)?;
        out.add_term(t, v);
    }
    Ok(out)
}

/// Evidence that a cocycle restricts nontrivially to the cohomology of a
/// subalgebra: a functional on Λ^n 𝔞* that annihilates the image of d yet
/// pairs nontrivially with the restriction. Self-verifying by one
/// matrix-vector check.
#[derive(Debug, Clone, PartialEq)]
pub struct NonvanishingEvidence {
    pub restricted: Cochain,
    /// Sparse functional over the degree-n exterior basis of the subalgebra.
    pub functional: Vec<(Vec<usize>, Rational)>,
}

/// Outcome of the cohomological nonvanishing test.
#[derive(Debug, Clone)]
pub enum NonvanishingOutcome {
    /// The restriction survives in cohomology; evidence attached.
    Nonzero(NonvanishingEvidence),
    /// It bounds: a primitive with `d(preimage) = restriction`.
    Vanishes { preimage: Cochain },
}

impl NonvanishingOutcome {
    pub fn is_nonzero(&self) -> bool {
        matches!(self, NonvanishingOutcome::Nonzero(_))
    }
}

/// Does `z` stay nonzero under `H^n(𝔤) → H^n(𝔞)`? Requires `degree(z) =
/// dim(𝔞)` and `d z = 0` in the ambient algebra (checked; the error names
/// d(z)).
pub fn nonzero_in_cohomology(
    z: &Cochain,
    sub: &Subalgebra,
    budget: u128,
) -> Result<NonvanishingOutcome> {
    let parent = sub.parent();
    if z.degree != sub.dim() {
        return Err(Error::HypothesisFailed {
            hypothesis: "degree(z) = dim(a)".into(),
            witness: format!("degree {} vs dim {}", z.degree, sub.dim()),
        });
    }
    let dz = differential(parent.table(), z)?;
    if !dz.is_zero() {
        return Err(Error::NotCocycle { dz: dz.display_with(parent) });
    }
    let n = sub.dim();
    let restricted = restrict(z, sub, budget)?;

    // Columns of d: Λ^{n-1} 𝔞* -> Λ^n 𝔞*.
    let basis_n = exterior_basis(n, n, budget)?;
    let basis_prev = exterior_basis(n, n - 1, budget)?;
    let pos: BTreeMap<&Vec<usize>, usize> =
        basis_n.iter().enumerate().map(|(i, b)| (b, i)).collect();
    let mut cols = Vec::with_capacity(basis_prev.len());
    for b in &basis_prev {
        let mono =
            Cochain::from_terms(n, n - 1, [(b.clone(), Rational::from_integer(1.into()))])?;
        let image = differential(sub.table(), &mono)?;
        let mut col = vec![Rational::zero(); basis_n.len()];
        for (idx, c) in image.terms() {
            col[pos[idx]] = c.clone();
        }
        cols.push(col);
    }
    let mut target = vec![Rational::zero(); basis_n.len()];
    for (idx, c) in restricted.terms() {
        target[pos[idx]] = c.clone();
    }
    match linalg::solve_columns(&cols, &target) {
        SolveOutcome::Solution(x) => {
            let preimage = Cochain::from_terms(
                n,
                n - 1,
                basis_prev.into_iter().zip(x).filter(|(_, c)| !c.is_zero()),
            )?;
            Ok(NonvanishingOutcome::Vanishes { preimage })
        }
        SolveOutcome::Separating(lam) => {
            let functional: Vec<(Vec<usize>, Rational)> = basis_n
                .iter()
                .cloned()
                .zip(lam)
                .filter(|(_, c)| !c.is_zero())
                .collect();
            Ok(NonvanishingOutcome::Nonzero(NonvanishingEvidence { restricted, functional }))
        }
    }
}

/// Re-checks nonvanishing evidence from scratch: the functional must kill
/// every exact cochain and pair nontrivially with the recomputed
/// restriction.
pub fn verify_nonvanishing(
    z: &Cochain,
    sub: &Subalgebra,
    ev: &NonvanishingEvidence,
    budget: u128,
) -> Result<()> {
    let n = sub.dim();
    let restricted = restrict(z, sub, budget)?;
    if restricted != ev.restricted {
        return Err(Error::HypothesisFailed {
            hypothesis: "evidence restriction matches".into(),
            witness: "recomputed restriction differs".into(),
        });
    }
    let pair = |c: &Cochain| -> Rational {
        ev.functional.iter().map(|(idx, lam)| lam * c.coeff(idx)).sum()
    };
    let basis_prev = exterior_basis(n, n - 1, budget)?;
    for b in &basis_prev {
        let mono =
            Cochain::from_terms(n, n - 1, [(b.clone(), Rational::from_integer(1.into()))])?;
        let image = differential(sub.table(), &mono)?;
        if !pair(&image).is_zero() {
            return Err(Error::HypothesisFailed {
                hypothesis: "functional annihilates exact cochains".into(),
                witness: format!("fails on d of monomial {b:?}"),
            });
        }
    }
    if pair(&restricted).is_zero() {
        return Err(Error::HypothesisFailed {
            hypothesis: "functional pairs nontrivially with the restriction".into(),
            witness: "pairing is zero".into(),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{subalgebra_from_span, GradedLieAlgebra};
    use crate::jet::make_jet_algebra;
    use crate::poly::{Poly, QPoly};
    use crate::scalar::{int, ring_pow};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const B: u128 = DEFAULT_BUDGET_CELLS;

    #[test]
    fn wedge_basics() {
        let h = make_jet_algebra(1, 1).unwrap();
        let e1 = Cochain::covector(h.dim(), 0);
        assert!(wedge(&e1, &e1).unwrap().is_zero());

        let y1 = Cochain::covector(h.dim(), 1);
        let w = wedge(&e1, &y1).unwrap();
        let anti = wedge(&y1, &e1).unwrap();
        assert_eq!(w, anti.neg());
        assert_eq!(monomial_weight(&h, &[0, 1]), 2);
    }

    #[test]
    fn wedge_is_graded_commutative() {
        // z1 ∧ z2 = (-1)^{deg deg} z2 ∧ z1 across mixed degrees.
        let j = make_jet_algebra(1, 2).unwrap();
        let dim = j.dim();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for (d1, d2) in [(1usize, 1usize), (1, 2), (2, 2), (2, 3)] {
            let mut random_cochain = |degree: usize| {
                let basis = exterior_basis(dim, degree, B).unwrap();
                let terms: Vec<(Vec<usize>, Rational)> = basis
                    .into_iter()
                    .map(|b| (b, int(rng.gen_range(-3..=3))))
                    .collect();
                Cochain::from_terms(dim, degree, terms).unwrap()
            };
            let z1 = random_cochain(d1);
            let z2 = random_cochain(d2);
            let lhs = wedge(&z1, &z2).unwrap();
            let rhs = wedge(&z2, &z1).unwrap();
            if (d1 * d2) % 2 == 0 {
                assert_eq!(lhs, rhs, "degrees ({d1},{d2})");
            } else {
                assert_eq!(lhs, rhs.neg(), "degrees ({d1},{d2})");
            }
        }
    }

    #[test]
    fn weights_of_the_standard_cocycles() {
        // z_i weighs i; z_{k+1} weighs k+m+1.
        for (m, k) in [(1usize, 2usize), (2, 2), (3, 2), (2, 3)] {
            let j = make_jet_algebra(m, k).unwrap();
            for i in 1..=k {
                let names: Vec<String> = (1..=i).map(|t| format!("e{t}")).collect();
                let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
                let z = Cochain::monomial_from_names(&j, &refs).unwrap();
                assert_eq!(cochain_weight(&j, &z).unwrap(), i as u32);
            }
            let mut names: Vec<String> = (1..=k).map(|t| format!("e{t}")).collect();
            names.push(crate::jet::multi_index_name(&vec![0; k]));
            let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let z = Cochain::monomial_from_names(&j, &refs).unwrap();
            assert_eq!(cochain_weight(&j, &z).unwrap(), (k + m + 1) as u32);
        }
    }

    #[test]
    fn differential_on_covectors() {
        let j = make_jet_algebra(2, 2).unwrap();
        // No bracket produces any e_i, so d(e_i*) = 0.
        for i in 0..2 {
            let d = differential(j.table(), &Cochain::covector(j.dim(), i)).unwrap();
            assert!(d.is_zero(), "d(e{}*) != 0", i + 1);
        }
        // d(y(0,0)*) = -(e1*∧y(1,0)* + e2*∧y(0,1)*).
        let y00 = j.index_of("y(0,0)").unwrap();
        let d = differential(j.table(), &Cochain::covector(j.dim(), y00)).unwrap();
        let y10 = j.index_of("y(1,0)").unwrap();
        let y01 = j.index_of("y(0,1)").unwrap();
        assert_eq!(d.coeff(&[0, y10]), int(-1));
        assert_eq!(d.coeff(&[1, y01]), int(-1));
        assert_eq!(d.terms().count(), 2);
    }

    #[test]
    fn d_squared_vanishes_everywhere_small() {
        for (m, k) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
            let j = make_jet_algebra(m, k).unwrap();
            let dim = j.dim();
            for degree in 0..=dim {
                for b in exterior_basis(dim, degree, B).unwrap() {
                    let mono = Cochain::from_terms(dim, degree, [(b, int(1))]).unwrap();
                    let dd =
                        differential(j.table(), &differential(j.table(), &mono).unwrap()).unwrap();
                    assert!(dd.is_zero());
                }
            }
        }
    }

    #[test]
    fn d_preserves_weight() {
        let j = make_jet_algebra(2, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(57);
        let dim = j.dim();
        for _ in 0..100 {
            let degree = rng.gen_range(1..=3usize);
            let basis = exterior_basis(dim, degree, B).unwrap();
            // Random homogeneous cochain: pick a weight class from a random
            // monomial, fill it with random coefficients.
            let seed = basis[rng.gen_range(0..basis.len())].clone();
            let w = monomial_weight(&j, &seed);
            let terms: Vec<(Vec<usize>, Rational)> = basis
                .iter()
                .filter(|b| monomial_weight(&j, b) == w)
                .map(|b| (b.clone(), int(rng.gen_range(-5..=5))))
                .collect();
            let z = Cochain::from_terms(dim, degree, terms).unwrap();
            if z.is_zero() {
                continue;
            }
            let dz = differential(j.table(), &z).unwrap();
            if dz.is_zero() {
                continue;
            }
            assert_eq!(cochain_weight(&j, &dz).unwrap(), w);
        }
    }

    #[test]
    fn weight_decompose_splits_mixed_cochains() {
        let h = make_jet_algebra(1, 1).unwrap();
        // e1*∧y(1)* has weight 2, e1*∧y(0)* has weight 3.
        let z = Cochain::from_terms(
            h.dim(),
            2,
            [(vec![0, 1], int(1)), (vec![0, 2], int(5))],
        )
        .unwrap();
        let parts = weight_decompose(&h, &z).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&2].coeff(&[0, 1]), int(1));
        assert_eq!(parts[&3].coeff(&[0, 2]), int(5));
        assert!(matches!(cochain_weight(&h, &z), Err(Error::NotHomogeneous { .. })));
    }

    #[test]
    fn top_weight_is_homogeneous_dimension() {
        let j = make_jet_algebra(2, 2).unwrap();
        let dim = j.dim();
        let top: Vec<usize> = (0..dim).collect();
        assert_eq!(monomial_weight(&j, &top) as u64, j.homogeneous_dimension());
        // The top exterior power is one-dimensional, generated by the
        // volume form, and no other top-degree monomial exists.
        assert_eq!(exterior_basis(dim, dim, B).unwrap().len(), 1);
    }

    #[test]
    fn heisenberg_betti_numbers() {
        let h = make_jet_algebra(1, 1).unwrap();
        assert_eq!(betti_numbers(&h, 3, B).unwrap(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn abelian_betti_numbers_are_binomials() {
        let a = GradedLieAlgebra::abelian(4);
        assert_eq!(betti_numbers(&a, 4, B).unwrap(), vec![1, 4, 6, 4, 1]);
    }

    #[test]
    fn euler_characteristic_vanishes() {
        for (m, k) in [(1usize, 1usize), (2, 1), (1, 2)] {
            let j = make_jet_algebra(m, k).unwrap();
            let b = betti_numbers(&j, j.dim(), B).unwrap();
            let chi: i64 = b
                .iter()
                .enumerate()
                .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
                .sum();
            assert_eq!(chi, 0, "Euler characteristic of j_{{{m},{k}}}");
        }
    }

    #[test]
    fn betti_low_degrees_match_carnot_structure() {
        for (m, k) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
            let j = make_jet_algebra(m, k).unwrap();
            let b = betti_numbers(&j, 1, B).unwrap();
            assert_eq!(b[0], 1);
            let v1 = j.graded_dims()[&1];
            assert_eq!(b[1], v1, "b_1 = dim V_1 for j_{{{m},{k}}}");
        }
    }

    #[test]
    fn representatives_are_cocycles_spanning_h() {
        let h = make_jet_algebra(1, 1).unwrap();
        for degree in 0..=3usize {
            let reps = cohomology_representatives(&h, degree, B).unwrap();
            let betti = betti_numbers(&h, degree, B).unwrap()[degree];
            assert_eq!(reps.len(), betti, "degree {degree}");
            for (w, z) in reps {
                assert!(differential(h.table(), &z).unwrap().is_zero());
                assert_eq!(cochain_weight(&h, &z).unwrap(), w);
            }
        }
    }

    #[test]
    fn budget_guard_trips() {
        let j = make_jet_algebra(2, 2).unwrap();
        assert!(matches!(betti_numbers(&j, 4, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn restriction_examples() {
        let j = make_jet_algebra(2, 2).unwrap();
        // z_2 restricted to a_2 = <e1, e2> is the volume form.
        let z2 = Cochain::monomial_from_names(&j, &["e1", "e2"]).unwrap();
        let a2 = subalgebra_from_span(&j, &[j.basis_element(0), j.basis_element(1)]).unwrap();
        let r = restrict(&z2, &a2, B).unwrap();
        assert_eq!(r.coeff(&[0, 1]), int(1));
        assert_eq!(r.terms().count(), 1);

        // z_{k+1} restricted to a_{k+1} is that subalgebra's volume form.
        let z3 = Cochain::monomial_from_names(&j, &["e1", "e2", "y(0,0)"]).unwrap();
        let y00 = j.element_from_names(&[("y(0,0)", int(1))]).unwrap();
        let a3 = subalgebra_from_span(&j, &[j.basis_element(0), j.basis_element(1), y00])
            .unwrap();
        let r = restrict(&z3, &a3, B).unwrap();
        assert_eq!(r.coeff(&[0, 1, 2]), int(1));
        assert_eq!(r.terms().count(), 1);

        // z_2 restricted to a fiber plane is zero.
        let y10 = j.element_from_names(&[("y(1,0)", int(1))]).unwrap();
        let y00 = j.element_from_names(&[("y(0,0)", int(1))]).unwrap();
        let fiber = subalgebra_from_span(&j, &[y10, y00]).unwrap();
        assert!(restrict(&z2, &fiber, B).unwrap().is_zero());
    }

    #[test]
    fn pairing_scales_by_weight_symbolically() {
        // z(s_t v_1, …, s_t v_n) = t^w z(v) with t an indeterminate.
        let j = make_jet_algebra(1, 2).unwrap();
        let dim = j.dim();
        let t: QPoly = Poly::var(0);
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for degree in 1..=3usize {
            for b in exterior_basis(dim, degree, B).unwrap().into_iter().take(6) {
                let w = monomial_weight(&j, &b);
                let z = Cochain::from_terms(dim, degree, [(b, int(1))]).unwrap();
                let args: Vec<_> = (0..degree)
                    .map(|_| {
                        let coeffs: Vec<QPoly> = (0..dim)
                            .map(|_| Poly::constant(int(rng.gen_range(-3..=3))))
                            .collect();
                        j.element(coeffs).unwrap()
                    })
                    .collect();
                let scaled: Vec<_> = args
                    .iter()
                    .map(|a| crate::algebra::scale_element_in(a, &t).unwrap())
                    .collect();
                let lhs = evaluate(&z, &scaled).unwrap();
                let rhs = evaluate(&z, &args).unwrap().mul(&ring_pow(&t, w));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn nonvanishing_for_standard_pairs() {
        let j = make_jet_algebra(2, 2).unwrap();
        // (z_2, a_2)
        let z2 = Cochain::monomial_from_names(&j, &["e1", "e2"]).unwrap();
        let a2 = subalgebra_from_span(&j, &[j.basis_element(0), j.basis_element(1)]).unwrap();
        let out = nonzero_in_cohomology(&z2, &a2, B).unwrap();
        match &out {
            NonvanishingOutcome::Nonzero(ev) => {
                verify_nonvanishing(&z2, &a2, ev, B).unwrap();
            }
            NonvanishingOutcome::Vanishes { .. } => panic!("z_2 must survive restriction"),
        }

        // (z_3, a_3) with w* the dual of y(0,0).
        let z3 = Cochain::monomial_from_names(&j, &["e1", "e2", "y(0,0)"]).unwrap();
        let y00 = j.element_from_names(&[("y(0,0)", int(1))]).unwrap();
        let a3 =
            subalgebra_from_span(&j, &[j.basis_element(0), j.basis_element(1), y00]).unwrap();
        let out = nonzero_in_cohomology(&z3, &a3, B).unwrap();
        assert!(out.is_nonzero());
    }

    #[test]
    fn non_cocycle_is_rejected() {
        let j = make_jet_algebra(1, 1).unwrap();
        // y(0)* is not a cocycle: d hits e1*∧y(1)*.
        let y0 = Cochain::covector(j.dim(), j.index_of("y(0)").unwrap());
        let e1 = j.basis_element(0);
        let a1 = subalgebra_from_span(&j, &[e1]).unwrap();
        match nonzero_in_cohomology(&y0, &a1, B) {
            Err(Error::NotCocycle { dz }) => assert!(dz.contains("e1")),
            other => panic!("expected cocycle precondition failure, got {other:?}"),
        }
    }

    #[test]
    fn vanishing_detected_with_preimage() {
        // In j_{1,1}, z = e1*∧y(1)* is a cocycle whose restriction to the
        // abelian fiber plane <y(1), y(0)> is zero; the outcome is
        // "vanishes" with a primitive for the zero restriction.
        let h = make_jet_algebra(1, 1).unwrap();
        let z = Cochain::monomial_from_names(&h, &["e1", "y(1)"]).unwrap();
        let y1 = h.element_from_names(&[("y(1)", int(1))]).unwrap();
        let y0 = h.element_from_names(&[("y(0)", int(1))]).unwrap();
        let fiber = subalgebra_from_span(&h, &[y1, y0]).unwrap();
        match nonzero_in_cohomology(&z, &fiber, B).unwrap() {
            NonvanishingOutcome::Vanishes { preimage } => {
                let d = differential(fiber.table(), &preimage).unwrap();
                let r = restrict(&z, &fiber, B).unwrap();
                assert_eq!(d, r);
            }
            NonvanishingOutcome::Nonzero(_) => panic!("restriction is zero here"),
        }
    }
}
