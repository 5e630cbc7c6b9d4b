//! Sparse multivariate polynomials over an arbitrary coefficient ring.
//!
//! Exponent vectors are kept in a canonical form with no trailing zeros, so
//! a polynomial never needs to know how many variables exist; this lets
//! `Poly<Rational>` itself serve as a coefficient ring (used throughout the
//! symbolic checks, e.g. group coordinates as indeterminates).

use std::collections::BTreeMap;

use crate::scalar::{ring_pow, Rational, Ring};

/// Exponent vector in canonical form (no trailing zeros).
pub type Exponents = Vec<u32>;

fn canonical(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

#[derive(Clone, PartialEq)]
pub struct Poly<R: Ring> {
    terms: BTreeMap<Exponents, R>,
}

impl<R: Ring> Poly<R> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Poly::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { terms }
    }

    /// The variable `x_i`.
    pub fn var(i: usize) -> Self {
        let mut e = vec![0; i + 1];
        e[i] = 1;
        Poly::monomial(e, R::one())
    }

    pub fn monomial(exponents: Exponents, coeff: R) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(canonical(exponents), coeff);
        }
        Poly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &R)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Number of variables actually referenced.
    pub fn nvars(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// Coefficient of the given monomial (zero if absent).
    pub fn coeff(&self, exponents: &[u32]) -> R {
        let key = canonical(exponents.to_vec());
        self.terms.get(&key).cloned().unwrap_or_else(R::zero)
    }

    pub fn constant_term(&self) -> R {
        self.coeff(&[])
    }

    fn add_term(&mut self, e: Exponents, c: R) {
        if c.is_zero() {
            return;
        }
        let e = canonical(e);
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = R::add(o.get(), &c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), R::neg(c))).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let n = e1.len().max(e2.len());
                let mut e = vec![0u32; n];
                for (i, x) in e.iter_mut().enumerate() {
                    *x = e1.get(i).copied().unwrap_or(0) + e2.get(i).copied().unwrap_or(0);
                }
                out.add_term(e, R::mul(c1, c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if num_traits::Zero::is_zero(c) {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), R::scale(x, c))).collect(),
        }
    }

    pub fn scale_ring(&self, c: &R) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut out = Poly::zero();
        for (e, x) in &self.terms {
            out.add_term(e.clone(), R::mul(x, c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        ring_pow(self, e)
    }

    /// Partial derivative with respect to `x_i`.
    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let d = e.get(i).copied().unwrap_or(0);
            if d == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            out.add_term(e2, R::scale(c, &crate::scalar::int(d as i64)));
        }
        out
    }

    /// Evaluates at a point; `args` must cover every referenced variable.
    pub fn eval(&self, args: &[R]) -> R {
        let mut acc = R::zero();
        for (e, c) in &self.terms {
            assert!(e.len() <= args.len(), "eval: missing arguments");
            let mut t = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    t = R::mul(&t, &ring_pow(&args[i], exp));
                }
            }
            acc = R::add(&acc, &t);
        }
        acc
    }

    /// Substitutes polynomials for the given variables, leaving others alone.
    pub fn substitute(&self, assign: &BTreeMap<usize, Poly<R>>) -> Self {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp == 0 {
                    continue;
                }
                let factor = match assign.get(&i) {
                    Some(p) => p.pow(exp),
                    None => Poly::monomial(
                        {
                            let mut v = vec![0; i + 1];
                            v[i] = exp;
                            v
                        },
                        R::one(),
                    ),
                };
                t = t.mul(&factor);
            }
            out = out.add(&t);
        }
        out
    }

    /// Renders with a caller-supplied variable namer.
    pub fn display_with(&self, name: &dyn Fn(usize) -> String) -> String
    where
        R: std::fmt::Display,
    {
        if self.is_zero() {
            return "0".to_owned();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { name(i) } else { format!("{}^{}", name(i), x) })
                .collect();
            if vars.is_empty() {
                parts.push(format!("{c}"));
            } else {
                parts.push(format!("{}*{}", c, vars.join("*")));
            }
        }
        parts.join(" + ")
    }
}

impl<R: Ring> std::fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly{:?}", self.terms)
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly::zero()
    }
    fn one() -> Self {
        Poly::one()
    }
    fn is_zero(&self) -> bool {
        self.is_zero()
    }
    fn neg(x: &Self) -> Self {
        x.neg()
    }
    fn add(x: &Self, y: &Self) -> Self {
        x.add(y)
    }
    fn sub(x: &Self, y: &Self) -> Self {
        x.sub(y)
    }
    fn mul(x: &Self, y: &Self) -> Self {
        x.mul(y)
    }
    fn scale(x: &Self, c: &Rational) -> Self {
        x.scale(c)
    }
    fn from_rational(c: Rational) -> Self {
        Poly::constant(R::from_rational(c))
    }
}

/// Rational-coefficient polynomial, the workhorse for symbolic checks.
pub type QPoly = Poly<Rational>;
