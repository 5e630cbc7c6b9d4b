//! Filling-function exponent certificates.
//!
//! Upper bounds come from horizontality ledgers: a table of per-skeleton
//! `(a_i, b_i)` volume-scaling exponents for equivariant maps on the
//! i-skeleta of an adapted triangulation. The bound in dimension `j` is
//! `b_j / a_{j-1}`; euclidean `n/(n-1)` is the horizontal special case, and
//! a class-`c` group always admits the generic ledger obtained by extending
//! a horizontal 1-skeleton, giving `(c(n-1)+1)/(n-1)`.
//!
//! Lower bounds pair a weight-`i` cocycle with a subalgebra on which it
//! stays cohomologically nonzero; scaling a ball in that subgroup then
//! forces `FV_n ≽ V^{i/k'}` against the growth exponent `k'` of the
//! `(n-1)`-skeleton map. Certificates separate machine-verified algebraic
//! hypotheses from cited geometric premises, and re-verify from evidence
//! alone.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;

use crate::algebra::{subalgebra_from_span, GradedLieAlgebra, Subalgebra};
use crate::cohomology::{
    cochain_weight, differential, nonzero_in_cohomology, verify_nonvanishing, Cochain,
    NonvanishingEvidence, NonvanishingOutcome,
};
use crate::error::{Error, Result};
use crate::jet::{make_jet_algebra, multi_index_name};
use crate::scalar::{int, Rational};

/// Where a ledger entry's horizontality claim comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    /// Machine-checked in this run (e.g. a plane-exponent computation).
    Verified { detail: String },
    /// A geometric premise cited, not constructed.
    Cited { premise: String },
}

impl Provenance {
    pub fn is_cited(&self) -> bool {
        matches!(self, Provenance::Cited { .. })
    }
}

/// One row of a horizontality ledger: maps on the `dim`-skeleton scale with
/// shrink exponent `a` and growth exponent `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LedgerEntry {
    pub dim: usize,
    pub a: Rational,
    pub b: Rational,
    pub provenance: Provenance,
}

impl LedgerEntry {
    pub fn new(dim: usize, a: Rational, b: Rational, provenance: Provenance) -> Result<Self> {
        if a > b {
            return Err(Error::BadLedgerEntry {
                dim,
                reason: format!("requires a <= b, got a={a}, b={b}"),
            });
        }
        if a <= Rational::zero() {
            return Err(Error::BadLedgerEntry { dim, reason: "shrink exponent must be positive".into() });
        }
        Ok(LedgerEntry { dim, a, b, provenance })
    }
}

/// Per-skeleton-dimension table of scaling exponents.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HorizontalityLedger {
    entries: BTreeMap<usize, LedgerEntry>,
}

impl HorizontalityLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, entry: LedgerEntry) {
        self.entries.insert(entry.dim, entry);
    }

    pub fn get(&self, dim: usize) -> Option<&LedgerEntry> {
        self.entries.get(&dim)
    }

    pub fn entries(&self) -> impl Iterator<Item = &LedgerEntry> {
        self.entries.values()
    }
}

/// Euclidean upper bound `FV_n ≼ V^{n/(n-1)}`, valid when the group has
/// horizontal skeleta through dimension `k >= n`.
pub fn euclidean_upper(n: usize, horizontal_skeleton_dim: usize) -> Result<Rational> {
    if n < 2 {
        return Err(Error::NotApplicable(format!("filling dimension must be >= 2, got {n}")));
    }
    if n > horizontal_skeleton_dim {
        return Err(Error::NotApplicable(format!(
            "euclidean bound needs horizontal {n}-skeleta, available up to {horizontal_skeleton_dim}"
        )));
    }
    Ok(Rational::new((n as i64).into(), (n as i64 - 1).into()))
}

/// Extends an `(a, b)` skeleton map one dimension up by coning with
/// dilations: the extension is `(a+1, b+c)`-horizontal on the next skeleton
/// of a class-`c` group.
pub fn extend_ledger(entry: &LedgerEntry, class: usize) -> Result<LedgerEntry> {
    if class == 0 {
        return Err(Error::BadLedgerEntry { dim: entry.dim, reason: "class must be >= 1".into() });
    }
    LedgerEntry::new(
        entry.dim + 1,
        &entry.a + int(1),
        &entry.b + int(class as i64),
        Provenance::Cited {
            premise: format!(
                "skeleton extension by scaling cones from dimension {} (class {})",
                entry.dim, class
            ),
        },
    )
}

/// Upper bound `FV_j ≼ V^{b_j / a_{j-1}}` read off a ledger.
pub fn upper_from_ledger(ledger: &HorizontalityLedger, j: usize) -> Result<Rational> {
    let top = ledger.get(j).ok_or(Error::MissingLedgerEntry { dim: j })?;
    if j == 0 {
        return Err(Error::NotApplicable("filling dimension must be >= 1".into()));
    }
    let below = ledger.get(j - 1).ok_or(Error::MissingLedgerEntry { dim: j - 1 })?;
    Ok(&top.b / &below.a)
}

/// Generic bound for class-`c` groups: `FV_n ≼ V^{(c(n-1)+1)/(n-1)}`.
/// Preconditions: `c >= 1`, `n >= 2`.
pub fn generic_upper(class: usize, n: usize) -> Rational {
    assert!(class >= 1 && n >= 2, "generic_upper requires class >= 1 and n >= 2");
    Rational::new(
        ((class as i64) * (n as i64 - 1) + 1).into(),
        (n as i64 - 1).into(),
    )
}

/// The ledger every class-`c` group admits: a horizontal 1-skeleton
/// extended one dimension at a time.
pub fn generic_ledger(class: usize, max_dim: usize) -> Result<HorizontalityLedger> {
    let mut ledger = HorizontalityLedger::new();
    let mut entry = LedgerEntry::new(
        1,
        int(1),
        int(1),
        Provenance::Cited { premise: "horizontal 1-skeleton (nilpotent groups always admit one)".into() },
    )?;
    ledger.insert(entry.clone());
    for _ in 1..max_dim {
        entry = extend_ledger(&entry, class)?;
        ledger.insert(entry.clone());
    }
    Ok(ledger)
}

/// Fully assembled lower bound `FV_n ≽ V^{weight / k'}`.
#[derive(Debug, Clone)]
pub struct LowerBound {
    pub exponent: Rational,
    /// Weight of the cocycle in the cochain grading.
    pub weight: u32,
    pub cocycle: Cochain,
    pub subalgebra: Subalgebra,
    pub nonvanishing: NonvanishingEvidence,
    /// The cited `(n-1)`-skeleton entry whose growth exponent divides.
    pub ledger_entry: LedgerEntry,
}

/// Certifies `FV_n ≽ V^{i/k'}` from a weight-`i` cocycle `z`, an
/// `n`-dimensional subalgebra on which `z` survives restriction, and a
/// ledger entry in dimension `n-1` with growth exponent `k'`. Every
/// algebraic hypothesis is checked here; the skeleton horizontality premise
/// stays cited in the ledger entry.
pub fn lower_bound_certificate(
    z: &Cochain,
    sub: &Subalgebra,
    ledger: &HorizontalityLedger,
    budget: u128,
) -> Result<LowerBound> {
    let parent = sub.parent();
    let n = sub.dim();
    let weight = cochain_weight(parent, z)?;
    let outcome = nonzero_in_cohomology(z, sub, budget)?;
    let evidence = match outcome {
        NonvanishingOutcome::Nonzero(ev) => ev,
        NonvanishingOutcome::Vanishes { preimage } => {
            return Err(Error::HypothesisFailed {
                hypothesis: "restriction survives in cohomology".into(),
                witness: format!(
                    "restriction bounds: preimage {}",
                    preimage.display_with(parent)
                ),
            });
        }
    };
    let entry = ledger
        .get(n - 1)
        .ok_or(Error::MissingLedgerEntry { dim: n - 1 })?
        .clone();
    if entry.b <= Rational::zero() {
        return Err(Error::BadLedgerEntry { dim: n - 1, reason: "growth exponent must be positive".into() });
    }
    let exponent = Rational::from_integer(weight.into()) / &entry.b;
    Ok(LowerBound {
        exponent,
        weight,
        cocycle: z.clone(),
        subalgebra: sub.clone(),
        nonvanishing: evidence,
        ledger_entry: entry,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UpperRule {
    Euclidean,
    Ledger,
    Generic,
}

#[derive(Debug, Clone)]
pub struct UpperBound {
    pub exponent: Rational,
    pub rule: UpperRule,
    /// Ledger rows the bound reads (empty for the euclidean rule).
    pub trail: Vec<LedgerEntry>,
    /// Nilpotency class backing the generic rule.
    pub class: Option<usize>,
}

/// Exponent certificate for one filling dimension.
#[derive(Debug, Clone)]
pub struct ExponentCertificate {
    pub dimension: usize,
    pub lower: Option<LowerBound>,
    pub upper: Option<UpperBound>,
    /// Lower and upper exponents agree exactly.
    pub sharp: bool,
    /// True when the skeleton-horizontality premise is cited for an
    /// algebra without a proven skeleton lemma (user-supplied input).
    pub conditional: bool,
}

impl ExponentCertificate {
    fn assemble(
        dimension: usize,
        lower: Option<LowerBound>,
        upper: Option<UpperBound>,
        conditional: bool,
    ) -> Self {
        let sharp = match (&lower, &upper) {
            (Some(l), Some(u)) => l.exponent == u.exponent,
            _ => false,
        };
        ExponentCertificate { dimension, lower, upper, sharp, conditional }
    }
}

/// One certification run: the algebra, the ledger used, certificates per
/// dimension, and explicit gaps where a dimension could not be certified.
#[derive(Debug, Clone)]
pub struct CertificationRun {
    pub algebra: Arc<GradedLieAlgebra>,
    pub ledger: HorizontalityLedger,
    pub certificates: Vec<ExponentCertificate>,
    pub gaps: Vec<(usize, String)>,
}

/// The standard cocycle/subalgebra pair for dimension `n` in a jet group:
/// `z_n = e_1* ∧ … ∧ e_n*` on `<e_1, …, e_n>` for `n <= k`, and in
/// dimension `k+1` the wedge with the dual of the order-zero fiber
/// direction on `<e_1, …, e_k, y_0>`.
pub fn standard_jet_pair(
    alg: &Arc<GradedLieAlgebra>,
    k: usize,
    n: usize,
) -> Result<(Cochain, Subalgebra)> {
    if n < 1 || n > k + 1 {
        return Err(Error::NotApplicable(format!(
            "standard pairs exist for dimensions 1..={} in this jet group, got {n}",
            k + 1
        )));
    }
    let mut names: Vec<String> = (1..=n.min(k)).map(|i| format!("e{i}")).collect();
    if n == k + 1 {
        names.push(multi_index_name(&vec![0u32; k]));
    }
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let z = Cochain::monomial_from_names(alg, &refs)?;
    let vectors: Vec<_> = names
        .iter()
        .map(|name| {
            let i = alg.index_of(name).expect("standard basis name");
            alg.basis_element(i)
        })
        .collect();
    let sub = subalgebra_from_span(alg, &vectors)?;
    Ok((z, sub))
}

/// The jet-group ledger: horizontal skeleta through dimension `k`, then one
/// scaling-cone extension to dimension `k+1`.
pub fn jet_ledger(m: usize, k: usize) -> Result<HorizontalityLedger> {
    let mut ledger = HorizontalityLedger::new();
    for i in 1..=k {
        ledger.insert(LedgerEntry::new(
            i,
            int(i as i64),
            int(i as i64),
            Provenance::Cited {
                premise: format!(
                    "equivariant horizontal map on the {i}-skeleton (holonomic extension over jet space)"
                ),
            },
        )?);
    }
    let top = ledger.get(k).expect("k-entry just inserted").clone();
    ledger.insert(extend_ledger(&top, m + 1)?);
    Ok(ledger)
}

/// Certifies the filling exponents of J^m(R^k) in dimensions `2..=k+1`:
/// euclidean sharp exponents `n/(n-1)` up to `k`, and `(k+m+1)/k` in
/// dimension `k+1`. Budget failures appear as gaps, not errors.
pub fn certify_jet_group(m: usize, k: usize, budget: u128) -> Result<CertificationRun> {
    let alg = make_jet_algebra(m, k)?;
    let ledger = jet_ledger(m, k)?;
    let mut certificates = Vec::new();
    let mut gaps = Vec::new();
    for n in 2..=(k + 1) {
        let lower = standard_jet_pair(&alg, k, n)
            .and_then(|(z, sub)| lower_bound_certificate(&z, &sub, &ledger, budget));
        let upper = if n <= k {
            euclidean_upper(n, k).map(|exponent| UpperBound {
                exponent,
                rule: UpperRule::Euclidean,
                trail: Vec::new(),
                class: None,
            })
        } else {
            upper_from_ledger(&ledger, n).map(|exponent| UpperBound {
                exponent,
                rule: UpperRule::Ledger,
                trail: vec![
                    ledger.get(n - 1).expect("ledger covers n-1").clone(),
                    ledger.get(n).expect("ledger covers n").clone(),
                ],
                class: None,
            })
        };
        match (lower, upper) {
            (Ok(l), Ok(u)) => {
                certificates.push(ExponentCertificate::assemble(n, Some(l), Some(u), false));
            }
            (l, u) => {
                let mut reasons = Vec::new();
                if let Err(e) = l {
                    reasons.push(format!("lower: {e}"));
                }
                if let Err(e) = u {
                    reasons.push(format!("upper: {e}"));
                }
                gaps.push((n, reasons.join("; ")));
            }
        }
    }
    Ok(CertificationRun { algebra: alg, ledger, certificates, gaps })
}

/// Certifies a user-supplied algebra from candidate (cocycle, subalgebra)
/// pairs. The skeleton premise is only cited, so every certificate is
/// conditional; with no user ledger the generic class ledger applies.
pub fn certify_user_algebra(
    alg: &Arc<GradedLieAlgebra>,
    candidates: &[(Cochain, Subalgebra)],
    ledger: Option<HorizontalityLedger>,
    budget: u128,
) -> Result<CertificationRun> {
    let class = alg.nilpotency_class()?;
    let ledger = match ledger {
        Some(l) => l,
        None => generic_ledger(class, alg.dim().saturating_sub(1).max(1))?,
    };
    let mut by_dim: BTreeMap<usize, ExponentCertificate> = BTreeMap::new();
    let mut gaps = Vec::new();
    for (z, sub) in candidates {
        let n = sub.dim();
        match lower_bound_certificate(z, sub, &ledger, budget) {
            Ok(lower) => {
                let upper = if n >= 2 {
                    match upper_from_ledger(&ledger, n) {
                        Ok(exponent) => Some(UpperBound {
                            exponent,
                            rule: UpperRule::Ledger,
                            trail: vec![
                                ledger.get(n - 1).expect("checked").clone(),
                                ledger.get(n).expect("checked").clone(),
                            ],
                            class: None,
                        }),
                        Err(_) => Some(UpperBound {
                            exponent: generic_upper(class, n),
                            rule: UpperRule::Generic,
                            trail: Vec::new(),
                            class: Some(class),
                        }),
                    }
                } else {
                    None
                };
                let cert = ExponentCertificate::assemble(n, Some(lower), upper, true);
                match by_dim.get(&n) {
                    // Several candidates in one dimension: keep the best
                    // (maximal) lower exponent.
                    Some(existing)
                        if existing
                            .lower
                            .as_ref()
                            .map(|l| l.exponent >= cert.lower.as_ref().unwrap().exponent)
                            .unwrap_or(false) => {}
                    _ => {
                        by_dim.insert(n, cert);
                    }
                }
            }
            Err(e) => gaps.push((n, format!("lower: {e}"))),
        }
    }
    Ok(CertificationRun {
        algebra: Arc::clone(alg),
        ledger,
        certificates: by_dim.into_values().collect(),
        gaps,
    })
}

/// Re-derives every claim of a certificate from its own evidence: closure
/// of the span, cocycle and homogeneity of z, the nonvanishing functional,
/// and the exponent arithmetic. Never consults the original run.
pub fn verify_certificate(cert: &ExponentCertificate, budget: u128) -> Result<()> {
    if let Some(lower) = &cert.lower {
        let sub = &lower.subalgebra;
        let parent = sub.parent();
        // Closure re-check from the raw span.
        let rebuilt = subalgebra_from_span(parent, sub.span())?;
        if rebuilt.table() != sub.table() {
            return Err(Error::HypothesisFailed {
                hypothesis: "induced subalgebra structure".into(),
                witness: "re-derived table differs".into(),
            });
        }
        // Cocycle, homogeneity, weight.
        let dz = differential(parent.table(), &lower.cocycle)?;
        if !dz.is_zero() {
            return Err(Error::NotCocycle { dz: dz.display_with(parent) });
        }
        let w = cochain_weight(parent, &lower.cocycle)?;
        if w != lower.weight {
            return Err(Error::HypothesisFailed {
                hypothesis: "declared weight".into(),
                witness: format!("recomputed {w}, declared {}", lower.weight),
            });
        }
        verify_nonvanishing(&lower.cocycle, sub, &lower.nonvanishing, budget)?;
        // Ledger arithmetic.
        let entry = &lower.ledger_entry;
        if entry.dim + 1 != sub.dim() {
            return Err(Error::BadLedgerEntry {
                dim: entry.dim,
                reason: format!("entry dimension {} does not sit below {}", entry.dim, sub.dim()),
            });
        }
        if entry.a > entry.b {
            return Err(Error::BadLedgerEntry { dim: entry.dim, reason: "a > b".into() });
        }
        let expect = Rational::from_integer(lower.weight.into()) / &entry.b;
        if expect != lower.exponent {
            return Err(Error::HypothesisFailed {
                hypothesis: "lower exponent arithmetic".into(),
                witness: format!("weight/b = {expect}, declared {}", lower.exponent),
            });
        }
    }
    if let Some(upper) = &cert.upper {
        let n = cert.dimension;
        match upper.rule {
            UpperRule::Euclidean => {
                let expect = Rational::new((n as i64).into(), (n as i64 - 1).into());
                if upper.exponent != expect {
                    return Err(Error::HypothesisFailed {
                        hypothesis: "euclidean exponent arithmetic".into(),
                        witness: format!("expected {expect}, declared {}", upper.exponent),
                    });
                }
            }
            UpperRule::Ledger => {
                let below = upper
                    .trail
                    .iter()
                    .find(|e| e.dim == n - 1)
                    .ok_or(Error::MissingLedgerEntry { dim: n - 1 })?;
                let top = upper
                    .trail
                    .iter()
                    .find(|e| e.dim == n)
                    .ok_or(Error::MissingLedgerEntry { dim: n })?;
                let expect = &top.b / &below.a;
                if upper.exponent != expect {
                    return Err(Error::HypothesisFailed {
                        hypothesis: "ledger exponent arithmetic".into(),
                        witness: format!("b_n/a_(n-1) = {expect}, declared {}", upper.exponent),
                    });
                }
            }
            UpperRule::Generic => {
                let class = upper.class.ok_or_else(|| Error::HypothesisFailed {
                    hypothesis: "generic rule carries its class".into(),
                    witness: "class missing".into(),
                })?;
                let expect = generic_upper(class, n);
                if upper.exponent != expect {
                    return Err(Error::HypothesisFailed {
                        hypothesis: "generic exponent arithmetic".into(),
                        witness: format!("expected {expect}, declared {}", upper.exponent),
                    });
                }
            }
        }
    }
    let sharp = match (&cert.lower, &cert.upper) {
        (Some(l), Some(u)) => l.exponent == u.exponent,
        _ => false,
    };
    if sharp != cert.sharp {
        return Err(Error::HypothesisFailed {
            hypothesis: "sharpness flag".into(),
            witness: format!("recomputed {sharp}, declared {}", cert.sharp),
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::DEFAULT_BUDGET_CELLS as B;
    use crate::scalar::rat;

    #[test]
    fn euclidean_rule() {
        assert_eq!(euclidean_upper(2, 3).unwrap(), int(2));
        assert_eq!(euclidean_upper(3, 3).unwrap(), rat(3, 2));
        assert!(matches!(euclidean_upper(4, 3), Err(Error::NotApplicable(_))));
        assert!(matches!(euclidean_upper(1, 3), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn ledger_extension_rule() {
        let e = LedgerEntry::new(2, int(2), int(2), Provenance::Cited { premise: "test".into() })
            .unwrap();
        let x = extend_ledger(&e, 3).unwrap();
        assert_eq!((x.dim, x.a.clone(), x.b.clone()), (3, int(3), int(5)));

        // (1,1) extended n-1 times through class c reaches (n, 1 + c(n-1)).
        let c = 4;
        let ledger = generic_ledger(c, 5).unwrap();
        for n in 1..=5usize {
            let e = ledger.get(n).unwrap();
            assert_eq!(e.a, int(n as i64));
            assert_eq!(e.b, int(1 + (c as i64) * (n as i64 - 1)));
        }
        // Abelian extension: (a, b) -> (a+1, b+1).
        let x = extend_ledger(&e, 1).unwrap();
        assert_eq!((x.a.clone(), x.b.clone()), (int(3), int(3)));
    }

    #[test]
    fn upper_from_ledger_examples() {
        // Jet ledger: j = k+1 gives (k+m+1)/k; j <= k gives j/(j-1).
        let (m, k) = (2usize, 3usize);
        let ledger = jet_ledger(m, k).unwrap();
        assert_eq!(upper_from_ledger(&ledger, k + 1).unwrap(), rat((k + m + 1) as i64, k as i64));
        for j in 2..=k {
            assert_eq!(upper_from_ledger(&ledger, j).unwrap(), rat(j as i64, j as i64 - 1));
        }
        assert!(matches!(
            upper_from_ledger(&ledger, k + 2),
            Err(Error::MissingLedgerEntry { .. })
        ));
        // Generic c-step ledger at j = n: (c(n-1)+1)/(n-1).
        let c = 3;
        let g = generic_ledger(c, 6).unwrap();
        for n in 2..=6usize {
            assert_eq!(upper_from_ledger(&g, n).unwrap(), generic_upper(c, n));
        }
    }

    #[test]
    fn generic_rule_values() {
        for c in 1..=6usize {
            assert_eq!(generic_upper(c, 2), int(c as i64 + 1));
        }
        for n in 2..=6usize {
            assert_eq!(generic_upper(1, n), rat(n as i64, n as i64 - 1));
        }
        assert_eq!(generic_upper(2, 3), rat(5, 2));
        // Never better than euclidean.
        for c in 1..=6usize {
            for n in 2..=6usize {
                assert!(generic_upper(c, n) >= euclidean_upper(n, n).unwrap());
            }
        }
    }

    #[test]
    fn jet_certificates_match_the_exponent_table() {
        for m in 1..=3usize {
            for k in 1..=3usize {
                let run = certify_jet_group(m, k, B).unwrap();
                assert!(run.gaps.is_empty(), "gaps for j_{{{m},{k}}}: {:?}", run.gaps);
                assert_eq!(run.certificates.len(), k);
                for cert in &run.certificates {
                    let n = cert.dimension;
                    let expect = if n <= k {
                        rat(n as i64, n as i64 - 1)
                    } else {
                        rat((k + m + 1) as i64, k as i64)
                    };
                    assert!(cert.sharp, "certificate at n={n} for j_{{{m},{k}}} not sharp");
                    assert!(!cert.conditional);
                    assert_eq!(cert.lower.as_ref().unwrap().exponent, expect);
                    assert_eq!(cert.upper.as_ref().unwrap().exponent, expect);
                    assert!(cert.lower.as_ref().unwrap().exponent > int(1));
                    verify_certificate(cert, B).unwrap();
                }
            }
        }
    }

    #[test]
    fn heisenberg_corollary_values() {
        for k in 1..=3usize {
            let run = certify_jet_group(1, k, B).unwrap();
            let top = run.certificates.iter().find(|c| c.dimension == k + 1).unwrap();
            assert_eq!(top.upper.as_ref().unwrap().exponent, rat(k as i64 + 2, k as i64));
        }
        // (m, 1): single certificate at n = 2 with exponent m + 2.
        for m in 1..=3usize {
            let run = certify_jet_group(m, 1, B).unwrap();
            assert_eq!(run.certificates.len(), 1);
            let c = &run.certificates[0];
            assert_eq!(c.dimension, 2);
            assert_eq!(c.upper.as_ref().unwrap().exponent, int(m as i64 + 2));
        }
        // (2,2): {2: 2, 3: 5/2}.
        let run = certify_jet_group(2, 2, B).unwrap();
        let table: Vec<(usize, Rational)> = run
            .certificates
            .iter()
            .map(|c| (c.dimension, c.upper.as_ref().unwrap().exponent.clone()))
            .collect();
        assert_eq!(table, vec![(2, int(2)), (3, rat(5, 2))]);
    }

    #[test]
    fn provenance_separates_cited_from_verified() {
        let run = certify_jet_group(2, 2, B).unwrap();
        for entry in run.ledger.entries() {
            assert!(entry.provenance.is_cited());
        }
        // The algebraic hypotheses re-verify from scratch.
        for cert in &run.certificates {
            verify_certificate(cert, B).unwrap();
        }
    }

    #[test]
    fn non_homogeneous_cocycle_is_rejected() {
        let alg = make_jet_algebra(1, 2).unwrap();
        // e1* + (e1*∧e2* summand of mixed weight): build z = e1*∧e2* + e1*∧y(0,0)*
        // (weights 2 and 1+2=3), a 2-cochain that is not homogeneous.
        let z = Cochain::from_terms(
            alg.dim(),
            2,
            [
                (vec![0, 1], int(1)),
                (vec![0, alg.index_of("y(0,0)").unwrap()], int(1)),
            ],
        )
        .unwrap();
        let sub = subalgebra_from_span(&alg, &[alg.basis_element(0), alg.basis_element(1)])
            .unwrap();
        let ledger = jet_ledger(1, 2).unwrap();
        assert!(matches!(
            lower_bound_certificate(&z, &sub, &ledger, B),
            Err(Error::NotHomogeneous { .. })
        ));
    }

    #[test]
    fn user_algebra_certificates_are_conditional() {
        let alg = make_jet_algebra(1, 1).unwrap();
        let (z, sub) = standard_jet_pair(&alg, 1, 2).unwrap();
        let run = certify_user_algebra(&alg, &[(z, sub)], None, B).unwrap();
        assert_eq!(run.certificates.len(), 1);
        let cert = &run.certificates[0];
        assert!(cert.conditional);
        // Generic ledger for class 2: entry (1, (1,1)) so lower = 4/1? No:
        // weight of z_2 in j_{1,1} is 1 + 2 = 3? e1* (1) ∧ y(0)* (2): but the
        // standard pair for n = k+1 = 2 wedges e1* with y(0)*: weight 3,
        // against b_1 = 1: exponent 3. The upper bound from the generic
        // ledger is (2*1+1)/1 = 3: sharp and conditional.
        assert_eq!(cert.lower.as_ref().unwrap().exponent, int(3));
        assert_eq!(cert.upper.as_ref().unwrap().exponent, int(3));
        assert!(cert.sharp);
        verify_certificate(cert, B).unwrap();
    }

    #[test]
    fn tampered_certificates_fail_verification() {
        let run = certify_jet_group(1, 1, B).unwrap();
        let mut cert = run.certificates[0].clone();
        cert.lower.as_mut().unwrap().exponent = int(7);
        assert!(verify_certificate(&cert, B).is_err());

        let mut cert = run.certificates[0].clone();
        cert.sharp = false;
        assert!(verify_certificate(&cert, B).is_err());

        let mut cert = run.certificates[0].clone();
        cert.upper.as_mut().unwrap().exponent = int(9);
        assert!(verify_certificate(&cert, B).is_err());
    }
}
