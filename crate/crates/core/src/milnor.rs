//! Brieskorn-Pham spectra, Milnor numbers, reduced Bernstein-Sato roots
//! and monomial Jacobian-ideal membership.
//!
//! For `f = Σ x_i^{m_i}` the Jacobian ideal is the monomial ideal
//! `(x_1^{m_1-1}, …, x_n^{m_n-1})`, the monomials `x^a` with
//! `0 <= a_i <= m_i - 2` form a basis of the Milnor algebra, and the
//! spectrum is the multiset of `Σ (a_i+1)/m_i` over that basis.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::algebra::{limits, AlgebraError, ExponentVector, Rational, SparsePolynomial};
use crate::exponents::{alpha_br, alpha_vtilde, bp_minimal_exponent, BrieskornPham, ExponentError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MilnorError {
    #[error("Milnor algebra basis has more than {cap} monomials")]
    TooLarge { cap: usize },
    #[error("polynomial has {found} variables but the descriptor has {expected}")]
    ContextMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Exponent(#[from] ExponentError),
}

impl MilnorError {
    pub fn code(&self) -> &'static str {
        match self {
            MilnorError::TooLarge { .. } => "TERM_CAP_EXCEEDED",
            MilnorError::ContextMismatch { .. } => "CONTEXT_MISMATCH",
            MilnorError::Algebra(e) => e.code(),
            MilnorError::Exponent(e) => e.code(),
        }
    }
}

/// Spectral numbers with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SpectrumMultiset {
    entries: BTreeMap<Rational, u64>,
}

impl SpectrumMultiset {
    pub fn entries(&self) -> &BTreeMap<Rational, u64> {
        &self.entries
    }

    pub fn multiplicity(&self, value: &Rational) -> u64 {
        self.entries.get(value).copied().unwrap_or(0)
    }

    /// Total multiplicity.
    pub fn total(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.entries.keys().next()
    }

    pub fn max(&self) -> Option<&Rational> {
        self.entries.keys().next_back()
    }

    pub fn insert(&mut self, value: Rational) {
        *self.entries.entry(value).or_insert(0) += 1;
    }
}

#[derive(Serialize)]
struct SpectrumEntry<'a> {
    value: &'a Rational,
    mult: u64,
}

impl Serialize for SpectrumMultiset {
    /// Sorted array of `{"value": "p/q", "mult": n}`.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for (value, &mult) in &self.entries {
            seq.serialize_element(&SpectrumEntry { value, mult })?;
        }
        seq.end()
    }
}

/// `Π (m_i - 1)`.
pub fn milnor_number(d: &BrieskornPham) -> BigUint {
    d.exponents().iter().map(|&m| BigUint::from(m - 1)).product()
}

fn basis_size_checked(d: &BrieskornPham) -> Result<u64, MilnorError> {
    let cap = limits::term_cap();
    let mut size: u64 = 1;
    for &m in d.exponents() {
        size = size.saturating_mul((m - 1) as u64);
        if size > cap as u64 {
            return Err(MilnorError::TooLarge { cap });
        }
    }
    Ok(size)
}

/// Visits every exponent vector in the box `0 <= a_i <= bounds[i]`.
pub(crate) fn for_each_in_box(bounds: &[u32], mut visit: impl FnMut(&[u32])) {
    let mut a = vec![0u32; bounds.len()];
    loop {
        visit(&a);
        let mut i = 0;
        loop {
            if i == a.len() {
                return;
            }
            if a[i] < bounds[i] {
                a[i] += 1;
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// The monomial basis `{x^a : 0 <= a_i <= m_i - 2}` of the Milnor algebra.
pub fn milnor_basis(d: &BrieskornPham) -> Result<Vec<ExponentVector>, MilnorError> {
    let size = basis_size_checked(d)?;
    let bounds: Vec<u32> = d.exponents().iter().map(|m| m - 2).collect();
    let mut out = Vec::with_capacity(size as usize);
    for_each_in_box(&bounds, |a| out.push(ExponentVector::new(a.to_vec())));
    Ok(out)
}

/// Spectrum `{Σ (a_i+1)/m_i : 0 <= a_i <= m_i - 2}`.
pub fn bp_spectrum(d: &BrieskornPham) -> Result<SpectrumMultiset, MilnorError> {
    let mut spectrum = SpectrumMultiset::default();
    for a in milnor_basis(d)? {
        let value = alpha_br(&a, d)?;
        spectrum.insert(value.as_rational().expect("finite").clone());
    }
    Ok(spectrum)
}

/// Roots of `b_f(s)/(s+1)`: the negated distinct spectral numbers
/// `-Σ k_i/m_i`, `1 <= k_i <= m_i - 1`.
pub fn reduced_bs_root_set(d: &BrieskornPham) -> Result<BTreeSet<Rational>, MilnorError> {
    let roots: BTreeSet<Rational> = bp_spectrum(d)?.entries.into_keys().map(|v| -v).collect();
    let alpha = bp_minimal_exponent(d);
    let max = roots.iter().next_back().expect("spectrum is non-empty");
    assert_eq!(Some(&-max), alpha.as_rational(), "maximal root disagrees with the minimal exponent");
    Ok(roots)
}

/// A monomial ideal with a minimal generating set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdeal {
    generators: Vec<ExponentVector>,
}

impl MonomialIdeal {
    /// Drops generators divisible by another generator (and duplicates).
    pub fn new(generators: Vec<ExponentVector>) -> Self {
        let mut gens: Vec<ExponentVector> = generators;
        gens.sort();
        gens.dedup();
        let mut minimal: Vec<ExponentVector> = Vec::new();
        for g in gens {
            if !minimal.iter().any(|h| h.divides(&g)) {
                minimal.push(g);
            }
        }
        MonomialIdeal { generators: minimal }
    }

    pub fn generators(&self) -> &[ExponentVector] {
        &self.generators
    }

    pub fn contains_monomial(&self, e: &ExponentVector) -> bool {
        self.generators.iter().any(|g| g.divides(e))
    }

    /// A polynomial lies in a monomial ideal iff each of its terms does.
    pub fn contains(&self, p: &SparsePolynomial) -> bool {
        p.terms().all(|(e, _)| self.contains_monomial(e))
    }
}

/// `(∂f) = (x_1^{m_1-1}, …, x_n^{m_n-1})`.
pub fn jacobian_ideal(d: &BrieskornPham) -> MonomialIdeal {
    let n = d.arity();
    MonomialIdeal::new(
        d.exponents().iter().enumerate().map(|(i, &m)| ExponentVector::unit(n, i, m - 1)).collect(),
    )
}

pub fn jacobian_membership(g: &SparsePolynomial, d: &BrieskornPham) -> Result<bool, MilnorError> {
    if g.context().len() != d.arity() {
        return Err(MilnorError::ContextMismatch { expected: d.arity(), found: g.context().len() });
    }
    Ok(jacobian_ideal(d).contains(g))
}

/// Result of checking `Ṽ^α O ⊂ (∂f)` for `α > n - α̃_f` on all monomials of
/// bounded degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionReport {
    pub threshold: Rational,
    pub monomials_checked: u64,
    pub claims_checked: u64,
    pub counterexample: Option<Vec<u32>>,
    pub passed: bool,
}

pub fn check_vfiltration_inclusion(d: &BrieskornPham, degree_bound: u32) -> Result<InclusionReport, MilnorError> {
    let n = d.arity();
    let alpha = bp_minimal_exponent(d);
    let threshold = Rational::from(n as i64) - alpha.as_rational().expect("finite");
    let ideal = jacobian_ideal(d);

    let count = binomial(degree_bound as u64 + n as u64, n as u64);
    if count > limits::term_cap() as u64 {
        return Err(MilnorError::TooLarge { cap: limits::term_cap() });
    }

    let mut report = InclusionReport {
        threshold: threshold.clone(),
        monomials_checked: 0,
        claims_checked: 0,
        counterexample: None,
        passed: true,
    };
    let bounds = vec![degree_bound; n];
    for_each_in_box(&bounds, |a| {
        if a.iter().map(|&x| x as u64).sum::<u64>() > degree_bound as u64 {
            return;
        }
        report.monomials_checked += 1;
        let e = ExponentVector::new(a.to_vec());
        let v = alpha_vtilde(&e, d).expect("arity matches");
        if *v.as_rational().expect("finite") > threshold {
            report.claims_checked += 1;
            if !ideal.contains_monomial(&e) && report.counterexample.is_none() {
                report.counterexample = Some(a.to_vec());
                report.passed = false;
            }
        }
    });
    Ok(report)
}

fn binomial(n: u64, k: u64) -> u64 {
    let mut r: u64 = 1;
    for i in 0..k.min(n - k) {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

/// Result of checking `f^k g ∈ (∂f)` at the least admissible `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerInclusionReport {
    /// `n - α̃_f - α^Ṽ_f(g)`; the claim holds for every integer `k` above it.
    pub bound: Rational,
    /// Least non-negative integer strictly above `bound`.
    pub k: u32,
    pub product_terms: usize,
    pub member: bool,
}

pub fn check_power_inclusion(d: &BrieskornPham, a: &ExponentVector) -> Result<PowerInclusionReport, MilnorError> {
    let n = d.arity();
    let vt = alpha_vtilde(a, d)?;
    let alpha = bp_minimal_exponent(d);
    let bound = Rational::from(n as i64) - alpha.as_rational().expect("finite") - vt.as_rational().expect("finite");
    let k = if bound.is_negative() {
        0
    } else {
        u32::try_from(bound.floor() + 1u32).map_err(|_| MilnorError::TooLarge { cap: limits::term_cap() })?
    };

    let ctx = d.default_context();
    let f = d.polynomial(&ctx)?;
    let product = f.pow(k)?.shift(a);
    let member = jacobian_ideal(d).contains(&product);
    Ok(PowerInclusionReport { bound, k, product_terms: product.len(), member })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, Context};
    use num_traits::ToPrimitive;

    fn bp(m: &[u32]) -> BrieskornPham {
        BrieskornPham::new(m.to_vec()).unwrap()
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn spec(pairs: &[(&str, u64)]) -> BTreeMap<Rational, u64> {
        pairs.iter().map(|(v, m)| (q(v), *m)).collect()
    }

    // Independent lattice enumeration: nested loops over each coordinate,
    // summing with plain BigRational-free integer fractions.
    fn oracle_spectrum(m: &[u32]) -> BTreeMap<Rational, u64> {
        let mut out = BTreeMap::new();
        let lcm: i64 = m.iter().fold(1i64, |l, &x| num_integer::lcm(l, x as i64));
        let mut stack = vec![(0usize, 0i64)];
        while let Some((i, acc)) = stack.pop() {
            if i == m.len() {
                *out.entry(Rational::new(acc, lcm)).or_insert(0) += 1;
                continue;
            }
            for k in 1..m[i] as i64 {
                stack.push((i + 1, acc + k * (lcm / m[i] as i64)));
            }
        }
        out
    }

    #[test]
    fn spectrum_examples() {
        assert_eq!(bp_spectrum(&bp(&[2, 2])).unwrap().entries(), &spec(&[("1", 1)]));
        assert_eq!(bp_spectrum(&bp(&[2, 3])).unwrap().entries(), &spec(&[("5/6", 1), ("7/6", 1)]));
        assert_eq!(bp_spectrum(&bp(&[3, 3])).unwrap().entries(), &spec(&[("2/3", 1), ("1", 2), ("4/3", 1)]));
        for m in [[2u32, 5, 7].as_slice(), &[4, 4, 4], &[3, 6]] {
            assert_eq!(bp_spectrum(&bp(m)).unwrap().entries(), &oracle_spectrum(m));
        }
    }

    #[test]
    fn spectrum_guardrail() {
        let big = bp(&[11, 11, 11, 11, 11, 11, 11]);
        assert_eq!(limits::with_term_cap(1000, || bp_spectrum(&big)), Err(MilnorError::TooLarge { cap: 1000 }));
    }

    #[test]
    fn spectrum_json_shape() {
        let s = serde_json::to_string(&bp_spectrum(&bp(&[2, 3])).unwrap()).unwrap();
        assert_eq!(s, r#"[{"value":"5/6","mult":1},{"value":"7/6","mult":1}]"#);
    }

    #[test]
    fn milnor_number_examples() {
        assert_eq!(milnor_number(&bp(&[2, 3])).to_u64(), Some(2));
        assert_eq!(milnor_number(&bp(&[2, 2])).to_u64(), Some(1));
        assert_eq!(milnor_number(&bp(&[4, 4, 4])).to_u64(), Some(27));
        assert_eq!(bp_spectrum(&bp(&[4, 4, 4])).unwrap().total(), 27);
    }

    #[test]
    fn root_set_examples() {
        let set = |v: &[&str]| v.iter().map(|s| q(s)).collect::<BTreeSet<_>>();
        assert_eq!(reduced_bs_root_set(&bp(&[2, 3])).unwrap(), set(&["-5/6", "-7/6"]));
        assert_eq!(reduced_bs_root_set(&bp(&[2, 2])).unwrap(), set(&["-1"]));
        assert_eq!(reduced_bs_root_set(&bp(&[3])).unwrap(), set(&["-1/3", "-2/3"]));
    }

    #[test]
    fn membership_examples() {
        let d = bp(&[2, 3]);
        let ctx = Context::new(["x", "y"]).unwrap();
        assert!(jacobian_membership(&parse_polynomial("x*y", &ctx).unwrap(), &d).unwrap());
        assert!(!jacobian_membership(&parse_polynomial("y", &ctx).unwrap(), &d).unwrap());
        assert!(jacobian_membership(&SparsePolynomial::zero(&ctx), &d).unwrap());
        let wrong = Context::new(["x"]).unwrap();
        assert!(matches!(
            jacobian_membership(&parse_polynomial("x", &wrong).unwrap(), &d),
            Err(MilnorError::ContextMismatch { .. })
        ));
    }

    #[test]
    fn ideal_is_reduced() {
        let ev = |v: &[u32]| ExponentVector::new(v.to_vec());
        let i = MonomialIdeal::new(vec![ev(&[1, 2]), ev(&[1, 0]), ev(&[0, 3]), ev(&[1, 0]), ev(&[2, 3])]);
        assert_eq!(i.generators(), [ev(&[1, 0]), ev(&[0, 3])]);
    }

    #[test]
    fn vfiltration_inclusion_examples() {
        // d=(2,2), x: 2 > 1 and x ∈ (x, y)
        let r = check_vfiltration_inclusion(&bp(&[2, 2]), 1).unwrap();
        assert!(r.passed);
        assert_eq!(r.threshold, q("1"));
        // d=(3): x sits exactly on the threshold 2/3, x^2 is above it
        let r = check_vfiltration_inclusion(&bp(&[3]), 1).unwrap();
        assert_eq!((r.monomials_checked, r.claims_checked, r.passed), (2, 0, true));
        let r = check_vfiltration_inclusion(&bp(&[3]), 2).unwrap();
        assert_eq!((r.claims_checked, r.passed), (1, true));
    }

    #[test]
    fn power_inclusion_examples() {
        let ev = |v: &[u32]| ExponentVector::new(v.to_vec());
        let r = check_power_inclusion(&bp(&[2, 3]), &ev(&[0, 1])).unwrap();
        assert_eq!((r.bound.clone(), r.k, r.product_terms, r.member), (q("0"), 1, 2, true));
        let r = check_power_inclusion(&bp(&[2, 2]), &ev(&[1, 1])).unwrap();
        assert_eq!((r.bound.clone(), r.k, r.member), (q("-2"), 0, true));
        let r = check_power_inclusion(&bp(&[2]), &ev(&[0])).unwrap();
        assert_eq!((r.bound.clone(), r.k, r.member), (q("0"), 1, true));
    }
}
