use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::limits::term_cap;
use super::{AlgebraError, Rational};

/// An ordered, immutable list of variable names.
#[derive(Clone, Eq)]
pub struct Context(Arc<[String]>);

impl Context {
    pub fn new<I, S>(names: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, name) in names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(AlgebraError::InvalidVariableName(name.clone()));
            }
            if names[..i].contains(name) {
                return Err(AlgebraError::DuplicateVariable(name.clone()));
            }
        }
        Ok(Context(names.into()))
    }

    /// `x1, …, xn` (or any other prefix).
    pub fn numbered(prefix: &str, n: usize) -> Self {
        Context::new((1..=n).map(|i| format!("{prefix}{i}"))).expect("numbered names are valid")
    }

    pub fn empty() -> Self {
        Context(Vec::new().into())
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|v| v == name)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index_of(name).is_some()
    }

    /// `self`'s variables followed by those of `other` not already present.
    pub fn merge(&self, other: &Context) -> Context {
        let mut names = self.0.to_vec();
        for v in other.names() {
            if !names.contains(v) {
                names.push(v.clone());
            }
        }
        Context(names.into())
    }

    pub fn without(&self, name: &str) -> Context {
        Context(self.0.iter().filter(|v| *v != name).cloned().collect::<Vec<_>>().into())
    }

    pub fn with(&self, name: &str) -> Result<Context, AlgebraError> {
        Context::new(self.0.iter().cloned().chain(std::iter::once(name.to_string())))
    }
}

impl PartialEq for Context {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric())
}

/// Exponents of a monomial, one per context variable.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the earliest context variable.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ExponentVector(Vec<u32>);

impl ExponentVector {
    pub fn new(exponents: Vec<u32>) -> Self {
        ExponentVector(exponents)
    }

    pub fn zeros(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize, power: u32) -> Self {
        let mut v = vec![0; n];
        v[i] = power;
        ExponentVector(v)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    /// Whether `self` divides `other` as monomials.
    pub fn divides(&self, other: &ExponentVector) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn product(&self, other: &ExponentVector) -> ExponentVector {
        ExponentVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl From<Vec<u32>> for ExponentVector {
    fn from(v: Vec<u32>) -> Self {
        ExponentVector(v)
    }
}

impl Ord for ExponentVector {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExponentVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with exact rational coefficients over an explicit variable
/// context. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct SparsePolynomial {
    ctx: Context,
    terms: BTreeMap<ExponentVector, Rational>,
}

fn check_cap(len: usize) -> Result<(), AlgebraError> {
    let cap = term_cap();
    if len > cap {
        Err(AlgebraError::TermCapExceeded { cap })
    } else {
        Ok(())
    }
}

impl SparsePolynomial {
    pub fn zero(ctx: &Context) -> Self {
        SparsePolynomial { ctx: ctx.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(ctx: &Context, c: Rational) -> Self {
        Self::monomial(ctx, ExponentVector::zeros(ctx.len()), c)
    }

    pub fn one(ctx: &Context) -> Self {
        Self::constant(ctx, Rational::one())
    }

    pub fn var(ctx: &Context, name: &str) -> Result<Self, AlgebraError> {
        let i = ctx.index_of(name).ok_or_else(|| AlgebraError::unknown(name))?;
        Ok(Self::monomial(ctx, ExponentVector::unit(ctx.len(), i, 1), Rational::one()))
    }

    /// `coeff * x^exps`. Panics if the arity does not match the context.
    pub fn monomial(ctx: &Context, exps: ExponentVector, coeff: Rational) -> Self {
        assert_eq!(exps.len(), ctx.len(), "exponent vector arity");
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exps, coeff);
        }
        SparsePolynomial { ctx: ctx.clone(), terms }
    }

    /// Sums the given terms, combining like monomials.
    pub fn from_terms<I>(ctx: &Context, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (ExponentVector, Rational)>,
    {
        let mut p = Self::zero(ctx);
        for (e, c) in terms {
            if e.len() != ctx.len() {
                return Err(AlgebraError::ArityMismatch { expected: ctx.len(), found: e.len() });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// In-place `self += other`; contexts must already agree.
    pub(crate) fn accumulate(&mut self, other: &Self) {
        debug_assert!(self.ctx == other.ctx);
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn context(&self) -> &Context {
        &self.ctx
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&ExponentVector, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, e: &ExponentVector) -> Rational {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    /// The constant term's coefficient if this polynomial is a constant.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                (e.total_degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().next_back().map(ExponentVector::total_degree)
    }

    /// Highest exponent of `var` over all terms.
    pub fn degree_in(&self, var: &str) -> Result<u32, AlgebraError> {
        let i = self.index(var)?;
        Ok(self.terms.keys().map(|e| e.get(i)).max().unwrap_or(0))
    }

    /// Whether `var` occurs with positive exponent in some term.
    pub fn depends_on(&self, var: &str) -> bool {
        match self.ctx.index_of(var) {
            Some(i) => self.terms.keys().any(|e| e.get(i) > 0),
            None => false,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(ExponentVector::total_degree);
        match degs.next() {
            Some(d) => degs.all(|x| x == d),
            None => true,
        }
    }

    fn index(&self, var: &str) -> Result<usize, AlgebraError> {
        self.ctx.index_of(var).ok_or_else(|| AlgebraError::unknown(var))
    }

    fn same_context(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.ctx == other.ctx {
            Ok(())
        } else {
            Err(AlgebraError::ContextMismatch {
                left: self.ctx.names().to_vec(),
                right: other.ctx.names().to_vec(),
            })
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_context(other)?;
        let (mut acc, small) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (e, c) in &small.terms {
            acc.add_term(e.clone(), c.clone());
        }
        Ok(acc)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_context(other)?;
        let mut out = Self::zero(&self.ctx);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.product(e2), c1 * c2);
            }
            check_cap(out.len())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        SparsePolynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiplies by the monomial `x^e`.
    pub fn shift(&self, e: &ExponentVector) -> Self {
        SparsePolynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(k, c)| (k.product(e), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Result<Self, AlgebraError> {
        let mut acc = Self::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Self, AlgebraError> {
        let i = self.index(var)?;
        let mut out = Self::zero(&self.ctx);
        for (e, c) in &self.terms {
            let k = e.get(i);
            if k == 0 {
                continue;
            }
            let mut d = e.clone();
            d.0[i] -= 1;
            out.add_term(d, c * Rational::from(k));
        }
        Ok(out)
    }

    /// Exact value at a point given by name.
    pub fn evaluate(&self, point: &BTreeMap<String, Rational>) -> Result<Rational, AlgebraError> {
        let values = self
            .ctx
            .names()
            .iter()
            .map(|v| point.get(v).cloned().ok_or_else(|| AlgebraError::MissingAssignment(v.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        self.evaluate_at(&values)
    }

    /// Exact value at a point given positionally in context order.
    pub fn evaluate_at(&self, values: &[Rational]) -> Result<Rational, AlgebraError> {
        if values.len() != self.ctx.len() {
            return Err(AlgebraError::ArityMismatch { expected: self.ctx.len(), found: values.len() });
        }
        let mut powers: Vec<Vec<Rational>> = vec![vec![Rational::one()]; values.len()];
        let mut sum = Rational::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let cache = &mut powers[i];
                while cache.len() <= k as usize {
                    let next = cache.last().unwrap() * &values[i];
                    cache.push(next);
                }
                t *= &cache[k as usize];
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Splits into parts homogeneous in `vars` of degree `base`, `base + 1`, …
    ///
    /// `parts[j]` collects the terms whose degree in `vars` is `base + j`;
    /// the remaining variables ride along in the coefficients. Fails if some
    /// term has degree below `base` in `vars`.
    pub fn graded_parts(&self, vars: &[&str], base: u32) -> Result<Vec<Self>, AlgebraError> {
        let idx = vars.iter().map(|v| self.index(v)).collect::<Result<Vec<_>, _>>()?;
        let mut parts: Vec<Self> = Vec::new();
        for (e, c) in &self.terms {
            let deg: u64 = idx.iter().map(|&i| e.get(i) as u64).sum();
            if deg < base as u64 {
                return Err(AlgebraError::DegreeBelowBase {
                    degree: deg,
                    base,
                    term: Self::monomial(&self.ctx, e.clone(), c.clone()).to_string(),
                });
            }
            let j = (deg - base as u64) as usize;
            while parts.len() <= j {
                parts.push(Self::zero(&self.ctx));
            }
            parts[j].terms.insert(e.clone(), c.clone());
        }
        Ok(parts)
    }

    /// Largest `k` with `var^k` dividing every term, and the quotient.
    pub fn factor_out_power(&self, var: &str) -> Result<(u32, Self), AlgebraError> {
        let i = self.index(var)?;
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial("factor_out_power"));
        }
        let k = self.terms.keys().map(|e| e.get(i)).min().unwrap_or(0);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut q = e.clone();
                q.0[i] -= k;
                (q, c.clone())
            })
            .collect();
        Ok((k, SparsePolynomial { ctx: self.ctx.clone(), terms }))
    }

    pub fn homogeneous_part(&self, degree: u64) -> Self {
        SparsePolynomial {
            ctx: self.ctx.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.total_degree() == degree)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// `p(x + center)`: moves `center` to the origin.
    pub fn translate(&self, center: &[Rational]) -> Result<Self, AlgebraError> {
        if center.len() != self.ctx.len() {
            return Err(AlgebraError::ArityMismatch { expected: self.ctx.len(), found: center.len() });
        }
        if center.iter().all(Rational::is_zero) {
            return Ok(self.clone());
        }
        let mut sub = super::Substitution::new(&self.ctx);
        for (i, name) in self.ctx.names().iter().enumerate() {
            if !center[i].is_zero() {
                let shifted = Self::var(&self.ctx, name)?.try_add(&Self::constant(&self.ctx, center[i].clone()))?;
                sub.assign(name, shifted)?;
            }
        }
        sub.apply(self)
    }

    /// Order at `center` and the lowest-degree homogeneous form there
    /// (in coordinates centred at `center`).
    pub fn lowest_degree_part(&self, center: &[Rational]) -> Result<(u64, Self), AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial("lowest_degree_part"));
        }
        let moved = self.translate(center)?;
        let order = moved.terms.keys().next().map(ExponentVector::total_degree).unwrap_or(0);
        Ok((order, moved.homogeneous_part(order)))
    }

    /// Re-expresses this polynomial over a context containing all of its
    /// variables.
    pub fn embed(&self, target: &Context) -> Result<Self, AlgebraError> {
        if *target == self.ctx {
            return Ok(self.clone());
        }
        let map = self
            .ctx
            .names()
            .iter()
            .map(|v| target.index_of(v).ok_or_else(|| AlgebraError::unknown(v)))
            .collect::<Result<Vec<_>, _>>()?;
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut t = vec![0; target.len()];
                for (i, &j) in map.iter().enumerate() {
                    t[j] = e.get(i);
                }
                (ExponentVector(t), c.clone())
            })
            .collect();
        Ok(SparsePolynomial { ctx: target.clone(), terms })
    }

    /// Renames variables positionally; the new context must have the same
    /// arity.
    pub fn relabel(&self, target: &Context) -> Result<Self, AlgebraError> {
        if target.len() != self.ctx.len() {
            return Err(AlgebraError::ArityMismatch { expected: self.ctx.len(), found: target.len() });
        }
        Ok(SparsePolynomial { ctx: target.clone(), terms: self.terms.clone() })
    }

    /// Sets `var = value` and drops `var` from the context.
    pub fn restrict(&self, var: &str, value: &Rational) -> Result<Self, AlgebraError> {
        let i = self.index(var)?;
        let ctx = self.ctx.without(var);
        let mut out = Self::zero(&ctx);
        for (e, c) in &self.terms {
            let k = e.get(i);
            let mut rest = e.0.clone();
            rest.remove(i);
            let coeff = if k == 0 { c.clone() } else { c * value.pow(k as i32) };
            out.add_term(ExponentVector(rest), coeff);
        }
        Ok(out)
    }

    /// Writes `self = Σ_k coeff_k · var^k`, returning the coefficients
    /// (still over the full context) indexed by `k`.
    pub fn coefficients_in(&self, var: &str) -> Result<Vec<Self>, AlgebraError> {
        let i = self.index(var)?;
        let mut out: Vec<Self> = Vec::new();
        for (e, c) in &self.terms {
            let k = e.get(i) as usize;
            while out.len() <= k {
                out.push(Self::zero(&self.ctx));
            }
            let mut rest = e.clone();
            rest.0[i] = 0;
            out[k].terms.insert(rest, c.clone());
        }
        Ok(out)
    }
}

impl fmt::Display for SparsePolynomial {
    /// Canonical form: descending graded-lex order, explicit `*`, `^` only
    /// for exponents of at least 2.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            match (n, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut first = true;
            if !abs.is_one() || e.total_degree() == 0 {
                write!(f, "{abs}")?;
                first = false;
            }
            for (name, &k) in self.ctx.names().iter().zip(e.as_slice()) {
                if k == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(name)?;
                if k >= 2 {
                    write!(f, "^{k}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {:?}", self, self.ctx)
    }
}

impl Serialize for SparsePolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl Neg for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn neg(self) -> SparsePolynomial {
        SparsePolynomial {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

// Operator forms panic on context mismatch or cap overflow; library code
// uses the `try_*` methods.
impl Add for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn add(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn sub(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &SparsePolynomial {
    type Output = SparsePolynomial;
    fn mul(self, rhs: &SparsePolynomial) -> SparsePolynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}
