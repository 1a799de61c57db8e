use std::collections::BTreeMap;

use super::{AlgebraError, Context, SparsePolynomial};

/// A ring homomorphism given by images of variables.
///
/// Variables without an assignment map to the target variable of the same
/// name.
#[derive(Clone, Debug)]
pub struct Substitution {
    target: Context,
    assignments: BTreeMap<String, SparsePolynomial>,
}

impl Substitution {
    pub fn new(target: &Context) -> Self {
        Substitution { target: target.clone(), assignments: BTreeMap::new() }
    }

    pub fn target(&self) -> &Context {
        &self.target
    }

    pub fn assign(&mut self, var: &str, image: SparsePolynomial) -> Result<&mut Self, AlgebraError> {
        if *image.context() != self.target {
            return Err(AlgebraError::ContextMismatch {
                left: self.target.names().to_vec(),
                right: image.context().names().to_vec(),
            });
        }
        self.assignments.insert(var.to_string(), image);
        Ok(self)
    }

    pub fn with(mut self, var: &str, image: SparsePolynomial) -> Result<Self, AlgebraError> {
        self.assign(var, image)?;
        Ok(self)
    }

    pub fn assignments(&self) -> impl Iterator<Item = (&str, &SparsePolynomial)> {
        self.assignments.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Image of `p`.
    pub fn apply(&self, p: &SparsePolynomial) -> Result<SparsePolynomial, AlgebraError> {
        let src = p.context();
        if let Some(stray) = self.assignments.keys().find(|v| !src.contains(v)) {
            return Err(AlgebraError::unknown(stray));
        }
        let images = src
            .names()
            .iter()
            .map(|v| match self.assignments.get(v) {
                Some(img) => Ok(img.clone()),
                None => SparsePolynomial::var(&self.target, v).map_err(|_| AlgebraError::UnassignedVariable(v.clone())),
            })
            .collect::<Result<Vec<_>, _>>()?;

        let mut powers: Vec<Vec<SparsePolynomial>> =
            images.iter().map(|_| vec![SparsePolynomial::one(&self.target)]).collect();
        let mut out = SparsePolynomial::zero(&self.target);
        for (e, c) in p.terms() {
            let mut t = SparsePolynomial::constant(&self.target, c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().try_mul(&images[i])?;
                    powers[i].push(next);
                }
                t = t.try_mul(&powers[i][k as usize])?;
            }
            out.accumulate(&t);
            if out.len() > super::limits::term_cap() {
                return Err(AlgebraError::TermCapExceeded { cap: super::limits::term_cap() });
            }
        }
        Ok(out)
    }
}

/// Applies `s` to `p`.
pub fn substitute(p: &SparsePolynomial, s: &Substitution) -> Result<SparsePolynomial, AlgebraError> {
    s.apply(p)
}
