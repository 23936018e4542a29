//! Laurent polynomials in W₀, W₁, …, W_k, with the W₀-action, the
//! divided differences used to move W's past T's, and evaluation on
//! modules.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hecke::matrix::SMat;
use crate::scalar::Field;

/// Σ coef·W₀^{λ₀}W₁^{λ₁}⋯W_k^{λ_k}; exponent vectors have length k+1.
#[derive(Clone, Debug)]
pub struct Laurent<F> {
    k: usize,
    terms: BTreeMap<Vec<i64>, F>,
}

impl<F: Field> PartialEq for Laurent<F> {
    fn eq(&self, o: &Self) -> bool {
        self.k == o.k
            && self.terms.len() == o.terms.len()
            && self
                .terms
                .iter()
                .zip(&o.terms)
                .all(|((e1, c1), (e2, c2))| e1 == e2 && c1.close(c2))
    }
}

impl<F: Field> Laurent<F> {
    pub fn zero(k: usize) -> Self {
        Laurent {
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(k: usize, c: F) -> Self {
        Self::monomial(k, vec![0; k + 1], c)
    }

    /// coef·W^λ for an exponent vector indexed 0..=k.
    pub fn monomial(k: usize, exps: Vec<i64>, coef: F) -> Self {
        assert_eq!(exps.len(), k + 1, "exponent vector length");
        let mut p = Self::zero(k);
        if !coef.is_zero() {
            p.terms.insert(exps, coef);
        }
        p
    }

    /// W_i^e.
    pub fn var(k: usize, i: usize, e: i64) -> Self {
        let mut exps = vec![0; k + 1];
        exps[i] = e;
        Self::monomial(k, exps, F::one())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &F)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn insert_add(&mut self, e: Vec<i64>, c: F) {
        let slot = self.terms.entry(e.clone()).or_insert_with(F::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.insert_add(e.clone(), c.clone());
        }
        r
    }

    pub fn scale(&self, s: &F) -> Self {
        let mut r = Self::zero(self.k);
        for (e, c) in &self.terms {
            r.insert_add(e.clone(), c.clone() * s.clone());
        }
        r
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(&-F::one()))
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut r = Self::zero(self.k);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<i64> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.insert_add(e, c1.clone() * c2.clone());
            }
        }
        r
    }

    /// Image under the simple reflection s_i of W₀ (i = 0 inverts W₁,
    /// i ≥ 1 swaps W_i and W_{i+1}; W₀ is fixed).
    pub fn reflect(&self, i: usize) -> Self {
        let mut r = Self::zero(self.k);
        for (e, c) in &self.terms {
            r.insert_add(reflect_exps(e, i), c.clone());
        }
        r
    }

    pub fn is_invariant(&self) -> bool {
        (0..self.k).all(|i| self.reflect(i) == *self)
    }

    /// (f − s_i f) / (1 − W_iW_{i+1}⁻¹) for i ≥ 1, or
    /// (f − s₀ f) / (1 − W₁⁻²) for i = 0. Always a Laurent polynomial.
    pub fn divided_difference(&self, i: usize) -> Self {
        let mut r = Self::zero(self.k);
        for (e, c) in &self.terms {
            let s = reflect_exps(e, i);
            // f = W^e = W^s · y^m with y = W_iW_{i+1}⁻¹ (or y = W₁⁻² for i = 0
            // and m = −e₁); (y^m − 1)/(1 − y) expanded as a finite sum
            let (step, m): (Vec<i64>, i64) = if i == 0 {
                let mut y = vec![0; self.k + 1];
                y[1] = -2;
                (y, -e[1])
            } else {
                let mut y = vec![0; self.k + 1];
                y[i] = 1;
                y[i + 1] = -1;
                (y, e[i] - e[i + 1])
            };
            let (range, sign): (Vec<i64>, i64) = if m > 0 {
                ((0..m).collect(), -1)
            } else {
                ((m..0).collect(), 1)
            };
            for p in range {
                let exps: Vec<i64> = s.iter().zip(&step).map(|(a, b)| a + p * b).collect();
                r.insert_add(exps, c.clone() * F::from_int(sign));
            }
        }
        r
    }

    /// Value at a point (W₀, W₁, …, W_k) ↦ (x₀, …, x_k).
    pub fn eval(&self, x: &[F]) -> Result<F> {
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (xi, &ei) in x.iter().zip(e) {
                term = term * xi.int_power(ei)?;
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// The operator on a module given the matrices of W₀, …, W_k.
    pub fn eval_matrices(&self, w: &[SMat<F>]) -> Result<SMat<F>> {
        let n = w[0].dim();
        let mut acc = SMat::zeros(n);
        for (e, c) in &self.terms {
            let mut term = SMat::scalar(n, c.clone());
            for (wi, &ei) in w.iter().zip(e) {
                if ei != 0 {
                    term = term.mul(&wi.pow(ei)?);
                }
            }
            acc = acc.add(&term);
        }
        Ok(acc)
    }
}

/// Exponent vector of s_i·W^e.
pub fn reflect_exps(e: &[i64], i: usize) -> Vec<i64> {
    let mut s = e.to_vec();
    if i == 0 {
        s[1] = -s[1];
    } else {
        s.swap(i, i + 1);
    }
    s
}

impl<F: Field> fmt::Display for Laurent<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| {
                        if x == 1 {
                            format!("W{i}")
                        } else {
                            format!("W{i}^{x}")
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else {
                    format!("({c})*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Parses "W0 + W1^-1 + 2*W1*W2" style text (integer coefficients).
pub fn parse_laurent<F: Field>(k: usize, s: &str) -> Result<Laurent<F>> {
    let mut p = Laurent::zero(k);
    let mut cleaned = String::new();
    for ch in s.chars().filter(|c| !c.is_whitespace()) {
        if ch == '-' && !cleaned.is_empty() && !cleaned.ends_with('^') && !cleaned.ends_with('+') {
            cleaned.push('+');
        }
        cleaned.push(ch);
    }
    for term in cleaned.split('+').filter(|t| !t.is_empty()) {
        let mut coef = F::one();
        let mut exps = vec![0i64; k + 1];
        let term = match term.strip_prefix("-W") {
            Some(rest) => {
                coef = -coef;
                format!("W{rest}")
            }
            None => term.to_string(),
        };
        for factor in term.split('*') {
            if let Some(rest) = factor.strip_prefix('W') {
                let (idx, e) = match rest.split_once('^') {
                    Some((i, e)) => (
                        i,
                        e.parse::<i64>()
                            .map_err(|_| Error::Parse(format!("bad exponent in {factor}")))?,
                    ),
                    None => (rest, 1),
                };
                let i: usize = idx
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad variable {factor}")))?;
                if i > k {
                    return Err(Error::Parse(format!(
                        "variable W{i} out of range for k = {k}"
                    )));
                }
                exps[i] += e;
            } else {
                let n: i64 = factor
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient {factor}")))?;
                coef = coef * F::from_int(n);
            }
        }
        p = p.add(&Laurent::monomial(k, exps, coef));
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use proptest::prelude::*;

    type L = Laurent<Scalar>;

    fn mono(e: Vec<i64>) -> L {
        let k = e.len() - 1;
        L::monomial(k, e, Scalar::one())
    }

    #[test]
    fn divided_difference_examples() {
        // (W1 − W2)/(1 − W1W2⁻¹) = −W2
        let f = mono(vec![0, 1, 0]);
        assert_eq!(
            f.divided_difference(1),
            mono(vec![0, 0, 1]).scale(&Scalar::int(-1))
        );
        // (W2 − W1)/(1 − W1W2⁻¹) = W2
        assert_eq!(
            mono(vec![0, 0, 1]).divided_difference(1),
            mono(vec![0, 0, 1])
        );
        // (W1 − W1⁻¹)/(1 − W1⁻²) = W1
        assert_eq!(f.divided_difference(0), mono(vec![0, 1, 0]));
        // symmetric input gives zero
        let g = mono(vec![0, 1, 1]);
        assert!(g.divided_difference(1).is_zero());
    }

    #[test]
    fn parse_and_invariance() {
        let p: L = parse_laurent(2, "W1 + W1^-1 + W2 + W2^-1").unwrap();
        assert!(p.is_invariant());
        let q: L = parse_laurent(2, "W1 + W2").unwrap();
        assert!(!q.is_invariant());
        let r: L = parse_laurent(2, "W0").unwrap();
        assert!(r.is_invariant());
        let s: L = parse_laurent(1, "2*W1 - W1^-1 - 3").unwrap();
        assert_eq!(
            s.eval(&[Scalar::one(), Scalar::int(2)]).unwrap(),
            Scalar::frac(1, 2)
        );
        assert!(parse_laurent::<Scalar>(1, "W3").is_err());
    }

    proptest! {
        #[test]
        fn divided_difference_identity(e in prop::collection::vec(-4i64..5, 3), i in 0usize..2, x1 in 2i64..6, x2 in 7i64..11) {
            // D(f)·(1 − y) = f − s_i f at a random point
            let f = mono(e);
            let d = f.divided_difference(i);
            let pt = vec![Scalar::int(3), Scalar::int(x1), Scalar::int(x2)];
            let y = if i == 0 {
                Scalar::int(x1).pow(-2).unwrap()
            } else {
                Scalar::frac(x1, x2)
            };
            let lhs = d.eval(&pt).unwrap() * (Scalar::one() - y);
            let rhs = f.eval(&pt).unwrap() - f.reflect(i).eval(&pt).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
