use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::{format_rat, Rat};

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are keyed by exponent vectors; the map order is lexicographic with
/// the first variable most significant, so the last key is the leading term.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<u32>, Rat>,
}

impl MPoly {
    pub fn zero(vars: Arc<[String]>) -> Self {
        MPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: Arc<[String]>, c: Rat) -> Self {
        let mut p = Self::zero(vars);
        let n = p.vars.len();
        p.add_term(vec![0; n], c);
        p
    }

    /// The `i`-th variable.
    pub fn var(vars: Arc<[String]>, i: usize) -> Self {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(e, Rat::one());
        p
    }

    /// `sum_k coeffs[k] * x_k`.
    pub fn linear(vars: Arc<[String]>, coeffs: &[(usize, Rat)]) -> Self {
        let n = vars.len();
        let mut p = Self::zero(vars);
        for (k, c) in coeffs {
            let mut e = vec![0; n];
            e[*k] = 1;
            p.add_term(e, c.clone());
        }
        p
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn leading(&self) -> Option<(&Vec<u32>, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &Rat) -> MPoly {
        if s.is_zero() {
            return Self::zero(self.vars.clone());
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut out = Self::zero(self.vars.clone());
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a
    /// remainder. Panics on a zero divisor.
    pub fn exact_div(&self, divisor: &MPoly) -> Option<MPoly> {
        let (le, lc) = divisor.leading().expect("division by the zero polynomial");
        let mut rem = self.clone();
        let mut quot = Self::zero(self.vars.clone());
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(le).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(le).map(|(a, b)| a - b).collect();
            let c = rc / lc;
            let mut t = Self::zero(self.vars.clone());
            t.add_term(e, c);
            rem = rem.sub(&t.mul(divisor));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len(), "evaluation point length");
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    for _ in 0..k {
                        v *= x;
                    }
                }
                v
            })
            .sum()
    }

    /// True when `self = s * other` for some nonzero rational `s`.
    pub fn proportional_to(&self, other: &MPoly) -> bool {
        if self.terms.len() != other.terms.len() || self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        let (e0, c0) = self.leading().unwrap();
        let Some(d0) = other.terms.get(e0) else {
            return false;
        };
        let s = c0 / d0;
        self.terms
            .iter()
            .all(|(e, c)| other.terms.get(e).is_some_and(|d| *c == d * &s))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| {
                    if k == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], k)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", format_rat(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rat(&abs), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::rat;

    fn vars(names: &[&str]) -> Arc<[String]> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn arithmetic_and_display() {
        let v = vars(&["x", "y"]);
        let x = MPoly::var(v.clone(), 0);
        let y = MPoly::var(v.clone(), 1);
        let p = x.add(&y).mul(&x.sub(&y));
        assert_eq!(p.to_string(), "x^2 - y^2");
        assert_eq!(p.total_degree(), Some(2));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.eval(&[rat(3), rat(1)]), rat(8));
    }

    #[test]
    fn exact_division() {
        let v = vars(&["x", "y", "z"]);
        let x = MPoly::var(v.clone(), 0);
        let y = MPoly::var(v.clone(), 1);
        let z = MPoly::var(v.clone(), 2);
        let a = x.mul(&y).add(&z.scale(&rat(2)));
        let b = x.sub(&z);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert!(a.exact_div(&b).is_none());
    }

    #[test]
    fn proportionality() {
        let v = vars(&["e", "x", "z"]);
        let e = MPoly::var(v.clone(), 0);
        let x = MPoly::var(v.clone(), 1);
        let z = MPoly::var(v.clone(), 2);
        let p = e.mul(&e).sub(&x.mul(&z).scale(&rat(2)));
        assert!(p.scale(&rat(-3)).proportional_to(&p));
        assert!(!p.proportional_to(&e.mul(&e)));
        assert!(MPoly::zero(v.clone()).proportional_to(&MPoly::zero(v)));
    }
}
