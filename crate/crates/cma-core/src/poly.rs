//! Sparse multivariate polynomials over `F_p`.
//!
//! Terms are kept strictly descending in degrevlex with no zero coefficients,
//! so equality is structural and the leading term is `terms[0]`.

use crate::field::Fp;
use crate::monomial::{degrevlex, Monomial};
use crate::ring::PolyRing;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    /// Sorted descending in the ring's order; coefficients nonzero.
    pub terms: Vec<(Monomial, u32)>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn one(ring: &PolyRing) -> Self {
        Polynomial { terms: vec![(Monomial::one(ring.nvars()), 1)] }
    }

    pub fn constant(c: u32, ring: &PolyRing) -> Self {
        if c == 0 {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(Monomial::one(ring.nvars()), c)] }
        }
    }

    pub fn var(i: usize, ring: &PolyRing) -> Self {
        Polynomial {
            terms: vec![(Monomial::var(i, ring.nvars(), ring.weights()), 1)],
        }
    }

    pub fn monomial(m: Monomial, c: u32) -> Self {
        if c == 0 {
            Polynomial::zero()
        } else {
            Polynomial { terms: vec![(m, c)] }
        }
    }

    pub fn leading(&self) -> Option<&(Monomial, u32)> {
        self.terms.first()
    }

    /// Weighted degree of the leading term (polynomials here are homogeneous
    /// in all graded contexts, so this is *the* degree).
    pub fn degree(&self) -> Option<i64> {
        self.terms.first().map(|(m, _)| m.deg)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => self.terms.iter().all(|(m, _)| m.deg == m0.deg),
        }
    }

    /// True if the polynomial is a nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    pub fn add(&self, other: &Polynomial, fp: &Fp) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match degrevlex(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = fp.add(self.terms[i].1, other.terms[j].1);
                    if c != 0 {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Polynomial { terms: out }
    }

    pub fn neg(&self, fp: &Fp) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), fp.neg(*c))).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial, fp: &Fp) -> Polynomial {
        self.add(&other.neg(fp), fp)
    }

    pub fn scale(&self, c: u32, fp: &Fp) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), fp.mul(*a, c))).collect(),
        }
    }

    /// Multiply by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: u32, fp: &Fp) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(a, b)| (a.mul(m), fp.mul(*b, c)))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial, fp: &Fp) -> Polynomial {
        let mut acc = Polynomial::zero();
        for (m, c) in &other.terms {
            acc = acc.add(&self.mul_term(m, *c, fp), fp);
        }
        acc
    }

    /// Normalize so the leading coefficient is one.
    pub fn monic(&self, fp: &Fp) -> Polynomial {
        match self.leading() {
            None => Polynomial::zero(),
            Some((_, c)) => self.scale(fp.inv(*c), fp),
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> u32 {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }

    /// Rebuild from possibly unsorted, possibly duplicated term data.
    pub fn from_terms(mut terms: Vec<(Monomial, u32)>, fp: &Fp) -> Polynomial {
        terms.sort_by(|a, b| degrevlex(&b.0, &a.0));
        let mut out: Vec<(Monomial, u32)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 = fp.add(last.1, c);
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|(_, c)| *c != 0);
        Polynomial { terms: out }
    }

    pub fn display(&self, ring: &PolyRing) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            if idx > 0 {
                s.push('+');
            }
            let mut factors: Vec<String> = Vec::new();
            if *c != 1 || m.is_one() {
                factors.push(format!("{c}"));
            }
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 1 {
                    factors.push(ring.var_name(i).to_string());
                } else if e > 1 {
                    factors.push(format!("{}^{}", ring.var_name(i), e));
                }
            }
            s.push_str(&factors.join("*"));
        }
        s
    }
}
