//! Elements of twisted graded free modules.
//!
//! A free module is described by the degrees of its basis vectors
//! (`gen_degs`); the basis vector `e_i` of `A(-d)` has `gen_deg = d`. An
//! element is a vector of polynomials, homogeneous when
//! `deg(coord_i) + gen_deg_i` is constant over its nonzero coordinates.

use crate::field::Fp;
use crate::monomial::{degrevlex, Monomial};
use crate::poly::Polynomial;
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    pub coords: Vec<Polynomial>,
}

/// A term of a free-module element: position, monomial, coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModTerm {
    pub pos: usize,
    pub mono: Monomial,
    pub coeff: u32,
}

impl Vector {
    pub fn zero(rank: usize) -> Self {
        Vector { coords: vec![Polynomial::zero(); rank] }
    }

    pub fn unit(pos: usize, rank: usize, nvars: usize) -> Self {
        let mut v = Vector::zero(rank);
        v.coords[pos] = Polynomial::monomial(Monomial::one(nvars), 1);
        v
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &Vector, fp: &Fp) -> Vector {
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b, fp))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Vector, fp: &Fp) -> Vector {
        Vector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(b, fp))
                .collect(),
        }
    }

    pub fn neg(&self, fp: &Fp) -> Vector {
        Vector { coords: self.coords.iter().map(|p| p.neg(fp)).collect() }
    }

    pub fn scale(&self, c: u32, fp: &Fp) -> Vector {
        Vector { coords: self.coords.iter().map(|p| p.scale(c, fp)).collect() }
    }

    pub fn mul_term(&self, m: &Monomial, c: u32, fp: &Fp) -> Vector {
        Vector {
            coords: self.coords.iter().map(|p| p.mul_term(m, c, fp)).collect(),
        }
    }

    pub fn mul_poly(&self, q: &Polynomial, fp: &Fp) -> Vector {
        Vector { coords: self.coords.iter().map(|p| p.mul(q, fp)).collect() }
    }

    /// Homogeneous degree with respect to `gen_degs`; `None` for zero,
    /// `Err` when inhomogeneous.
    pub fn degree(&self, gen_degs: &[i64]) -> Result<Option<i64>, ()> {
        let mut deg: Option<i64> = None;
        for (p, &d) in self.coords.iter().zip(gen_degs) {
            if p.is_zero() {
                continue;
            }
            if !p.is_homogeneous() {
                return Err(());
            }
            let pd = p.degree().unwrap() + d;
            match deg {
                None => deg = Some(pd),
                Some(existing) if existing == pd => {}
                _ => return Err(()),
            }
        }
        Ok(deg)
    }

    /// Leading term under the term-over-position degrevlex order.
    pub fn leading(&self, gen_degs: &[i64]) -> Option<ModTerm> {
        let mut best: Option<ModTerm> = None;
        for (pos, p) in self.coords.iter().enumerate() {
            if let Some((m, c)) = p.leading() {
                let cand = ModTerm { pos, mono: m.clone(), coeff: *c };
                best = match best {
                    None => Some(cand),
                    Some(cur) => {
                        if term_cmp(&cand, &cur, gen_degs) == Ordering::Greater {
                            Some(cand)
                        } else {
                            Some(cur)
                        }
                    }
                };
            }
        }
        best
    }

    pub fn monic(&self, gen_degs: &[i64], fp: &Fp) -> Vector {
        match self.leading(gen_degs) {
            None => self.clone(),
            Some(t) => self.scale(fp.inv(t.coeff), fp),
        }
    }

    pub fn coeff_of(&self, t: &ModTerm) -> u32 {
        self.coords[t.pos].coeff_of(&t.mono)
    }
}

/// Term-over-position order: shifted total degree first, then degrevlex on
/// the monomial, then lower position wins. Compatible with multiplication.
pub fn term_cmp(a: &ModTerm, b: &ModTerm, gen_degs: &[i64]) -> Ordering {
    let da = a.mono.deg + gen_degs[a.pos];
    let db = b.mono.deg + gen_degs[b.pos];
    match da.cmp(&db) {
        Ordering::Equal => {}
        ord => return ord,
    }
    match degrevlex(&a.mono, &b.mono) {
        Ordering::Equal => {}
        ord => return ord,
    }
    b.pos.cmp(&a.pos)
}

/// Iterate the terms of a vector in descending order.
pub fn terms_desc(v: &Vector, gen_degs: &[i64]) -> Vec<ModTerm> {
    let mut ts: Vec<ModTerm> = Vec::new();
    for (pos, p) in v.coords.iter().enumerate() {
        for (m, c) in &p.terms {
            ts.push(ModTerm { pos, mono: m.clone(), coeff: *c });
        }
    }
    ts.sort_by(|x, y| term_cmp(y, x, gen_degs));
    ts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PolyRing;

    #[test]
    fn leading_term_top_order() {
        let r = PolyRing::standard(&["u", "v"], 32003);
        let u = Polynomial::var(0, &r);
        let v = Polynomial::var(1, &r);
        let vec = Vector { coords: vec![u.clone(), v.clone()] };
        // equal twists: degrevlex on monomials decides, u > v
        let lt = vec.leading(&[0, 0]).unwrap();
        assert_eq!(lt.pos, 0);
        // a twist on the first coordinate pushes its shifted degree higher
        let lt = vec.leading(&[3, 0]).unwrap();
        assert_eq!(lt.pos, 0);
        // ... and a negative twist drops it below
        let lt = vec.leading(&[-5, 0]).unwrap();
        assert_eq!(lt.pos, 1);
    }

    #[test]
    fn homogeneity_detection() {
        let r = PolyRing::standard(&["u", "v"], 32003);
        let u = Polynomial::var(0, &r);
        let one = Polynomial::one(&r);
        let vec = Vector { coords: vec![u.clone(), one.clone()] };
        assert_eq!(vec.degree(&[0, 1]), Ok(Some(1)));
        assert!(vec.degree(&[0, 0]).is_err());
    }
}
