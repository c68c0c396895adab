//! Monomials with weighted total degree and the degrevlex order.

use std::cmp::Ordering;

/// A monomial in a fixed number of variables.
///
/// The weighted degree is cached so that order comparisons never need the
/// weight vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: Vec<u16>,
    pub deg: i64,
}

impl Monomial {
    pub fn new(exps: Vec<u16>, weights: &[i64]) -> Self {
        assert_eq!(exps.len(), weights.len(), "variable count mismatch");
        let deg = exps
            .iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum();
        Monomial { exps, deg }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], deg: 0 }
    }

    pub fn var(i: usize, nvars: usize, weights: &[i64]) -> Self {
        let mut exps = vec![0u16; nvars];
        exps[i] = 1;
        Monomial::new(exps, weights)
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a + b)
            .collect();
        Monomial { exps, deg: self.deg + other.deg }
    }

    /// `self / other` when `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (&a, &b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps, deg: self.deg - other.deg })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial, weights: &[i64]) -> Monomial {
        let exps: Vec<u16> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        Monomial::new(exps, weights)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }
}

/// Graded reverse lexicographic order: higher weighted degree first, ties by
/// reverse lexicography (the monomial with the *smaller* exponent on the last
/// differing variable wins).
pub fn degrevlex(a: &Monomial, b: &Monomial) -> Ordering {
    debug_assert_eq!(a.nvars(), b.nvars(), "variable count mismatch");
    match a.deg.cmp(&b.deg) {
        Ordering::Equal => {}
        ord => return ord,
    }
    for i in (0..a.exps.len()).rev() {
        match a.exps[i].cmp(&b.exps[i]) {
            Ordering::Equal => {}
            Ordering::Less => return Ordering::Greater,
            Ordering::Greater => return Ordering::Less,
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u16]) -> Monomial {
        let w = vec![1i64; exps.len()];
        Monomial::new(exps.to_vec(), &w)
    }

    #[test]
    fn order_definition_examples() {
        // x vs y in k[x,y]
        assert_eq!(degrevlex(&m(&[1, 0]), &m(&[0, 1])), Ordering::Greater);
        // x^2 vs x*y: revlex tie-break
        assert_eq!(degrevlex(&m(&[2, 0]), &m(&[1, 1])), Ordering::Greater);
        // x*y^2 vs x^2*z in k[x,y,z]: last variable exponent smaller wins
        assert_eq!(degrevlex(&m(&[1, 2, 0]), &m(&[2, 0, 1])), Ordering::Greater);
    }

    #[test]
    fn total_order_compatible_with_multiplication() {
        // exhaustive on monomials of degree <= 4 in 3 variables
        let mut all = Vec::new();
        for a in 0..=4u16 {
            for b in 0..=4u16 {
                for c in 0..=4u16 {
                    if a + b + c <= 4 {
                        all.push(m(&[a, b, c]));
                    }
                }
            }
        }
        for x in &all {
            for y in &all {
                let o = degrevlex(x, y);
                // totality + antisymmetry
                assert_eq!(degrevlex(y, x), o.reverse());
                if o == Ordering::Equal {
                    assert_eq!(x, y);
                }
                for z in &all {
                    // multiplicativity: x > y => xz > yz
                    assert_eq!(degrevlex(&x.mul(z), &y.mul(z)), o);
                }
            }
        }
    }

    #[test]
    fn division_and_lcm() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 0, 0]);
        assert_eq!(a.checked_div(&b), Some(m(&[1, 1, 0])));
        assert_eq!(b.checked_div(&a), None);
        assert!(b.divides(&a));
        assert_eq!(a.lcm(&m(&[0, 2, 1]), &[1, 1, 1]), m(&[2, 2, 1]));
        assert!(m(&[1, 0, 0]).coprime(&m(&[0, 2, 1])));
        assert!(!m(&[1, 1, 0]).coprime(&m(&[0, 2, 1])));
    }
}
