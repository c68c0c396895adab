//! Hilbert-series data from initial (monomial) ideals.
//!
//! The Hilbert series of `P/L` for a monomial ideal `L` is
//! `N(t) / prod_i (1 - t^{w_i})`; the numerator is computed by the classical
//! pivot recursion on the short exact sequence
//! `0 -> P/(L:p) -> P/L -> P/(L+p) -> 0`.

use crate::monomial::Monomial;

/// An integer Laurent polynomial: `coeffs[i]` is the coefficient of
/// `t^{offset + i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Laurent {
    pub offset: i64,
    pub coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent { offset: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Laurent { offset: 0, coeffs: vec![1] }
    }

    pub fn monomial(deg: i64, c: i64) -> Self {
        Laurent { offset: deg, coeffs: vec![c] }
    }

    pub fn normalize(mut self) -> Self {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead_zeros = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead_zeros > 0 {
            self.coeffs.drain(..lead_zeros);
            self.offset += lead_zeros as i64;
        }
        if self.coeffs.is_empty() {
            self.offset = 0;
        }
        self
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        if self.coeffs.is_empty() {
            return other.clone();
        }
        if other.coeffs.is_empty() {
            return self.clone();
        }
        let lo = self.offset.min(other.offset);
        let hi = (self.offset + self.coeffs.len() as i64)
            .max(other.offset + other.coeffs.len() as i64);
        let mut coeffs = vec![0i64; (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.offset - lo) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.offset - lo) as usize + i] += c;
        }
        Laurent { offset: lo, coeffs }.normalize()
    }

    pub fn scale_shift(&self, deg: i64, c: i64) -> Laurent {
        Laurent {
            offset: self.offset + deg,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
        .normalize()
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Exact division by `(1 - t)^k`; panics if the division is not exact.
    pub fn div_one_minus_t(&self, k: usize) -> Laurent {
        let mut cur = self.clone().normalize();
        for _ in 0..k {
            // divide by (1 - t): synthetic division
            if cur.coeffs.is_empty() {
                return cur;
            }
            let mut out = vec![0i64; cur.coeffs.len().saturating_sub(1)];
            let mut carry = 0i64;
            // (1-t) * q = cur  =>  q_i = cur_i + q_{i-1}
            for i in 0..cur.coeffs.len() {
                let q = cur.coeffs[i] + carry;
                if i + 1 == cur.coeffs.len() {
                    assert_eq!(q, 0, "numerator not divisible by (1-t)");
                } else {
                    out[i] = q;
                    carry = q;
                }
            }
            cur = Laurent { offset: cur.offset, coeffs: out }.normalize();
        }
        cur
    }
}

fn minimalize(gens: &[Monomial]) -> Vec<Monomial> {
    let mut sorted: Vec<Monomial> = gens.to_vec();
    sorted.sort_by_key(|m| m.deg);
    let mut out: Vec<Monomial> = Vec::new();
    for m in sorted {
        if !out.iter().any(|g| g.divides(&m)) {
            out.push(m);
        }
    }
    out
}

/// Numerator of the Hilbert series of `P/L` over `prod (1 - t^{w_i})`.
pub fn monomial_ideal_numerator(gens: &[Monomial], weights: &[i64]) -> Laurent {
    let gens = minimalize(gens);
    numerator_rec(&gens, weights)
}

fn numerator_rec(gens: &[Monomial], weights: &[i64]) -> Laurent {
    if gens.is_empty() {
        return Laurent::one();
    }
    if gens.iter().any(|m| m.is_one()) {
        return Laurent::zero();
    }
    if gens.len() == 1 {
        return Laurent::one().add(&Laurent::monomial(gens[0].deg, -1));
    }
    // all generators pure powers of distinct variables: product formula
    if gens.iter().all(|m| m.exps.iter().filter(|&&e| e > 0).count() == 1) {
        let mut acc = Laurent::one();
        for m in gens {
            acc = acc.add(&acc.scale_shift(m.deg, -1));
        }
        return acc;
    }
    // pivot: most frequent variable among non-pure generators
    let nvars = weights.len();
    let mut freq = vec![0usize; nvars];
    for m in gens {
        for (j, &e) in m.exps.iter().enumerate() {
            if e > 0 {
                freq[j] += 1;
            }
        }
    }
    let pivot_var = (0..nvars).max_by_key(|&j| freq[j]).unwrap();
    let pivot = Monomial::var(pivot_var, nvars, weights);

    // L + (x_j)
    let mut plus: Vec<Monomial> = vec![pivot.clone()];
    plus.extend(gens.iter().filter(|m| m.exps[pivot_var] == 0).cloned());
    let n_plus = numerator_rec(&minimalize(&plus), weights);

    // L : x_j
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            if m.exps[pivot_var] > 0 {
                m.checked_div(&pivot).unwrap()
            } else {
                m.clone()
            }
        })
        .collect();
    let n_colon = numerator_rec(&minimalize(&colon), weights);

    n_plus.add(&n_colon.scale_shift(pivot.deg, 1))
}

/// Krull dimension of `P/L` for a monomial ideal `L`: the largest size of a
/// set `S` of variables such that no generator has support inside `S`.
pub fn dim_of_monomial_ideal(gens: &[Monomial], nvars: usize) -> usize {
    let gens = minimalize(gens);
    if gens.iter().any(|m| m.is_one()) {
        return 0; // unit ideal: the zero ring; dimension reported as 0
    }
    let supports: Vec<u32> = gens
        .iter()
        .map(|m| {
            let mut mask = 0u32;
            for (j, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    mask |= 1 << j;
                }
            }
            mask
        })
        .collect();
    let mut best = 0usize;
    for s in 0u32..(1 << nvars) {
        if supports.iter().all(|&sup| sup & !s != 0) {
            best = best.max(s.count_ones() as usize);
        }
    }
    best
}

/// Multiplicity: value of `N(t) / (1-t)^{nvars - dim}` at `t = 1`, divided by
/// the product of the weights.
pub fn multiplicity(num: &Laurent, nvars: usize, dim: usize, weights: &[i64]) -> i64 {
    let reduced = num.div_one_minus_t(nvars - dim);
    let v = reduced.eval_at_one();
    let wprod: i64 = weights.iter().product();
    assert!(
        v % wprod == 0,
        "multiplicity {v} not divisible by weight product {wprod}"
    );
    v / wprod
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(exps: &[u16]) -> Monomial {
        let w = vec![1i64; exps.len()];
        Monomial::new(exps.to_vec(), &w)
    }

    #[test]
    fn numerator_of_single_quadric_initial_ideal() {
        // in(x^2 - yz) = x^2 under degrevlex
        let w = [1i64, 1, 1];
        let num = monomial_ideal_numerator(&[m(&[2, 0, 0])], &w);
        assert_eq!(num, Laurent { offset: 0, coeffs: vec![1, 0, -1] });
        assert_eq!(dim_of_monomial_ideal(&[m(&[2, 0, 0])], 3), 2);
        assert_eq!(multiplicity(&num, 3, 2, &w), 2);
    }

    #[test]
    fn brute_force_hilbert_function_agreement() {
        // L = (x^2, xy) in k[x,y,z]; count standard monomials per degree <= 8
        let gens = [m(&[2, 0, 0]), m(&[1, 1, 0])];
        let w = [1i64, 1, 1];
        let num = monomial_ideal_numerator(&gens, &w);
        // brute force: series of P = 1/(1-t)^3 times numerator, coefficients
        let mut series = vec![0i64; 9];
        for d in 0..=8usize {
            let mut count = 0i64;
            for a in 0..=d as u16 {
                for b in 0..=(d as u16 - a) {
                    let c = d as u16 - a - b;
                    let mono = m(&[a, b, c]);
                    if !gens.iter().any(|g| g.divides(&mono)) {
                        count += 1;
                    }
                }
            }
            series[d] = count;
        }
        // expand num / (1-t)^3 and compare
        let mut expanded = vec![0i64; 9];
        for (i, &c) in num.coeffs.iter().enumerate() {
            let d0 = num.offset + i as i64;
            for d in d0..=8 {
                if d >= 0 {
                    let k = (d - d0) as i64;
                    // coefficient of t^k in 1/(1-t)^3 is binom(k+2,2)
                    expanded[d as usize] += c * (k + 1) * (k + 2) / 2;
                }
            }
        }
        assert_eq!(series, expanded);
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dim_of_monomial_ideal(&[], 2), 2);
        assert_eq!(dim_of_monomial_ideal(&[m(&[1, 0]), m(&[0, 1])], 2), 0);
        assert_eq!(dim_of_monomial_ideal(&[m(&[1, 1])], 2), 1);
    }
}
