//! Polynomial rings and connected graded quotient rings.

use crate::error::CaError;
use crate::field::Fp;
use crate::groebner;
use crate::hilbert::{self, Laurent};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use std::sync::Arc;

/// The ambient polynomial ring `P = k[x_1..x_n]` with positive weights.
#[derive(Clone, Debug)]
pub struct PolyRing {
    var_names: Vec<String>,
    weights: Vec<i64>,
    fp: Fp,
}

impl PolyRing {
    pub fn new(var_names: &[&str], weights: &[i64], p: u32) -> Self {
        assert_eq!(var_names.len(), weights.len());
        assert!(weights.iter().all(|&w| w > 0), "weights must be positive");
        PolyRing {
            var_names: var_names.iter().map(|s| s.to_string()).collect(),
            weights: weights.to_vec(),
            fp: Fp::new(p),
        }
    }

    pub fn standard(var_names: &[&str], p: u32) -> Self {
        let w = vec![1i64; var_names.len()];
        PolyRing::new(var_names, &w, p)
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn fp(&self) -> &Fp {
        &self.fp
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.var_names[i]
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    /// Sum of the variable weights; the canonical twist of `P` is `P(-n)`.
    pub fn weight_sum(&self) -> i64 {
        self.weights.iter().sum()
    }

    pub fn same_ring(&self, other: &PolyRing) -> bool {
        self.var_names == other.var_names
            && self.weights == other.weights
            && self.fp == other.fp
    }
}

/// A connected graded quotient `A = P/I` with cached Groebner data.
#[derive(Clone, Debug)]
pub struct GradedRing {
    poly: PolyRing,
    ideal_gens: Vec<Polynomial>,
    /// Reduced Groebner basis of the ideal (empty for `A = P`).
    gb: Vec<Polynomial>,
    dim: usize,
    degree: i64,
    hilbert_num: Laurent,
}

pub type RingRef = Arc<GradedRing>;

impl GradedRing {
    pub fn new(poly: PolyRing, ideal_gens: Vec<Polynomial>) -> Result<RingRef, CaError> {
        for (i, g) in ideal_gens.iter().enumerate() {
            if !g.is_homogeneous() {
                return Err(CaError::Homogeneity(format!(
                    "ideal generator {} is not homogeneous",
                    i + 1
                )));
            }
            if g.is_unit_constant() {
                return Err(CaError::Homogeneity(format!(
                    "ideal generator {} is a unit; the quotient would be zero",
                    i + 1
                )));
            }
        }
        let gens: Vec<Polynomial> =
            ideal_gens.iter().filter(|g| !g.is_zero()).cloned().collect();
        let gb = groebner::ideal_reduced_gb(&gens, &poly);
        let lts: Vec<Monomial> = gb
            .iter()
            .map(|g| g.leading().expect("gb member nonzero").0.clone())
            .collect();
        let dim = hilbert::dim_of_monomial_ideal(&lts, poly.nvars());
        let num = hilbert::monomial_ideal_numerator(&lts, poly.weights());
        let degree = hilbert::multiplicity(&num, poly.nvars(), dim, poly.weights());
        Ok(Arc::new(GradedRing {
            poly,
            ideal_gens,
            gb,
            dim,
            degree,
            hilbert_num: num,
        }))
    }

    pub fn polynomial_ring(poly: PolyRing) -> RingRef {
        GradedRing::new(poly, Vec::new()).expect("empty ideal is valid")
    }

    pub fn poly_ring(&self) -> &PolyRing {
        &self.poly
    }

    pub fn fp(&self) -> &Fp {
        self.poly.fp()
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn weights(&self) -> &[i64] {
        self.poly.weights()
    }

    pub fn ideal_gens(&self) -> &[Polynomial] {
        &self.ideal_gens
    }

    pub fn ideal_gb(&self) -> &[Polynomial] {
        &self.gb
    }

    /// Krull dimension of `A`, read off the initial ideal.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Codimension `c = #vars - dim`.
    pub fn codim(&self) -> usize {
        self.poly.nvars() - self.dim
    }

    /// Multiplicity of `A`.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn hilbert_numerator(&self) -> &Laurent {
        &self.hilbert_num
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.gb.is_empty()
    }

    /// Normal form of a polynomial modulo the ideal.
    pub fn nf_poly(&self, f: &Polynomial) -> Polynomial {
        groebner::poly_nf(f, &self.gb, &self.poly)
    }

    pub fn same_ring(&self, other: &GradedRing) -> bool {
        self.poly.same_ring(&other.poly) && self.gb == other.gb
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;

    #[test]
    fn polynomial_ring_dimension_and_degree() {
        let a = GradedRing::polynomial_ring(PolyRing::standard(&["u", "v"], 32003));
        assert_eq!(a.dim(), 2);
        assert_eq!(a.degree(), 1);
        assert_eq!(a.codim(), 0);
    }

    #[test]
    fn quadric_cone() {
        let p = PolyRing::standard(&["x", "y", "z"], 32003);
        let f = parse_poly("x^2 - y*z", &p).unwrap();
        let a = GradedRing::new(p, vec![f]).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.degree(), 2);
        assert_eq!(a.codim(), 1);
    }

    #[test]
    fn rational_normal_cubic_cone() {
        let p = PolyRing::standard(&["a", "b", "c", "d"], 32003);
        let gens = vec![
            parse_poly("b^2 - a*c", &p).unwrap(),
            parse_poly("b*c - a*d", &p).unwrap(),
            parse_poly("c^2 - b*d", &p).unwrap(),
        ];
        let a = GradedRing::new(p, gens).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.degree(), 3);
        assert_eq!(a.codim(), 2);
    }

    #[test]
    fn rejects_inhomogeneous_ideal() {
        let p = PolyRing::standard(&["x", "y"], 32003);
        let f = parse_poly("x^2 - y", &p).unwrap();
        assert!(GradedRing::new(p, vec![f]).is_err());
    }
}
