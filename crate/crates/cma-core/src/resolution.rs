//! Minimal graded free resolutions.
//!
//! The resolution of `M` lives at complex indices `-L..0` and augments to `M`
//! at index 0; every differential has entries in the irrelevant ideal because
//! each syzygy step keeps only minimal generators.

use crate::complex::{betti_table, BettiTable, ChainComplex};
use crate::error::CaError;
use crate::freemod::Vector;
use crate::groebner;
use crate::module::{prune, GradedModule, ModRef, ModuleMap};
use crate::ring::GradedRing;

pub struct Resolution {
    pub module: ModRef,
    /// Complex at indices `-length..0`, exact except `H^0 = module`.
    pub complex: ChainComplex,
    /// Augmentation from the index-0 free cover onto the module.
    pub augmentation: ModuleMap,
}

impl Resolution {
    /// Free ranks `beta_0..beta_L`.
    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..self.complex.terms.len())
            .map(|k| self.complex.terms[self.complex.terms.len() - 1 - k].len())
            .collect()
    }

    pub fn betti(&self) -> Result<BettiTable, CaError> {
        betti_table(&self.complex)
    }

    /// The free module at step `i` (complex index `-i`).
    pub fn step_degs(&self, i: usize) -> &[i64] {
        self.complex.term(-(i as i64))
    }

    /// Syzygy module `Omega^i` presented as `coker(d: F_{i+1} -> F_i)`;
    /// requires `i + 1` steps of the resolution.
    pub fn syzygy_module(&self, i: usize) -> ModRef {
        assert!(
            (i as i64) < self.complex.terms.len() as i64,
            "resolution too short for syzygy {i}"
        );
        if i == 0 {
            return self.module.clone();
        }
        let ring = self.module.ring.clone();
        let degs = self.complex.term(-(i as i64)).to_vec();
        let rels = self.complex.diff(-(i as i64 + 1));
        GradedModule::new(ring, degs, rels).expect("syzygy presentation")
    }

    /// The map `Omega^i -> F_{i-1}` given by the differential (the generators
    /// of the syzygy module are the columns of `d_i`).
    pub fn syzygy_into_previous(&self, i: usize) -> ModuleMap {
        assert!(i >= 1);
        let omega = self.syzygy_module(i);
        let prev_degs = self.complex.term(-(i as i64 - 1)).to_vec();
        let free_prev = GradedModule::free(self.module.ring.clone(), prev_degs);
        let cols = self.complex.diff(-(i as i64));
        ModuleMap::new_unchecked(omega, free_prev, cols).expect("syzygy inclusion")
    }
}

/// Minimal graded free resolution of length `length` over the ring of `M`.
pub fn free_resolution(m: &ModRef, length: usize) -> Resolution {
    let ring = m.ring.clone();
    let (pruned, _, from_pruned) = prune(m);

    let mut terms: Vec<Vec<i64>> = vec![pruned.gen_degs.clone()];
    let mut diffs: Vec<Vec<Vector>> = Vec::new();

    let mut degs = pruned.gen_degs.clone();
    let mut rels = pruned.rel_cols.clone();
    for _ in 0..length {
        if degs.is_empty() || rels.is_empty() {
            diffs.push(Vec::new());
            terms.push(Vec::new());
            degs = Vec::new();
            rels = Vec::new();
            continue;
        }
        let col_degs: Vec<i64> = rels
            .iter()
            .map(|c| c.degree(&degs).unwrap().unwrap())
            .collect();
        let next_rels = groebner::kernel_gens(&rels, &degs, &ring);
        diffs.push(rels.clone());
        terms.push(col_degs.clone());
        degs = col_degs;
        rels = next_rels;
    }

    // complex indices -L..0: reverse the collected data
    terms.reverse();
    diffs.reverse();
    let complex = ChainComplex::new(ring.clone(), -(length as i64), terms, diffs)
        .expect("resolution complex");

    let f0 = GradedModule::free(ring, pruned.gen_degs.clone());
    let augmentation = ModuleMap::new_unchecked(f0, m.clone(), from_pruned.matrix.clone())
        .expect("augmentation");
    Resolution { module: m.clone(), complex, augmentation }
}

/// Graded Betti table of a module through homological step `max_step`.
pub fn betti_table_of_module(m: &ModRef, max_step: usize) -> BettiTable {
    free_resolution(m, max_step).betti().expect("resolution is minimal")
}

/// View `M` as a module over the ambient polynomial ring (relations plus the
/// defining ideal on every coordinate).
pub fn as_p_module(m: &ModRef) -> ModRef {
    let ring = &m.ring;
    let p_ring = GradedRing::polynomial_ring(ring.poly_ring().clone());
    let rank = m.rank_ambient();
    let mut rels = m.rel_cols.clone();
    for j in 0..rank {
        for g in ring.ideal_gb() {
            let mut v = Vector::zero(rank);
            v.coords[j] = g.clone();
            rels.push(v);
        }
    }
    GradedModule::new(p_ring, m.gen_degs.clone(), rels).expect("p-module presentation")
}

/// Projective dimension over the ambient polynomial ring (finite by the
/// syzygy theorem). Returns 0 for the zero module.
pub fn pd_over_p(m: &ModRef) -> usize {
    let pm = as_p_module(m);
    if pm.is_zero_module() {
        return 0;
    }
    let n = m.ring.nvars();
    let res = free_resolution(&pm, n + 1);
    let betti = res.betti_numbers();
    debug_assert_eq!(*betti.last().unwrap(), 0, "resolution over P longer than #vars");
    (0..=n).rev().find(|&i| betti[i] > 0).unwrap_or(0)
}

/// Depth via the Auslander-Buchsbaum formula over the polynomial ring.
pub fn depth(m: &ModRef) -> usize {
    m.ring.nvars() - pd_over_p(m)
}

/// The resolution of `M` over the polynomial ring.
pub fn resolution_over_p(m: &ModRef, length: usize) -> (ModRef, Resolution) {
    let pm = as_p_module(m);
    let res = free_resolution(&pm, length);
    (pm.clone(), res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::module::ideal_module;
    use crate::ring::{PolyRing, RingRef};

    fn reg2() -> RingRef {
        GradedRing::polynomial_ring(PolyRing::standard(&["u", "v"], 32003))
    }

    fn cone() -> RingRef {
        let p = PolyRing::standard(&["x", "y", "z"], 32003);
        let f = parse_poly("x^2 - y*z", &p).unwrap();
        GradedRing::new(p, vec![f]).unwrap()
    }

    #[test]
    fn koszul_resolution_of_k_over_regular_ring() {
        let r = reg2();
        let k = GradedModule::residue_field(r);
        let res = free_resolution(&k, 2);
        assert_eq!(res.betti_numbers(), vec![1, 2, 1]);
        let b = res.betti().unwrap();
        assert_eq!(b.entries.get(&(0, 0)), Some(&1));
        assert_eq!(b.entries.get(&(1, 1)), Some(&2));
        assert_eq!(b.entries.get(&(2, 2)), Some(&1));
        // exactness away from 0
        assert!(res.complex.is_exact_at(-1));
        let h0 = res.complex.homology(0);
        assert_eq!(h0.total_dim_if_finite(), Some(1));
    }

    #[test]
    fn resolution_of_k_over_quadric_cone() {
        let r = cone();
        let k = GradedModule::residue_field(r);
        let res = free_resolution(&k, 3);
        assert_eq!(res.betti_numbers(), vec![1, 3, 4, 4]);
        assert!(res.complex.is_minimal());
        for i in [-1i64, -2] {
            assert!(res.complex.is_exact_at(i));
        }
    }

    #[test]
    fn matrix_factorization_module_is_two_periodic() {
        // M1 = coker [[x, y], [z, x]] over the quadric cone
        let r = cone();
        let pr = r.poly_ring();
        let x = parse_poly("x", pr).unwrap();
        let y = parse_poly("y", pr).unwrap();
        let z = parse_poly("z", pr).unwrap();
        let m1 = GradedModule::new(
            r.clone(),
            vec![1, 1],
            vec![
                Vector { coords: vec![x.clone(), z.clone()] },
                Vector { coords: vec![y.clone(), x.clone()] },
            ],
        )
        .unwrap();
        let res = free_resolution(&m1, 3);
        assert_eq!(res.betti_numbers(), vec![2, 2, 2, 2]);
        assert!(res.complex.is_minimal());
    }

    #[test]
    fn maximal_ideal_over_cone_resolution() {
        let r = cone();
        let gens = ["x", "y", "z"]
            .iter()
            .map(|s| parse_poly(s, r.poly_ring()).unwrap())
            .collect::<Vec<_>>();
        let (m, _) = ideal_module(r, &gens).unwrap();
        let res = free_resolution(&m, 2);
        assert_eq!(res.betti_numbers(), vec![3, 4, 4]);
    }

    #[test]
    fn pd_over_polynomial_ring() {
        let r = cone();
        let k = GradedModule::residue_field(r.clone());
        assert_eq!(pd_over_p(&k), 3);
        assert_eq!(depth(&k), 0);
        let a = GradedModule::ring_module(r.clone());
        assert_eq!(pd_over_p(&a), 1);
        assert_eq!(depth(&a), 2);
        let r2 = reg2();
        let k2 = GradedModule::residue_field(r2);
        assert_eq!(pd_over_p(&k2), 2);
    }

    #[test]
    fn augmentation_is_surjective_with_syzygy_kernel() {
        let r = cone();
        let k = GradedModule::residue_field(r);
        let res = free_resolution(&k, 2);
        assert!(res.augmentation.is_surjective());
        let omega1 = res.syzygy_module(1);
        // first syzygy of k is the maximal ideal: 3 generators
        assert_eq!(omega1.mu(), 3);
    }
}
