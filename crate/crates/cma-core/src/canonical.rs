//! Canonical modules, the maximal Cohen-Macaulay test, and duals into the
//! canonical module.
//!
//! For `A = P/I` with `P = k[x_1..x_N]`, `n = sum of weights` and
//! `c = N - dim A`, the canonical module is `Ext^c_P(A, P(-n))`, read off the
//! dual of the last step of the minimal `P`-free resolution when `A` is
//! Cohen-Macaulay (`pd_P A = c`).

use crate::error::CaError;
use crate::freemod::Vector;
use crate::homalg::ext_module;
use crate::module::{prune, GradedModule, ModRef};
use crate::resolution::{as_p_module, free_resolution, pd_over_p};
use crate::ring::RingRef;

#[derive(Clone)]
pub struct CanonicalModule {
    pub ring: RingRef,
    /// Pruned presentation of the canonical module over `A`.
    pub module: ModRef,
    /// Twist normalization: the canonical module of `P` is `P(-n)`.
    pub ambient_twist: i64,
}

impl CanonicalModule {
    pub fn mu(&self) -> usize {
        self.module.rank_ambient()
    }

    /// Gorenstein means the canonical module is free of rank one.
    pub fn is_free_rank_one(&self) -> bool {
        self.module.rank_ambient() == 1 && self.module.rel_cols.is_empty()
    }
}

/// Compute the canonical module; errors with `NotCohenMacaulay` when the
/// defining ideal is not perfect (`pd_P A != codim`).
pub fn canonical_module(ring: &RingRef) -> Result<CanonicalModule, CaError> {
    let n = ring.poly_ring().weight_sum();
    let c = ring.codim();
    let a = GradedModule::ring_module(ring.clone());
    if c == 0 {
        // the polynomial ring itself: omega = A(-n)
        return Ok(CanonicalModule {
            ring: ring.clone(),
            module: GradedModule::free(ring.clone(), vec![n]),
            ambient_twist: n,
        });
    }
    let pd = pd_over_p(&a);
    if pd != c {
        return Err(CaError::NotCohenMacaulay(format!(
            "pd_P(A) = {pd} but codim = {c}; Ext^i_P(A,P) does not vanish for i != codim"
        )));
    }
    let pm = as_p_module(&a);
    let res = free_resolution(&pm, c);
    // omega = coker of the transpose of the last differential, twisted by n:
    // Hom(F_c, P(-n)) has generator degrees n - d for each degree d of F_c.
    let f_c = res.complex.term(-(c as i64)).to_vec();
    let f_prev = res.complex.term(-(c as i64 - 1)).to_vec();
    let d_last = res.complex.diff(-(c as i64));
    let gen_degs: Vec<i64> = f_c.iter().map(|d| n - d).collect();
    let mut rels: Vec<Vector> = Vec::new();
    for (j, _) in f_prev.iter().enumerate() {
        let coords = d_last.iter().map(|col| col.coords[j].clone()).collect();
        rels.push(Vector { coords });
    }
    let omega_raw = GradedModule::new(ring.clone(), gen_degs, rels)?;
    let (omega, _, _) = prune(&omega_raw);
    Ok(CanonicalModule { ring: ring.clone(), module: omega, ambient_twist: n })
}

/// Status of the maximal Cohen-Macaulay test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct McmStatus {
    pub is_mcm: bool,
    /// The zero module is reported as vacuously MCM.
    pub vacuously_zero: bool,
}

/// `M` is maximal Cohen-Macaulay over `A` iff `Ext^i_P(M, P) = 0` for all
/// `i != codim(A)`, i.e. iff `pd_P M = codim(A)`.
pub fn is_mcm(m: &ModRef) -> McmStatus {
    if m.is_zero_module() {
        return McmStatus { is_mcm: true, vacuously_zero: true };
    }
    let c = m.ring.codim();
    McmStatus { is_mcm: pd_over_p(m) == c, vacuously_zero: false }
}

/// `M^v = Ext^{c'}_A(M, omega)` for a Cohen-Macaulay module of codepth `c'`;
/// all other Ext groups into `omega` must vanish.
pub fn dual_into_omega(
    m: &ModRef,
    codepth: usize,
    omega: &CanonicalModule,
) -> Result<ModRef, CaError> {
    let dim_a = m.ring.dim();
    for i in 0..=dim_a {
        if i == codepth {
            continue;
        }
        let e = ext_module(i, m, &omega.module);
        if !e.module.is_zero_module() {
            return Err(CaError::NotCodepthPure { expected: codepth, offending: i });
        }
    }
    let e = ext_module(codepth, m, &omega.module);
    let (d, _, _) = prune(&e.module);
    Ok(d)
}

/// Cohen-Macaulay type `t(A) = mu(omega)`.
pub fn cm_type(omega: &CanonicalModule) -> usize {
    omega.mu()
}
