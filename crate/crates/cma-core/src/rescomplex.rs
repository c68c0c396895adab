//! Minimal representing complexes of canonical-module powers, and the
//! numerical invariants read off them.
//!
//! A representing complex of `N` is a complex `D^*` of twisted canonical
//! modules, exact except `H^0 = N`, with MCM kernels in non-negative indices.
//! It is assembled by splicing the minimal canonical resolution of `L` (from
//! the approximation `L -> M -> N`), the cogenerator cover of `M` at index 0,
//! and the iterated cogenerator coresolution of `M'` on the positive side.
//! Internally the complex is carried in transported form: the term at index
//! `i` is described by generator degrees `degs` (copy `j` stands for
//! `omega(-degs[j])`), and differentials are matrices over `A` acting by
//! multiplication; `Hom(omega, -)` identifies this with a complex of frees.

use crate::approx::{ab2_embedding, mcm_approximation, ApproximationResult};
use crate::canonical::CanonicalModule;
use crate::complex::{minimalize_complex, ChainComplex};
use crate::error::CaError;
use crate::freemod::Vector;
use crate::homalg::{copies_of, hom_module, module_isomorphic, IsoCheck};
use crate::invariants::{omega_rank, sharp_transport, InvariantTable};
use crate::module::{monomials_of_weighted_degree, prune, GradedModule, ModRef, ModuleMap};
use crate::poly::Polynomial;
use crate::resolution::free_resolution;
use crate::ring::RingRef;
use std::collections::BTreeMap;

pub struct RepresentingComplex {
    pub module: ModRef,
    pub omega: CanonicalModule,
    /// Transported complex over indices `[-window, window]`.
    pub complex: ChainComplex,
    pub window: usize,
    /// `M = ker d^0`, realized and pruned.
    pub m_marker: ModRef,
    /// `L' = coker d^{-1}`, realized and pruned.
    pub lp_marker: ModRef,
    /// The minimal approximation/hull pair the complex was spliced from.
    pub approx: ApproximationResult,
}

impl RepresentingComplex {
    /// Multiplicity of canonical summands at index `i`.
    pub fn d_rank(&self, i: i64) -> usize {
        self.complex.rank(i)
    }

    /// Realize the term at index `i` as an actual module.
    pub fn realize_term(&self, i: i64) -> ModRef {
        copies_of(&self.omega.module, self.complex.term(i))
    }

    /// Realize the differential `d^i` as a module map.
    pub fn realize_diff(&self, i: i64) -> ModuleMap {
        realize_matrix(
            &self.omega,
            self.complex.term(i),
            self.complex.term(i + 1),
            &self.complex.diff(i),
        )
    }

    /// Homology of the realized complex at index `i`, pruned.
    pub fn realized_homology(&self, i: i64) -> ModRef {
        let term = self.realize_term(i);
        if term.rank_ambient() == 0 {
            return GradedModule::zero(self.module.ring.clone());
        }
        let ker_gens: Vec<Vector> = if i >= self.complex.hi() {
            (0..term.rank_ambient())
                .map(|j| Vector::unit(j, term.rank_ambient(), self.module.ring.nvars()))
                .collect()
        } else {
            let d = self.realize_diff(i);
            let (_, incl) = d.kernel();
            incl.matrix
        };
        let mut rels = term.rel_cols.clone();
        if i > self.complex.lo {
            let dprev = self.realize_diff(i - 1);
            rels.extend(dprev.matrix.iter().cloned());
        }
        let (h, _) = crate::module::subquotient(
            self.module.ring.clone(),
            &term.gen_degs,
            ker_gens,
            &rels,
        );
        let (p, _, _) = prune(&h);
        p
    }

    /// Split the complex at zero: recover the approximation
    /// `0 -> L -> M -> H^0 -> 0` and the hull `0 -> H^0 -> L' -> M' -> 0`
    /// from the markers (reconstruction check lives in the test suite).
    pub fn split_at_zero(&self) -> (ModRef, ModRef, ModRef, ModRef) {
        let l = self.l_marker();
        let mp = self.mp_marker();
        (l, self.m_marker.clone(), self.lp_marker.clone(), mp)
    }

    /// `L = im d^{-1}`, realized and pruned.
    pub fn l_marker(&self) -> ModRef {
        if self.complex.rank(-1) == 0 {
            return GradedModule::zero(self.module.ring.clone());
        }
        let d = self.realize_diff(-1);
        let term = self.realize_term(0);
        let (img, _) = crate::module::subquotient(
            self.module.ring.clone(),
            &term.gen_degs,
            d.matrix.clone(),
            &term.rel_cols,
        );
        let (p, _, _) = prune(&img);
        p
    }

    /// `M' = ker d^1 = im d^0`, realized and pruned.
    pub fn mp_marker(&self) -> ModRef {
        if self.complex.rank(1) == 0 {
            return GradedModule::zero(self.module.ring.clone());
        }
        let d = self.realize_diff(0);
        let term = self.realize_term(1);
        let (img, _) = crate::module::subquotient(
            self.module.ring.clone(),
            &term.gen_degs,
            d.matrix.clone(),
            &term.rel_cols,
        );
        let (p, _, _) = prune(&img);
        p
    }

    /// Cokernel of `d^{-i-1}`, the `i`-th syzygy on the canonical resolution
    /// side (`i = 0` gives `L'`).
    pub fn omega_cosyzygy(&self, i: usize) -> ModRef {
        if i == 0 {
            return self.lp_marker.clone();
        }
        let idx = -(i as i64);
        let term = self.realize_term(idx);
        if term.rank_ambient() == 0 {
            return GradedModule::zero(self.module.ring.clone());
        }
        let mut rels = term.rel_cols.clone();
        if self.complex.rank(idx - 1) > 0 {
            let d = self.realize_diff(idx - 1);
            rels.extend(d.matrix.iter().cloned());
        }
        let q = GradedModule::new(self.module.ring.clone(), term.gen_degs.clone(), rels)
            .expect("cosyzygy presentation");
        let (p, _, _) = prune(&q);
        p
    }
}

/// Extract the multiplier `a` with `T = a * id` for a homogeneous map
/// `omega(-g) -> omega(-g')` of multiplication type; `delta = g - g'`.
fn extract_multiplier(
    t_cols: &[Vector],
    omega_mod: &ModRef,
    delta: i64,
) -> Result<Polynomial, CaError> {
    let ring = &omega_mod.ring;
    let fp = ring.fp();
    if delta < 0 {
        // negative degree: the map must vanish
        for col in t_cols {
            if !omega_mod.element_is_zero(col) {
                return Err(CaError::Internal(
                    "negative-degree block of a canonical-power map is nonzero".into(),
                ));
            }
        }
        return Ok(Polynomial::zero());
    }
    let init = omega_mod.initial_by_position();
    // standard monomial basis of A_delta
    let flat_init: Vec<_> = ring
        .ideal_gb()
        .iter()
        .map(|g| g.leading().unwrap().0.clone())
        .collect();
    let _ = init;
    let basis: Vec<_> = monomials_of_weighted_degree(delta, ring.weights())
        .into_iter()
        .filter(|m| !flat_init.iter().any(|g| g.divides(m)))
        .collect();
    // unknown a = sum c_u * basis[u]; rows from NF(T e_b) = NF(a e_b)
    let mut rows: Vec<Vec<u32>> = Vec::new();
    let mut rhs: Vec<u32> = Vec::new();
    let mut row_index: BTreeMap<(usize, usize, Vec<u16>), usize> = BTreeMap::new();
    let rank = omega_mod.rank_ambient();
    let nv = ring.nvars();
    for b in 0..rank {
        let e = Vector::unit(b, rank, nv);
        let target_nf = omega_mod.nf(&t_cols[b]);
        for (u, mono) in basis.iter().enumerate() {
            let me = e.mul_term(mono, 1, fp);
            let nf = omega_mod.nf(&me);
            for (t, p) in nf.coords.iter().enumerate() {
                for (mm, c) in &p.terms {
                    let key = (b, t, mm.exps.clone());
                    let r = *row_index.entry(key).or_insert_with(|| {
                        rows.push(vec![0u32; basis.len()]);
                        rhs.push(0);
                        rows.len() - 1
                    });
                    rows[r][u] = fp.add(rows[r][u], *c);
                }
            }
        }
        for (t, p) in target_nf.coords.iter().enumerate() {
            for (mm, c) in &p.terms {
                let key = (b, t, mm.exps.clone());
                let r = *row_index.entry(key).or_insert_with(|| {
                    rows.push(vec![0u32; basis.len()]);
                    rhs.push(0);
                    rows.len() - 1
                });
                rhs[r] = fp.add(rhs[r], *c);
            }
        }
    }
    // solve rows * c = rhs
    let ncols = basis.len();
    let mut m: Vec<Vec<u32>> = rows
        .iter()
        .zip(&rhs)
        .map(|(r, b)| {
            let mut v = r.clone();
            v.push(*b);
            v
        })
        .collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut rank_m = 0usize;
    for col in 0..ncols {
        let mut sel = None;
        for r in rank_m..m.len() {
            if m[r][col] != 0 {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        m.swap(rank_m, sel);
        let inv = fp.inv(m[rank_m][col]);
        for v in m[rank_m].iter_mut() {
            *v = fp.mul(*v, inv);
        }
        let pivot = m[rank_m].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank_m && row[col] != 0 {
                let f = row[col];
                for (a, p) in row.iter_mut().zip(&pivot) {
                    *a = fp.sub(*a, fp.mul(f, *p));
                }
            }
        }
        pivots.push((rank_m, col));
        rank_m += 1;
    }
    for row in m.iter().skip(rank_m) {
        if *row.last().unwrap() != 0 {
            return Err(CaError::Internal(
                "canonical-power block is not of multiplication type".into(),
            ));
        }
    }
    let mut coeffs = vec![0u32; ncols];
    for (r, col) in pivots {
        coeffs[col] = m[r][ncols];
    }
    let terms: Vec<(crate::monomial::Monomial, u32)> = basis
        .into_iter()
        .zip(coeffs)
        .filter(|(_, c)| *c != 0)
        .collect();
    Ok(Polynomial::from_terms(terms, fp))
}

/// Transport a realized map of canonical powers to its matrix over `A`.
fn transport_matrix(
    realized_cols: &[Vector],
    src_degs: &[i64],
    tgt_degs: &[i64],
    omega: &CanonicalModule,
) -> Result<Vec<Vector>, CaError> {
    let rank = omega.module.rank_ambient();
    let mut out: Vec<Vector> = Vec::with_capacity(src_degs.len());
    for (c, &gc) in src_degs.iter().enumerate() {
        let mut coords: Vec<Polynomial> = Vec::with_capacity(tgt_degs.len());
        for (r, &gr) in tgt_degs.iter().enumerate() {
            // block (r, c): images of copy c generators, restricted to copy r
            let block: Vec<Vector> = (0..rank)
                .map(|b| Vector {
                    coords: realized_cols[c * rank + b].coords[r * rank..(r + 1) * rank]
                        .to_vec(),
                })
                .collect();
            coords.push(extract_multiplier(&block, &omega.module, gc - gr)?);
        }
        out.push(Vector { coords });
    }
    Ok(out)
}

/// Realize a transported matrix as a map of actual canonical-power modules.
fn realize_matrix(
    omega: &CanonicalModule,
    src_degs: &[i64],
    tgt_degs: &[i64],
    a_cols: &[Vector],
) -> ModuleMap {
    let src = copies_of(&omega.module, src_degs);
    let tgt = copies_of(&omega.module, tgt_degs);
    let rank = omega.module.rank_ambient();
    let fp = omega.module.ring.fp();
    let mut cols: Vec<Vector> = Vec::with_capacity(src.rank_ambient());
    for (c, acol) in a_cols.iter().enumerate() {
        let _ = c;
        for b in 0..rank {
            let mut v = Vector::zero(tgt.rank_ambient());
            for (r, a) in acol.coords.iter().enumerate() {
                if !a.is_zero() {
                    let mut e = Vector::zero(tgt.rank_ambient());
                    e.coords[r * rank + b] = a.clone();
                    v = v.add(&e, fp);
                }
            }
            cols.push(v);
        }
    }
    ModuleMap::new_unchecked(src, tgt, cols).expect("realized matrix")
}

/// Build the minimal representing complex of `N` over the window
/// `[-window, window]`.
pub fn representing_complex(
    n: &ModRef,
    window: usize,
    omega: &CanonicalModule,
) -> Result<RepresentingComplex, CaError> {
    let res = mcm_approximation(n, omega)?;
    representing_complex_from(n, window, omega, res)
}

pub fn representing_complex_from(
    n: &ModRef,
    window: usize,
    omega: &CanonicalModule,
    res: ApproximationResult,
) -> Result<RepresentingComplex, CaError> {
    let ring = n.ring.clone();
    let fp = ring.fp();
    let w = window;

    let mut degs_by_index: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    let mut diffs_by_index: BTreeMap<i64, Vec<Vector>> = BTreeMap::new();

    // negative side: minimal canonical resolution of L via the Sharp transport
    let l = res.l();
    let (neg_q_res, q_maps) = if l.is_zero_module() {
        (None, Vec::new())
    } else {
        let st = sharp_transport(l, omega)?;
        let h = hom_module(&omega.module, l);
        let (qp, _, from_p) = prune(&h.module);
        // realized generator maps omega -> L for the pruned generators
        let rank_omega = omega.module.rank_ambient();
        let mut maps: Vec<Vec<Vector>> = Vec::new();
        for col in &from_p.matrix {
            let mut mj: Vec<Vector> =
                (0..rank_omega).map(|_| Vector::zero(l.rank_ambient())).collect();
            for (g, coeff) in col.coords.iter().enumerate() {
                if coeff.is_zero() {
                    continue;
                }
                for (b, slot) in mj.iter_mut().enumerate() {
                    *slot = slot.add(&h.gens[g][b].mul_poly(coeff, fp), fp);
                }
            }
            maps.push(mj);
        }
        let fr = free_resolution(&qp, w);
        let _ = st;
        (Some(fr), maps)
    };
    if let Some(fr) = &neg_q_res {
        for i in 0..w {
            degs_by_index.insert(-(i as i64) - 1, fr.step_degs(i).to_vec());
        }
        // differentials within the negative part: d^{-i-2}: D^{-i-2} -> D^{-i-1}
        for i in 0..w.saturating_sub(1) {
            let d = fr.complex.diff(-(i as i64 + 1));
            diffs_by_index.insert(-(i as i64) - 2, d);
        }
    } else {
        for i in 0..w {
            degs_by_index.insert(-(i as i64) - 1, Vec::new());
        }
        for i in 0..w.saturating_sub(1) {
            diffs_by_index.insert(-(i as i64) - 2, Vec::new());
        }
    }

    // index 0: cogenerator cover of M
    let m_mod = res.m();
    let (d0_degs, emb, m_prime_1, proj0) = if m_mod.is_zero_module() {
        (Vec::new(), None, GradedModule::zero(ring.clone()), None)
    } else {
        let ab2 = ab2_embedding(m_mod, omega)?;
        let degs: Vec<i64> = ab2.shifts.iter().map(|d| -d).collect();
        (
            degs,
            Some(ab2.seq.left.clone()),
            ab2.seq.last().clone(),
            Some(ab2.seq.right.clone()),
        )
    };
    degs_by_index.insert(0, d0_degs.clone());

    // d^{-1}: composite D^{-1} ->> L -> M -> D^0, transported
    if let Some(fr) = &neg_q_res {
        let f0_degs = fr.step_degs(0).to_vec();
        if !f0_degs.is_empty() && !d0_degs.is_empty() {
            let emb = emb.as_ref().unwrap();
            let left = &res.approximation.left; // L -> M
            let rank_omega = omega.module.rank_ambient();
            let mut realized_cols: Vec<Vector> = Vec::new();
            for mj in &q_maps {
                for b in 0..rank_omega {
                    // q_j(e_b) in L, then into M, then into D^0
                    let in_l = &mj[b];
                    let in_m = left.apply_ambient(in_l);
                    let in_d0 = emb.apply_ambient(&in_m);
                    realized_cols.push(in_d0);
                }
            }
            let a_cols = transport_matrix(&realized_cols, &f0_degs, &d0_degs, omega)?;
            diffs_by_index.insert(-1, a_cols);
        } else {
            diffs_by_index.insert(-1, vec![Vector::zero(d0_degs.len()); f0_degs.len()]);
        }
    } else {
        diffs_by_index.insert(-1, Vec::new());
    }

    // positive side: iterated cogenerator coresolution of M'
    let mut prev_degs = d0_degs.clone();
    let mut prev_proj: Option<ModuleMap> = proj0; // D^{i} ->> M'_{i+1}
    let mut current_mp: ModRef = m_prime_1;
    for i in 1..=w {
        if current_mp.is_zero_module() || prev_proj.is_none() {
            degs_by_index.insert(i as i64, Vec::new());
            diffs_by_index.insert(i as i64 - 1, vec![Vector::zero(0); prev_degs.len()]);
            prev_degs = Vec::new();
            prev_proj = None;
            current_mp = GradedModule::zero(ring.clone());
            continue;
        }
        let ab2 = ab2_embedding(&current_mp, omega)?;
        let degs: Vec<i64> = ab2.shifts.iter().map(|d| -d).collect();
        // d^{i-1}: D^{i-1} ->> M'_i -> D^i
        let comp = prev_proj.as_ref().unwrap().then(&ab2.seq.left);
        let a_cols = transport_matrix(&comp.matrix, &prev_degs, &degs, omega)?;
        diffs_by_index.insert(i as i64 - 1, a_cols);
        degs_by_index.insert(i as i64, degs.clone());
        prev_degs = degs;
        prev_proj = Some(ab2.seq.right.clone());
        current_mp = ab2.seq.last().clone();
    }

    // assemble, then minimalize (safety net for the splice points)
    let lo = -(w as i64);
    let terms: Vec<Vec<i64>> = (lo..=w as i64)
        .map(|i| degs_by_index.get(&i).cloned().unwrap_or_default())
        .collect();
    let diffs: Vec<Vec<Vector>> = (lo..w as i64)
        .map(|i| {
            diffs_by_index.get(&i).cloned().unwrap_or_else(|| {
                vec![
                    Vector::zero(degs_by_index.get(&(i + 1)).map_or(0, |d| d.len()));
                    degs_by_index.get(&i).map_or(0, |d| d.len())
                ]
            })
        })
        .collect();
    let complex = ChainComplex::new(ring.clone(), lo, terms, diffs)?;
    let minimized = minimalize_complex(&complex);
    let complex = minimized.complex;

    // markers from the minimalized complex
    let m_marker = {
        let term = copies_of(&omega.module, complex.term(0));
        if term.rank_ambient() == 0 {
            GradedModule::zero(ring.clone())
        } else {
            let d0 = realize_matrix(omega, complex.term(0), complex.term(1), &complex.diff(0));
            let (k, _) = d0.kernel();
            let (p, _, _) = prune(&k);
            p
        }
    };
    let lp_marker = {
        let term = copies_of(&omega.module, complex.term(0));
        if term.rank_ambient() == 0 {
            GradedModule::zero(ring.clone())
        } else if complex.rank(-1) == 0 {
            let (p, _, _) = prune(&term);
            p
        } else {
            let dm1 = realize_matrix(omega, complex.term(-1), complex.term(0), &complex.diff(-1));
            let (c, _) = dm1.cokernel();
            let (p, _, _) = prune(&c);
            p
        }
    };

    Ok(RepresentingComplex {
        module: n.clone(),
        omega: omega.clone(),
        complex,
        window: w,
        m_marker,
        lp_marker,
        approx: res,
    })
}

/// The invariant table over a degree window: `gamma`, the `nu_i`, the
/// canonical multiplicities `d^i`, and the induced Betti numbers, with the
/// cross-checks of the minimal-resolution identities recorded.
pub fn invariants(
    n: &ModRef,
    window: usize,
    omega: &CanonicalModule,
) -> Result<(InvariantTable, RepresentingComplex), CaError> {
    let rc = representing_complex(n, window, omega)?;
    let mut discrepancies = Vec::new();

    let gamma = omega_rank(&rc.m_marker, omega);
    let gamma_greedy = omega_rank_greedy_checked(&rc.m_marker, omega, &mut discrepancies);
    let _ = gamma_greedy;

    let mut d = BTreeMap::new();
    for i in -(window as i64)..=(window as i64) {
        d.insert(i, rc.d_rank(i));
    }
    let mut nu = Vec::new();
    for i in 0..window {
        let cos = rc.omega_cosyzygy(i);
        nu.push(omega_rank(&cos, omega));
    }

    // induced Betti numbers of M and L through the window
    let mcm_betti: Vec<usize> = if rc.m_marker.is_zero_module() {
        vec![0; window + 1]
    } else {
        free_resolution(&rc.m_marker, window).betti_numbers()
    };
    let l_marker = rc.l_marker();
    let fid_betti: Vec<usize> = if l_marker.is_zero_module() {
        vec![0; window + 1]
    } else {
        free_resolution(&l_marker, window).betti_numbers()
    };

    // cross-checks: d^{-i} = beta_i(Hom(omega, L')) and d^i = beta_i(M^dual)
    if !rc.lp_marker.is_zero_module() {
        let q = hom_module(&omega.module, &rc.lp_marker);
        let (qp, _, _) = prune(&q.module);
        let betti = if qp.is_zero_module() {
            vec![0; window + 1]
        } else {
            free_resolution(&qp, window).betti_numbers()
        };
        for i in 0..=window {
            let lhs = rc.d_rank(-(i as i64));
            if betti[i] != lhs {
                discrepancies.push(format!(
                    "d^-{i} = {lhs} but beta_{i}(Hom(omega, L')) = {}",
                    betti[i]
                ));
            }
        }
    }
    if !rc.m_marker.is_zero_module() {
        let mv = hom_module(&rc.m_marker, &omega.module);
        let (mvp, _, _) = prune(&mv.module);
        let betti = if mvp.is_zero_module() {
            vec![0; window + 1]
        } else {
            free_resolution(&mvp, window).betti_numbers()
        };
        for i in 0..=window {
            let lhs = rc.d_rank(i as i64);
            if betti[i] != lhs {
                discrepancies.push(format!(
                    "d^{i} = {lhs} but beta_{i}(Hom(M, omega)) = {}",
                    betti[i]
                ));
            }
        }
    }

    let table = InvariantTable { gamma, nu, d, mcm_betti, fid_betti, discrepancies };
    Ok((table, rc))
}

fn omega_rank_greedy_checked(
    m: &ModRef,
    omega: &CanonicalModule,
    discrepancies: &mut Vec<String>,
) -> usize {
    let pairing = omega_rank(m, omega);
    let greedy = crate::invariants::omega_rank_greedy(m, omega);
    if pairing != greedy {
        discrepancies.push(format!(
            "omega-rank methods disagree: pairing {pairing}, greedy split {greedy}"
        ));
    }
    greedy
}

/// Auslander delta of `N`: the canonical rank of its minimal MCM
/// approximation module.
pub fn gamma_invariant(n: &ModRef, omega: &CanonicalModule) -> Result<usize, CaError> {
    let res = mcm_approximation(n, omega)?;
    Ok(omega_rank(res.m(), omega))
}

/// Ding's index of a Gorenstein ring: the smallest `n <= nmax` with
/// `gamma(A/m^n) = 1`, or `None` when not found in range.
pub fn ding_index(
    ring: &RingRef,
    nmax: usize,
    omega: &CanonicalModule,
) -> Result<Option<usize>, CaError> {
    if !omega.is_free_rank_one() {
        return Err(CaError::NotGorenstein(format!(
            "the canonical module needs {} generators",
            omega.mu()
        )));
    }
    for n in 1..=nmax {
        let q = GradedModule::quotient_by_power_of_max_ideal(ring.clone(), n);
        if gamma_invariant(&q, omega)? == 1 {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Check `H^0` of the representing complex against `N` (isomorphism search).
pub fn verify_h0(rc: &RepresentingComplex) -> IsoCheck {
    let h0 = rc.realized_homology(0);
    module_isomorphic(&h0, &rc.module)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_module;
    use crate::expr::parse_poly;
    use crate::module::ideal_module;
    use crate::ring::{GradedRing, PolyRing, RingRef};

    fn reg2() -> RingRef {
        GradedRing::polynomial_ring(PolyRing::standard(&["u", "v"], 32003))
    }

    fn cone() -> RingRef {
        let p = PolyRing::standard(&["x", "y", "z"], 32003);
        let f = parse_poly("x^2 - y*z", &p).unwrap();
        GradedRing::new(p, vec![f]).unwrap()
    }

    #[test]
    fn representing_complex_of_k_over_regular_ring_is_koszul() {
        let r = reg2();
        let w = canonical_module(&r).unwrap();
        let k = GradedModule::residue_field(r.clone());
        let rc = representing_complex(&k, 3, &w).unwrap();
        // d^{-2}, d^{-1}, d^0 = 1, 2, 1 and the positive part vanishes
        assert_eq!(rc.d_rank(-2), 1);
        assert_eq!(rc.d_rank(-1), 2);
        assert_eq!(rc.d_rank(0), 1);
        assert_eq!(rc.d_rank(1), 0);
        assert_eq!(rc.d_rank(-3), 0);
        assert_eq!(verify_h0(&rc), IsoCheck::Isomorphic);
        for i in [-3i64, -2, -1, 1, 2, 3] {
            assert!(
                rc.realized_homology(i).is_zero_module(),
                "homology at {i} nonzero"
            );
        }
    }

    #[test]
    fn invariants_of_maximal_ideal_over_regular_ring() {
        // the table row for a non-singular point: gamma=2, nu_1=1, d^0=2, nu_0=0
        let r = reg2();
        let w = canonical_module(&r).unwrap();
        let gens = ["u", "v"]
            .iter()
            .map(|s| parse_poly(s, r.poly_ring()).unwrap())
            .collect::<Vec<_>>();
        let (m, _) = ideal_module(r.clone(), &gens).unwrap();
        let (table, _) = invariants(&m, 4, &w).unwrap();
        assert_eq!(table.gamma, 2);
        assert_eq!(table.nu[1], 1);
        assert_eq!(table.d[&0], 2);
        assert_eq!(table.nu[0], 0);
        assert!(table.discrepancies.is_empty(), "{:?}", table.discrepancies);
    }

    #[test]
    fn invariants_of_maximal_ideal_over_quadric_cone() {
        // the singular-point row: gamma=0, nu_1=1, d^0=4, nu_0=1
        let r = cone();
        let w = canonical_module(&r).unwrap();
        let gens = ["x", "y", "z"]
            .iter()
            .map(|s| parse_poly(s, r.poly_ring()).unwrap())
            .collect::<Vec<_>>();
        let (m, _) = ideal_module(r.clone(), &gens).unwrap();
        let (table, rc) = invariants(&m, 4, &w).unwrap();
        assert_eq!(table.gamma, 0);
        assert_eq!(table.nu[1], 1);
        assert_eq!(table.d[&0], 4);
        assert_eq!(table.nu[0], 1);
        assert!(table.discrepancies.is_empty(), "{:?}", table.discrepancies);
        assert_eq!(verify_h0(&rc), IsoCheck::Isomorphic);
    }

    #[test]
    fn ding_index_of_regular_and_cone() {
        let r = reg2();
        let w = canonical_module(&r).unwrap();
        assert_eq!(ding_index(&r, 4, &w).unwrap(), Some(1));
        let rc = cone();
        let wc = canonical_module(&rc).unwrap();
        assert_eq!(ding_index(&rc, 4, &wc).unwrap(), Some(2));
    }

    #[test]
    fn representing_complex_of_ring_over_gorenstein_cone() {
        let r = cone();
        let w = canonical_module(&r).unwrap();
        let a = GradedModule::ring_module(r.clone());
        let rc = representing_complex(&a, 3, &w).unwrap();
        // A is MCM: no negative part; A = omega(1) is also FID, positive part
        // collapses after the identity cover
        assert_eq!(rc.d_rank(-1), 0);
        assert_eq!(rc.d_rank(0), 1);
        assert_eq!(rc.d_rank(1), 0);
        assert_eq!(verify_h0(&rc), IsoCheck::Isomorphic);
    }
}
