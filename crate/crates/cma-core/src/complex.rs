//! Bounded complexes of twisted graded free modules.
//!
//! Differentials ascend: `d^i : C^i -> C^{i+1}`, each homogeneous of degree
//! zero, with `d.d = 0` over the ring (checked exactly, modulo the ideal).

use crate::error::CaError;
use crate::field::Fp;
use crate::freemod::Vector;
use crate::groebner;
use crate::module::{subquotient, prune, GradedModule, ModRef};
use crate::poly::Polynomial;
use crate::ring::RingRef;
use std::collections::BTreeMap;

/// Matrix utility: apply a column matrix to a vector.
pub fn mat_apply(cols: &[Vector], v: &Vector, rank_out: usize, fp: &Fp) -> Vector {
    let mut out = Vector::zero(rank_out);
    for (j, p) in v.coords.iter().enumerate() {
        if !p.is_zero() {
            out = out.add(&cols[j].mul_poly(p, fp), fp);
        }
    }
    out
}

/// Matrix composition `second . first` (columns of the composite).
pub fn mat_compose(second: &[Vector], first: &[Vector], rank_out: usize, fp: &Fp) -> Vec<Vector> {
    first
        .iter()
        .map(|c| mat_apply(second, c, rank_out, fp))
        .collect()
}

pub fn mat_identity(rank: usize, nvars: usize) -> Vec<Vector> {
    (0..rank).map(|i| Vector::unit(i, rank, nvars)).collect()
}

#[derive(Clone)]
pub struct ChainComplex {
    pub ring: RingRef,
    /// Lowest index carrying a term.
    pub lo: i64,
    /// `terms[k]` are the generator degrees of the term at index `lo + k`.
    pub terms: Vec<Vec<i64>>,
    /// `diffs[k]` is `d^{lo+k} : C^{lo+k} -> C^{lo+k+1}` as matrix columns;
    /// there are `terms.len() - 1` of them (zero maps at both ends).
    pub diffs: Vec<Vec<Vector>>,
}

impl std::fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let ranks: Vec<usize> = self.terms.iter().map(|t| t.len()).collect();
        write!(f, "ChainComplex(lo={}, ranks={ranks:?})", self.lo)
    }
}

impl ChainComplex {
    pub fn new(
        ring: RingRef,
        lo: i64,
        terms: Vec<Vec<i64>>,
        diffs: Vec<Vec<Vector>>,
    ) -> Result<ChainComplex, CaError> {
        if terms.is_empty() {
            return Ok(ChainComplex { ring, lo: 0, terms: vec![Vec::new()], diffs: Vec::new() });
        }
        if diffs.len() + 1 != terms.len() {
            return Err(CaError::Internal(format!(
                "complex shape mismatch: {} terms, {} differentials",
                terms.len(),
                diffs.len()
            )));
        }
        let c = ChainComplex { ring, lo, terms, diffs };
        c.validate()?;
        Ok(c)
    }

    fn validate(&self) -> Result<(), CaError> {
        let fp = self.ring.fp();
        for k in 0..self.diffs.len() {
            let src = &self.terms[k];
            let tgt = &self.terms[k + 1];
            let d = &self.diffs[k];
            if d.len() != src.len() {
                return Err(CaError::Internal(format!(
                    "differential at index {} has {} columns, expected {}",
                    self.lo + k as i64,
                    d.len(),
                    src.len()
                )));
            }
            for (j, col) in d.iter().enumerate() {
                if col.rank() != tgt.len() {
                    return Err(CaError::Internal(format!(
                        "differential at index {} column {j} has wrong rank",
                        self.lo + k as i64
                    )));
                }
                match col.degree(tgt) {
                    Err(()) => {
                        return Err(CaError::Homogeneity(format!(
                            "differential at index {} column {j} inhomogeneous",
                            self.lo + k as i64
                        )))
                    }
                    Ok(Some(deg)) if deg != src[j] => {
                        return Err(CaError::Homogeneity(format!(
                            "differential at index {} column {j} has degree {} instead of {}",
                            self.lo + k as i64,
                            deg,
                            src[j]
                        )))
                    }
                    _ => {}
                }
            }
        }
        // d.d = 0 exactly over A
        for k in 0..self.diffs.len().saturating_sub(1) {
            let rank2 = self.terms[k + 2].len();
            for col in &self.diffs[k] {
                let image = mat_apply(&self.diffs[k + 1], col, rank2, fp);
                let reduced = Vector {
                    coords: image.coords.iter().map(|p| self.ring.nf_poly(p)).collect(),
                };
                if !reduced.is_zero() {
                    return Err(CaError::Internal(format!(
                        "d.d != 0 at index {}",
                        self.lo + k as i64
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, i: i64) -> &[i64] {
        if i < self.lo || i > self.hi() {
            &[]
        } else {
            &self.terms[(i - self.lo) as usize]
        }
    }

    pub fn rank(&self, i: i64) -> usize {
        self.term(i).len()
    }

    /// Differential `d^i` as matrix columns (empty shape at the boundary).
    pub fn diff(&self, i: i64) -> Vec<Vector> {
        let k = i - self.lo;
        if k < 0 || k as usize >= self.diffs.len() {
            // a zero map with the right shape
            return (0..self.rank(i))
                .map(|_| Vector::zero(self.rank(i + 1)))
                .collect();
        }
        self.diffs[k as usize].clone()
    }

    /// Shift: `C[n]^i = C^{i+n}`, differentials scaled by `(-1)^n`.
    pub fn shift(&self, n: i64) -> ChainComplex {
        let fp = self.ring.fp();
        let sign_flip = n.rem_euclid(2) == 1;
        let diffs = self
            .diffs
            .iter()
            .map(|d| {
                d.iter()
                    .map(|c| if sign_flip { c.neg(fp) } else { c.clone() })
                    .collect()
            })
            .collect();
        ChainComplex { ring: self.ring.clone(), lo: self.lo - n, terms: self.terms.clone(), diffs }
    }

    /// Homology at index `i`, pruned.
    pub fn homology(&self, i: i64) -> ModRef {
        let amb = self.term(i).to_vec();
        if amb.is_empty() {
            return GradedModule::zero(self.ring.clone());
        }
        let ker_gens: Vec<Vector> = if i >= self.hi() {
            (0..amb.len())
                .map(|j| Vector::unit(j, amb.len(), self.ring.nvars()))
                .collect()
        } else {
            groebner::kernel_gens(&self.diff(i), &self.term(i + 1).to_vec(), &self.ring)
        };
        let img: Vec<Vector> = if i <= self.lo {
            Vec::new()
        } else {
            self.diff(i - 1).into_iter().filter(|c| !c.is_zero()).collect()
        };
        let (h, _) = subquotient(self.ring.clone(), &amb, ker_gens, &img);
        let (p, _, _) = prune(&h);
        p
    }

    pub fn is_exact_at(&self, i: i64) -> bool {
        self.homology(i).is_zero_module()
    }

    /// True when no differential carries a nonzero constant entry.
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().all(|d| {
            d.iter().all(|col| !col.coords.iter().any(|p| p.is_unit_constant()))
        })
    }

    /// Total rank of the term at index `i`.
    pub fn total_rank(&self) -> usize {
        self.terms.iter().map(|t| t.len()).sum()
    }
}

/// A degree-zero chain map between complexes over the same ring.
#[derive(Clone)]
pub struct ChainMap {
    pub source: ChainComplex,
    pub target: ChainComplex,
    /// `maps[k]` sends the source term at `source.lo + k` into the target term
    /// at the same index.
    pub maps: Vec<Vec<Vector>>,
}

impl ChainMap {
    /// Build and reject non-commuting squares.
    pub fn new(
        source: ChainComplex,
        target: ChainComplex,
        maps_by_index: BTreeMap<i64, Vec<Vector>>,
    ) -> Result<ChainMap, CaError> {
        let ring = source.ring.clone();
        let fp = ring.fp();
        let mut maps = Vec::new();
        for k in 0..source.terms.len() {
            let i = source.lo + k as i64;
            let m = maps_by_index.get(&i).cloned().unwrap_or_else(|| {
                (0..source.rank(i))
                    .map(|_| Vector::zero(target.rank(i)))
                    .collect()
            });
            if m.len() != source.rank(i) {
                return Err(CaError::Internal(format!(
                    "chain map at index {i} has wrong number of columns"
                )));
            }
            maps.push(m);
        }
        let cm = ChainMap { source, target, maps };
        // commuting squares: phi^{i+1} d_src^i = d_tgt^i phi^i
        for k in 0..cm.source.terms.len().saturating_sub(1) {
            let i = cm.source.lo + k as i64;
            let lhs = mat_compose(
                &cm.map_at(i + 1),
                &cm.source.diff(i),
                cm.target.rank(i + 1),
                fp,
            );
            let rhs = mat_compose(&cm.target.diff(i), &cm.map_at(i), cm.target.rank(i + 1), fp);
            for (a, b) in lhs.iter().zip(&rhs) {
                let d = a.sub(b, fp);
                let reduced = Vector {
                    coords: d.coords.iter().map(|p| ring.nf_poly(p)).collect(),
                };
                if !reduced.is_zero() {
                    return Err(CaError::Internal(format!(
                        "chain map square at index {i} does not commute"
                    )));
                }
            }
        }
        Ok(cm)
    }

    pub fn map_at(&self, i: i64) -> Vec<Vector> {
        let k = i - self.source.lo;
        if k < 0 || k as usize >= self.maps.len() {
            (0..self.source.rank(i))
                .map(|_| Vector::zero(self.target.rank(i)))
                .collect()
        } else {
            self.maps[k as usize].clone()
        }
    }
}

/// Mapping cone with `d_cone = [[-d_src[1], 0], [phi, d_tgt]]`:
/// `cone^i = source^{i+1} (+) target^i`.
pub fn mapping_cone(phi: &ChainMap) -> ChainComplex {
    let ring = phi.source.ring.clone();
    let fp = ring.fp();
    let lo = (phi.source.lo - 1).min(phi.target.lo);
    let hi = phi.source.hi().max(phi.target.hi() + 1) - 1 + 1;
    let hi = hi.max(lo);
    let mut terms: Vec<Vec<i64>> = Vec::new();
    for i in lo..=hi {
        let mut t = phi.source.term(i + 1).to_vec();
        t.extend_from_slice(phi.target.term(i));
        terms.push(t);
    }
    let mut diffs: Vec<Vec<Vector>> = Vec::new();
    for i in lo..hi {
        let src_up = phi.source.rank(i + 2);
        let tgt_up = phi.target.rank(i + 1);
        let rank_out = src_up + tgt_up;
        let mut cols: Vec<Vector> = Vec::new();
        // source^{i+1} part
        let dsrc = phi.source.diff(i + 1);
        let pmap = phi.map_at(i + 1);
        for j in 0..phi.source.rank(i + 1) {
            let mut coords = dsrc[j].neg(fp).coords;
            coords.extend(pmap[j].coords.iter().cloned());
            cols.push(Vector { coords });
        }
        // target^i part
        let dtgt = phi.target.diff(i);
        for j in 0..phi.target.rank(i) {
            let mut coords: Vec<Polynomial> =
                std::iter::repeat(Polynomial::zero()).take(src_up).collect();
            coords.extend(dtgt[j].coords.iter().cloned());
            cols.push(Vector { coords });
        }
        let _ = rank_out;
        diffs.push(cols);
    }
    ChainComplex::new(ring, lo, terms, diffs).expect("mapping cone is a complex")
}

/// Result of complex minimization: the reduced complex and the two
/// homotopy-equivalence chain maps.
pub struct Minimized {
    pub complex: ChainComplex,
    /// from the original complex onto the minimized one
    pub project: Vec<Vec<Vector>>,
    /// from the minimized complex back into the original
    pub include: Vec<Vec<Vector>>,
}

/// Iterated Gaussian cancellation of unit entries in the differentials.
/// Homology is preserved (the returned maps are a homotopy equivalence).
pub fn minimalize_complex(c: &ChainComplex) -> Minimized {
    let ring = c.ring.clone();
    let fp = ring.fp();
    let nv = ring.nvars();
    let mut terms = c.terms.clone();
    let mut diffs: Vec<Vec<Vector>> = c
        .diffs
        .iter()
        .map(|d| {
            d.iter()
                .map(|col| Vector {
                    coords: col.coords.iter().map(|p| ring.nf_poly(p)).collect(),
                })
                .collect()
        })
        .collect();

    // running equivalence maps per index
    let mut project: Vec<Vec<Vector>> = terms
        .iter()
        .map(|t| mat_identity(t.len(), nv))
        .collect();
    let mut include: Vec<Vec<Vector>> = project.clone();

    loop {
        // locate a unit entry: first by index, then column, then row
        let mut found: Option<(usize, usize, usize, u32)> = None;
        'outer: for k in 0..diffs.len() {
            for (cj, col) in diffs[k].iter().enumerate() {
                for (ri, p) in col.coords.iter().enumerate() {
                    if p.is_unit_constant() {
                        found = Some((k, cj, ri, p.terms[0].1));
                        break 'outer;
                    }
                }
            }
        }
        let Some((k, cj, ri, a)) = found else { break };
        let ainv = fp.inv(a);
        let src_rank = terms[k].len();
        let tgt_rank = terms[k + 1].len();

        // block data of d^k: pivot (ri, cj)
        let d = diffs[k].clone();
        // new differential on (src minus cj) -> (tgt minus ri):
        // D - c a^{-1} b  where b = row ri without pivot, c = column cj without pivot
        let mut new_d: Vec<Vector> = Vec::with_capacity(src_rank - 1);
        for j in 0..src_rank {
            if j == cj {
                continue;
            }
            let b_j = d[j].coords[ri].clone(); // row entry at (ri, j)
            let mut coords = Vec::with_capacity(tgt_rank - 1);
            for i in 0..tgt_rank {
                if i == ri {
                    continue;
                }
                let mut v = d[j].coords[i].clone();
                if !b_j.is_zero() {
                    let corr = d[cj].coords[i].mul(&b_j, fp).scale(ainv, fp);
                    v = v.sub(&corr, fp);
                }
                coords.push(ring.nf_poly(&v));
            }
            new_d.push(Vector { coords });
        }

        // incoming differential: delete row cj
        if k > 0 {
            for col in diffs[k - 1].iter_mut() {
                col.coords.remove(cj);
            }
        }
        // outgoing differential: delete column ri
        if k + 1 < diffs.len() {
            diffs[k + 1].remove(ri);
        }
        diffs[k] = new_d;

        // update equivalence maps
        // project at index k: drop coordinate cj (plain projection)
        let pk = std::mem::take(&mut project[k]);
        project[k] = pk
            .into_iter()
            .map(|mut col| {
                col.coords.remove(cj);
                col
            })
            .collect();
        // project at index k+1: v -> v_rest - c a^{-1} v_ri
        let pk1 = std::mem::take(&mut project[k + 1]);
        project[k + 1] = pk1
            .into_iter()
            .map(|col| {
                let vr = col.coords[ri].clone();
                let mut coords = Vec::with_capacity(tgt_rank - 1);
                for i in 0..tgt_rank {
                    if i == ri {
                        continue;
                    }
                    let mut v = col.coords[i].clone();
                    if !vr.is_zero() {
                        let corr = d[cj].coords[i].mul(&vr, fp).scale(ainv, fp);
                        v = v.sub(&corr, fp);
                    }
                    coords.push(ring.nf_poly(&v));
                }
                Vector { coords }
            })
            .collect();
        // include at index k: new basis j -> e_j - a^{-1} b_j e_cj
        let ik = std::mem::take(&mut include[k]);
        let mut new_ik: Vec<Vector> = Vec::with_capacity(src_rank - 1);
        let mut old_cols_k: Vec<Vector> = Vec::with_capacity(src_rank - 1);
        for j in 0..src_rank {
            if j == cj {
                continue;
            }
            let b_j = d[j].coords[ri].clone();
            let mut col = Vector::unit(j, src_rank, nv);
            if !b_j.is_zero() {
                let mut corr = Vector::zero(src_rank);
                corr.coords[cj] = b_j.scale(ainv, fp);
                col = col.sub(&corr, fp);
            }
            old_cols_k.push(col);
        }
        for col in old_cols_k {
            // compose with the previous include at k
            new_ik.push(mat_apply(&ik, &col, ik.first().map_or(0, |c| c.rank()), fp));
        }
        include[k] = new_ik;
        // include at index k+1: new basis i -> e_i (zero on the pivot row)
        let ik1 = std::mem::take(&mut include[k + 1]);
        let mut new_ik1: Vec<Vector> = Vec::with_capacity(tgt_rank - 1);
        for i in 0..tgt_rank {
            if i == ri {
                continue;
            }
            let col = Vector::unit(i, tgt_rank, nv);
            new_ik1.push(mat_apply(&ik1, &col, ik1.first().map_or(0, |c| c.rank()), fp));
        }
        include[k + 1] = new_ik1;

        terms[k].remove(cj);
        terms[k + 1].remove(ri);
    }

    let complex = ChainComplex::new(ring, c.lo, terms, diffs).expect("minimized complex");
    Minimized { complex, project, include }
}

// ---------------------------------------------------------------------------
// Betti tables
// ---------------------------------------------------------------------------

/// Graded Betti numbers: `entries[(i, j)]` counts rank-one summands of twist
/// `-j` in homological step `i` (step `i` sits at complex index `-i`).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(i64, i64), usize>,
}

impl BettiTable {
    pub fn total(&self, i: i64) -> usize {
        self.entries
            .iter()
            .filter(|((step, _), _)| *step == i)
            .map(|(_, n)| n)
            .sum()
    }

    pub fn totals(&self, max_step: i64) -> Vec<usize> {
        (0..=max_step).map(|i| self.total(i)).collect()
    }

    pub fn max_step(&self) -> i64 {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Restrict to steps `0..=max_step` (for comparisons on a window).
    pub fn truncated(&self, max_step: i64) -> BettiTable {
        BettiTable {
            entries: self
                .entries
                .iter()
                .filter(|((i, _), _)| *i <= max_step)
                .map(|(k, v)| (*k, *v))
                .collect(),
        }
    }
}

/// Betti table of a minimal complex (resolution indices `-L..0`; step
/// `i` = complex index `-i`). A non-minimal complex is rejected.
pub fn betti_table(c: &ChainComplex) -> Result<BettiTable, CaError> {
    if !c.is_minimal() {
        return Err(CaError::Internal(
            "betti table requested for a non-minimal complex (constant entry present)".into(),
        ));
    }
    let mut entries = BTreeMap::new();
    for i in c.lo..=c.hi() {
        for &d in c.term(i) {
            *entries.entry((-i, d)).or_insert(0) += 1;
        }
    }
    Ok(BettiTable { entries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::ring::{GradedRing, PolyRing};

    fn reg2() -> RingRef {
        GradedRing::polynomial_ring(PolyRing::standard(&["u", "v"], 32003))
    }

    /// Koszul complex of (u, v): 0 -> A(-2) -> A(-1)^2 -> A -> 0 at indices -2..0.
    fn koszul(r: &RingRef) -> ChainComplex {
        let pr = r.poly_ring();
        let u = parse_poly("u", pr).unwrap();
        let v = parse_poly("v", pr).unwrap();
        let d2 = vec![Vector { coords: vec![v.clone(), u.neg(r.fp())] }];
        let d1 = vec![
            Vector { coords: vec![u.clone()] },
            Vector { coords: vec![v.clone()] },
        ];
        ChainComplex::new(
            r.clone(),
            -2,
            vec![vec![2], vec![1, 1], vec![0]],
            vec![d2, d1],
        )
        .unwrap()
    }

    #[test]
    fn koszul_homology_is_residue_field_in_degree_zero() {
        let r = reg2();
        let c = koszul(&r);
        assert!(c.is_exact_at(-1));
        assert!(c.is_exact_at(-2));
        let h0 = c.homology(0);
        assert_eq!(h0.total_dim_if_finite(), Some(1));
        assert_eq!(h0.gen_degs, vec![0]);
    }

    #[test]
    fn koszul_betti_table() {
        let r = reg2();
        let c = koszul(&r);
        let b = betti_table(&c).unwrap();
        assert_eq!(b.entries.get(&(0, 0)), Some(&1));
        assert_eq!(b.entries.get(&(1, 1)), Some(&2));
        assert_eq!(b.entries.get(&(2, 2)), Some(&1));
        assert_eq!(b.totals(2), vec![1, 2, 1]);
    }

    #[test]
    fn cone_of_identity_is_exact() {
        let r = reg2();
        let c = koszul(&r);
        let mut maps = BTreeMap::new();
        for i in c.lo..=c.hi() {
            maps.insert(i, mat_identity(c.rank(i), r.nvars()));
        }
        let id = ChainMap::new(c.clone(), c.clone(), maps).unwrap();
        let cone = mapping_cone(&id);
        for i in cone.lo..=cone.hi() {
            assert!(cone.is_exact_at(i), "cone(id) not exact at {i}");
        }
        // ... and minimizes to the zero complex
        let min = minimalize_complex(&cone);
        assert_eq!(min.complex.total_rank(), 0);
    }

    #[test]
    fn cone_of_zero_map_is_shift_plus_target() {
        let r = reg2();
        let c = koszul(&r);
        let zero = ChainMap::new(c.clone(), c.clone(), BTreeMap::new()).unwrap();
        let cone = mapping_cone(&zero);
        // H^i(cone) = H^{i+1}(C) + H^i(C)
        let h_minus1 = cone.homology(-1);
        assert_eq!(h_minus1.total_dim_if_finite(), Some(1)); // from shifted H^0
        let h0 = cone.homology(0);
        assert_eq!(h0.total_dim_if_finite(), Some(1));
    }

    #[test]
    fn non_commuting_square_rejected() {
        let r = reg2();
        let c = koszul(&r);
        let mut maps = BTreeMap::new();
        // a random degree-0 endomorphism that does not commute
        maps.insert(0i64, mat_identity(1, r.nvars()));
        let res = ChainMap::new(c.clone(), c.shift(0), maps.clone(), );
        // identity at index 0 only: square at -1 fails
        assert!(res.is_err());
    }

    #[test]
    fn minimalize_removes_trivial_summand() {
        let r = reg2();
        let pr = r.poly_ring();
        // Koszul (+) trivial two-term complex [A(-3) = A(-3)] glued at -2, -1
        let u = parse_poly("u", pr).unwrap();
        let v = parse_poly("v", pr).unwrap();
        let one = Polynomial::one(pr);
        let d2 = vec![
            Vector { coords: vec![v.clone(), u.neg(r.fp()), Polynomial::zero()] },
            Vector { coords: vec![Polynomial::zero(), Polynomial::zero(), one] },
        ];
        let d1 = vec![
            Vector { coords: vec![u.clone()] },
            Vector { coords: vec![v.clone()] },
            Vector { coords: vec![Polynomial::zero()] },
        ];
        let c = ChainComplex::new(
            r.clone(),
            -2,
            vec![vec![2, 3], vec![1, 1, 3], vec![0]],
            vec![d2, d1],
        )
        .unwrap();
        assert!(!c.is_minimal());
        let min = minimalize_complex(&c);
        assert!(min.complex.is_minimal());
        let b = betti_table(&min.complex).unwrap();
        assert_eq!(b.totals(2), vec![1, 2, 1]);
        // homology preserved
        let h0 = min.complex.homology(0);
        assert_eq!(h0.total_dim_if_finite(), Some(1));
        assert!(min.complex.is_exact_at(-1));
        // the returned maps are chain maps
        let mut pm = BTreeMap::new();
        let mut im = BTreeMap::new();
        for i in c.lo..=c.hi() {
            pm.insert(i, min.project[(i - c.lo) as usize].clone());
            im.insert(i, min.include[(i - c.lo) as usize].clone());
        }
        ChainMap::new(c.clone(), min.complex.clone(), pm).unwrap();
        ChainMap::new(min.complex.clone(), c.clone(), im).unwrap();
    }

    #[test]
    fn minimal_complex_unchanged() {
        let r = reg2();
        let c = koszul(&r);
        let min = minimalize_complex(&c);
        assert_eq!(min.complex.terms, c.terms);
        assert_eq!(min.complex.diffs, c.diffs);
    }
}
