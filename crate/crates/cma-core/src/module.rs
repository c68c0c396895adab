//! Finitely generated graded modules as cokernel presentations, and
//! degree-zero maps between them.
//!
//! A module is `coker(R: G -> F)` where `F` is the twisted free module
//! described by `gen_degs` and `R` is a list of homogeneous relation columns.
//! Maps are matrices on the ambient covers, certified to send relations into
//! relations.

use crate::error::CaError;
use crate::freemod::Vector;
use crate::groebner::{self, GbMode, SubmoduleGb};
use crate::hilbert::{self, Laurent};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::ring::RingRef;
use std::sync::{Arc, OnceLock};

pub type ModRef = Arc<GradedModule>;

pub struct GradedModule {
    pub ring: RingRef,
    /// Degrees of the ambient generators: coordinate `i` spans `A(-gen_degs[i])`.
    pub gen_degs: Vec<i64>,
    /// Homogeneous relation columns in the ambient free module.
    pub rel_cols: Vec<Vector>,
    gb_cache: OnceLock<SubmoduleGb>,
    zero_cache: OnceLock<bool>,
}

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedModule")
            .field("gen_degs", &self.gen_degs)
            .field("rels", &self.rel_cols.len())
            .finish()
    }
}

impl GradedModule {
    pub fn new(
        ring: RingRef,
        gen_degs: Vec<i64>,
        rel_cols: Vec<Vector>,
    ) -> Result<ModRef, CaError> {
        let mut cols = Vec::with_capacity(rel_cols.len());
        for (j, c) in rel_cols.into_iter().enumerate() {
            if c.rank() != gen_degs.len() {
                return Err(CaError::Internal(format!(
                    "relation column {j} has rank {} but the ambient rank is {}",
                    c.rank(),
                    gen_degs.len()
                )));
            }
            let reduced = Vector {
                coords: c.coords.iter().map(|p| ring.nf_poly(p)).collect(),
            };
            if reduced.is_zero() {
                continue;
            }
            if reduced.degree(&gen_degs).is_err() {
                return Err(CaError::Homogeneity(format!(
                    "relation column {j} is not homogeneous"
                )));
            }
            cols.push(reduced);
        }
        Ok(Arc::new(GradedModule {
            ring,
            gen_degs,
            rel_cols: cols,
            gb_cache: OnceLock::new(),
            zero_cache: OnceLock::new(),
        }))
    }

    pub fn free(ring: RingRef, gen_degs: Vec<i64>) -> ModRef {
        GradedModule::new(ring, gen_degs, Vec::new()).unwrap()
    }

    pub fn zero(ring: RingRef) -> ModRef {
        GradedModule::free(ring, Vec::new())
    }

    /// The ring as a module over itself.
    pub fn ring_module(ring: RingRef) -> ModRef {
        GradedModule::free(ring, vec![0])
    }

    /// The residue field `k = A/m`.
    pub fn residue_field(ring: RingRef) -> ModRef {
        let n = ring.nvars();
        let cols = (0..n)
            .map(|i| Vector {
                coords: vec![Polynomial::var(i, ring.poly_ring())],
            })
            .collect();
        GradedModule::new(ring, vec![0], cols).unwrap()
    }

    /// `A/m^n`: the quotient by all degree-`n` products of the variables.
    pub fn quotient_by_power_of_max_ideal(ring: RingRef, n: usize) -> ModRef {
        let monos = monomials_of_exponent_sum(ring.nvars(), n, ring.weights());
        let cols = monos
            .into_iter()
            .map(|m| Vector { coords: vec![Polynomial::monomial(m, 1)] })
            .collect();
        GradedModule::new(ring, vec![0], cols).unwrap()
    }

    pub fn rank_ambient(&self) -> usize {
        self.gen_degs.len()
    }

    /// Groebner basis of the relation submodule (ideal multiples adjoined).
    pub fn gb(&self) -> &SubmoduleGb {
        self.gb_cache.get_or_init(|| {
            SubmoduleGb::new(&self.rel_cols, &self.gen_degs, &self.ring, GbMode::Plain)
        })
    }

    /// Normal form of an ambient vector modulo the relations.
    pub fn nf(&self, v: &Vector) -> Vector {
        self.gb().nf(v, &self.ring)
    }

    pub fn element_is_zero(&self, v: &Vector) -> bool {
        self.nf(v).is_zero()
    }

    pub fn is_zero_module(&self) -> bool {
        *self.zero_cache.get_or_init(|| {
            (0..self.rank_ambient()).all(|i| {
                let e = Vector::unit(i, self.rank_ambient(), self.ring.nvars());
                self.element_is_zero(&e)
            })
        })
    }

    /// Leading-term data of the relations per ambient position.
    pub fn initial_by_position(&self) -> Vec<Vec<Monomial>> {
        self.gb().initial_by_position()
    }

    /// Krull dimension (0 for the zero module).
    pub fn dim(&self) -> usize {
        let init = self.initial_by_position();
        init.iter()
            .map(|lts| hilbert::dim_of_monomial_ideal(lts, self.ring.nvars()))
            .max()
            .unwrap_or(0)
    }

    /// Numerator of the Hilbert series over `prod (1 - t^{w_i})`.
    pub fn hilbert_numerator(&self) -> Laurent {
        let init = self.initial_by_position();
        let mut acc = Laurent::zero();
        for (i, lts) in init.iter().enumerate() {
            let n = hilbert::monomial_ideal_numerator(lts, self.ring.weights());
            acc = acc.add(&n.scale_shift(self.gen_degs[i], 1));
        }
        acc
    }

    /// Multiplicity against the dimension of the ring; zero for modules of
    /// strictly smaller dimension.
    pub fn multiplicity_at_ring_dim(&self) -> i64 {
        if self.is_zero_module() || self.dim() < self.ring.dim() {
            return 0;
        }
        hilbert::multiplicity(
            &self.hilbert_numerator(),
            self.ring.nvars(),
            self.ring.dim(),
            self.ring.weights(),
        )
    }

    /// Rank at the generic point: multiplicity ratio against the ring.
    pub fn rank(&self) -> i64 {
        let e = self.multiplicity_at_ring_dim();
        let ea = self.ring.degree();
        assert!(
            e % ea == 0,
            "module multiplicity {e} is not a multiple of the ring multiplicity {ea}"
        );
        e / ea
    }

    /// Dimension over `k` of the graded piece in degree `d`.
    pub fn piece_dim(&self, d: i64) -> usize {
        let init = self.initial_by_position();
        let mut count = 0usize;
        for (i, lts) in init.iter().enumerate() {
            let target = d - self.gen_degs[i];
            if target < 0 {
                continue;
            }
            for m in monomials_of_weighted_degree(target, self.ring.weights()) {
                if !lts.iter().any(|g| g.divides(&m)) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Total `k`-dimension when the module has finite length, `None` otherwise.
    pub fn total_dim_if_finite(&self) -> Option<usize> {
        if self.is_zero_module() {
            return Some(0);
        }
        if self.dim() > 0 {
            return None;
        }
        let init = self.initial_by_position();
        let nvars = self.ring.nvars();
        let mut total = 0usize;
        for lts in &init {
            if lts.iter().any(|m| m.is_one()) {
                continue;
            }
            let mut bounds = vec![0u16; nvars];
            for (j, b) in bounds.iter_mut().enumerate() {
                let pure = lts
                    .iter()
                    .filter(|m| m.exps.iter().enumerate().all(|(l, &e)| (l == j) || e == 0))
                    .map(|m| m.exps[j])
                    .min();
                *b = pure.expect("zero-dimensional position must bound every variable");
            }
            let mut stack = vec![Vec::<u16>::new()];
            while let Some(partial) = stack.pop() {
                if partial.len() == nvars {
                    let mono = Monomial::new(partial, self.ring.weights());
                    if !lts.iter().any(|g| g.divides(&mono)) {
                        total += 1;
                    }
                    continue;
                }
                let j = partial.len();
                for e in 0..bounds[j] {
                    let mut next = partial.clone();
                    next.push(e);
                    stack.push(next);
                }
            }
        }
        Some(total)
    }

    /// Degrees of the minimal generators (sorted).
    pub fn minimal_generator_degrees(&self) -> Vec<i64> {
        let (p, _, _) = prune(self);
        let mut d = p.gen_degs.clone();
        d.sort();
        d
    }

    /// Minimal number of generators.
    pub fn mu(&self) -> usize {
        self.minimal_generator_degrees().len()
    }

    /// True when the pruned presentation has no relations at all.
    pub fn is_free_after_prune(&self) -> bool {
        let (p, _, _) = prune(self);
        p.rel_cols.is_empty()
    }

    pub fn same_ring(&self, other: &GradedModule) -> bool {
        self.ring.same_ring(&other.ring)
    }

    /// Twist: `M(j)` shifts every generator degree down by `j`.
    pub fn twist(&self, j: i64) -> ModRef {
        Arc::new(GradedModule {
            ring: self.ring.clone(),
            gen_degs: self.gen_degs.iter().map(|d| d - j).collect(),
            rel_cols: self.rel_cols.clone(),
            gb_cache: OnceLock::new(),
            zero_cache: OnceLock::new(),
        })
    }

    pub fn clone_module(&self) -> ModRef {
        Arc::new(GradedModule {
            ring: self.ring.clone(),
            gen_degs: self.gen_degs.clone(),
            rel_cols: self.rel_cols.clone(),
            gb_cache: OnceLock::new(),
            zero_cache: OnceLock::new(),
        })
    }
}

/// All monomials of a given weighted degree.
pub fn monomials_of_weighted_degree(d: i64, weights: &[i64]) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; weights.len()];
    rec_monomials(0, d, weights, &mut cur, &mut out);
    out
}

fn rec_monomials(i: usize, rem: i64, weights: &[i64], cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
    if rem < 0 {
        return;
    }
    if i == weights.len() {
        if rem == 0 {
            out.push(Monomial::new(cur.clone(), weights));
        }
        return;
    }
    let w = weights[i];
    let max = rem / w;
    for e in 0..=max {
        cur[i] = e as u16;
        rec_monomials(i + 1, rem - e * w, weights, cur, out);
    }
    cur[i] = 0;
}

/// All monomials with total exponent sum `n` (generators of `m^n`).
fn monomials_of_exponent_sum(nvars: usize, n: usize, weights: &[i64]) -> Vec<Monomial> {
    fn rec(
        i: usize,
        rem: usize,
        nvars: usize,
        weights: &[i64],
        cur: &mut Vec<u16>,
        out: &mut Vec<Monomial>,
    ) {
        if i + 1 == nvars {
            cur[i] = rem as u16;
            out.push(Monomial::new(cur.clone(), weights));
            cur[i] = 0;
            return;
        }
        for e in 0..=rem {
            cur[i] = e as u16;
            rec(i + 1, rem - e, nvars, weights, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0u16; nvars];
    rec(0, n, nvars, weights, &mut cur, &mut out);
    out
}

// ---------------------------------------------------------------------------
// module maps
// ---------------------------------------------------------------------------

#[derive(Clone)]
pub struct ModuleMap {
    pub source: ModRef,
    pub target: ModRef,
    /// Column `j` is the image of the `j`-th ambient generator of the source.
    pub matrix: Vec<Vector>,
}

impl std::fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ModuleMap")
            .field("source", &self.source.gen_degs)
            .field("target", &self.target.gen_degs)
            .finish()
    }
}

impl ModuleMap {
    /// Build a degree-zero map and certify well-definedness: the matrix must
    /// send every source relation into the target relation submodule.
    pub fn new(source: ModRef, target: ModRef, matrix: Vec<Vector>) -> Result<ModuleMap, CaError> {
        let map = ModuleMap::new_unchecked(source, target, matrix)?;
        map.certify_well_defined()?;
        Ok(map)
    }

    /// Shape and homogeneity checks only (no relation certificate).
    pub fn new_unchecked(
        source: ModRef,
        target: ModRef,
        matrix: Vec<Vector>,
    ) -> Result<ModuleMap, CaError> {
        if !source.same_ring(&target) {
            return Err(CaError::RingMismatch("map between different rings".into()));
        }
        if matrix.len() != source.rank_ambient() {
            return Err(CaError::Internal(format!(
                "matrix has {} columns, source ambient rank is {}",
                matrix.len(),
                source.rank_ambient()
            )));
        }
        let reduced: Vec<Vector> = matrix
            .iter()
            .map(|c| Vector {
                coords: c.coords.iter().map(|p| source.ring.nf_poly(p)).collect(),
            })
            .collect();
        for (j, c) in reduced.iter().enumerate() {
            if c.rank() != target.rank_ambient() {
                return Err(CaError::Internal(format!(
                    "column {j} has rank {} but the target ambient rank is {}",
                    c.rank(),
                    target.rank_ambient()
                )));
            }
            match c.degree(&target.gen_degs) {
                Err(()) => {
                    return Err(CaError::Homogeneity(format!(
                        "matrix column {j} is not homogeneous"
                    )))
                }
                Ok(Some(d)) if d != source.gen_degs[j] => {
                    return Err(CaError::Homogeneity(format!(
                        "matrix column {j} has degree {d}, expected {}",
                        source.gen_degs[j]
                    )))
                }
                _ => {}
            }
        }
        Ok(ModuleMap { source, target, matrix: reduced })
    }

    pub fn certify_well_defined(&self) -> Result<(), CaError> {
        for (j, r) in self.source.rel_cols.iter().enumerate() {
            let img = self.apply_ambient(r);
            if !self.target.element_is_zero(&img) {
                return Err(CaError::Internal(format!(
                    "map does not send source relation {j} into target relations"
                )));
            }
        }
        Ok(())
    }

    pub fn identity(m: &ModRef) -> ModuleMap {
        let n = m.rank_ambient();
        let matrix = (0..n).map(|i| Vector::unit(i, n, m.ring.nvars())).collect();
        ModuleMap { source: m.clone(), target: m.clone(), matrix }
    }

    pub fn zero_map(source: ModRef, target: ModRef) -> ModuleMap {
        let matrix = (0..source.rank_ambient())
            .map(|_| Vector::zero(target.rank_ambient()))
            .collect();
        ModuleMap { source, target, matrix }
    }

    /// Apply to an ambient vector of the source.
    pub fn apply_ambient(&self, v: &Vector) -> Vector {
        let fp = self.source.ring.fp();
        let mut out = Vector::zero(self.target.rank_ambient());
        for (j, p) in v.coords.iter().enumerate() {
            if !p.is_zero() {
                out = out.add(&self.matrix[j].mul_poly(p, fp), fp);
            }
        }
        Vector {
            coords: out.coords.iter().map(|p| self.source.ring.nf_poly(p)).collect(),
        }
    }

    /// Composition: first `self`, then `other`.
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        assert!(
            self.target.gen_degs == other.source.gen_degs,
            "composition mismatch"
        );
        let matrix = self.matrix.iter().map(|c| other.apply_ambient(c)).collect();
        ModuleMap {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix,
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let fp = self.source.ring.fp();
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(a, b)| a.add(b, fp))
            .collect();
        ModuleMap { source: self.source.clone(), target: self.target.clone(), matrix }
    }

    pub fn negate(&self) -> ModuleMap {
        let fp = self.source.ring.fp();
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.iter().map(|c| c.neg(fp)).collect(),
        }
    }

    pub fn is_zero_map(&self) -> bool {
        self.matrix.iter().all(|c| self.target.element_is_zero(c))
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self) -> (ModRef, ModuleMap) {
        let ring = &self.source.ring;
        // syzygies of [matrix columns ++ target relations], projected
        let mut cols = self.matrix.clone();
        cols.extend(self.target.rel_cols.iter().cloned());
        let sub = SubmoduleGb::new(&cols, &self.target.gen_degs, ring, GbMode::WithSyzygies);
        let syz = sub.syzygies_user(ring);
        let n = self.source.rank_ambient();
        let mut pre: Vec<Vector> = syz
            .into_iter()
            .map(|s| Vector { coords: s.coords[..n].to_vec() })
            .filter(|v| !v.is_zero())
            .collect();
        // drop generators that already lie in the source relations
        pre.retain(|v| !self.source.element_is_zero(v));
        pre = minimalize_subquotient_gens(pre, &self.source.gen_degs, &self.source.rel_cols, ring);
        let gen_degs: Vec<i64> = pre
            .iter()
            .map(|v| v.degree(&self.source.gen_degs).unwrap().unwrap())
            .collect();
        // relations of the kernel: coefficients c with pre * c inside source rels
        let mut amb = pre.clone();
        amb.extend(self.source.rel_cols.iter().cloned());
        let sub2 = SubmoduleGb::new(&amb, &self.source.gen_degs, ring, GbMode::WithSyzygies);
        let rels: Vec<Vector> = sub2
            .syzygies_user(ring)
            .into_iter()
            .map(|s| Vector { coords: s.coords[..pre.len()].to_vec() })
            .filter(|v| !v.is_zero())
            .collect();
        let ker = GradedModule::new(ring.clone(), gen_degs, rels).expect("kernel presentation");
        let incl = ModuleMap { source: ker.clone(), target: self.source.clone(), matrix: pre };
        (ker, incl)
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self) -> (ModRef, ModuleMap) {
        let ring = self.source.ring.clone();
        let mut rels = self.target.rel_cols.clone();
        rels.extend(self.matrix.iter().cloned());
        let coker = GradedModule::new(ring, self.target.gen_degs.clone(), rels)
            .expect("cokernel presentation");
        let nv = self.target.ring.nvars();
        let proj = ModuleMap {
            source: self.target.clone(),
            target: coker.clone(),
            matrix: (0..self.target.rank_ambient())
                .map(|i| Vector::unit(i, self.target.rank_ambient(), nv))
                .collect(),
        };
        (coker, proj)
    }

    pub fn is_injective(&self) -> bool {
        let (k, _) = self.kernel();
        k.is_zero_module()
    }

    pub fn is_surjective(&self) -> bool {
        let (c, _) = self.cokernel();
        c.is_zero_module()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }
}

/// Minimal generators of a subquotient: linear algebra on graded pieces.
fn minimalize_subquotient_gens(
    gens: Vec<Vector>,
    ambient_degs: &[i64],
    rels: &[Vector],
    ring: &RingRef,
) -> Vec<Vector> {
    groebner::minimal_generators_modulo(gens, ambient_degs, rels, ring)
}

/// Certify that `0 -> L -f-> M -g-> N -> 0` is exact.
pub fn certify_ses(f: &ModuleMap, g: &ModuleMap) -> Result<(), CaError> {
    if !f.then(g).is_zero_map() {
        return Err(CaError::Internal("composite g.f is not zero".into()));
    }
    if !f.is_injective() {
        return Err(CaError::Internal("left map is not injective".into()));
    }
    if !g.is_surjective() {
        return Err(CaError::Internal("right map is not surjective".into()));
    }
    // ker g inside im f: each kernel generator must lie in im(f) + rels
    let (_, kincl) = g.kernel();
    let ring = &f.source.ring;
    let mut cols = f.matrix.clone();
    cols.extend(f.target.rel_cols.iter().cloned());
    let sub = SubmoduleGb::new(&cols, &f.target.gen_degs, ring, GbMode::Plain);
    for kv in &kincl.matrix {
        if !sub.contains(kv, ring) {
            return Err(CaError::Internal(
                "kernel of the right map is not contained in the image of the left map".into(),
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// prune: minimal presentations
// ---------------------------------------------------------------------------

/// Minimal presentation by Gaussian elimination of constant entries
/// (first unit entry in row-major scan), together with the mutually inverse
/// maps `M -> pruned` and `pruned -> M`.
pub fn prune(m: &GradedModule) -> (ModRef, ModuleMap, ModuleMap) {
    let ring = m.ring.clone();
    let fp = ring.fp();
    let nv = ring.nvars();

    let mut gen_degs = m.gen_degs.clone();
    let mut cols: Vec<Vector> = m.rel_cols.clone();

    let n_old = gen_degs.len();
    // to[i]: image of old generator i in the current generators
    let mut to: Vec<Vector> = (0..n_old).map(|i| Vector::unit(i, n_old, nv)).collect();
    // from[j]: image of current generator j in the old generators
    let mut from: Vec<Vector> = (0..n_old).map(|i| Vector::unit(i, n_old, nv)).collect();

    loop {
        let mut pivot: Option<(usize, usize, u32)> = None;
        'scan: for i in 0..gen_degs.len() {
            for (j, c) in cols.iter().enumerate() {
                let e = &c.coords[i];
                if e.is_unit_constant() {
                    pivot = Some((i, j, e.terms[0].1));
                    break 'scan;
                }
            }
        }
        let Some((pi, pj, pc)) = pivot else { break };
        let pinv = fp.inv(pc);

        // clear row pi from the other columns
        let pcol = cols[pj].clone();
        for (l, c) in cols.iter_mut().enumerate() {
            if l == pj {
                continue;
            }
            let e = c.coords[pi].clone();
            if !e.is_zero() {
                let q = e.scale(pinv, fp);
                *c = c.sub(&pcol.mul_poly(&q, fp), fp);
            }
        }
        // the pivot relation reads  pc*e_pi + sum_{k != pi} pcol[k] e_k = 0
        let mut subst = Vector::zero(gen_degs.len());
        for k in 0..gen_degs.len() {
            if k != pi {
                subst.coords[k] = pcol.coords[k].scale(fp.neg(pinv), fp);
            }
        }
        for t in to.iter_mut() {
            let coeff = t.coords[pi].clone();
            if !coeff.is_zero() {
                t.coords[pi] = Polynomial::zero();
                let repl = subst.mul_poly(&coeff, fp);
                *t = t.add(&repl, fp);
            }
        }
        cols.remove(pj);
        for c in cols.iter_mut() {
            c.coords.remove(pi);
        }
        for t in to.iter_mut() {
            t.coords.remove(pi);
        }
        from.remove(pi);
        gen_degs.remove(pi);
    }

    let cols: Vec<Vector> = cols
        .into_iter()
        .map(|c| Vector { coords: c.coords.iter().map(|p| ring.nf_poly(p)).collect() })
        .filter(|c| !c.is_zero())
        .collect();
    let cols = groebner::minimalize_gens(cols, &gen_degs, &ring);
    let pruned = GradedModule::new(ring, gen_degs, cols).expect("pruned presentation");

    let m_ref = m.clone_module();
    let to_map = ModuleMap { source: m_ref.clone(), target: pruned.clone(), matrix: to };
    let from_map = ModuleMap { source: pruned.clone(), target: m_ref, matrix: from };
    (pruned, to_map, from_map)
}

/// Block direct sum with injections and projections.
pub fn direct_sum(a: &ModRef, b: &ModRef) -> (ModRef, ModuleMap, ModuleMap, ModuleMap, ModuleMap) {
    assert!(a.same_ring(b), "ring mismatch in direct sum");
    let ring = a.ring.clone();
    let nv = ring.nvars();
    let (ra, rb) = (a.rank_ambient(), b.rank_ambient());
    let mut gen_degs = a.gen_degs.clone();
    gen_degs.extend_from_slice(&b.gen_degs);
    let mut cols: Vec<Vector> = Vec::new();
    for c in &a.rel_cols {
        let mut v = c.coords.clone();
        v.extend(std::iter::repeat(Polynomial::zero()).take(rb));
        cols.push(Vector { coords: v });
    }
    for c in &b.rel_cols {
        let mut v: Vec<Polynomial> = std::iter::repeat(Polynomial::zero()).take(ra).collect();
        v.extend(c.coords.iter().cloned());
        cols.push(Vector { coords: v });
    }
    let sum = GradedModule::new(ring, gen_degs, cols).expect("direct sum");
    let inj_a = ModuleMap {
        source: a.clone(),
        target: sum.clone(),
        matrix: (0..ra).map(|i| Vector::unit(i, ra + rb, nv)).collect(),
    };
    let inj_b = ModuleMap {
        source: b.clone(),
        target: sum.clone(),
        matrix: (0..rb).map(|i| Vector::unit(ra + i, ra + rb, nv)).collect(),
    };
    let proj_a = ModuleMap {
        source: sum.clone(),
        target: a.clone(),
        matrix: (0..ra + rb)
            .map(|i| if i < ra { Vector::unit(i, ra, nv) } else { Vector::zero(ra) })
            .collect(),
    };
    let proj_b = ModuleMap {
        source: sum.clone(),
        target: b.clone(),
        matrix: (0..ra + rb)
            .map(|i| if i >= ra { Vector::unit(i - ra, rb, nv) } else { Vector::zero(rb) })
            .collect(),
    };
    (sum, inj_a, inj_b, proj_a, proj_b)
}

/// The module generated by given columns inside a twisted free module, with
/// its syzygy presentation and the inclusion into the free cover.
pub fn submodule_of_free(
    ring: RingRef,
    ambient_degs: &[i64],
    gens: Vec<Vector>,
) -> Result<(ModRef, ModuleMap), CaError> {
    let gens: Vec<Vector> = gens
        .into_iter()
        .map(|v| Vector { coords: v.coords.iter().map(|p| ring.nf_poly(p)).collect() })
        .filter(|v| !v.is_zero())
        .collect();
    for v in &gens {
        if v.degree(ambient_degs).is_err() {
            return Err(CaError::Homogeneity("submodule generator not homogeneous".into()));
        }
    }
    let gens = groebner::minimalize_gens(gens, ambient_degs, &ring);
    let gen_degs: Vec<i64> = gens
        .iter()
        .map(|v| v.degree(ambient_degs).unwrap().unwrap())
        .collect();
    let rels = groebner::kernel_gens(&gens, ambient_degs, &ring);
    let module = GradedModule::new(ring.clone(), gen_degs, rels)?;
    let free = GradedModule::free(ring, ambient_degs.to_vec());
    let incl = ModuleMap { source: module.clone(), target: free, matrix: gens };
    Ok((module, incl))
}

/// The ideal generated by polynomials, as a module (submodule of `A`).
pub fn ideal_module(ring: RingRef, gens: &[Polynomial]) -> Result<(ModRef, ModuleMap), CaError> {
    let cols: Vec<Vector> = gens
        .iter()
        .map(|g| Vector { coords: vec![g.clone()] })
        .collect();
    submodule_of_free(ring, &[0], cols)
}

/// Subquotient `(span(gens) + span(rels)) / span(rels)` inside a twisted free
/// module: the presented module plus the generator matrix realizing it.
pub fn subquotient(
    ring: RingRef,
    ambient_degs: &[i64],
    gens: Vec<Vector>,
    rels: &[Vector],
) -> (ModRef, Vec<Vector>) {
    let rel_gb = SubmoduleGb::new(rels, ambient_degs, &ring, GbMode::Plain);
    let g: Vec<Vector> = gens
        .into_iter()
        .map(|v| rel_gb.nf(&v, &ring))
        .filter(|v| !v.is_zero())
        .collect();
    let kept = minimalize_subquotient_gens(g, ambient_degs, rels, &ring);
    let gen_degs: Vec<i64> = kept
        .iter()
        .map(|v| v.degree(ambient_degs).unwrap().unwrap())
        .collect();
    let mut cols = kept.clone();
    cols.extend(rels.iter().cloned());
    let sub = SubmoduleGb::new(&cols, ambient_degs, &ring, GbMode::WithSyzygies);
    let raw: Vec<Vector> = sub
        .syzygies_user(&ring)
        .into_iter()
        .map(|s| Vector { coords: s.coords[..kept.len()].to_vec() })
        .filter(|v| !v.is_zero())
        .collect();
    let module = GradedModule::new(ring, gen_degs, raw).expect("subquotient presentation");
    (module, kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_poly;
    use crate::ring::{GradedRing, PolyRing};

    fn reg2() -> RingRef {
        GradedRing::polynomial_ring(PolyRing::standard(&["u", "v"], 32003))
    }

    fn cone() -> RingRef {
        let p = PolyRing::standard(&["x", "y", "z"], 32003);
        let f = parse_poly("x^2 - y*z", &p).unwrap();
        GradedRing::new(p, vec![f]).unwrap()
    }

    #[test]
    fn prune_eliminates_identity_block() {
        let r = reg2();
        let pr = r.poly_ring();
        // coker [[1, u], [0, v]] over k[u,v]  ->  coker [[v]] up to twists
        let one = Polynomial::one(pr);
        let u = parse_poly("u", pr).unwrap();
        let v = parse_poly("v", pr).unwrap();
        let m = GradedModule::new(
            r.clone(),
            vec![0, 0],
            vec![
                Vector { coords: [one, Polynomial::zero()].to_vec() },
                Vector { coords: [u, v].to_vec() },
            ],
        )
        .unwrap();
        let (p, to, from) = prune(&m);
        assert_eq!(p.gen_degs, vec![0]);
        assert_eq!(p.rel_cols.len(), 1);
        assert_eq!(p.rel_cols[0].coords[0], parse_poly("v", pr).unwrap());
        // the two maps compose to identities modulo the presentations
        let round = from.then(&to);
        for i in 0..p.rank_ambient() {
            let e = Vector::unit(i, p.rank_ambient(), r.nvars());
            let diff = round.apply_ambient(&e).sub(&e, r.fp());
            assert!(p.element_is_zero(&diff));
        }
        let round2 = to.then(&from);
        for i in 0..m.rank_ambient() {
            let e = Vector::unit(i, m.rank_ambient(), r.nvars());
            let diff = round2.apply_ambient(&e).sub(&e, r.fp());
            assert!(m.element_is_zero(&diff));
        }
    }

    #[test]
    fn prune_keeps_minimal_presentation() {
        let r = cone();
        let k = GradedModule::residue_field(r.clone());
        let (p, _, _) = prune(&k);
        assert_eq!(p.gen_degs, vec![0]);
        assert_eq!(p.rel_cols.len(), 3);
        assert_eq!(k.mu(), 1);
    }

    #[test]
    fn direct_sum_laws() {
        let r = cone();
        let k = GradedModule::residue_field(r.clone());
        let a = GradedModule::ring_module(r.clone());
        let (s, inj_a, _, proj_a, _) = direct_sum(&a, &k);
        assert_eq!(s.mu(), k.mu() + a.mu());
        // proj . inj = id
        let comp = inj_a.then(&proj_a);
        let e = Vector::unit(0, 1, r.nvars());
        let diff = comp.apply_ambient(&e).sub(&e, r.fp());
        assert!(a.element_is_zero(&diff));
        // M + 0 = M
        let z = GradedModule::zero(r.clone());
        let (s2, _, _, _, _) = direct_sum(&k, &z);
        assert_eq!(s2.gen_degs, k.gen_degs);
        assert_eq!(s2.rel_cols, k.rel_cols);
    }

    #[test]
    fn kernel_of_multiplication_map() {
        // kernel of A --x--> A over the cone: x*x = yz, so the kernel of
        // multiplication by x on A = k[x,y,z]/(x^2-yz) is 0 (x is regular)
        let r = cone();
        let a = GradedModule::ring_module(r.clone());
        let a1 = a.twist(-1); // A(-1), generator in degree 1
        let x = parse_poly("x", r.poly_ring()).unwrap();
        let f = ModuleMap::new(a1, a, vec![Vector { coords: vec![x] }]).unwrap();
        let (ker, _) = f.kernel();
        assert!(ker.is_zero_module());
    }

    #[test]
    fn kernel_and_cokernel_of_projection_to_k() {
        let r = cone();
        let a = GradedModule::ring_module(r.clone());
        let k = GradedModule::residue_field(r.clone());
        let proj = ModuleMap::new(a.clone(), k.clone(), vec![Vector::unit(0, 1, r.nvars())])
            .unwrap();
        assert!(proj.is_surjective());
        let (ker, incl) = proj.kernel();
        // kernel is the maximal ideal: 3 generators in degree 1
        assert_eq!(ker.mu(), 3);
        assert_eq!(ker.minimal_generator_degrees(), vec![1, 1, 1]);
        certify_ses(&incl, &proj).unwrap();
    }

    #[test]
    fn residue_field_has_finite_length_one() {
        let r = cone();
        let k = GradedModule::residue_field(r.clone());
        assert_eq!(k.dim(), 0);
        assert_eq!(k.total_dim_if_finite(), Some(1));
        assert_eq!(k.piece_dim(0), 1);
        assert_eq!(k.piece_dim(1), 0);
        let a = GradedModule::ring_module(r);
        assert_eq!(a.dim(), 2);
        assert_eq!(a.total_dim_if_finite(), None);
        assert_eq!(a.piece_dim(1), 3);
    }

    #[test]
    fn rank_of_free_and_ideal_modules() {
        let r = cone();
        let a = GradedModule::ring_module(r.clone());
        assert_eq!(a.rank(), 1);
        assert_eq!(a.twist(-3).rank(), 1);
        let k = GradedModule::residue_field(r.clone());
        assert_eq!(k.rank(), 0);
        // the maximal ideal has rank 1
        let gens = ["x", "y", "z"]
            .iter()
            .map(|s| parse_poly(s, r.poly_ring()).unwrap())
            .collect::<Vec<_>>();
        let (m, _) = ideal_module(r.clone(), &gens).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.mu(), 3);
    }

    #[test]
    fn quotient_by_power_of_max_ideal_length() {
        let r = reg2();
        // k[u,v]/m^2 has length 3 (1, u, v)
        let q = GradedModule::quotient_by_power_of_max_ideal(r, 2);
        assert_eq!(q.total_dim_if_finite(), Some(3));
    }
}
