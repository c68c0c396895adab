//! Yoneda extensions from explicit `Ext^1` classes, and the fundamental
//! module `E_A`: the extension of `Omega^{d-1} k` by the canonical module
//! given by the generator of the one-dimensional `Ext^1`.

use crate::approx::{mcm_approximation, ExactSeq};
use crate::canonical::{is_mcm, CanonicalModule};
use crate::error::CaError;
use crate::freemod::Vector;
use crate::homalg::{ext_module, hom_module, hom_space, pushout, pushout_induced, Lcg};
use crate::module::{prune, GradedModule, ModRef, ModuleMap};
use crate::resolution::{betti_table_of_module, free_resolution, Resolution};
use crate::ring::RingRef;

/// An element of `Ext^1(X, Y)` with an explicit cocycle `Omega^1 X -> Y`.
pub struct ExtensionClass {
    pub x: ModRef,
    pub y: ModRef,
    /// The resolution of `X` the cocycle refers to.
    pub resolution: Resolution,
    /// Cocycle on the first syzygy (zero map encodes the split class).
    pub cocycle: ModuleMap,
    pub is_zero_class: bool,
}

/// Basis of the degree-zero part of `Ext^1(X, Y)` as extension classes.
pub fn ext1_degree_zero_classes(x: &ModRef, y: &ModRef) -> Vec<ExtensionClass> {
    let ext = ext_module(1, x, y);
    let target_dim = ext.module.piece_dim(0);
    if target_dim == 0 {
        return Vec::new();
    }
    let ring = x.ring.clone();
    let fp = ring.fp();
    let res = ext.resolution;
    let omega1 = res.syzygy_module(1);
    // candidates: monomial multiples of the Ext generators landing in degree 0
    let mut kept: Vec<ExtensionClass> = Vec::new();
    let mut kept_vecs: Vec<Vector> = Vec::new();
    let amb = ext.module.rank_ambient();
    'outer: for (u, &e_deg) in ext.module.gen_degs.iter().enumerate() {
        if e_deg > 0 {
            continue;
        }
        for mono in crate::module::monomials_of_weighted_degree(-e_deg, ring.weights()) {
            let mut v = Vector::zero(amb);
            v.coords[u] = crate::poly::Polynomial::monomial(mono.clone(), 1);
            // independence modulo the relations and the kept ones
            let mut span = kept_vecs.clone();
            span.extend(ext.module.rel_cols.iter().cloned());
            let dependent = if span.is_empty() {
                ext.module.element_is_zero(&v)
            } else {
                let sub = crate::groebner::SubmoduleGb::new(
                    &span,
                    &ext.module.gen_degs,
                    &ring,
                    crate::groebner::GbMode::Plain,
                );
                sub.contains(&v, &ring)
            };
            if dependent {
                continue;
            }
            // realize the cocycle: mono * (u-th cocycle)
            let cols: Vec<Vector> = ext.cocycles[u]
                .iter()
                .map(|c| c.mul_term(&mono, 1, fp))
                .collect();
            let cocycle = ModuleMap::new(omega1.clone(), y.clone(), cols)
                .expect("cocycle is well defined");
            kept_vecs.push(v);
            kept.push(ExtensionClass {
                x: x.clone(),
                y: y.clone(),
                resolution: free_resolution(x, 2),
                cocycle,
                is_zero_class: false,
            });
            if kept.len() == target_dim {
                break 'outer;
            }
        }
    }
    kept
}

/// The split class.
pub fn zero_class(x: &ModRef, y: &ModRef) -> ExtensionClass {
    let res = free_resolution(x, 2);
    let omega1 = res.syzygy_module(1);
    ExtensionClass {
        x: x.clone(),
        y: y.clone(),
        resolution: free_resolution(x, 2),
        cocycle: ModuleMap::zero_map(omega1, y.clone()),
        is_zero_class: true,
    }
}

/// The extension `0 -> Y -> E -> X -> 0` realized as the pushout of
/// `0 -> Omega^1 X -> F_0 -> X -> 0` along the cocycle. For the zero class a
/// retraction is searched and certified to exist.
pub fn yoneda_extension(class: &ExtensionClass) -> Result<(ModRef, ExactSeq), CaError> {
    let res = &class.resolution;
    let syz_incl = res.syzygy_into_previous(1); // Omega^1 X -> F_0
    let (e, into_e_from_f0, into_e_from_y) = pushout(&syz_incl, &class.cocycle);
    // E -> X induced by (F_0 -> X, Y -> 0)
    let zero_map = ModuleMap::zero_map(class.y.clone(), class.x.clone());
    let onto_x = pushout_induced(&e, &res.augmentation, &zero_map);
    let seq = ExactSeq { left: into_e_from_y.clone(), right: onto_x };
    seq.certify()?;
    let _ = into_e_from_f0;
    if class.is_zero_class {
        let r = find_retraction(&into_e_from_y).ok_or_else(|| {
            CaError::Internal("split class produced a non-split extension".into())
        })?;
        let _ = r;
    }
    Ok((e, seq))
}

/// Search a retraction of an injection (bounded deterministic search over
/// the degree-zero Hom basis and random combinations).
pub fn find_retraction(incl: &ModuleMap) -> Option<ModuleMap> {
    let y = &incl.source;
    let e = &incl.target;
    let basis = hom_space(e, y, 0);
    if basis.is_empty() {
        return None;
    }
    let fp = y.ring.fp();
    let check = |cols: Vec<Vector>| -> Option<ModuleMap> {
        let r = ModuleMap::new(e.clone(), y.clone(), cols).ok()?;
        if crate::homalg::composes_to_identity(incl, &r) {
            Some(r)
        } else {
            None
        }
    };
    for b in &basis {
        if let Some(r) = check(b.clone()) {
            return Some(r);
        }
    }
    let mut rng = Lcg::new(0x7e7_4ac7);
    for _ in 0..160 {
        let mut cols: Vec<Vector> =
            (0..e.rank_ambient()).map(|_| Vector::zero(y.rank_ambient())).collect();
        for b in &basis {
            let c = rng.next_mod(fp.modulus());
            if c == 0 {
                continue;
            }
            for (acc, col) in cols.iter_mut().zip(b) {
                *acc = acc.add(&col.scale(c, fp), fp);
            }
        }
        if let Some(r) = check(cols) {
            return Some(r);
        }
    }
    None
}

/// The fundamental module of a Cohen-Macaulay graded ring of dimension at
/// least two, with its defining sequence `0 -> omega -> E -> Omega^{d-1}k -> 0`.
pub struct FundamentalModule {
    pub module: ModRef,
    pub sequence: ExactSeq,
    /// For `d = 2`: the dual data `(E^v, Hom(Omega^1 k, omega))` matching the
    /// minimal MCM approximation of the maximal ideal.
    pub dual_check: Option<DualCheck>,
}

pub struct DualCheck {
    pub e_dual: ModRef,
    pub syz_dual: ModRef,
    /// Pruned Betti tables agree with the approximation of the maximal ideal.
    pub matches_approximation: bool,
}

pub fn fundamental_module(
    ring: &RingRef,
    omega: &CanonicalModule,
) -> Result<FundamentalModule, CaError> {
    let d = ring.dim();
    if d < 2 {
        return Err(CaError::DimensionTooSmall(d));
    }
    let k = GradedModule::residue_field(ring.clone());
    let res_k = free_resolution(&k, d + 1);
    let syz = res_k.syzygy_module(d - 1);

    // dimension checks for the connecting isomorphisms
    let ext1 = ext_module(1, &syz, &omega.module);
    let ext1_dim = ext1.module.total_dim_if_finite().unwrap_or(usize::MAX);
    if ext1_dim != 1 {
        return Err(CaError::NonOneDimensionalExt(ext1_dim));
    }
    let extd = ext_module(d, &k, &omega.module);
    let extd_dim = extd.module.total_dim_if_finite().unwrap_or(usize::MAX);
    if extd_dim != 1 {
        return Err(CaError::NonOneDimensionalExt(extd_dim));
    }

    let classes = ext1_degree_zero_classes(&syz, &omega.module);
    if classes.len() != 1 {
        return Err(CaError::NonOneDimensionalExt(classes.len()));
    }
    let (e, seq) = yoneda_extension(&classes[0])?;
    let st = is_mcm(&e);
    if !st.is_mcm {
        return Err(CaError::Internal("fundamental module is not MCM".into()));
    }
    // non-splitness: no retraction of omega -> E
    if find_retraction(&seq.left).is_some() {
        return Err(CaError::Internal("fundamental sequence splits".into()));
    }

    let dual_check = if d == 2 {
        let e_dual_h = hom_module(&e, &omega.module);
        let (e_dual, _, _) = prune(&e_dual_h.module);
        let syz_dual_h = hom_module(&syz, &omega.module);
        let (syz_dual, _, _) = prune(&syz_dual_h.module);
        // compare with the approximation of the maximal ideal
        let m_ideal = res_k.syzygy_module(1);
        let appr = mcm_approximation(&m_ideal, omega)?;
        let matches = {
            let bm = betti_table_of_module(&e_dual, 3);
            let ba = betti_table_of_module(appr.m(), 3);
            let bl_ok = if appr.l().is_zero_module() || syz_dual.is_zero_module() {
                appr.l().is_zero_module() == syz_dual.is_zero_module()
            } else {
                betti_table_of_module(&syz_dual, 3) == betti_table_of_module(appr.l(), 3)
            };
            bm == ba && bl_ok
        };
        Some(DualCheck { e_dual, syz_dual, matches_approximation: matches })
    } else {
        None
    };

    Ok(FundamentalModule { module: e, sequence: seq, dual_check })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::canonical_module;
    use crate::expr::parse_poly;
    use crate::homalg::{ext_total_dim, module_isomorphic, IsoCheck};
    use crate::module::{direct_sum, ideal_module};
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
    fn zero_class_gives_split_extension() {
        let r = cone();
        let k = GradedModule::residue_field(r.clone());
        let a1 = GradedModule::free(r.clone(), vec![1]);
        let c = zero_class(&k, &a1);
        let (e, seq) = yoneda_extension(&c).unwrap();
        seq.certify().unwrap();
        let (s, _, _, _, _) = direct_sum(&a1, &k);
        assert_eq!(module_isomorphic(&e, &s), IsoCheck::Isomorphic);
    }

    #[test]
    fn koszul_extension_over_regular_ring() {
        // generator of Ext^1(m, A(-2)) = k gives E = A(-1)^2
        let r = reg2();
        let gens = ["u", "v"]
            .iter()
            .map(|s| parse_poly(s, r.poly_ring()).unwrap())
            .collect::<Vec<_>>();
        let (m, _) = ideal_module(r.clone(), &gens).unwrap();
        let a2 = GradedModule::free(r.clone(), vec![2]); // A(-2)
        let classes = ext1_degree_zero_classes(&m, &a2);
        assert_eq!(classes.len(), 1);
        let (e, seq) = yoneda_extension(&classes[0]).unwrap();
        seq.certify().unwrap();
        let expected = GradedModule::free(r.clone(), vec![1, 1]);
        assert_eq!(module_isomorphic(&e, &expected), IsoCheck::Isomorphic);
        // non-split: no retraction
        assert!(find_retraction(&seq.left).is_none());
    }

    #[test]
    fn fundamental_module_of_regular_ring_is_free_rank_two() {
        let r = reg2();
        let w = canonical_module(&r).unwrap();
        let f = fundamental_module(&r, &w).unwrap();
        assert!(f.module.is_free_after_prune());
        assert_eq!(f.module.mu(), 2);
        let dc = f.dual_check.expect("dimension two");
        assert!(dc.matches_approximation);
    }

    #[test]
    fn fundamental_module_of_quadric_cone() {
        // E = M_1^2: rank 2, mu = 4, no free summand
        let r = cone();
        let w = canonical_module(&r).unwrap();
        let f = fundamental_module(&r, &w).unwrap();
        assert_eq!(f.module.mu(), 4);
        assert_eq!(f.module.rank(), 2);
        assert!(!f.module.is_free_after_prune());
        // Ext^1(E, omega) = 0
        assert_eq!(ext_total_dim(1, &f.module, &w.module), Some(0));
        // Betti table equals that of M1^2
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
        let (m1sq, _, _, _, _) = direct_sum(&m1, &m1);
        assert_eq!(
            betti_table_of_module(&f.module, 3),
            betti_table_of_module(&m1sq, 3)
        );
        let dc = f.dual_check.expect("dimension two");
        assert!(dc.matches_approximation);
    }

    #[test]
    fn dimension_too_small_rejected() {
        let p = PolyRing::standard(&["t"], 32003);
        let r = GradedRing::polynomial_ring(p);
        let w = canonical_module(&r).unwrap();
        assert!(matches!(
            fundamental_module(&r, &w),
            Err(CaError::DimensionTooSmall(1))
        ));
    }
}
