use cma_core::approx::mcm_approximation;
use cma_core::canonical::canonical_module;
use cma_core::expr::parse_poly;
use cma_core::freemod::Vector;
use cma_core::groebner::{GbMode, SubmoduleGb};
use cma_core::module::{prune, GradedModule};
use cma_core::resolution::free_resolution;
use cma_core::ring::{GradedRing, PolyRing};

#[test]
fn probe_kernel_cost() {
    let p = PolyRing::standard(&["a", "b", "c", "d"], 32003);
    let gens = vec![
        parse_poly("b^2 - a*c", &p).unwrap(),
        parse_poly("b*c - a*d", &p).unwrap(),
        parse_poly("c^2 - b*d", &p).unwrap(),
    ];
    let r = GradedRing::new(p, gens).unwrap();
    let w = canonical_module(&r).unwrap();
    let k = GradedModule::residue_field(r.clone());
    let res = mcm_approximation(&k, &w).unwrap();
    let (m, _, _) = prune(res.m());
    println!("pruned M: mu {}, rels {}", m.mu(), m.rel_cols.len());
    let fr = free_resolution(&m, 2);
    println!("betti {:?}", fr.betti_numbers());
    // build the psi map columns like hom_transpose_map does
    let f1 = fr.complex.term(-1).to_vec();
    let f2 = fr.complex.term(-2).to_vec();
    let d2 = fr.complex.diff(-2);
    let rank_n = m.rank_ambient();
    let total_tgt = f2.len() * rank_n;
    let mut tgt_degs = Vec::new();
    for &f in &f2 { for &d in &m.gen_degs { tgt_degs.push(d - f); } }
    let mut cols: Vec<Vector> = Vec::new();
    for i in 0..f1.len() {
        for s in 0..rank_n {
            let mut v = Vector::zero(total_tgt);
            for (c, dc) in d2.iter().enumerate() {
                let entry = &dc.coords[i];
                if !entry.is_zero() {
                    v.coords[c * rank_n + s] = entry.clone();
                }
            }
            cols.push(v);
        }
    }
    // target relations: block copies of M's rels
    for c2 in 0..f2.len() {
        for rel in &m.rel_cols {
            let mut v = Vector::zero(total_tgt);
            for (s, p) in rel.coords.iter().enumerate() {
                v.coords[c2 * rank_n + s] = p.clone();
            }
            cols.push(v);
        }
    }
    println!("kernel input: {} cols in rank {}", cols.len(), total_tgt);
    let t = std::time::Instant::now();
    let sub = SubmoduleGb::new(&cols, &tgt_degs, &r, GbMode::WithSyzygies);
    println!("buchberger: {:?}, basis size {}", t.elapsed(), sub.data.gb.len());
    let t = std::time::Instant::now();
    let syz = sub.syzygies_user(&r);
    println!("syzygies_user: {:?}, count {}", t.elapsed(), syz.len());
}
