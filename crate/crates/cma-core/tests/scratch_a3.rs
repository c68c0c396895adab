use cma_core::approx::mcm_approximation;
use cma_core::canonical::canonical_module;
use cma_core::expr::parse_poly;
use cma_core::homalg::ext_total_dim;
use cma_core::module::GradedModule;
use cma_core::ring::{GradedRing, PolyRing};

#[test]
fn probe_a3_approximation_of_k() {
    let t0 = std::time::Instant::now();
    let p = PolyRing::standard(&["a", "b", "c", "d"], 32003);
    let gens = vec![
        parse_poly("b^2 - a*c", &p).unwrap(),
        parse_poly("b*c - a*d", &p).unwrap(),
        parse_poly("c^2 - b*d", &p).unwrap(),
    ];
    let r = GradedRing::new(p, gens).unwrap();
    let w = canonical_module(&r).unwrap();
    println!("ring+omega: {:?}", t0.elapsed());
    let k = GradedModule::residue_field(r.clone());
    let t1 = std::time::Instant::now();
    let res = mcm_approximation(&k, &w).unwrap();
    println!("approximation: {:?}", t1.elapsed());
    println!("mu(M) = {}, rank(M) = {}", res.m().mu(), res.m().rank());
    let t2 = std::time::Instant::now();
    let e1 = ext_total_dim(1, res.m(), res.m());
    println!("ext1(M,M) = {e1:?} in {:?}", t2.elapsed());
    println!("total: {:?}", t0.elapsed());
}
