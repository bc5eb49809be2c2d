use quadcycles::arith::multipoly::Var;
use quadcycles::arith::resultant::resultant;
use quadcycles::dynatomic;
fn main() {
    let g = dynatomic::g_uw();
    let t0 = std::time::Instant::now();
    let mut prod = quadcycles::arith::Int::from(0u32);
    for (i, chart) in dynatomic::charts(&g).iter().enumerate() {
        let t = std::time::Instant::now();
        let gu = chart.derivative(Var::U);
        let gw = chart.derivative(Var::W);
        let r1 = resultant(chart, &gu, Var::W).unwrap();
        let r2 = resultant(chart, &gw, Var::W).unwrap();
        let r3 = resultant(chart, &gu, Var::U).unwrap();
        let r4 = resultant(chart, &gw, Var::U).unwrap();
        println!("chart {} resultants: {:?}", i, t.elapsed());
        let z = |p: &quadcycles::arith::MultiPoly, v: Var| {
            let pp = p.primitive_part();
            let c = pp.as_univariate(v);
            c.iter().map(|q| q.constant_term().numer().clone()).collect::<Vec<_>>()
        };
        let t = std::time::Instant::now();
        let n1 = quadcycles::arith::unipoly::zp_resultant(&z(&r1, Var::U), &z(&r2, Var::U));
        let n2 = quadcycles::arith::unipoly::zp_resultant(&z(&r3, Var::W), &z(&r4, Var::W));
        println!("chart {} integer resultants: {:?}, bits {} {}", i, t.elapsed(), n1.bits(), n2.bits());
        let gg = num_integer::gcd(n1, n2);
        println!("chart {} gcd bits {}", i, gg.bits());
        if prod == quadcycles::arith::Int::from(0u32) { prod = gg.clone(); } else { prod *= gg.clone(); }
    }
    println!("total product bits {}", prod.bits());
    let t = std::time::Instant::now();
    let f = quadcycles::arith::primes::factor(&prod, 10_000_000);
    println!("factor: {:?} -> {:?} unresolved {:?}", t.elapsed(), f.factors.iter().map(|(p,e)| (p.to_string(), *e)).collect::<Vec<_>>(), f.unresolved.map(|u| u.bits()));
    println!("total {:?}", t0.elapsed());
}
