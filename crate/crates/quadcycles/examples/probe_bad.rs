use quadcycles::dynatomic;
fn main() {
    let t0 = std::time::Instant::now();
    let bp = dynatomic::bad_primes().expect("bad primes");
    println!("bad_primes: {:?}", t0.elapsed());
    println!("primes: {:?}", bp.primes);
    for r in &bp.reports {
        println!("p = {}: singular {:?} node_rational_tangents {:?}", r.p, r.singular_points, r.node_with_rational_tangents);
    }
    println!("unresolved: {:?}", bp.unresolved);
}
