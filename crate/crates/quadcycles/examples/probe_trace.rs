use quadcycles::dynatomic;
fn main() {
    let t0 = std::time::Instant::now();
    let psi = dynatomic::trace_model().expect("trace model");
    println!("trace_model: {:?}", t0.elapsed());
    let display = dynatomic::psi6_display();
    println!("equals display: {}", psi == display);
    println!("t-degree {}, c-degree {}", psi.degree(quadcycles::arith::Var::T), psi.degree(quadcycles::arith::Var::C));
    let t1 = std::time::Instant::now();
    let f = dynatomic::uv_model().expect("uv model");
    println!("uv_model ok: {:?} (deg_v {})", t1.elapsed(), f.degree(quadcycles::arith::Var::V));
    let t2 = std::time::Instant::now();
    let g = dynatomic::uw_model().expect("uw model");
    println!("uw_model ok: {:?} (G(2,1) = {})", t2.elapsed(), g.eval(&[(quadcycles::arith::Var::U, quadcycles::arith::rat(2)), (quadcycles::arith::Var::W, quadcycles::arith::rat(1))]));
}
