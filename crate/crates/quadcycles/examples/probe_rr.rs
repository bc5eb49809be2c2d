use quadcycles::field::{Fp, QQ};
use quadcycles::jacobian::{dim_l, is_principal, rr::known_point_over, Divisor, Principality};

fn kp(f: &QQ, i: usize) -> quadcycles::jacobian::ClosedPoint<QQ> {
    known_point_over(f, i)
}

fn main() {
    let f = QQ;
    let t0 = std::time::Instant::now();
    // L(0) = constants
    println!("dim L(0) = {} ({:?})", dim_l(&f, &Divisor::zero()), t0.elapsed());
    // L(K): K = div of a (1,1)-form; use u0*w1 fiber product: 2P0+P1+P2+P6+P8
    let k_div = Divisor::of(vec![
        (kp(&f, 0), 2), (kp(&f, 1), 1), (kp(&f, 2), 1), (kp(&f, 6), 1), (kp(&f, 8), 1),
    ]);
    let t1 = std::time::Instant::now();
    println!("dim L(K) = {} ({:?})", dim_l(&f, &k_div), t1.elapsed());
    // relation 2: P0+P1+P2 − 2P3 − P7 principal (div of u)
    let rel2 = Divisor::of(vec![
        (kp(&f, 0), 1), (kp(&f, 1), 1), (kp(&f, 2), 1), (kp(&f, 3), -2), (kp(&f, 7), -1),
    ]);
    let t2 = std::time::Instant::now();
    match is_principal(&f, &rel2) {
        Principality::Principal { .. } => println!("rel2 principal ✓ ({:?})", t2.elapsed()),
        Principality::NotPrincipal => println!("rel2 NOT principal ✗"),
    }
    // relation 4: P0+P2+P7+P9 ∼ P1+P3+P5+P6 (P5 coverage via u=2 fiber)
    let rel4 = Divisor::of(vec![
        (kp(&f, 0), 1), (kp(&f, 2), 1), (kp(&f, 7), 1), (kp(&f, 9), 1),
        (kp(&f, 1), -1), (kp(&f, 3), -1), (kp(&f, 5), -1), (kp(&f, 6), -1),
    ]);
    let t3 = std::time::Instant::now();
    match is_principal(&f, &rel4) {
        Principality::Principal { .. } => println!("rel4 principal ✓ ({:?})", t3.elapsed()),
        Principality::NotPrincipal => println!("rel4 NOT principal ✗"),
    }
    // non-relation: P0 − P1 must not be principal
    let bad = Divisor::of(vec![(kp(&f, 0), 1), (kp(&f, 1), -1)]);
    match is_principal(&f, &bad) {
        Principality::NotPrincipal => println!("P0−P1 not principal ✓"),
        _ => println!("P0−P1 claimed principal ✗"),
    }
    // cusp relation: 5P0 − 10P1 − 2P2 + P3 + 6P4
    let cusp = Divisor::of(vec![
        (kp(&f, 0), 5), (kp(&f, 1), -10), (kp(&f, 2), -2), (kp(&f, 3), 1), (kp(&f, 4), 6),
    ]);
    let t4 = std::time::Instant::now();
    match is_principal(&f, &cusp) {
        Principality::Principal { .. } => println!("cusp relation principal ✓ ({:?})", t4.elapsed()),
        Principality::NotPrincipal => println!("cusp relation NOT principal ✗"),
    }
    // over F5: dim L(4·P̄1) = 1
    let f5 = Fp::new(5);
    let p1_bar = known_point_over(&f5, 1);
    let d5 = Divisor::of(vec![(p1_bar, 4)]);
    let t5 = std::time::Instant::now();
    println!("dim L(4P̄1)/F5 = {} ({:?})", dim_l(&f5, &d5), t5.elapsed());
}
