fn main() {
    let t = std::time::Instant::now();
    let g = quadcycles::jacobian::group::subgroup_mod_p(3, 0);
    println!("p=3: order {} invariants {:?} ({:?})", g.order, g.invariants.iter().map(|x| x.to_string()).collect::<Vec<_>>(), t.elapsed());
}
