fn main() {
    for (p, e) in [(3u64,1usize),(3,2),(3,3),(3,4),(5,4),(7,4),(13,4),(17,4),(19,4)] {
        let t = std::time::Instant::now();
        let n = quadcycles::curve::count_points(p, e).unwrap();
        println!("#C(F_{}^{}) = {}  ({:?})", p, e, n, t.elapsed());
    }
}
