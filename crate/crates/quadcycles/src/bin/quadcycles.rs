fn main() {
    println!("quadcycles CLI: under construction");
}
