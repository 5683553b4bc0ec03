fn main() {
    let (code, out) = quivlat::cli::run(std::env::args());
    if !out.is_empty() {
        println!("{out}");
    }
    std::process::exit(code);
}
