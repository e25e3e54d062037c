fn main() {
    std::process::exit(metroplan::cli::run(std::env::args().skip(1)));
}
