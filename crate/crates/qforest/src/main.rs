fn main() {
    std::process::exit(qforest::cli::main_with_args(std::env::args().collect()));
}
