fn main() {
    let code = opequiv::cli::run(std::env::args().collect());
    std::process::exit(code);
}
