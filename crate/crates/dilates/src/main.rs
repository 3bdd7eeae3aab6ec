fn main() {
    std::process::exit(dilates::cli::run(std::env::args().collect()));
}
