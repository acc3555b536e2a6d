fn main() {
    std::process::exit(casimir_drift::cli::run(std::env::args_os()));
}
