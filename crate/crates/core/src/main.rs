fn main() {
    std::process::exit(curvachay::cli::run(std::env::args_os()));
}
