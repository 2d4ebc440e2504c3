fn main() {
    std::process::exit(conformal_blend::cli::run(std::env::args_os()));
}
