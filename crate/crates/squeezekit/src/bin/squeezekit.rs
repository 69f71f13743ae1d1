fn main() {
    std::process::exit(squeezekit::cli::run(std::env::args_os()));
}
