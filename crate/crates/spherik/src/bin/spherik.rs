fn main() {
    std::process::exit(spherik::cli::run(std::env::args_os()));
}
