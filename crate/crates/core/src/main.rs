fn main() {
    std::process::exit(lietor::cli::run(std::env::args_os()));
}
