fn main() {
    std::process::exit(diophcolor::cli::run(std::env::args_os()));
}
