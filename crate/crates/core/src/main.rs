fn main() {
    std::process::exit(charzak::cli::run(std::env::args_os()));
}
