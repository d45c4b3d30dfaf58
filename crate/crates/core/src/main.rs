fn main() {
    std::process::exit(factype::cli::run(std::env::args_os()));
}
