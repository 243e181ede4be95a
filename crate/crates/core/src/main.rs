fn main() {
    std::process::exit(knotcore::cli::main_with_args(std::env::args_os()));
}
