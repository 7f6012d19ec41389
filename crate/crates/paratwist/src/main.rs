fn main() {
    std::process::exit(paratwist::cli::main_with_args(std::env::args_os()));
}
