fn main() {
    std::process::exit(cdiff::cli::main_with_args(std::env::args_os()));
}
