fn main() {
    std::process::exit(afftl::cli::main_with_args(std::env::args_os()));
}
