fn main() {
    std::process::exit(wandering::cli::main_with_args(std::env::args_os()));
}
