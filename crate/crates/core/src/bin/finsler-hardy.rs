fn main() {
    std::process::exit(finsler_hardy::cli::main_with_args(std::env::args_os()));
}
