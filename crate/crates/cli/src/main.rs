fn main() {
    std::process::exit(adapted_basis_cli::main_with_args(std::env::args_os()));
}
