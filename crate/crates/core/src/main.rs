fn main() {
    std::process::exit(onecircuit::cli::main_with_args(std::env::args_os()));
}
