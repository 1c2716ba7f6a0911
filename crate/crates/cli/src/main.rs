fn main() {
    std::process::exit(regress_cli::main_with_args(std::env::args_os()));
}
