fn main() {
    std::process::exit(abelpol::cli::main_with_args(std::env::args_os()));
}
