fn main() {
    std::process::exit(autvar_cli::main_with(std::env::args_os()));
}
