fn main() {
    std::process::exit(gamma_forge_cli::run(std::env::args_os()));
}
