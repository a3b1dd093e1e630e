fn main() {
    std::process::exit(eigenflow_cli::run(std::env::args_os()));
}
