fn main() {
    std::process::exit(einstein_randers_cli::run(std::env::args_os()));
}
