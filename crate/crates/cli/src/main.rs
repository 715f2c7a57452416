fn main() {
    std::process::exit(logfol_cli::run(std::env::args_os()));
}
