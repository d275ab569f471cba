fn main() {
    std::process::exit(lorentz_cli::run(std::env::args_os()));
}
