fn main() {
    std::process::exit(jachai_cli::run(std::env::args_os()));
}
