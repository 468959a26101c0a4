fn main() {
    std::process::exit(subpencil_cli::run(std::env::args_os()));
}
