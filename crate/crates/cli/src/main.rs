fn main() {
    std::process::exit(hvc_cli::run(std::env::args_os()));
}
