fn main() {
    std::process::exit(qonf_cli::main_with_args(std::env::args_os()));
}
