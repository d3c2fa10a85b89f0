fn main() -> std::process::ExitCode {
    elliptic_hankel::cli::main_with_args(std::env::args_os())
}
