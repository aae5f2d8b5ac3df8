fn main() -> std::process::ExitCode {
    klts::cli::run(std::env::args_os()).into()
}
