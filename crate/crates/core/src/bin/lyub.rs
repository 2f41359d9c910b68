fn main() -> std::process::ExitCode {
    lyubeznik::cli::main()
}
