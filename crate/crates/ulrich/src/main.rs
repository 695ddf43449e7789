fn main() -> std::process::ExitCode {
    ulrich::cli::main()
}
