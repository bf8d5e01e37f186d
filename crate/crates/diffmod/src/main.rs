fn main() -> std::process::ExitCode {
    diffmod::cli::main()
}
