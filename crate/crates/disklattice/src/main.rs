fn main() -> std::process::ExitCode {
    disklattice::cli::main()
}
