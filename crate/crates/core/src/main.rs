fn main() {
    std::process::exit(quadrigen::cli::main())
}
