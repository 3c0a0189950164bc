fn main() {
    chebpart::cli::main()
}
