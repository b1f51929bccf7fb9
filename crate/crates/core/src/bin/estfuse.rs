fn main() {
    std::process::exit(estfuse::cli::main());
}
