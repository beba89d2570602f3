fn main() {
    std::process::exit(motive_heights::cli::main());
}
