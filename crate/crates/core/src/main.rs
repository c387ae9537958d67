fn main() {
    std::process::exit(forcelab::cli::main());
}
