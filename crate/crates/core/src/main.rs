fn main() {
    std::process::exit(bilaurent::cli::main());
}
