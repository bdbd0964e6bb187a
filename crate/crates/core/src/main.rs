fn main() {
    std::process::exit(secohom::cli::main());
}
