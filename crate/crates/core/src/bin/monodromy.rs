fn main() {
    std::process::exit(monodromy::cli::main());
}
