fn main() {
    std::process::exit(flowtree::cli::main());
}
