fn main() {
    std::process::exit(noncross::cli::main());
}
