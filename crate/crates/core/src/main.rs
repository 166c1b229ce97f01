fn main() {
    std::process::exit(twocst::cli::main());
}
