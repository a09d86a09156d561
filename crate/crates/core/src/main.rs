fn main() {
    std::process::exit(henon_lattice::cli::main());
}
