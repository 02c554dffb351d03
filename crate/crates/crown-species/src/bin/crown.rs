fn main() {
    std::process::exit(crown_species::cli::main());
}
