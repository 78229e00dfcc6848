fn main() {
    std::process::exit(dirac_families::cli::main_entry());
}
