fn main() {
    std::process::exit(atlas_cli::main_with_std());
}
