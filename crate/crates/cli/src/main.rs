fn main() {
    let args: Vec<String> = std::env::args().collect();
    std::process::exit(harmonic_atlas_cli::parse_and_dispatch(&args));
}
