fn main() {
    std::process::exit(cartan_cs::cli::run(std::env::args_os()));
}
