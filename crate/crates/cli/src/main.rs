fn main() {
    std::process::exit(loci_cli::run(std::env::args_os()));
}
