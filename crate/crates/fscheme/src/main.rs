fn main() { std::process::exit(fscheme::cli::run_main()); }
