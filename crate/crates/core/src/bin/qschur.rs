fn main() { std::process::exit(qschur::cli::run_from_env()); }
