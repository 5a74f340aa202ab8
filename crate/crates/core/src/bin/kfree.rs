fn main() {
    std::process::exit(kfree::cli::run(std::env::args_os()));
}
