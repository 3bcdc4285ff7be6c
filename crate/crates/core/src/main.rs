fn main() {
    std::process::exit(curvosc::cli::run());
}
