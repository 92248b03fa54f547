fn main() {
    let argv: Vec<String> = std::env::args().collect();
    std::process::exit(sharphy_cli::run(&argv));
}
