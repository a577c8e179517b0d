fn main() {
    std::process::exit(minismt::run_stdio());
}
