fn main() {
    std::process::exit(pascalforge::harness::run(std::env::args_os()));
}
