fn main() {
    std::process::exit(bcsreps::run(std::env::args_os()));
}
